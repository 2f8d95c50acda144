"""Chunked dynamic representation of a degree-two tour for fast repairs.

The tour's M occurrences are kept in chunks of size between B/2 and 2B (with
B near sqrt(M)), ordered by a balanced randomized sequence tree.  Each tree
node stores a count vector indexed by the chunk-identifier pool: coordinate D
of a node counts tour chords with one endpoint inside the node's subtree and
the other in chunk D.  Pair lists keyed by unordered chunk pairs hold the
chords themselves.  Together these answer a crossing query and support the
four-cut tour update in O(sqrt(M) log M) amortized time.

Occurrences carry stable integer tokens; a token's (chunk id, offset) changes
only when its chunk is split or rebuilt.  Chunk identifiers come from a fixed
pool sized 4*ceil(M/B) + 8 so aggregate vectors never resize; an identifier
is recycled only after all of its endpoint contributions have been deleted.

During one tour update the tree maintains chunk and occurrence counts
eagerly but defers the count-vector sums: changed chunks are marked dirty
and the closure of their ancestors is re-summed once at the end, which costs
the same O(log q) vector recomputations without per-chord path walks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .multigraph import Tour
from .rng import SplitMix64


def _pairkey(c: int, d: int) -> tuple[int, int]:
    return (c, d) if c <= d else (d, c)


@dataclass
class CrossingQueryResult:
    """Split crossing count for one chord: aggregate class plus explicit list."""

    x: int
    pa: int
    pb: int
    w_a: int
    w_b: int
    vf_masked: np.ndarray  # per-outside-chunk class-A counts, F and boundary zeroed
    f_chunk_ids: list[int]  # full inside chunks, in cyclic rank order
    boundary: tuple[int, ...]
    class_b: list[int]
    generation: int

    @property
    def w_total(self) -> int:
        return self.w_a + self.w_b


class ChordStore:
    """Chunks, pair lists, and aggregate sequence tree over one tour."""

    def __init__(
        self,
        arcs,
        owners,
        chunk_size: int | None = None,
        seed: int = 0,
    ) -> None:
        arcs = [int(a) for a in arcs]
        owners = [int(v) for v in owners]
        m = len(arcs)
        if m == 0 or len(owners) != m:
            raise ValueError("need one owner per tour position")
        counts: dict[int, int] = {}
        for v in owners:
            counts[v] = counts.get(v, 0) + 1
        bad = [v for v, c in counts.items() if c != 2]
        if bad:
            raise ValueError(f"vertex {bad[0]} owns {counts[bad[0]]} positions, not 2")
        self.m = m
        self.b = int(chunk_size) if chunk_size else math.isqrt(m - 1) + 1
        if self.b < 1:
            raise ValueError("chunk size must be at least 1")
        self.pool = 4 * ((m + self.b - 1) // self.b) + 8
        self._rng = SplitMix64(seed)

        self.occ_arc = arcs
        self.occ_owner = owners
        self.occ_chunk = [0] * m
        self.occ_off = [0] * m

        self.chunk_tokens: list[list[int] | None] = [None] * self.pool
        self.contrib = np.zeros((self.pool, self.pool), dtype=np.int64)
        self.coord_total = np.zeros(self.pool, dtype=np.int64)
        self.vec = np.zeros((self.pool, self.pool), dtype=np.int64)
        self.left = [-1] * self.pool
        self.right = [-1] * self.pool
        self.parent = [-1] * self.pool
        self.prio = [0] * self.pool
        self.cnt = [0] * self.pool
        self.size = [0] * self.pool
        self.free_ids = list(range(self.pool - 1, -1, -1))
        self.root = -1
        self._dirty: set[int] = set()

        vert_tok: dict[int, list[int]] = {}
        for t, v in enumerate(owners):
            vert_tok.setdefault(v, []).append(t)
        self.vert_tok = {v: (ts[0], ts[1]) for v, ts in vert_tok.items()}
        self.vertices = sorted(self.vert_tok)
        self.pairs: dict[tuple[int, int], list[int]] = {}
        self.vert_key: dict[int, tuple[int, int]] = {}
        self.vert_idx: dict[int, int] = {}
        self._stamp = {v: -1 for v in self.vertices}
        self._stamp_clock = 0
        self.generation = 0

        # cyclic order caches, valid between tour updates
        self.order: list[int] = []
        self.rank_of = [0] * self.pool
        self.pos_base = [0] * self.pool

        self._build_initial()

    # -- construction ---------------------------------------------------------

    def _alloc(self) -> int:
        if not self.free_ids:
            raise AssertionError("chunk identifier pool exhausted")
        return self.free_ids.pop()

    def _retire(self, cid: int) -> None:
        if self.coord_total[cid] != 0 or self.contrib[cid].any():
            raise AssertionError(
                f"identifier {cid} retired with live endpoint contributions"
            )
        self.chunk_tokens[cid] = None
        self.left[cid] = self.right[cid] = self.parent[cid] = -1
        self.cnt[cid] = self.size[cid] = 0
        self._dirty.discard(cid)
        self.vec[cid].fill(0)
        self.free_ids.append(cid)

    def _partition(self, tokens: list[int]) -> list[list[int]]:
        """Cut size-B chunks left to right; merge a small remainder backward."""
        b = self.b
        out = [tokens[i : i + b] for i in range(0, len(tokens), b)]
        if len(out) >= 2 and 2 * len(out[-1]) < b:
            tail = out.pop()
            out[-1] = out[-1] + tail
        return out

    def _build_initial(self) -> None:
        groups = self._partition(list(range(self.m)))
        cids = []
        for grp in groups:
            cid = self._alloc()
            self.chunk_tokens[cid] = grp
            self.prio[cid] = self._rng.next_u64()
            for off, t in enumerate(grp):
                self.occ_chunk[t] = cid
                self.occ_off[t] = off
            cids.append(cid)
        for v, (t1, t2) in self.vert_tok.items():
            c1, c2 = self.occ_chunk[t1], self.occ_chunk[t2]
            self._pair_insert(v, c1, c2)
            self.contrib[c1, c2] += 1
            self.contrib[c2, c1] += 1
            self.coord_total[c2] += 1
            self.coord_total[c1] += 1
        self.root = self._build_tree(cids)
        self.parent[self.root] = -1
        self._dirty.update(cids)
        self._flush()
        self._refresh_order()

    # -- pair lists -------------------------------------------------------------

    def _pair_insert(self, v: int, c1: int, c2: int) -> None:
        key = _pairkey(c1, c2)
        lst = self.pairs.setdefault(key, [])
        self.vert_key[v] = key
        self.vert_idx[v] = len(lst)
        lst.append(v)

    def _pair_remove(self, v: int) -> None:
        key = self.vert_key.pop(v)
        idx = self.vert_idx.pop(v)
        lst = self.pairs[key]
        last = lst.pop()
        if last != v:
            lst[idx] = last
            self.vert_idx[last] = idx
        if not lst:
            del self.pairs[key]

    # -- aggregates (contributions now, tree vectors at flush) ---------------------

    def _contrib_add(self, c1: int, c2: int, delta: int) -> None:
        contrib = self.contrib
        total = self.coord_total
        contrib[c1, c2] += delta
        total[c2] += delta
        contrib[c2, c1] += delta
        total[c1] += delta
        self._dirty.add(c1)
        self._dirty.add(c2)

    def _chords_remove(self, vertices) -> None:
        """Drop pair-list entries and endpoint contributions for many chords."""
        ones = []
        twos = []
        for v in vertices:
            c1, c2 = self.vert_key[v]
            ones.append(c1)
            twos.append(c2)
            self._pair_remove(v)
        self._contrib_batch(ones, twos, -1)

    def _chords_insert(self, vertices) -> None:
        ones = []
        twos = []
        for v in vertices:
            t1, t2 = self.vert_tok[v]
            c1, c2 = self.occ_chunk[t1], self.occ_chunk[t2]
            ones.append(c1)
            twos.append(c2)
            self._pair_insert(v, c1, c2)
        self._contrib_batch(ones, twos, 1)

    def _contrib_batch(self, ones: list[int], twos: list[int], delta: int) -> None:
        if not ones:
            return
        if len(ones) < 8:
            for c1, c2 in zip(ones, twos):
                self._contrib_add(c1, c2, delta)
            return
        a = np.array(ones + twos, dtype=np.intp)
        b = np.array(twos + ones, dtype=np.intp)
        if delta == 1:
            np.add.at(self.contrib, (a, b), 1)
            np.add.at(self.coord_total, b, 1)
        else:
            np.add.at(self.contrib, (a, b), -1)
            np.add.at(self.coord_total, b, -1)
        self._dirty.update(ones)
        self._dirty.update(twos)

    def _flush(self) -> None:
        """Recompute subtree vectors over the dirty ancestor closure.

        When most chunks are dirty the closure is the whole tree, so skip
        building it and re-sum every node instead.
        """
        if not self._dirty:
            return
        q = self.cnt[self.root] if self.root != -1 else 0
        closure: set[int] | None
        if 3 * len(self._dirty) >= q:
            closure = None
        else:
            closure = set()
            parent = self.parent
            for c in self._dirty:
                node = c
                while node != -1 and node not in closure:
                    closure.add(node)
                    node = parent[node]
        self._dirty.clear()

        left, right, vec, contrib = self.left, self.right, self.vec, self.contrib
        stack = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if node == -1 or (closure is not None and node not in closure):
                continue
            if expanded:
                row = vec[node]
                np.copyto(row, contrib[node])
                if left[node] != -1:
                    row += vec[left[node]]
                if right[node] != -1:
                    row += vec[right[node]]
            else:
                stack.append((node, True))
                stack.append((left[node], False))
                stack.append((right[node], False))

    # -- sequence tree --------------------------------------------------------------

    def _pull(self, t: int) -> None:
        """Maintain counts and parents; vector sums wait for the flush."""
        l, r = self.left[t], self.right[t]
        cnt = 1
        size = len(self.chunk_tokens[t])
        if l != -1:
            cnt += self.cnt[l]
            size += self.size[l]
            self.parent[l] = t
        if r != -1:
            cnt += self.cnt[r]
            size += self.size[r]
            self.parent[r] = t
        self.cnt[t] = cnt
        self.size[t] = size
        self._dirty.add(t)

    def _build_tree(self, cids: list[int]) -> int:
        """Treap over the given order via the rightmost-spine construction."""
        stack: list[int] = []
        for c in cids:
            self.left[c] = -1
            self.right[c] = -1
            last = -1
            while stack and self.prio[stack[-1]] < self.prio[c]:
                last = stack.pop()
            self.left[c] = last
            if stack:
                self.right[stack[-1]] = c
            stack.append(c)
        root = stack[0]
        self._pull_all(root)
        return root

    def _pull_all(self, t: int) -> None:
        if t == -1:
            return
        self._pull_all(self.left[t])
        self._pull_all(self.right[t])
        self._pull(t)

    def _split(self, t: int, k: int) -> tuple[int, int]:
        """First k chunks of subtree t versus the rest."""
        if t == -1:
            return -1, -1
        lc = self.cnt[self.left[t]] if self.left[t] != -1 else 0
        if k <= lc:
            a, b = self._split(self.left[t], k)
            self.left[t] = b
            self._pull(t)
            if a != -1:
                self.parent[a] = -1
            return a, t
        a, b = self._split(self.right[t], k - lc - 1)
        self.right[t] = a
        self._pull(t)
        if b != -1:
            self.parent[b] = -1
        return t, b

    def _merge(self, a: int, b: int) -> int:
        if a == -1:
            return b
        if b == -1:
            return a
        if self.prio[a] > self.prio[b]:
            self.right[a] = self._merge(self.right[a], b)
            self._pull(a)
            return a
        self.left[b] = self._merge(a, self.left[b])
        self._pull(b)
        return b

    def _node_rank(self, cid: int) -> int:
        """In-order rank of a chunk via parent walk (no caches needed)."""
        rank = self.cnt[self.left[cid]] if self.left[cid] != -1 else 0
        node = cid
        parent = self.parent
        while parent[node] != -1:
            p = parent[node]
            if self.right[p] == node:
                rank += 1 + (self.cnt[self.left[p]] if self.left[p] != -1 else 0)
            node = p
        return rank

    def _path_size_add(self, cid: int, delta: int) -> None:
        node = cid
        while node != -1:
            self.size[node] += delta
            node = self.parent[node]

    def _refresh_order(self) -> None:
        order: list[int] = []
        left, right = self.left, self.right
        stack: list[int] = []
        node = self.root
        while stack or node != -1:
            while node != -1:
                stack.append(node)
                node = left[node]
            node = stack.pop()
            order.append(node)
            node = right[node]
        self.order = order
        rank_of, pos_base, toks = self.rank_of, self.pos_base, self.chunk_tokens
        run = 0
        for r, c in enumerate(order):
            rank_of[c] = r
            pos_base[c] = run
            run += len(toks[c])

    def _range_vec(self, lo: int, hi: int) -> np.ndarray:
        acc = np.zeros(self.pool, dtype=np.int64)
        if lo > hi:
            return acc
        self._range_vec_rec(self.root, 0, len(self.order) - 1, lo, hi, acc)
        return acc

    def _range_vec_rec(
        self, t: int, tlo: int, thi: int, lo: int, hi: int, acc: np.ndarray
    ) -> None:
        if t == -1 or thi < lo or hi < tlo:
            return
        if lo <= tlo and thi <= hi:
            acc += self.vec[t]
            return
        lc = self.cnt[self.left[t]] if self.left[t] != -1 else 0
        mid = tlo + lc
        self._range_vec_rec(self.left[t], tlo, mid - 1, lo, hi, acc)
        if lo <= mid <= hi:
            acc += self.contrib[t]
        self._range_vec_rec(self.right[t], mid + 1, thi, lo, hi, acc)

    # -- positions -------------------------------------------------------------------

    def token_position(self, tok: int) -> int:
        return self.pos_base[self.occ_chunk[tok]] + self.occ_off[tok]

    def positions_of(self, v: int) -> tuple[int, int]:
        t1, t2 = self.vert_tok[v]
        p1, p2 = self.token_position(t1), self.token_position(t2)
        return (p1, p2) if p1 < p2 else (p2, p1)

    def tour(self) -> Tour:
        seq = []
        for c in self.order:
            seq.extend(self.occ_arc[t] for t in self.chunk_tokens[c])
        return Tour.canonical(seq)

    # -- crossing query -----------------------------------------------------------------

    def crossing_query(self, x: int) -> CrossingQueryResult:
        if x not in self.vert_tok:
            raise ValueError(f"vertex {x} not in the store")
        t1, t2 = self.vert_tok[x]
        p1, p2 = self.token_position(t1), self.token_position(t2)
        if p1 > p2:
            p1, p2 = p2, p1
            t1, t2 = t2, t1
        ca, cb = self.occ_chunk[t1], self.occ_chunk[t2]
        ra, rb = self.rank_of[ca], self.rank_of[cb]
        boundary = (ca,) if ca == cb else (ca, cb)
        if ca == cb or rb == ra + 1:
            f_ids: list[int] = []
            vf = np.zeros(self.pool, dtype=np.int64)
        else:
            f_ids = self.order[ra + 1 : rb]
            vf = self._range_vec(ra + 1, rb - 1)
            vf[f_ids] = 0
        vf[list(boundary)] = 0
        w_a = int(vf.sum())

        self._stamp_clock += 1
        clock = self._stamp_clock
        class_b: list[int] = []
        stamp = self._stamp
        occ_chunk, occ_off, pos_base = self.occ_chunk, self.occ_off, self.pos_base
        vert_tok, occ_owner = self.vert_tok, self.occ_owner
        for c in boundary:
            for tok in self.chunk_tokens[c]:
                v = occ_owner[tok]
                if stamp[v] == clock:
                    continue
                stamp[v] = clock
                u1, u2 = vert_tok[v]
                q1 = pos_base[occ_chunk[u1]] + occ_off[u1]
                q2 = pos_base[occ_chunk[u2]] + occ_off[u2]
                if (p1 < q1 < p2) + (p1 < q2 < p2) == 1:
                    class_b.append(v)
        return CrossingQueryResult(
            x=x,
            pa=p1,
            pb=p2,
            w_a=w_a,
            w_b=len(class_b),
            vf_masked=vf,
            f_chunk_ids=f_ids,
            boundary=boundary,
            class_b=class_b,
            generation=self.generation,
        )

    def crossing_vertices(self, res: CrossingQueryResult) -> list[int]:
        """Materialize the full crossing set (testing and mirrored selection)."""
        if res.generation != self.generation:
            raise ValueError("stale crossing query result")
        ids = list(res.class_b)
        for d in np.flatnonzero(res.vf_masked):
            d = int(d)
            for c in res.f_chunk_ids:
                lst = self.pairs.get(_pairkey(c, d))
                if lst:
                    ids.extend(lst)
        ids.sort()
        return ids

    def sample_repair(
        self, x: int, res: CrossingQueryResult, rng: SplitMix64
    ) -> int:
        """x with probability 1/(W+1), else a uniform crossing vertex.

        Class A is drawn by outside-chunk, then inside-chunk, then list slot;
        class B directly from the explicit list.  A single uniform real drives
        the whole choice.
        """
        if res.generation != self.generation:
            raise ValueError("stale crossing query result")
        w = res.w_total
        u = rng.random()
        k = min(int(u * (w + 1)), w)
        if k == 0:
            return x
        k -= 1
        if k < res.w_a:
            cum = np.cumsum(res.vf_masked)
            d = int(np.searchsorted(cum, k, side="right"))
            within = k - (int(cum[d - 1]) if d else 0)
            for c in res.f_chunk_ids:
                lst = self.pairs.get(_pairkey(c, d))
                if not lst:
                    continue
                if within < len(lst):
                    return lst[within]
                within -= len(lst)
            raise AssertionError("class-A counts disagree with pair lists")
        return res.class_b[k - res.w_a]

    # -- four-cut update ------------------------------------------------------------------

    def apply_four_cut(self, x: int, y: int) -> None:
        """Reorder the tour for the accepted flip pair (x, y).

        With the four cut positions p1 < p2 < p3 < p4 in linear order, the
        segments (p1, p2], (p2, p3], (p3, p4] swap their order to third,
        second, first; contents are never reversed.
        """
        if x == y:
            raise ValueError("four-cut needs two distinct crossing chords")
        toks = list(self.vert_tok[x]) + list(self.vert_tok[y])
        pts = sorted((self.token_position(t), t) for t in toks)
        owners = [self.occ_owner[t] for _, t in pts]
        if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
            raise ValueError(f"chords {x} and {y} do not cross in the current tour")

        candidates: list[int] = []
        for _, tok in pts:
            candidates.extend(self._ensure_boundary_after(tok))
        ranks = sorted(self._node_rank(self.occ_chunk[tok]) for _, tok in pts)
        r1, r2, r3, r4 = ranks
        a, rest = self._split(self.root, r1 + 1)
        s1, rest = self._split(rest, r2 - r1)
        s2, rest = self._split(rest, r3 - r2)
        s3, e = self._split(rest, r4 - r3)
        self.root = self._merge(a, self._merge(s3, self._merge(s2, self._merge(s1, e))))
        self.parent[self.root] = -1
        self._refresh_order()
        self._repair_sizes(candidates)
        self._flush()
        self._refresh_order()
        self.generation += 1

    def _ensure_boundary_after(self, tok: int) -> list[int]:
        """Split the token's chunk so a chunk boundary follows the token.

        The smaller piece moves to a fresh identifier; the larger keeps the
        old one so fewer chords change pair lists.  Returns the piece ids.
        """
        c = self.occ_chunk[tok]
        toks = self.chunk_tokens[c]
        cut = self.occ_off[tok] + 1
        if cut == len(toks):
            return []
        left_part, right_part = toks[:cut], toks[cut:]
        move_right = len(right_part) <= len(left_part)
        moved = right_part if move_right else left_part
        kept = left_part if move_right else right_part

        affected = {self.occ_owner[t] for t in moved}
        self._chords_remove(affected)

        c2 = self._alloc()
        self.prio[c2] = self._rng.next_u64()
        self.chunk_tokens[c] = kept
        self.chunk_tokens[c2] = moved
        occ_chunk, occ_off = self.occ_chunk, self.occ_off
        for off, t in enumerate(kept):
            occ_chunk[t] = c
            occ_off[t] = off
        for off, t in enumerate(moved):
            occ_chunk[t] = c2
            occ_off[t] = off
        self._path_size_add(c, -len(moved))

        insert_rank = self._node_rank(c) + (1 if move_right else 0)
        a, b = self._split(self.root, insert_rank)
        self.left[c2] = self.right[c2] = -1
        self._pull(c2)
        self.parent[c2] = -1
        self.root = self._merge(a, self._merge(c2, b))
        self.parent[self.root] = -1

        self._chords_insert(affected)
        return [c, c2]

    def _too_small(self, cid: int) -> bool:
        return 2 * len(self.chunk_tokens[cid]) < self.b

    def _repair_sizes(self, candidates: list[int]) -> None:
        """Restore the chunk-size invariant around undersized pieces.

        Rebuild windows cover each maximal run of undersized chunks, widened
        by neighbor chunks only as far as needed to reach B/2 occurrences.
        Windows are rebuilt in descending rank order, so the cached order
        below each remaining window stays valid throughout.
        """
        q = self.cnt[self.root] if self.root != -1 else 0
        if q <= 1:
            return  # degenerate single chunk
        bad = sorted(
            {
                self.rank_of[c]
                for c in set(candidates)
                if self.chunk_tokens[c] is not None and self._too_small(c)
            }
        )
        if not bad:
            return
        toks = self.chunk_tokens
        order = self.order
        windows: list[list[int]] = []
        i = 0
        while i < len(bad):
            start = end = bad[i]
            i += 1
            while i < len(bad) and bad[i] == end + 1:
                end = bad[i]
                i += 1
            total = sum(len(toks[c]) for c in order[start : end + 1])
            lo, hi = start, end
            # widen with the smaller neighbor until the window is big enough
            while 2 * total < self.b and (lo > 0 or hi < q - 1):
                lsize = len(toks[order[lo - 1]]) if lo > 0 else None
                rsize = len(toks[order[hi + 1]]) if hi < q - 1 else None
                if rsize is None or (lsize is not None and lsize <= rsize):
                    lo -= 1
                    total += lsize
                else:
                    hi += 1
                    total += rsize
            if windows and lo <= windows[-1][1]:
                windows[-1][1] = max(windows[-1][1], hi)
            else:
                windows.append([lo, hi])
        for lo, hi in reversed(windows):
            self._rebuild_window(lo, hi)

    def _rebuild_window(self, rank_lo: int, rank_hi: int) -> None:
        old_ids = self.order[rank_lo : rank_hi + 1]
        tokens: list[int] = []
        for c in old_ids:
            tokens.extend(self.chunk_tokens[c])
        occ_chunk, occ_off = self.occ_chunk, self.occ_off

        # Each new chunk reuses the identifier of the old chunk contributing
        # most of its tokens (one reuse per old id); chords whose endpoint
        # chunks are unchanged then need no pair-list or aggregate updates.
        groups = self._partition(tokens)
        new_ids: list[int] = []
        reused: set[int] = set()
        for grp in groups:
            votes: dict[int, int] = {}
            for t in grp:
                c = occ_chunk[t]
                votes[c] = votes.get(c, 0) + 1
            best = max(votes, key=votes.get)
            if best not in reused:
                reused.add(best)
                new_ids.append(best)
            else:
                cid = self._alloc()
                self.prio[cid] = self._rng.next_u64()
                new_ids.append(cid)
        affected = {
            self.occ_owner[t]
            for grp, cid in zip(groups, new_ids)
            for t in grp
            if occ_chunk[t] != cid
        }
        self._chords_remove(affected)

        a, rest = self._split(self.root, rank_lo)
        _mid, b = self._split(rest, rank_hi - rank_lo + 1)

        for grp, cid in zip(groups, new_ids):
            self.chunk_tokens[cid] = grp
            for off, t in enumerate(grp):
                occ_chunk[t] = cid
                occ_off[t] = off
        sub = self._build_tree(new_ids)
        self.parent[sub] = -1
        self.root = self._merge(a, self._merge(sub, b))
        self.parent[self.root] = -1

        self._chords_insert(affected)
        for c in old_ids:
            if c not in reused:
                self._retire(c)

    # -- validation -------------------------------------------------------------------------

    def validate(self) -> tuple[bool, str]:
        """Recompute everything from the flat tour; exact equality required."""
        if self._dirty:
            return False, "unflushed dirty aggregate state"
        seen_tokens = []
        for c in self.order:
            toks = self.chunk_tokens[c]
            if toks is None:
                return False, f"free chunk {c} appears in the order"
            if len(self.order) > 1 and not (
                self.b <= 2 * len(toks) and len(toks) <= 2 * self.b
            ):
                return False, f"chunk {c} has size {len(toks)} outside [B/2, 2B]"
            for off, t in enumerate(toks):
                if self.occ_chunk[t] != c or self.occ_off[t] != off:
                    return False, f"token {t} has stale chunk/offset"
            seen_tokens.extend(toks)
        if sorted(seen_tokens) != list(range(self.m)):
            return False, "chunks do not partition the tokens"

        contrib = np.zeros_like(self.contrib)
        for v, (t1, t2) in self.vert_tok.items():
            c1, c2 = self.occ_chunk[t1], self.occ_chunk[t2]
            key = _pairkey(c1, c2)
            if self.vert_key.get(v) != key:
                return False, f"vertex {v} pair key mismatch"
            lst = self.pairs.get(key, [])
            idx = self.vert_idx.get(v, -1)
            if idx < 0 or idx >= len(lst) or lst[idx] != v:
                return False, f"vertex {v} back-index mismatch"
            contrib[c1, c2] += 1
            contrib[c2, c1] += 1
        if not np.array_equal(contrib, self.contrib):
            c1, c2 = map(int, np.argwhere(contrib != self.contrib)[0])
            return False, f"contribution mismatch at chunks ({c1}, {c2})"
        if not np.array_equal(contrib.sum(axis=0), self.coord_total):
            return False, "coordinate totals mismatch"
        for key, lst in self.pairs.items():
            if not lst:
                return False, f"empty pair list kept for {key}"
        total = sum(len(lst) for lst in self.pairs.values())
        if total != len(self.vert_tok):
            return False, f"pair lists hold {total} entries for {len(self.vert_tok)} chords"

        ok, msg = self._validate_tree(self.root)
        if not ok:
            return False, msg
        run = 0
        for r, c in enumerate(self.order):
            if self.rank_of[c] != r or self.pos_base[c] != run:
                return False, f"order cache stale at chunk {c}"
            run += len(self.chunk_tokens[c])
        return True, ""

    def _validate_tree(self, t: int) -> tuple[bool, str]:
        if t == -1:
            return True, ""
        for child in (self.left[t], self.right[t]):
            if child != -1:
                if self.parent[child] != t:
                    return False, f"parent pointer broken at chunk {child}"
                if self.prio[child] > self.prio[t]:
                    return False, f"heap order broken at chunk {child}"
                ok, msg = self._validate_tree(child)
                if not ok:
                    return False, msg
        cnt = 1 + sum(
            self.cnt[ch] for ch in (self.left[t], self.right[t]) if ch != -1
        )
        size = len(self.chunk_tokens[t]) + sum(
            self.size[ch] for ch in (self.left[t], self.right[t]) if ch != -1
        )
        if cnt != self.cnt[t] or size != self.size[t]:
            return False, f"subtree counts stale at chunk {t}"
        expect = self.contrib[t].copy()
        for ch in (self.left[t], self.right[t]):
            if ch != -1:
                expect += self.vec[ch]
        if not np.array_equal(expect, self.vec[t]):
            coord = int(np.flatnonzero(expect != self.vec[t])[0])
            return False, f"aggregate vector stale at chunk {t}, coordinate {coord}"
        return True, ""
