"""Directed multigraphs, Eulerian tours, transition systems, suppression.

Vertices are dense integers 0..n-1 and arcs are dense integers 0..m-1 in
input order, so traces and tours can cross-reference arcs stably.  Loops are
allowed; a loop contributes one incoming and one outgoing incidence at its
vertex.  Zero-degree vertices are permitted and ignored by the Eulerian
checks, which is convenient when suppression isolates a vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class DirectedMultigraph:
    """Arc-labelled directed multigraph with per-vertex incidence lists.

    Immutable after construction; safe to share read-only across threads.
    """

    __slots__ = ("n", "tails", "heads", "out_arcs", "in_arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]) -> None:
        arcs = list(arcs)
        tails = np.array([a[0] for a in arcs], dtype=np.int64)
        heads = np.array([a[1] for a in arcs], dtype=np.int64)
        if len(arcs) and (
            tails.min() < 0 or heads.min() < 0 or tails.max() >= n or heads.max() >= n
        ):
            raise ValueError("arc endpoint out of range")
        self.n = int(n)
        self.tails = tails
        self.heads = heads
        out_arcs: list[list[int]] = [[] for _ in range(n)]
        in_arcs: list[list[int]] = [[] for _ in range(n)]
        for e, (t, h) in enumerate(arcs):
            out_arcs[t].append(e)
            in_arcs[h].append(e)
        self.out_arcs = tuple(tuple(x) for x in out_arcs)
        self.in_arcs = tuple(tuple(x) for x in in_arcs)

    @property
    def m(self) -> int:
        return len(self.tails)

    def arc(self, e: int) -> tuple[int, int]:
        return int(self.tails[e]), int(self.heads[e])

    def out_degree(self, v: int) -> int:
        return len(self.out_arcs[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_arcs[v])

    def active_vertices(self) -> list[int]:
        """Vertices with at least one incidence."""
        return [
            v
            for v in range(self.n)
            if self.out_arcs[v] or self.in_arcs[v]
        ]

    def is_degree_two(self) -> bool:
        """True when every non-isolated vertex has in-degree = out-degree = 2."""
        return all(
            len(self.out_arcs[v]) == 2 and len(self.in_arcs[v]) == 2
            for v in self.active_vertices()
        )

    def __repr__(self) -> str:
        return f"DirectedMultigraph(n={self.n}, m={self.m})"


def graph_to_text(g: DirectedMultigraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{int(t)} {int(h)}" for t, h in zip(g.tails, g.heads)]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> DirectedMultigraph:
    """Parse the graph format: 'n m' then m lines 'tail head', '#' comments."""
    rows = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not rows:
        raise ValueError("empty graph file")
    first = rows[0].split()
    if len(first) != 2:
        raise ValueError("header must be 'n m'")
    n, m = int(first[0]), int(first[1])
    if len(rows) - 1 != m:
        raise ValueError(f"expected {m} arc lines, found {len(rows) - 1}")
    arcs = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad arc line: {ln!r}")
        arcs.append((int(parts[0]), int(parts[1])))
    return DirectedMultigraph(n, arcs)


def eulerian_violation(g: DirectedMultigraph) -> str | None:
    """First reason g is not Eulerian, or None.

    Checks in-degree = out-degree at every vertex and that the arcs form one
    strongly connected component (one forward and one backward reachability
    pass from the tail of arc 0; zero-degree vertices are ignored).
    """
    for v in range(g.n):
        din, dout = len(g.in_arcs[v]), len(g.out_arcs[v])
        if din != dout:
            return f"vertex {v} has in-degree {din} and out-degree {dout}"
    if g.m == 0:
        return None
    start = int(g.tails[0])
    fwd = _reach(g, start, forward=True)
    bwd = _reach(g, start, forward=False)
    for v in g.active_vertices():
        if not fwd[v]:
            return f"vertex {v} not forward-reachable from vertex {start}"
        if not bwd[v]:
            return f"vertex {v} not backward-reachable from vertex {start}"
    return None


def _reach(g: DirectedMultigraph, start: int, forward: bool) -> list[bool]:
    seen = [False] * g.n
    seen[start] = True
    stack = [start]
    inc = g.out_arcs if forward else g.in_arcs
    ends = g.heads if forward else g.tails
    while stack:
        v = stack.pop()
        for e in inc[v]:
            w = int(ends[e])
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return seen


def validate_eulerian(g: DirectedMultigraph) -> bool:
    return eulerian_violation(g) is None


@dataclass(frozen=True)
class Tour:
    """Cyclic arc sequence in canonical rotation (smallest arc id first)."""

    arcs: tuple[int, ...]

    @staticmethod
    def canonical(seq: Sequence[int]) -> "Tour":
        seq = [int(x) for x in seq]
        if not seq:
            raise ValueError("empty tour")
        k = seq.index(min(seq))
        return Tour(tuple(seq[k:] + seq[:k]))

    def validate_in(self, g: DirectedMultigraph) -> None:
        if sorted(self.arcs) != list(range(g.m)):
            raise ValueError("tour must visit every arc exactly once")
        for i, e in enumerate(self.arcs):
            f = self.arcs[(i + 1) % len(self.arcs)]
            if int(g.heads[e]) != int(g.tails[f]):
                raise ValueError(f"arcs {e} and {f} are not head-to-tail incident")

    def __len__(self) -> int:
        return len(self.arcs)


def tour_to_text(t: Tour) -> str:
    return " ".join(str(e) for e in t.arcs) + "\n"


def tour_from_text(text: str) -> Tour:
    return Tour.canonical([int(x) for x in text.split()])


@dataclass(frozen=True)
class TransitionSystem:
    """Per-vertex in-to-out bijections, stored as an arc successor map."""

    succ: tuple[int, ...]

    @staticmethod
    def from_tour(t: Tour) -> "TransitionSystem":
        m = len(t.arcs)
        succ = [0] * m
        for i, e in enumerate(t.arcs):
            succ[e] = t.arcs[(i + 1) % m]
        return TransitionSystem(tuple(succ))

    def validate_in(self, g: DirectedMultigraph) -> None:
        if sorted(self.succ) != list(range(g.m)):
            raise ValueError("successor map is not a permutation of the arc set")
        for e, f in enumerate(self.succ):
            if int(g.heads[e]) != int(g.tails[f]):
                raise ValueError(
                    f"successor of arc {e} must leave vertex {int(g.heads[e])}"
                )


def cycle_count(
    g: DirectedMultigraph, ts: TransitionSystem
) -> tuple[int, list[list[int]]]:
    """Number of cycles of the successor permutation plus the decomposition.

    Equals 1 exactly when ts is an Eulerian tour of g.
    """
    ts.validate_in(g)
    m = g.m
    seen = [False] * m
    cycles: list[list[int]] = []
    for e0 in range(m):
        if seen[e0]:
            continue
        cyc = []
        e = e0
        while not seen[e]:
            seen[e] = True
            cyc.append(e)
            e = ts.succ[e]
        cycles.append(cyc)
    return len(cycles), cycles


def tour_from_transition_system(
    g: DirectedMultigraph, ts: TransitionSystem
) -> Tour:
    count, cycles = cycle_count(g, ts)
    if count != 1:
        raise ValueError(f"transition system has {count} cycles, not a tour")
    return Tour.canonical(cycles[0])


def hierholzer_tour(g: DirectedMultigraph) -> Tour:
    """Deterministic Eulerian tour in time linear in m (Hierholzer)."""
    viol = eulerian_violation(g)
    if viol is not None:
        raise ValueError(f"not Eulerian: {viol}")
    if g.m == 0:
        raise ValueError("graph has no arcs")
    ptr = [0] * g.n
    start = int(g.tails[0])
    vstack = [start]
    astack: list[int] = []
    out: list[int] = []
    while vstack:
        v = vstack[-1]
        if ptr[v] < len(g.out_arcs[v]):
            e = g.out_arcs[v][ptr[v]]
            ptr[v] += 1
            vstack.append(int(g.heads[e]))
            astack.append(e)
        else:
            vstack.pop()
            if astack and vstack:
                out.append(astack.pop())
    out.reverse()
    if len(out) != g.m:
        raise AssertionError("Hierholzer did not cover every arc")
    tour = Tour.canonical(out)
    tour.validate_in(g)
    return tour


# -- degree-two flip helpers -------------------------------------------------


def flip_vertices(
    g: DirectedMultigraph, ts: TransitionSystem, vertices: Iterable[int]
) -> TransitionSystem:
    """Swap the local successor pairing at each given degree-two vertex."""
    succ = list(ts.succ)
    for v in vertices:
        ins = g.in_arcs[v]
        if len(ins) != 2:
            raise ValueError(f"vertex {v} does not have in-degree two")
        e1, e2 = ins
        succ[e1], succ[e2] = succ[e2], succ[e1]
    return TransitionSystem(tuple(succ))


def flipped_set(
    g: DirectedMultigraph, ref: TransitionSystem, ts: TransitionSystem
) -> frozenset[int]:
    """Vertices whose local pairing differs between two transition systems."""
    diff = set()
    for v in g.active_vertices():
        for e in g.in_arcs[v]:
            if ref.succ[e] != ts.succ[e]:
                diff.add(v)
                break
    return frozenset(diff)


# -- degree-one suppression ---------------------------------------------------


@dataclass(frozen=True)
class SuppressionTrace:
    """Record of degree-one suppressions, replayable in both directions.

    Each record (v, e, f, g) deleted the forced pair e->v->f and inserted the
    arc g from tail(e) to head(f).  Arc ids inside records live in a stable id
    space: original arcs keep their ids, inserted arcs get fresh ids starting
    at the original arc count.  ``reduced_to_stable`` maps the dense arc ids
    of the reduced graph back to this stable space.
    """

    records: tuple[tuple[int, int, int, int], ...]
    orig_m: int
    reduced_to_stable: tuple[int, ...]

    @property
    def reduced_m(self) -> int:
        return len(self.reduced_to_stable)


def suppress_degree_one(
    g: DirectedMultigraph,
) -> tuple[DirectedMultigraph, SuppressionTrace]:
    """Splice out forced degree-one vertices, keeping the vertex set.

    Suppressed vertices become isolated.  The reduced graph has no vertex of
    degree one unless the input collapses to the single directed-loop core,
    which the caller handles as the directed-cycle special case.
    """
    if g.m == 1 and int(g.tails[0]) == int(g.heads[0]):
        raise ValueError("single-vertex single-loop graph cannot be suppressed")
    tail = {e: int(g.tails[e]) for e in range(g.m)}
    head = {e: int(g.heads[e]) for e in range(g.m)}
    out_inc = [list(x) for x in g.out_arcs]
    in_inc = [list(x) for x in g.in_arcs]
    next_id = g.m
    records: list[tuple[int, int, int, int]] = []
    queue = [
        v for v in range(g.n) if len(out_inc[v]) == 1 and len(in_inc[v]) == 1
    ]
    for v in queue:
        e = in_inc[v][0]
        f = out_inc[v][0]
        if e == f:
            # v carries a single loop: the terminal directed-cycle core.
            continue
        gnew = next_id
        next_id += 1
        records.append((v, e, f, gnew))
        tail[gnew] = tail[e]
        head[gnew] = head[f]
        # Replace e by gnew in tail(e)'s out-list and f by gnew in
        # head(f)'s in-list, preserving incidence order.
        te, hf = tail[e], head[f]
        out_inc[te][out_inc[te].index(e)] = gnew
        in_inc[hf][in_inc[hf].index(f)] = gnew
        in_inc[v].clear()
        out_inc[v].clear()
        del tail[e], head[e], tail[f], head[f]
    alive = sorted(tail)
    stable_to_reduced = {s: i for i, s in enumerate(alive)}
    reduced = DirectedMultigraph(g.n, [(tail[s], head[s]) for s in alive])
    trace = SuppressionTrace(
        records=tuple(records),
        orig_m=g.m,
        reduced_to_stable=tuple(alive),
    )
    return reduced, trace


def lift_suppressed(
    g: DirectedMultigraph, trace: SuppressionTrace, ts: TransitionSystem
) -> TransitionSystem:
    """Lift a transition system of the reduced graph back to the original.

    The lift preserves the cycle count exactly: each record re-expands one
    arc into the forced path through the suppressed vertex.
    """
    if len(ts.succ) != trace.reduced_m:
        raise ValueError("transition system does not match the trace's reduced graph")
    succ = {
        trace.reduced_to_stable[e]: trace.reduced_to_stable[ts.succ[e]]
        for e in range(trace.reduced_m)
    }
    pred = {b: a for a, b in succ.items()}
    for v, e, f, gnew in reversed(trace.records):
        p = pred[gnew]
        nxt = succ[gnew]
        del succ[gnew], pred[gnew]
        succ[e] = f
        pred[f] = e
        if p == gnew:
            # gnew formed a one-arc cycle; it expands to the cycle (e, f)
            succ[f] = e
            pred[e] = f
        else:
            succ[p] = e
            pred[e] = p
            succ[f] = nxt
            pred[nxt] = f
    if sorted(succ) != list(range(trace.orig_m)):
        raise AssertionError("lift did not restore the original arc set")
    lifted = TransitionSystem(tuple(succ[e] for e in range(trace.orig_m)))
    lifted.validate_in(g)
    return lifted


def project_to_reduced(
    trace: SuppressionTrace, ts: TransitionSystem
) -> TransitionSystem:
    """Forward image of an original-graph transition system on the reduced graph."""
    if len(ts.succ) != trace.orig_m:
        raise ValueError("transition system does not match the trace's original graph")
    succ = {e: ts.succ[e] for e in range(trace.orig_m)}
    pred = {b: a for a, b in succ.items()}
    for v, e, f, gnew in trace.records:
        if succ[e] != f:
            raise ValueError(f"transition at suppressed vertex {v} is not forced")
        p = pred[e]
        nxt = succ[f]
        del succ[e], succ[f], pred[e], pred[f]
        if p == f:
            # the cycle (e, f) contracts to the one-arc cycle (gnew)
            succ[gnew] = gnew
            pred[gnew] = gnew
        else:
            succ[p] = gnew
            pred[gnew] = p
            succ[gnew] = nxt
            pred[nxt] = gnew
    stable_to_reduced = {s: i for i, s in enumerate(trace.reduced_to_stable)}
    out = [0] * trace.reduced_m
    for s, t in succ.items():
        out[stable_to_reduced[s]] = stable_to_reduced[t]
    return TransitionSystem(tuple(out))
