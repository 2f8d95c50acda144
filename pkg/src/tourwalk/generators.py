"""Eulerian test-graph generators, all Eulerian by construction."""

from __future__ import annotations

from .multigraph import DirectedMultigraph, validate_eulerian
from .rng import SplitMix64

RETRY_CAP = 1000


def _random_permutation(n: int, rng: SplitMix64) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def gen_random_eulerian(n: int, r: int, seed: int) -> DirectedMultigraph:
    """Superposition of r uniform permutation digraphs, retried until
    strongly connected."""
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    rng = SplitMix64(seed)
    for _ in range(RETRY_CAP):
        arcs = []
        for _ in range(r):
            perm = _random_permutation(n, rng)
            arcs.extend((v, perm[v]) for v in range(n))
        g = DirectedMultigraph(n, arcs)
        if validate_eulerian(g):
            return g
    raise RuntimeError(f"no strongly connected draw within {RETRY_CAP} tries")


def gen_regular2(n: int, seed: int) -> DirectedMultigraph:
    """2-in/2-out graph: two superposed random permutation digraphs."""
    return gen_random_eulerian(n, 2, seed)


def gen_bidirected(n: int, extra: int, seed: int) -> DirectedMultigraph:
    """Both directions of a random connected graph: random tree plus
    ``extra`` additional distinct non-tree edges."""
    if n < 2:
        raise ValueError("bidirected graphs need n >= 2")
    rng = SplitMix64(seed)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    want = len(edges) + extra
    max_edges = n * (n - 1) // 2
    if want > max_edges:
        raise ValueError("more edges requested than a simple graph allows")
    tries = 0
    while len(edges) < want:
        tries += 1
        if tries > RETRY_CAP * max(1, extra):
            raise RuntimeError("edge sampling stalled")
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a == b:
            continue
        edges.add((min(a, b), max(a, b)))
    arcs = []
    for u, v in sorted(edges):
        arcs.append((u, v))
        arcs.append((v, u))
    return DirectedMultigraph(n, arcs)
