"""Eulerian tours as one-cycle transition systems.

A transition system picks, at every vertex, a bijection from incoming to
outgoing arcs; following those choices walks a permutation of the arc set.
The system is an Eulerian tour exactly when that permutation is one cycle.
This script builds a few small multigraphs, finds tours with Hierholzer's
algorithm, and counts cycles of flipped systems.
"""

from tourwalk.multigraph import (
    DirectedMultigraph,
    TransitionSystem,
    cycle_count,
    flip_vertices,
    hierholzer_tour,
    validate_eulerian,
)
from tourwalk.oracle import best_count, enumerate_tours

print("== directed 3-cycle ==")
g = DirectedMultigraph(3, [(0, 1), (1, 2), (2, 0)])
print("Eulerian:", validate_eulerian(g))
tour = hierholzer_tour(g)
print("Hierholzer tour:", tour.arcs)

print("\n== two parallel pairs u <-> v ==")
g = DirectedMultigraph(2, [(0, 1), (1, 0), (0, 1), (1, 0)])
tour = hierholzer_tour(g)
ts = TransitionSystem.from_tour(tour)
print("reference tour:", tour.arcs)

# Each vertex of a 2-in/2-out graph has exactly two local pairings, so a
# transition system is a subset of flipped vertices relative to the tour.
for flips in ([], [0], [1], [0, 1]):
    k, cycles = cycle_count(g, flip_vertices(g, ts, flips))
    print(f"flip {flips!s:>8}: {k} cycle(s) {cycles}")

print("\n== census and the BEST count agree ==")
tri = DirectedMultigraph(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)])
census = enumerate_tours(tri)
print("bidirected triangle tours:", census.count, "| BEST:", best_count(tri))
for t in census.tours:
    print("  ", t.arcs)
