"""Chord diagrams decide which vertex flips keep a single tour.

Writing a degree-two tour around a circle, each vertex owns the two
positions where its incoming arcs sit; flipping a subset S of vertices
yields 1 + nullity_F2(I[S,S]) circuits, where I is the chord crossing
matrix.  Bouchet's signing upgrades the mod-2 test to an integer one:
det(A[S,S]) is 1 when the flip stays a tour and 0 otherwise.
"""

import itertools

from tourwalk.chords import (
    circuit_count_from_flip,
    diagram_from_pairs,
    feasible,
    graph_from_diagram,
    interlacement_f2,
    principal_det_int,
    signed_interlacement,
)
from tourwalk.multigraph import TransitionSystem, cycle_count, flip_vertices

print("== a crossing pair and a nested pair ==")
for name, pairs in (
    ("crossing", {0: (0, 2), 1: (1, 3)}),
    ("nested", {0: (0, 3), 1: (1, 2)}),
):
    cd = diagram_from_pairs(pairs)
    print(f"{name} diagram:\n{cd}")
    print("crossing matrix:\n", interlacement_f2(cd).to_array())
    print("signed matrix:\n", signed_interlacement(cd))
    print()

print("== the three feasibility tests always agree ==")
cd = diagram_from_pairs({0: (0, 4), 1: (1, 3), 2: (2, 5)})
g, tour = graph_from_diagram(cd)
a = signed_interlacement(cd)
ref = TransitionSystem.from_tour(tour)
print("S        det  circuits  direct")
for r in range(4):
    for subset in itertools.combinations(range(3), r):
        det = principal_det_int(a, subset)
        circuits = circuit_count_from_flip(cd, subset)
        ts = flip_vertices(g, ref, [cd.vertices[i] for i in subset])
        direct, _ = cycle_count(g, ts)
        mark = "tour" if feasible(cd, a, subset) else ""
        print(f"{str(set(subset)):8} {det}    {circuits}         {direct}   {mark}")
        assert circuits == direct and (det == 1) == (direct == 1)

print("\nodd subsets are never feasible: a skew matrix has no odd support")
