"""Newton polytopes: point enumeration, exact hull, edge counts."""
from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from k3lat.polytope import (
    DegenerateDimensionError,
    EmptySupportError,
    convex_hull,
    edge_lattice_count,
    enumerate_points,
    newton_polytope,
)
from k3lat.singularity import WeightSystem

BP_QUADRUPLES = [
    (2, 3, 7, 42), (2, 3, 8, 24), (2, 3, 9, 18), (2, 3, 10, 15), (2, 3, 12, 12),
    (2, 4, 5, 20), (2, 4, 6, 12), (2, 4, 8, 8), (2, 5, 5, 10), (2, 6, 6, 6),
    (3, 3, 4, 12), (3, 3, 6, 6), (3, 4, 4, 6), (4, 4, 4, 4),
]


def test_enumerate_points_examples():
    w = WeightSystem.parse("4,3,3,2@12")
    pts = enumerate_points(w)
    assert (3, 0, 0, 0) in pts and (1, 2, 2, 4) not in pts  # 4+6+6+8 = 24 != 12
    assert (0, 4, 0, 0) in pts and (0, 0, 0, 6) in pts
    assert all(4 * a + 3 * b + 3 * c + 2 * d == 12 for a, b, c, d in pts)
    assert len(enumerate_points(WeightSystem.parse("1,1,1,1@4"))) == 35


def test_empty_support():
    with pytest.raises(EmptySupportError):
        enumerate_points(WeightSystem.parse("2/7,2/7,2/7,2/7"))


def test_hull_examples():
    poly = newton_polytope(WeightSystem.parse("4,3,3,2@12"))
    assert poly.vertices == (
        (0, 0, 0, 6), (0, 0, 4, 0), (0, 4, 0, 0), (3, 0, 0, 0)
    )
    assert len(poly.edges) == 6
    poly4 = newton_polytope(WeightSystem.parse("1,1,1,1@4"))
    assert sorted(poly4.vertices) == sorted(
        [(4, 0, 0, 0), (0, 4, 0, 0), (0, 0, 4, 0), (0, 0, 0, 4)]
    )
    with pytest.raises(DegenerateDimensionError):
        convex_hull([(0, 0, 0, 1), (1, 0, 0, 0), (2, 0, 0, -1)])
    with pytest.raises(DegenerateDimensionError):
        convex_hull([(0, 0, 0, 0)])


def test_edge_lattice_counts():
    # interior counts 0,0,2,3,1,1 over the 6 edges, plus 4 vertices
    poly = newton_polytope(WeightSystem.parse("4,3,3,2@12"))
    from math import gcd

    interiors = sorted(
        (lambda d: (lambda g: g - 1)(
            [gcd(gcd(gcd(abs(d[0]), abs(d[1])), abs(d[2])), abs(d[3]))][0]
        ))([a - b for a, b in zip(v, u)])
        for v, u in poly.edge_endpoints()
    )
    assert interiors == [0, 0, 1, 1, 2, 3]
    assert edge_lattice_count(poly) == 11
    assert edge_lattice_count(newton_polytope(WeightSystem.parse("1,1,1,1@4"))) == 22
    assert edge_lattice_count(newton_polytope(WeightSystem.parse("1,1,1,3@6"))) == 22


def test_permutation_invariance():
    base = WeightSystem.parse("4,3,3,2@12")
    want = edge_lattice_count(newton_polytope(base))
    for perm in set(itertools.permutations((4, 3, 3, 2))):
        w = WeightSystem.parse(",".join(map(str, perm)) + "@12")
        assert edge_lattice_count(newton_polytope(w)) == want


def _on_segment(p, a, b):
    d1 = tuple(x - y for x, y in zip(p, a))
    d2 = tuple(x - y for x, y in zip(b, a))
    if any(d1[i] * d2[j] != d1[j] * d2[i] for i in range(4) for j in range(4)):
        return False
    dot = sum(d1[i] * d2[i] for i in range(4))
    return 0 <= dot <= sum(x * x for x in d2)


def test_gcd_count_vs_enumeration_oracle():
    """Per-edge gcd formula against brute membership; >= 100 edges."""
    from math import gcd

    edges_checked = 0
    systems = ["%d,%d,%d,%d@%d" % (t[3] // t[0], t[3] // t[1], t[3] // t[2], 1, t[3])
               for t in BP_QUADRUPLES]
    systems += [",".join(map(str, p)) + "@12" for p in set(itertools.permutations((4, 3, 3, 2)))]
    for text in systems:
        w = WeightSystem.parse(text)
        poly = newton_polytope(w)
        for v, u in poly.edge_endpoints():
            g = 0
            for x, y in zip(v, u):
                g = gcd(g, abs(x - y))
            brute = sum(1 for p in poly.points if _on_segment(p, v, u))
            assert brute == g + 1
            edges_checked += 1
    assert edges_checked >= 100


def test_containment_invariant():
    for t in BP_QUADRUPLES[:6]:
        w = WeightSystem(weights=tuple(Fraction(1, x) for x in t))
        poly = newton_polytope(w)
        assert all(poly.contains(p) for p in poly.points)
        assert all(v in poly.points for v in poly.vertices)
        # a far outside point is rejected
        assert not poly.contains((poly.vertices[0][0] + 50, 0, 0, 0))
