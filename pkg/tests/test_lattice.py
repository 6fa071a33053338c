"""Lattice constructors, invariants, discriminant forms, isotropy."""
from __future__ import annotations

import random
from math import gcd

import pytest

from k3lat.discform import is_isomorphic
from k3lat.exactkernel import mat_mul
from k3lat.lattice import (
    AmbientSpace,
    BadRankError,
    DegenerateGramError,
    DependentGeneratorsError,
    GramLattice,
    OddDiagonalError,
    direct_sum,
    discriminant_form,
    find_isotropic,
    hyperbolic_U,
    invariants,
    rank_one,
    root_lattice,
    sublattice,
    tshape,
    twist,
)
from k3lat.catalog import parse_form


def test_root_lattice_examples():
    a3 = invariants(root_lattice("A", 3))
    assert (a3.rank, a3.det) == (3, -4)
    assert discriminant_form(root_lattice("A", 3)).orders == (4,)
    d4 = root_lattice("D", 4)
    assert invariants(d4).det == 4
    f = discriminant_form(d4)
    assert f.orders == (2, 2)
    assert is_isomorphic(f, parse_form("v(1)"))
    e7 = root_lattice("E", 7)
    assert invariants(e7).det == -2
    assert is_isomorphic(discriminant_form(e7), parse_form("w(2,1,1)"))


def test_bad_ranks():
    with pytest.raises(BadRankError):
        root_lattice("A", 0)
    with pytest.raises(BadRankError):
        root_lattice("D", 3)
    with pytest.raises(BadRankError):
        root_lattice("E", 9)


def test_hyperbolic_and_twist():
    u1 = hyperbolic_U(1)
    assert invariants(u1).det == -1
    assert discriminant_form(u1).orders == ()
    u3 = hyperbolic_U(3)
    assert invariants(u3).det == -9
    f3 = discriminant_form(u3)
    assert f3.orders == (3, 3)
    assert is_isomorphic(f3, parse_form("w(3,1,1)|w(3,1,-1)"))
    assert invariants(hyperbolic_U(4)).det == -16
    assert twist(hyperbolic_U(1), 2).gram == hyperbolic_U(2).gram


def test_rank_one_and_sums():
    assert invariants(rank_one(4)).det == 4
    assert is_isomorphic(discriminant_form(rank_one(4)), parse_form("w(2,2,1)"))
    l = direct_sum(hyperbolic_U(1), root_lattice("A", 1))
    inv = invariants(l)
    assert (inv.rank, abs(inv.det)) == (3, 2)
    with pytest.raises(OddDiagonalError):
        rank_one(3)
    with pytest.raises(DegenerateGramError):
        rank_one(0)


def test_tshape_rows():
    t = tshape(2, 3, 7)
    inv = invariants(t)
    assert (inv.rank, inv.det, inv.signature) == (10, -1, (1, 9))
    t = tshape(2, 5, 5)
    assert invariants(t).det == -5
    assert is_isomorphic(discriminant_form(t), parse_form("w(5,1,-1)"))
    t = tshape(4, 4, 4)
    assert invariants(t).det == -16
    assert is_isomorphic(discriminant_form(t), parse_form("v(2)"))
    # positive-definite case still builds (T(2,3,5) = E8 shape)
    assert invariants(tshape(2, 3, 5)).signature == (0, 8)
    # the parabolic case is degenerate
    with pytest.raises(DegenerateGramError):
        tshape(2, 3, 6)


def test_tshape_determinant_formula():
    """|det T(p,q,r)| = |pqr - pq - qr - rp| over the whole table range."""
    from fractions import Fraction

    count = 0
    for p in range(2, 5):
        for q in range(p, 8):
            for r in range(q, 28):
                if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
                    continue
                t = tshape(p, q, r)
                inv = invariants(t)
                assert abs(inv.det) == abs(p * q * r - p * q - q * r - r * p)
                assert inv.signature == (1, inv.rank - 1)
                count += 1
    assert count >= 53


def test_sublattice_examples():
    amb = AmbientSpace(1, 0)
    s = sublattice(amb, [(1, 1), (2, -1)])
    assert s.gram == ((2, 1), (1, -4))
    assert invariants(s).det == -9
    assert is_isomorphic(discriminant_form(s), parse_form("w(3,2,1)"))

    amb2 = AmbientSpace(1, 1)
    vecs = [(1, 1) + (0,) * 8, (1, 0, 0, 0, 0, 1, 0, 0, 0, 0)]
    s2 = sublattice(amb2, vecs)
    assert s2.gram == ((2, 1), (1, -2))
    assert invariants(s2).det == -5
    assert is_isomorphic(discriminant_form(s2), parse_form("w(5,1,-1)"))

    with pytest.raises(DegenerateGramError):
        sublattice(AmbientSpace(1, 0), [(1, 0)])  # isotropic generator
    with pytest.raises(DependentGeneratorsError):
        sublattice(AmbientSpace(1, 0), [(1, 1), (2, 2)])


def test_invariants_examples():
    e8 = invariants(root_lattice("E", 8))
    assert (e8.rank, e8.signature, e8.det, e8.delta) == (8, (0, 8), 1, 1)
    ue8 = invariants(direct_sum(hyperbolic_U(1), root_lattice("E", 8)))
    assert (ue8.rank, ue8.signature, ue8.det) == (10, (1, 9), -1)
    a4 = invariants(root_lattice("A", 4))
    assert (a4.rank, a4.signature, a4.det) == (4, (0, 4), 5)


def test_discriminant_form_examples():
    a1 = discriminant_form(root_lattice("A", 1))
    assert a1.orders == (2,)
    assert str(a1.q[0]) == "3/2"
    assert discriminant_form(root_lattice("E", 8)).orders == ()
    d5 = discriminant_form(root_lattice("D", 5))
    assert d5.orders == (4,)
    assert is_isomorphic(d5, parse_form("w(2,2,-5)"))


def _pool():
    out = [root_lattice("A", n) for n in range(1, 8)]
    out += [root_lattice("D", n) for n in range(4, 9)]
    out += [root_lattice("E", n) for n in (6, 7, 8)]
    out += [hyperbolic_U(k) for k in (1, 2, 3, 4)]
    out += [rank_one(k) for k in (2, 4, -2, -4, -8)]
    return out


def test_discriminant_form_additive_over_direct_sum():
    """disc(L + M) ~ disc(L) | disc(M); >= 100 pairs within the iso cap."""
    from k3lat.discform import orth_sum

    pool = _pool()
    checked = 0
    for i, a in enumerate(pool):
        for b in pool[i:]:
            da, db = discriminant_form(a), discriminant_form(b)
            if da.group_order * db.group_order > 512:
                continue
            ds = discriminant_form(direct_sum(a, b))
            assert is_isomorphic(ds, orth_sum(da, db))
            checked += 1
    assert checked >= 100


def test_group_order_equals_det():
    for lat in _pool():
        inv = invariants(lat)
        assert discriminant_form(lat).group_order == abs(inv.det)


def test_isotropy_examples():
    res = find_isotropic(GramLattice(((2, 1), (1, -2))))
    assert res.verdict == "anisotropic"
    l = direct_sum(rank_one(2), root_lattice("A", 1), root_lattice("A", 2))
    res = find_isotropic(l)
    assert res.verdict == "isotropic"
    assert res.witness is not None and l.norm(res.witness) == 0
    res = find_isotropic(hyperbolic_U(1))
    assert res.verdict == "isotropic" and res.witness == (1, 0)
    # definite lattices never represent zero
    assert find_isotropic(root_lattice("D", 5)).verdict == "anisotropic"
    # rank >= 5 indefinite: isotropic by Meyer's theorem
    big = direct_sum(hyperbolic_U(1), root_lattice("A", 3))
    assert find_isotropic(big).verdict == "isotropic"


def test_isotropy_congruence_stability():
    """Verdicts survive unimodular base change; witnesses transform."""
    from k3lat.exactkernel import unimodular_inverse

    rng = random.Random(4242)
    cases = [
        GramLattice(((2, 1), (1, -2))),
        hyperbolic_U(1),
        direct_sum(rank_one(2), root_lattice("A", 1)),
        root_lattice("A", 3),
        direct_sum(hyperbolic_U(2), root_lattice("A", 2)),
    ]
    for lat in cases:
        n = lat.rank
        base = find_isotropic(lat, bound=12)
        for _ in range(8):
            p = [[int(i == j) for j in range(n)] for i in range(n)]
            for _ in range(4):
                i, j = rng.randrange(n), rng.randrange(n)
                c = rng.randint(-1, 1)
                if i != j:
                    for k in range(n):
                        p[i][k] += c * p[j][k]
            pt = [list(r) for r in zip(*p)]
            g2 = mat_mul(mat_mul(pt, lat.rows()), p)
            lat2 = GramLattice(tuple(tuple(r) for r in g2))
            res2 = find_isotropic(lat2, bound=40)
            assert res2.verdict == base.verdict
            if base.witness is not None:
                pinv = unimodular_inverse(p)
                moved = tuple(
                    sum(pinv[i][j] * base.witness[j] for j in range(n)) for i in range(n)
                )
                assert lat2.norm(moved) == 0


def test_evenness_enforced():
    with pytest.raises(OddDiagonalError):
        GramLattice(((1, 0), (0, 2)))
    with pytest.raises(DegenerateGramError):
        GramLattice(((2, 2), (2, 2)))
