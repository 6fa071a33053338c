"""Poincare series, Seifert blocks, monodromy, and the c2 identity."""
from __future__ import annotations

from fractions import Fraction

import pytest

from k3lat.singularity import (
    InexactDivisionError,
    NonIntegralMuError,
    SeifertBlock,
    SeifertBlockForm,
    WeightSystem,
    eigen_dims,
    milnor_number,
    monodromy_char_poly,
    poincare_series,
    real_seifert,
    seifert_consistency,
    verify_c2_identity,
)

K3_EXAMPLE = WeightSystem.parse("1/3,1/4,1/4,1/6")

# The 22 terms as printed; the series also carries 7*t^(11/6), which the
# printed block list and the rank-90 claim require but the displayed series
# omits.
PRINTED_TERMS = {
    Fraction(1): 1, Fraction(7, 6): 1, Fraction(5, 4): 2, Fraction(4, 3): 2,
    Fraction(17, 12): 2, Fraction(3, 2): 5, Fraction(19, 12): 4, Fraction(5, 3): 5,
    Fraction(7, 4): 6, Fraction(23, 12): 6, Fraction(2): 8, Fraction(25, 12): 6,
    Fraction(13, 6): 7, Fraction(9, 4): 6, Fraction(7, 3): 5, Fraction(29, 12): 4,
    Fraction(5, 2): 5, Fraction(31, 12): 2, Fraction(8, 3): 2, Fraction(11, 4): 2,
    Fraction(17, 6): 1, Fraction(3): 1,
}

BP_QUADRUPLES = [
    (2, 3, 7, 42), (2, 3, 8, 24), (2, 3, 9, 18), (2, 3, 10, 15), (2, 3, 12, 12),
    (2, 4, 5, 20), (2, 4, 6, 12), (2, 4, 8, 8), (2, 5, 5, 10), (2, 6, 6, 6),
    (3, 3, 4, 12), (3, 3, 6, 6), (3, 4, 4, 6), (4, 4, 4, 4),
]


def bp_weights(t):
    return WeightSystem(weights=tuple(Fraction(1, x) for x in t))


def test_weight_system_parsing():
    w = WeightSystem.parse("4,3,3,2@12")
    assert w.weights == K3_EXAMPLE.weights
    assert w.level == 12 and w.integral_weights == (4, 3, 3, 2)
    assert w.is_k3_type() and w.well_formed()
    with pytest.raises(ValueError):
        WeightSystem.parse("1/2,1/2,1/2")  # three weights
    with pytest.raises(ValueError):
        WeightSystem.parse("1,1,1,1")  # weights outside (0,1)


def test_poincare_series_paper_terms():
    series = poincare_series(K3_EXAMPLE)
    d = {a: c for a, c in series.terms()}
    for a, c in PRINTED_TERMS.items():
        assert d[a] == c, a
    assert d[Fraction(11, 6)] == 7  # the omitted symmetric partner of 13/6
    assert len(d) == 23
    assert series.coefficient(2) == 8
    assert series.coefficient(Fraction(3, 2)) == 5
    assert series.coefficient(1) == 1


def test_series_symmetry_and_range():
    for t in BP_QUADRUPLES:
        series = poincare_series(bp_weights(t))
        assert series.is_symmetric(Fraction(2))
        exps = series.exponents()
        assert min(exps) == 1 and max(exps) == 3


def test_milnor_number():
    assert milnor_number(K3_EXAMPLE) == 90
    assert milnor_number(WeightSystem.parse("1/4,1/4,1/4,1/4")) == 81
    for t in BP_QUADRUPLES:
        w = bp_weights(t)
        assert milnor_number(w) == poincare_series(w).total()


def test_non_ihs_weights_rejected():
    bad = WeightSystem.parse("2/5,2/5,2/5,2/5")
    with pytest.raises(NonIntegralMuError):
        milnor_number(bad)
    with pytest.raises(InexactDivisionError):
        poincare_series(bad)


def test_real_seifert_example():
    s = real_seifert(K3_EXAMPLE)
    assert s.rank() == 90
    assert s.determinant_sign() == 1
    by_alpha = {b.alpha: b for b in s.blocks}
    assert by_alpha[Fraction(2)].kind == "plus_one"
    assert by_alpha[Fraction(2)].multiplicity == 8
    assert by_alpha[Fraction(3, 2)].kind == "rotation"
    assert by_alpha[Fraction(3, 2)].multiplicity == 5
    assert by_alpha[Fraction(1)].kind == "rotation"
    assert by_alpha[Fraction(11, 6)].multiplicity == 7
    assert max(b.alpha for b in s.blocks) == 2  # alpha <= (n+1)/2 only


def test_parity_cases():
    # n = 3 (3 mod 4) gave plus_one above; the complementary classes:
    s1 = real_seifert(K3_EXAMPLE, n=1)  # alpha = 1 is the midpoint, n = 1 mod 4
    assert {b.kind for b in s1.blocks if b.alpha == 1} == {"minus_one"}
    s5 = real_seifert(K3_EXAMPLE, n=5)  # midpoint 3, n = 1 mod 4
    assert {b.kind for b in s5.blocks if b.alpha == 3} == {"minus_one"}
    s4 = real_seifert(K3_EXAMPLE, n=4)  # midpoint 5/2, n = 0 mod 4
    assert {b.kind for b in s4.blocks if b.alpha == Fraction(5, 2)} == {"plus_one"}
    s2 = real_seifert(K3_EXAMPLE, n=2)  # midpoint 3/2, n = 2 mod 4
    assert {b.kind for b in s2.blocks if b.alpha == Fraction(3, 2)} == {"minus_one"}


def test_eigen_dims():
    s = real_seifert(K3_EXAMPLE)
    assert eigen_dims(s) == (8, 2)
    assert eigen_dims(SeifertBlockForm(n=3, blocks=())) == (0, 0)
    # even-n rotation parity: alpha = 1/2 is the +1 rotation class
    even = SeifertBlockForm(
        n=2,
        blocks=(
            SeifertBlock(alpha=Fraction(1, 2), multiplicity=3, kind="rotation"),
            SeifertBlock(alpha=Fraction(1), multiplicity=4, kind="rotation"),
        ),
    )
    assert eigen_dims(even) == (6, 0)


def test_dim_minus_one_is_twice_c1():
    for t in BP_QUADRUPLES:
        w = bp_weights(t)
        c1 = poincare_series(w).coefficient(1)
        assert eigen_dims(real_seifert(w))[1] == 2 * c1


def test_seifert_consistency_checks():
    rep = seifert_consistency(real_seifert(K3_EXAMPLE))
    assert rep["det_ok"]
    assert rep["monodromy_preserves_intersection"]
    assert abs(rep["det"] - 1.0) < 1e-9


def test_monodromy_char_poly():
    cp = monodromy_char_poly(K3_EXAMPLE)
    assert cp.degree() == 90
    exps = dict(cp.exponents)
    # multiplicity of eigenvalue 1 (the alpha = integer classes): 1 + 8 + 1
    assert exps[1] == 10
    assert all(e > 0 for e in exps.values())
    for t in BP_QUADRUPLES:
        w = bp_weights(t)
        assert monodromy_char_poly(w).degree() == milnor_number(w)


def test_c2_identity_report():
    rep = verify_c2_identity(K3_EXAMPLE, rho=12, l_edges=11)
    assert rep.passed and rep.c2 == 8
    rep = verify_c2_identity(K3_EXAMPLE, rho=13, l_edges=11)
    assert not rep.passed
    rep = verify_c2_identity(K3_EXAMPLE)
    assert rep.passed and rep.edge_points_minus_3 is None


def test_brieskorn_pham_c2_oracle():
    """c2 equals the count of a with sum(a_i w_i) = 1, 0 <= a_i <= 1/w_i - 2."""
    import itertools

    for t in BP_QUADRUPLES:
        w = bp_weights(t)
        c2 = poincare_series(w).coefficient(2)
        count = 0
        for a in itertools.product(*(range(x - 1) for x in t)):
            if sum(Fraction(ai, x) for ai, x in zip(a, t)) == 1:
                count += 1
        assert c2 == count, t
