"""Finite quadratic forms: fundamentals, signatures, isomorphy, Nikulin."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from k3lat.discform import (
    BadEpsilonError,
    CapExceededError,
    FundamentalFormSpec,
    enumerate_forms,
    form_from_specs,
    is_isomorphic,
    iso_test,
    make_fundamental,
    nikulin_exists,
    nikulin_unique,
    orth_sum,
    signature_formula,
    signature_gauss,
    str_of_specs,
)
from k3lat.lattice import discriminant_form, root_lattice
from k3lat.catalog import parse_form, parse_form_specs


W = lambda p, k, e: FundamentalFormSpec("w", p, k, e)
UU = lambda k: FundamentalFormSpec("u", 2, k)
VV = lambda k: FundamentalFormSpec("v", 2, k)


def test_fundamental_values():
    f = make_fundamental(W(2, 1, -1))
    assert f.q == (Fraction(3, 2),)  # -1/2 mod 2Z
    v1 = make_fundamental(VV(1))
    assert v1.q == (Fraction(1), Fraction(1))
    assert v1.b[0][1] == Fraction(1, 2)
    # oracle: q(A2) is the odd-p representative with a = 4
    w311 = make_fundamental(W(3, 1, 1))
    assert w311.q == (Fraction(4, 3),)
    assert is_isomorphic(discriminant_form(root_lattice("A", 2)), w311)


def test_bad_epsilon():
    with pytest.raises(BadEpsilonError):
        make_fundamental(W(3, 1, 5))
    with pytest.raises(BadEpsilonError):
        make_fundamental(W(2, 1, 3))
    with pytest.raises(BadEpsilonError):
        make_fundamental(W(4, 1, 1))  # not prime


def test_orth_sum_examples():
    triv = form_from_specs([])
    q = make_fundamental(W(7, 1, 1))
    assert orth_sum(triv, q) == q
    z6 = orth_sum(make_fundamental(W(2, 1, 1)), make_fundamental(W(3, 1, -1)))
    assert z6.orders == (6,)
    assert is_isomorphic(z6, discriminant_form(root_lattice("A", 5)))


def test_signature_additivity_random():
    rng = random.Random(5)
    pool = [W(2, 1, 1), W(2, 1, -1), W(2, 2, 5), W(3, 1, 1), W(3, 1, -1),
            W(5, 1, 1), UU(1), VV(1), W(7, 1, -1), W(2, 3, -5)]
    for _ in range(120):
        a = rng.choice(pool)
        b = rng.choice(pool)
        sa, sb = signature_formula([a]), signature_formula([b])
        assert signature_formula([a, b]) == (sa + sb) % 8
    # gauss agreement on a sample of the sums
    for a, b in itertools.combinations(pool, 2):
        form = form_from_specs([a, b])
        assert signature_gauss(form) == signature_formula([a, b])


def test_two_signature_paths_agree_on_fundamentals():
    """Formula vs Gauss sum on every fundamental with p^k <= 64."""
    specs = []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        k = 1
        while p**k <= 64:
            eps_values = (1, -1, 5, -5) if p == 2 else (1, -1)
            for e in eps_values:
                specs.append(W(p, k, e))
            k += 1
    for k in (1, 2, 3):
        specs.append(UU(k))
        specs.append(VV(k))
    assert len(specs) > 40
    for s in specs:
        form = make_fundamental(s)
        assert signature_gauss(form) == signature_formula([s]), s


def test_signature_gauss_examples():
    assert signature_gauss(discriminant_form(root_lattice("A", 2))) == 6
    assert signature_gauss(form_from_specs([])) == 0
    assert signature_gauss(discriminant_form(root_lattice("D", 4))) == 4


def test_gauss_cap():
    with pytest.raises(CapExceededError):
        signature_gauss(make_fundamental(W(2, 17, 1)), cap=2**16)
    # raising the cap admits the computation
    assert signature_gauss(make_fundamental(W(2, 17, 1)), cap=2**18) == 1


def test_length():
    assert form_from_specs([]).length() == 0
    assert form_from_specs([W(2, 1, -1)] * 5).length() == 5
    z3z27 = form_from_specs([W(3, 1, 1), W(3, 3, -1)])
    assert z3z27.orders == (3, 27)
    assert z3z27.length() == 2


def test_iso_examples():
    u1 = make_fundamental(UU(1))
    assert is_isomorphic(discriminant_form(root_lattice("D", 8)), u1)
    # distinct q-value multisets: {1/2} vs {3/2}
    assert not is_isomorphic(make_fundamental(W(2, 1, 1)), make_fundamental(W(2, 1, -1)))
    for expr in ("u(1)", "v(2)", "w(2,2,5)|w(3,1,-1)", "w(2,1,1)^3"):
        f = parse_form(expr)
        assert is_isomorphic(f, f)


def test_iso_witness_is_a_full_isomorphism():
    """The witness must transport q pointwise, not just on generators."""
    a = parse_form("w(2,2,1)|w(2,2,-5)")
    b = parse_form("w(2,2,-1)|w(2,2,5)")
    wit = iso_test(a, b)
    assert wit is not None
    for x in a.elements():
        img = tuple(
            sum(x[i] * wit[i][c] for i in range(len(wit))) % b.orders[c]
            for c in range(len(b.orders))
        )
        assert b.q_of(img) == a.q_of(x)


def test_iso_symmetry_on_table_forms():
    exprs = ["u(1)", "v(1)", "w(2,3,1)", "w(3,2,-1)", "w(2,1,1)|w(3,1,1)",
             "w(2,2,5)", "w(5,1,-1)", "u(2)", "v(2)"]
    for e1, e2 in itertools.combinations(exprs, 2):
        a, b = parse_form(e1), parse_form(e2)
        assert (iso_test(a, b) is not None) == (iso_test(b, a) is not None)


def test_iso_cap():
    big = form_from_specs([W(2, 11, 1)])
    with pytest.raises(CapExceededError):
        iso_test(big, big)


def test_nikulin_examples():
    triv = form_from_specs([])
    assert nikulin_exists(1, 17, triv).verdict is True
    # (1,2): none of the five Z_2^2 forms has signature 7 mod 8
    z22 = ["w(2,1,1)^2", "w(2,1,1)|w(2,1,-1)", "w(2,1,-1)^2", "u(1)", "v(1)"]
    for expr in z22:
        rep = nikulin_exists(1, 2, parse_form(expr))
        assert rep.verdict is False
        assert rep.conditions[0][1] is False  # condition (i) fails
    rep = nikulin_exists(0, 0, parse_form("w(2,1,1)"))
    assert rep.verdict is False and rep.conditions[1][1] is False

    assert nikulin_unique(1, 9, triv).verdict == "unique"
    assert nikulin_unique(1, 1, parse_form("w(5,1,-1)")).verdict == "inapplicable"
    a6 = discriminant_form(root_lattice("A", 6))
    assert nikulin_unique(1, 15, a6).verdict == "unique"


def test_enumerate_small_blocks():
    res = enumerate_forms(3, 4)
    assert [(f.orders, str_of_specs(s)) for f, s in res] == [((4,), "w(2,2,-1)")]
    # (1,1): the trivial form has sigma 0 != 2-1, so the signature filter
    # leaves nothing (no even unimodular lattice of rank one exists)
    assert enumerate_forms(1, 1) == []
    # (2,1): the trivial form survives (realized by U)
    assert [str_of_specs(s) for _, s in enumerate_forms(2, 1)] == ["triv"]


def test_enumerate_6_16():
    """Three classes; the paper's two Z_4^2 rows are one class and the odd
    type-I class on Z_2^4 completes the count."""
    res = enumerate_forms(6, 16)
    names = [str_of_specs(s) for _, s in res]
    assert len(res) == 3
    groups = sorted(f.orders for f, _ in res)
    assert groups == [(2, 2, 2, 2), (2, 2, 2, 2), (4, 4)]
    forms = {n: f for (f, s), n in zip(res, names)}
    assert is_isomorphic(parse_form("u(1)|v(1)"), parse_form(names[0])) or any(
        is_isomorphic(parse_form("u(1)|v(1)"), f) for f in forms.values()
    )
    # the two printed Z_4^2 rows are isomorphic
    assert is_isomorphic(parse_form("w(2,2,1)|w(2,2,-5)"), parse_form("w(2,2,-1)|w(2,2,5)"))
    # and U + A1^4 realizes the class the paper does not print
    assert any(
        is_isomorphic(parse_form("w(2,1,1)^4"), f) for f in forms.values()
    )


def test_canonical_expr_roundtrip():
    from k3lat.discform import canonical_expr

    for expr in ("u(1)", "w(2,2,-5)", "w(2,1,1)|w(3,1,-1)", "triv"):
        form = parse_form(expr)
        back = canonical_expr(form)
        assert back is not None
        assert is_isomorphic(parse_form(back), form)
