"""Even integral lattices presented by exact Gram matrices.

Constructors for the named families (A/D/E roots in the negative-definite
convention, hyperbolic U(k), rank-one <k>, T-shaped tree lattices), direct
sums and twists, sublattices of U^a + E8^b from generator vectors, and the
derived invariants: signature, determinant, discriminant form, isotropy.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .discform import FiniteQuadraticForm
from .exactkernel import (
    DegenerateMatrixError,
    det,
    inertia,
    integer_rank,
    smith_normal_form,
)


class BadRankError(ValueError):
    """Rank outside the family's legal range."""


class OddDiagonalError(ValueError):
    """A Gram diagonal entry is odd, violating evenness."""


class DependentGeneratorsError(ValueError):
    """Sublattice generators are linearly dependent."""


class DegenerateGramError(ValueError):
    """The (sub)lattice Gram matrix is degenerate."""


@dataclass(frozen=True)
class GramLattice:
    """An even nondegenerate lattice given by a symmetric integer Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.gram)
        if n == 0:
            raise DegenerateGramError("empty lattice")
        if any(len(row) != n for row in self.gram):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            if self.gram[i][i] % 2 != 0:
                raise OddDiagonalError(f"diagonal entry {self.gram[i][i]} is odd")
            for j in range(i + 1, n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if det([list(r) for r in self.gram]) == 0:
            raise DegenerateGramError("Gram matrix is degenerate")
        if self.basis_labels is not None and len(self.basis_labels) != n:
            raise ValueError("one label per basis vector")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def norm(self, v: tuple[int, ...]) -> int:
        return sum(v[i] * self.gram[i][j] * v[j] for i in range(self.rank) for j in range(self.rank))


def _lattice(rows: list[list[int]], labels=None) -> GramLattice:
    return GramLattice(gram=tuple(tuple(r) for r in rows), basis_labels=labels)


# ---------------------------------------------------------------------------
# constructors


def _tree_gram(edges: set[tuple[int, int]], n: int) -> list[list[int]]:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def root_lattice(family: str, n: int) -> GramLattice:
    """Root lattice of type A_n, D_n or E_n, negative definite (diagonal -2)."""
    family = family.upper()
    if family == "A":
        if n < 1:
            raise BadRankError("A_n needs n >= 1")
        edges = {(i, i + 1) for i in range(n - 1)}
    elif family == "D":
        if n < 4:
            raise BadRankError("D_n needs n >= 4")
        # chain on 0..n-3 with both n-2 and n-1 attached to n-3
        edges = {(i, i + 1) for i in range(n - 3)}
        edges |= {(n - 3, n - 2), (n - 3, n - 1)}
    elif family == "E":
        if n not in (6, 7, 8):
            raise BadRankError("E_n needs n in {6, 7, 8}")
        # Bourbaki: chain 1-3-4-5-6-7-8 with 2 attached to 4 (1-based)
        chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        edges = {(a - 1, b - 1) for a, b in zip(chain, chain[1:])}
        edges.add((2 - 1, 4 - 1))
    else:
        raise BadRankError(f"unknown family {family!r}")
    return _lattice(_tree_gram(edges, n))


def hyperbolic_U(k: int = 1) -> GramLattice:
    if k < 1:
        raise ValueError("U(k) needs k >= 1")
    return _lattice([[0, k], [k, 0]])


def rank_one(k: int) -> GramLattice:
    """The lattice <k> with a single generator of norm k (k even, nonzero)."""
    if k == 0:
        raise DegenerateGramError("<0> is degenerate")
    if k % 2 != 0:
        raise OddDiagonalError("<k> needs even k")
    return _lattice([[k]])


def direct_sum(*lattices: GramLattice) -> GramLattice:
    if not lattices:
        raise ValueError("empty direct sum")
    n = sum(l.rank for l in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i][j]
        off += l.rank
    return _lattice(g)


def twist(l: GramLattice, k: int) -> GramLattice:
    """L(k): the same module with the form multiplied by k."""
    if k < 1:
        raise ValueError("twist needs k >= 1")
    return _lattice([[k * x for x in row] for row in l.gram])


def tshape(p: int, q: int, r: int) -> GramLattice:
    """Lattice of the T-shaped tree with arms p-1, q-1, r-1 (diagonal -2).

    Rank p+q+r-2; hyperbolic of signature (1, rank-1) whenever
    1/p + 1/q + 1/r < 1.  T(2,3,5) is E8, T(2,3,6) is degenerate.
    """
    if min(p, q, r) < 2:
        raise ValueError("tshape needs p, q, r >= 2")
    n = p + q + r - 2
    edges = set()
    idx = 1
    for arm in (p - 1, q - 1, r - 1):
        prev = 0
        for _ in range(arm):
            edges.add((prev, idx))
            prev = idx
            idx += 1
    return _lattice(_tree_gram(edges, n))


# ---------------------------------------------------------------------------
# ambient spaces U^a + E8^b and sublattices


E8_LABELINGS: dict[str, frozenset[tuple[int, int]]] = {
    # chain 2-3-4-5-6-7-8, node 1 on 4: the unique labeling under which every
    # tabulated representation lattice reproduces its quadratic form
    "e1branch": frozenset({(2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (1, 4)}),
    # chain 1-3-4-5-6-7-8, node 2 on 4
    "bourbaki": frozenset({(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)}),
    # chain 1-2-3-4-5-6-7, node 8 on 5
    "kac5": frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)}),
    # chain 1-2-3-4-5-6-7, node 8 on 3 (mirror of kac5)
    "kac3": frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)}),
}

DEFAULT_E8_LABELING = "e1branch"


def e8_gram(labeling: str = DEFAULT_E8_LABELING) -> GramLattice:
    try:
        edges = E8_LABELINGS[labeling]
    except KeyError:
        raise ValueError(f"unknown E8 labeling {labeling!r}") from None
    g = _tree_gram({(a - 1, b - 1) for a, b in edges}, 8)
    lat = _lattice(g)
    if invariants(lat).signature != (0, 8) or invariants(lat).det != 1:
        raise ValueError(f"labeling {labeling!r} does not describe E8")
    return lat


@dataclass(frozen=True)
class AmbientSpace:
    """U^a + E8^b with basis (u1, u2)*a then (e1..e8)*b."""

    a: int
    b: int
    e8_labeling: str = DEFAULT_E8_LABELING

    @property
    def dim(self) -> int:
        return 2 * self.a + 8 * self.b

    def lattice(self) -> GramLattice:
        parts = [hyperbolic_U(1)] * self.a + [e8_gram(self.e8_labeling)] * self.b
        if not parts:
            raise ValueError("empty ambient")
        return direct_sum(*parts)


def sublattice(ambient: AmbientSpace | GramLattice, generators) -> GramLattice:
    """Lattice spanned by integer generator vectors inside an ambient lattice."""
    amb = ambient.lattice() if isinstance(ambient, AmbientSpace) else ambient
    gens = [list(v) for v in generators]
    if not gens:
        raise DependentGeneratorsError("no generators")
    if any(len(v) != amb.rank for v in gens):
        raise ValueError("generator length must match ambient rank")
    if integer_rank(gens) < len(gens):
        raise DependentGeneratorsError("generators are linearly dependent")
    g_amb = amb.gram
    m = len(gens)
    gram = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            val = sum(
                gens[i][r] * g_amb[r][c] * gens[j][c]
                for r in range(amb.rank)
                for c in range(amb.rank)
                if gens[i][r] and g_amb[r][c]
            )
            gram[i][j] = gram[j][i] = val
    if det(gram) == 0:
        raise DegenerateGramError("sublattice Gram matrix is degenerate")
    return _lattice(gram)


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    signature: tuple[int, int]
    det: int
    delta: int  # signed discriminant number (= det)


@lru_cache(maxsize=None)
def _invariants_cached(gram: tuple[tuple[int, ...], ...]) -> LatticeInvariants:
    m = [list(r) for r in gram]
    d = det(m)
    sig = inertia(m)
    return LatticeInvariants(rank=len(gram), signature=sig, det=d, delta=d)


def invariants(l: GramLattice) -> LatticeInvariants:
    return _invariants_cached(l.gram)


@lru_cache(maxsize=None)
def _discriminant_form_cached(gram: tuple[tuple[int, ...], ...]) -> FiniteQuadraticForm:
    m = [list(r) for r in gram]
    n = len(m)
    snf = smith_normal_form(m)
    # generator lifts: y_j = (column j of right)/d_j in lattice coordinates
    lifts: list[tuple[Fraction, ...]] = []
    orders: list[int] = []
    for j in range(n):
        dj = snf.d[j]
        if dj > 1:
            orders.append(dj)
            lifts.append(tuple(Fraction(snf.right[i][j], dj) for i in range(n)))

    def pair(x, y) -> Fraction:
        return sum(
            (x[i] * m[i][j] * y[j] for i in range(n) for j in range(n)),
            Fraction(0),
        )

    q = tuple(pair(y, y) % 2 for y in lifts)
    b = tuple(tuple(pair(yi, yj) % 1 for yj in lifts) for yi in lifts)
    form = FiniteQuadraticForm(orders=tuple(orders), q=q, b=b)
    assert form.group_order == abs(det(m))
    return form


def discriminant_form(l: GramLattice) -> FiniteQuadraticForm:
    """Discriminant quadratic form on coker(G) via Smith normal form.

    Generators of order d_i carry q = y^T G y mod 2Z and b = y^T G y' mod Z
    for the SNF-derived lifts y; |group| always equals |det G|.
    """
    if det(l.rows()) == 0:
        raise DegenerateMatrixError("degenerate lattice has no discriminant form")
    return _discriminant_form_cached(l.gram)


# ---------------------------------------------------------------------------
# isotropy


@dataclass(frozen=True)
class IsotropyResult:
    verdict: str  # "isotropic" | "anisotropic" | "unknown"
    witness: tuple[int, ...] | None = None
    certificate: str | None = None
    bound: int | None = None

    def __post_init__(self):
        if self.witness is not None:
            assert any(self.witness), "witness must be nonzero"


def _primitive(v: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v) if g > 1 else v


def _search_witness(l: GramLattice, bound: int) -> tuple[int, ...] | None:
    n = l.rank
    gram = l.gram
    # grow the box so small witnesses are found early
    for radius in range(1, bound + 1):
        rng = range(-radius, radius + 1)
        for v in itertools.product(rng, repeat=n):
            if not any(v) or max(abs(x) for x in v) != radius:
                continue
            # canonical sign: first nonzero coordinate positive
            first = next(x for x in v if x)
            if first < 0:
                continue
            if l.norm(v) == 0:
                return _primitive(v)
    return None


def find_isotropic(l: GramLattice, bound: int = 10) -> IsotropyResult:
    """Existence of a nonzero vector of norm 0, with witness or certificate.

    Rank 2 is decided exactly by the discriminant-square test; definite
    lattices never represent zero; indefinite rank >= 5 always do (returned
    with a witness when the bounded search finds one); the remaining cases
    fall back to an exhaustive primitive search up to the bound.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    inv = invariants(l)
    t_plus, t_minus = inv.signature
    if l.rank == 1:
        return IsotropyResult(verdict="anisotropic", certificate="rank-1")
    if l.rank == 2:
        a, b = l.gram[0][0], l.gram[0][1]
        c = l.gram[1][1]
        disc = b * b - a * c
        if disc < 0:
            return IsotropyResult(verdict="anisotropic", certificate="binary-negative-disc")
        s = isqrt(disc)
        if s * s != disc:
            return IsotropyResult(verdict="anisotropic", certificate="binary-nonsquare-disc")
        if a == 0:
            w: tuple[int, ...] = (1, 0)
        elif c == 0:
            w = (0, 1)
        else:
            w = _primitive((s - b, a))
        assert l.norm(w) == 0
        return IsotropyResult(verdict="isotropic", witness=w, certificate="binary-square-disc")
    if t_plus == 0 or t_minus == 0:
        return IsotropyResult(verdict="anisotropic", certificate="definite")
    if l.rank >= 5:
        w = _search_witness(l, min(bound, 2))
        return IsotropyResult(
            verdict="isotropic", witness=w, certificate="indefinite-rank>=5", bound=bound
        )
    w = _search_witness(l, bound)
    if w is not None:
        return IsotropyResult(verdict="isotropic", witness=w, bound=bound)
    return IsotropyResult(verdict="unknown", bound=bound)
