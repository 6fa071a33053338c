"""Weight-system invariants of quasi-homogeneous isolated singularities.

Exact Poincare series of the graded Milnor algebra, Milnor number, the real
Seifert block form and its eigenvalue bookkeeping, and the cyclotomic
factorization of the monodromy characteristic polynomial.  All series work
happens on integer polynomials in s = t^(1/N).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np


class InexactDivisionError(ArithmeticError):
    """The Poincare quotient has a remainder: not an IHS weight system."""


class NonIntegralMuError(ArithmeticError):
    """prod(1/w_i - 1) is not a positive integer."""


class NonGaloisStableError(ArithmeticError):
    """Exponent multiplicities are not constant on primitive residue classes."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class WeightSystem:
    """Four rational weights w_i in (0, 1); N = lcm of denominators."""

    weights: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.weights) != 4:
            raise ValueError("exactly four weights")
        for w in self.weights:
            if not 0 < w < 1:
                raise ValueError(f"weight {w} outside (0, 1)")

    @property
    def level(self) -> int:
        n = 1
        for w in self.weights:
            n = _lcm(n, w.denominator)
        return n

    @property
    def integral_weights(self) -> tuple[int, ...]:
        n = self.level
        return tuple(int(w * n) for w in self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.integral_weights)

    def is_k3_type(self) -> bool:
        """|Q| = N and all weights <= 1/2 (simple K3 hypersurface shape)."""
        return self.total_weight == self.level and all(
            w <= Fraction(1, 2) for w in self.weights
        )

    def well_formed(self) -> bool:
        """gcd of all four integral weights is 1, as is that of any three."""
        q = self.integral_weights
        if gcd(gcd(q[0], q[1]), gcd(q[2], q[3])) != 1:
            return False
        return all(
            gcd(gcd(t[0], t[1]), t[2]) == 1 for t in itertools.combinations(q, 3)
        )

    @classmethod
    def parse(cls, text: str) -> "WeightSystem":
        """Accepts ``1/3,1/4,1/4,1/6`` or integral ``4,3,3,2@12``."""
        text = text.strip()
        if "@" in text:
            qs, n = text.split("@")
            level = int(n)
            weights = tuple(Fraction(int(q), level) for q in qs.split(","))
        else:
            weights = tuple(Fraction(part.strip()) for part in text.split(","))
        return cls(weights=weights)  # type: ignore[arg-type]

    def __str__(self):
        return ",".join(str(w) for w in self.weights)


@dataclass(frozen=True)
class PuiseuxPolynomial:
    """Finitely supported integer combination of t^(e/level)."""

    level: int
    coeffs: tuple[tuple[int, int], ...]  # (e, c) sorted by e, c != 0

    @classmethod
    def from_dict(cls, level: int, d: dict[int, int]) -> "PuiseuxPolynomial":
        return cls(level=level, coeffs=tuple(sorted((e, c) for e, c in d.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def coefficient(self, exponent: Fraction | int) -> int:
        e = Fraction(exponent) * self.level
        if e.denominator != 1:
            return 0
        return self.as_dict().get(int(e), 0)

    def exponents(self) -> list[Fraction]:
        return [Fraction(e, self.level) for e, _ in self.coeffs]

    def total(self) -> int:
        return sum(c for _, c in self.coeffs)

    def terms(self) -> list[tuple[Fraction, int]]:
        return [(Fraction(e, self.level), c) for e, c in self.coeffs]

    def is_symmetric(self, center: Fraction) -> bool:
        d = self.as_dict()
        pivot = 2 * center * self.level
        if pivot.denominator != 1:
            return False
        return all(d.get(int(pivot) - e) == c for e, c in self.coeffs)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = num[:]
    while den and den[-1] == 0:
        den = den[:-1]
    if not den:
        raise ZeroDivisionError
    q = [0] * max(1, len(num) - len(den) + 1)
    # denominators here are monic up to sign, so integer division is exact
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1] // den[-1]
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    return q, num


def poincare_series(w: WeightSystem) -> PuiseuxPolynomial:
    """p(t) = prod_i (t^{w_i} - t) / (1 - t^{w_i}) expanded exactly.

    Substituting s = t^(1/N) turns every factor into a polynomial quotient
    over the integers; the division must be exact and all coefficients
    nonnegative, otherwise the weights do not describe an IHS.
    """
    n = w.level
    qs = w.integral_weights
    num = [1]
    den = [1]
    for qi in qs:
        f = [0] * (n + 1)
        f[qi] = 1
        f[n] -= 1
        num = _poly_mul(num, f)
        g = [0] * (qi + 1)
        g[0] = 1
        g[qi] = -1
        den = _poly_mul(den, g)
    quot, rem = _poly_divmod(num, den)
    if any(rem):
        raise InexactDivisionError("Poincare quotient is not a polynomial")
    if any(c < 0 for c in quot):
        raise InexactDivisionError("negative coefficient in the Poincare series")
    return PuiseuxPolynomial.from_dict(n, {e: c for e, c in enumerate(quot) if c})


def milnor_number(w: WeightSystem) -> int:
    """mu = prod(1/w_i - 1); equals the coefficient sum of the series."""
    mu = Fraction(1)
    for wi in w.weights:
        mu *= 1 / wi - 1
    if mu.denominator != 1 or mu <= 0:
        raise NonIntegralMuError(f"mu = {mu} is not a positive integer")
    return int(mu)


# ---------------------------------------------------------------------------
# real Seifert form


@dataclass(frozen=True)
class SeifertBlock:
    alpha: Fraction
    multiplicity: int
    kind: str  # "rotation" | "plus_one" | "minus_one"


@dataclass(frozen=True)
class SeifertBlockForm:
    n: int
    blocks: tuple[SeifertBlock, ...]

    def rank(self) -> int:
        return sum(
            (2 if b.kind == "rotation" else 1) * b.multiplicity for b in self.blocks
        )

    def determinant_sign(self) -> int:
        minus = sum(b.multiplicity for b in self.blocks if b.kind == "minus_one")
        return -1 if minus % 2 else 1

    def matrix(self) -> np.ndarray:
        """Float block matrix (used only for the consistency checks)."""
        mats = []
        for blk in self.blocks:
            theta = np.pi * float(blk.alpha)
            if blk.kind == "rotation":
                if self.n % 2:
                    cell = np.array(
                        [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
                    )
                else:
                    cell = np.array(
                        [[np.sin(theta), np.cos(theta)], [-np.cos(theta), np.sin(theta)]]
                    )
            else:
                cell = np.array([[1.0 if blk.kind == "plus_one" else -1.0]])
            mats.extend([cell] * blk.multiplicity)
        size = sum(m.shape[0] for m in mats)
        out = np.zeros((size, size))
        off = 0
        for m in mats:
            out[off : off + m.shape[0], off : off + m.shape[0]] = m
            off += m.shape[0]
        return out


def real_seifert(w: WeightSystem, n: int = 3) -> SeifertBlockForm:
    """Real Seifert block form from the exponent multiplicities.

    Exponents alpha < (n+1)/2 contribute rotation pairs; alpha = (n+1)/2
    contributes 1x1 blocks whose sign depends on n mod 4.
    """
    series = poincare_series(w)
    half = Fraction(n + 1, 2)
    blocks = []
    for alpha, c in series.terms():
        if alpha > half:
            continue
        if alpha < half:
            blocks.append(SeifertBlock(alpha=alpha, multiplicity=c, kind="rotation"))
        else:
            if n % 2:
                kind = "plus_one" if n % 4 == 3 else "minus_one"
            else:
                kind = "plus_one" if n % 4 == 0 else "minus_one"
            blocks.append(SeifertBlock(alpha=alpha, multiplicity=c, kind=kind))
    return SeifertBlockForm(n=n, blocks=tuple(blocks))


def eigen_dims(s: SeifertBlockForm) -> tuple[int, int]:
    """Dimensions of the +1 and -1 eigenspaces of the block matrix.

    Derived from alpha parity, never from a floating eigensolver: for odd n
    a rotation block R(pi*alpha) is +-identity iff alpha is an even/odd
    integer; for even n the criterion shifts by 1/2.
    """
    dim_plus = dim_minus = 0
    for blk in s.blocks:
        if blk.kind == "plus_one":
            dim_plus += blk.multiplicity
        elif blk.kind == "minus_one":
            dim_minus += blk.multiplicity
        else:
            a = blk.alpha
            if s.n % 2:
                if a.denominator == 1 and a % 2 == 0:
                    dim_plus += 2 * blk.multiplicity
                elif a.denominator == 1:
                    dim_minus += 2 * blk.multiplicity
            else:
                if (a - Fraction(1, 2)) % 2 == 0:
                    dim_plus += 2 * blk.multiplicity
                elif (a - Fraction(3, 2)) % 2 == 0:
                    dim_minus += 2 * blk.multiplicity
    return (dim_plus, dim_minus)


def seifert_consistency(s: SeifertBlockForm, tol: float = 1e-9) -> dict:
    """Floating-point checks of the Seifert matrix relations.

    det(L) = +-1, and the monodromy T = (-1)^n L^{-1} L^T preserves the
    intersection form I = -L - (-1)^n L^T.
    """
    L = s.matrix()
    sign = -1.0 if s.n % 2 else 1.0
    detL = float(np.linalg.det(L))
    T = sign * np.linalg.solve(L, L.T)
    I = -L - sign * L.T
    residual = float(np.max(np.abs(T.T @ I @ T - I))) if L.size else 0.0
    return {
        "det": detL,
        "det_ok": abs(abs(detL) - 1.0) <= tol,
        "monodromy_preserves_intersection": residual <= tol,
        "residual": residual,
    }


# ---------------------------------------------------------------------------
# monodromy characteristic polynomial


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _euler_phi(n: int) -> int:
    out = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            out -= out // d
        d += 1
    if m > 1:
        out -= out // m
    return out


@dataclass(frozen=True)
class CharPolyFactorization:
    """prod over d of Phi_d^e(d), Phi_d the d-th cyclotomic polynomial."""

    level: int
    exponents: tuple[tuple[int, int], ...]  # (d, e_d), e_d > 0

    def degree(self) -> int:
        return sum(e * _euler_phi(d) for d, e in self.exponents)

    def __str__(self):
        return " * ".join(
            f"Phi_{d}" + (f"^{e}" if e > 1 else "") for d, e in self.exponents
        )


def monodromy_char_poly(w: WeightSystem) -> CharPolyFactorization:
    """Characteristic polynomial of the monodromy from the exponents.

    The eigenvalue attached to exponent alpha is exp(2*pi*i*alpha), so the
    multiplicity of a primitive d-th root is the total multiplicity of its
    residue class mod 1; Galois stability of those multiplicities is
    asserted (a failure would be an internal bug, not bad input).
    """
    series = poincare_series(w)
    n = series.level
    m = [0] * n
    for e, c in series.coeffs:
        m[e % n] += c
    exps = []
    for d in _divisors(n):
        classes = [j for j in range(n) if gcd(j, n) == n // d]
        if not classes:
            continue
        values = {m[j] for j in classes}
        if len(values) > 1:
            raise NonGaloisStableError(
                f"multiplicities differ on the primitive classes of d={d}: {values}"
            )
        e = values.pop()
        if e:
            exps.append((d, e))
    return CharPolyFactorization(level=n, exponents=tuple(exps))


# ---------------------------------------------------------------------------
# the c2 identity


@dataclass(frozen=True)
class C2Report:
    c2: int
    edge_points_minus_3: int | None
    twenty_minus_rho: int | None
    passed: bool


def verify_c2_identity(
    w: WeightSystem, rho: int | None = None, l_edges: int | None = None
) -> C2Report:
    """Check c2 = l(Delta^[1]) - 3 = 20 - rho for a weight system."""
    c2 = poincare_series(w).coefficient(2)
    lhs = None if l_edges is None else l_edges - 3
    rhs = None if rho is None else 20 - rho
    ok = all(x == c2 for x in (lhs, rhs) if x is not None)
    return C2Report(c2=c2, edge_points_minus_3=lhs, twenty_minus_rho=rhs, passed=ok)
