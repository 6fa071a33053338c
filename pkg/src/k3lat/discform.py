"""Finite quadratic forms on finite abelian groups.

A form is stored in invariant-factor presentation: generators g1..gm of
orders d1 | d2 | ... | dm (each > 1), quadratic values q(gi) in Q/2Z and
bilinear values b(gi, gj) in Q/Z.  The fundamental building blocks are
w(p, k, eps) on Z/p^k, and u(k), v(k) on (Z/2^k)^2; every nondegenerate
form is an orthogonal sum of these.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactkernel import smith_normal_form, unimodular_inverse


class BadEpsilonError(ValueError):
    """eps is not a legal unit for the requested fundamental form."""


class CapExceededError(ValueError):
    """The group is larger than the configured cap for this operation."""


class NondegenerateBilinearViolated(ArithmeticError):
    """Gauss sum magnitude != sqrt(|G|): the bilinear form is degenerate."""


GAUSS_CAP = 2**16
ISO_CAP = 1024


def _mod2(x: Fraction) -> Fraction:
    return x % 2


def _mod1(x: Fraction) -> Fraction:
    return x % 1


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = len(self.orders)
        if len(self.q) != m or len(self.b) != m or any(len(row) != m for row in self.b):
            raise ValueError("inconsistent presentation sizes")
        for i in range(1, m):
            if self.orders[i] % self.orders[i - 1] != 0:
                raise ValueError("orders must form a divisibility chain")
        for i, d in enumerate(self.orders):
            if d <= 1:
                raise ValueError("invariant factors must be > 1")
            if not 0 <= self.q[i] < 2:
                raise ValueError("q values live in [0, 2)")
            if (d * d * self.q[i]) % 2 != 0:
                raise ValueError(f"d^2*q(g{i}) must vanish mod 2Z")
            for j in range(m):
                if not 0 <= self.b[i][j] < 1:
                    raise ValueError("b values live in [0, 1)")
                if self.b[i][j] != self.b[j][i]:
                    raise ValueError("bilinear matrix must be symmetric")
                if (d * self.b[i][j]) % 1 != 0:
                    raise ValueError("d*b(gi,gj) must vanish mod Z")
            if (self.q[i] - self.b[i][i]) % 1 != 0:
                raise ValueError("b(g,g) must equal q(g) mod Z")

    @property
    def group_order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def length(self) -> int:
        """Minimal number of generators of the underlying group."""
        return len(self.orders)

    def q_of(self, x: tuple[int, ...]) -> Fraction:
        """q(sum x_i g_i) mod 2Z."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                total += xi * xi * self.q[i]
        for i in range(len(x)):
            for j in range(i + 1, len(x)):
                if x[i] and x[j]:
                    total += 2 * x[i] * x[j] * self.b[i][j]
        return _mod2(total)

    def b_of(self, x: tuple[int, ...], y: tuple[int, ...]) -> Fraction:
        """b(x, y) mod Z."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * self.b[i][j]
        return _mod1(total)

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def element_order(self, x: tuple[int, ...]) -> int:
        order = 1
        for xi, d in zip(x, self.orders):
            if xi:
                g = d // _gcd(xi, d)
                order = order * g // _gcd(order, g)
        return order

    def __str__(self):
        if not self.orders:
            return "triv"
        parts = [f"Z{d}" for d in self.orders]
        return "x".join(parts)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


TRIVIAL_FORM = FiniteQuadraticForm(orders=(), q=(), b=())


def from_generators(
    orders: list[int], q: list[Fraction], b: list[list[Fraction]]
) -> FiniteQuadraticForm:
    """Renormalize an arbitrary generator presentation to invariant factors.

    The relation matrix diag(orders) is put into Smith form; new generators
    are integer combinations of the old ones and their q/b values follow by
    bilinearity.  Order-1 generators are dropped.
    """
    m = len(orders)
    if m == 0:
        return TRIVIAL_FORM
    rel = [[orders[i] if i == j else 0 for j in range(m)] for i in range(m)]
    snf = smith_normal_form(rel)
    uinv = unimodular_inverse([list(row) for row in snf.left])
    # new generator j = sum_i uinv[i][j] * g_i, of order snf.d[j]
    new_orders = list(snf.d)
    coords = [[uinv[i][j] for i in range(m)] for j in range(m)]

    def q_of(vec):
        total = Fraction(0)
        for i, xi in enumerate(vec):
            if xi:
                total += xi * xi * q[i]
        for i in range(m):
            for j in range(i + 1, m):
                if vec[i] and vec[j]:
                    total += 2 * vec[i] * vec[j] * b[i][j]
        return _mod2(total)

    def b_of(vx, vy):
        total = Fraction(0)
        for i, xi in enumerate(vx):
            if xi:
                for j, yj in enumerate(vy):
                    if yj:
                        total += xi * yj * b[i][j]
        return _mod1(total)

    keep = [j for j in range(m) if new_orders[j] > 1]
    out_orders = tuple(new_orders[j] for j in keep)
    out_q = tuple(q_of(coords[j]) for j in keep)
    out_b = tuple(tuple(b_of(coords[i], coords[j]) for j in keep) for i in keep)
    return FiniteQuadraticForm(orders=out_orders, q=out_q, b=out_b)


# ---------------------------------------------------------------------------
# fundamental forms


@dataclass(frozen=True)
class FundamentalFormSpec:
    """One block of a fundamental decomposition: w(p,k,eps), u(k) or v(k)."""

    kind: str  # "w" | "u" | "v"
    p: int
    k: int
    eps: int = 0

    def __str__(self):
        if self.kind == "w":
            return f"w({self.p},{self.k},{self.eps})"
        return f"{self.kind}({self.k})"


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, f = n - 1, 0
    while d % 2 == 0:
        d //= 2
        f += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(f - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_w_representative(p: int, eps: int) -> int:
    """Smallest positive even a coprime to p with Jacobi symbol (a/p) = eps.

    Evenness makes a/p^k a legal quadratic value mod 2Z; the Jacobi symbol
    pins the square class.  This reproduces q(A2) = w(3,1,1) from the A-series
    discriminant forms.
    """
    a = 2
    while True:
        if a % p != 0 and _jacobi(a, p) == eps:
            return a
        a += 2


def make_fundamental(spec: FundamentalFormSpec) -> FiniteQuadraticForm:
    p, k, eps = spec.p, spec.k, spec.eps
    if k < 1:
        raise BadEpsilonError("k must be >= 1")
    if spec.kind == "w":
        if not _is_prime(p):
            raise BadEpsilonError(f"{p} is not prime")
        if p == 2:
            if eps not in (1, -1, 5, -5):
                raise BadEpsilonError("eps must be +-1 or +-5 for p = 2")
            qval = _mod2(Fraction(eps, 2**k))
            return FiniteQuadraticForm(
                orders=(2**k,), q=(qval,), b=((_mod1(qval),),)
            )
        if eps not in (1, -1):
            raise BadEpsilonError("eps must be +-1 for odd p")
        a = odd_w_representative(p, eps)
        qval = _mod2(Fraction(a, p**k))
        return FiniteQuadraticForm(orders=(p**k,), q=(qval,), b=((_mod1(qval),),))
    if spec.kind == "u":
        d = 2**k
        h = Fraction(1, d)
        return FiniteQuadraticForm(
            orders=(d, d),
            q=(Fraction(0), Fraction(0)),
            b=((Fraction(0), h), (h, Fraction(0))),
        )
    if spec.kind == "v":
        d = 2**k
        dg = _mod2(Fraction(2, d))
        h = Fraction(1, d)
        return FiniteQuadraticForm(
            orders=(d, d),
            q=(dg, dg),
            b=((_mod1(dg), h), (h, _mod1(dg))),
        )
    raise BadEpsilonError(f"unknown fundamental kind {spec.kind!r}")


def orth_sum(a: FiniteQuadraticForm, b: FiniteQuadraticForm) -> FiniteQuadraticForm:
    """Orthogonal sum, renormalized to invariant-factor presentation."""
    if not a.orders:
        return b
    if not b.orders:
        return a
    orders = list(a.orders) + list(b.orders)
    q = list(a.q) + list(b.q)
    m, n = len(a.orders), len(b.orders)
    bil = [[Fraction(0)] * (m + n) for _ in range(m + n)]
    for i in range(m):
        for j in range(m):
            bil[i][j] = a.b[i][j]
    for i in range(n):
        for j in range(n):
            bil[m + i][m + j] = b.b[i][j]
    return from_generators(orders, q, bil)


def form_from_specs(specs: list[FundamentalFormSpec]) -> FiniteQuadraticForm:
    total = TRIVIAL_FORM
    for s in specs:
        total = orth_sum(total, make_fundamental(s))
    return total


# ---------------------------------------------------------------------------
# signatures


def signature_formula(specs: list[FundamentalFormSpec]) -> int:
    """Signature mod 8 of a formal orthogonal sum of fundamental forms.

    For odd p the unit eps enters through eta with eps = (-1)^eta; the
    Gauss-sum path cross-validates this reading on every tabulated form.
    """
    sigma = 0
    for s in specs:
        if s.kind == "u":
            sigma += 0
        elif s.kind == "v":
            sigma += 4 * s.k
        elif s.p == 2:
            omega = 0 if s.eps in (1, -1) else 1
            sigma += s.eps + 4 * s.k * omega
        else:
            eta = (1 - s.eps) // 2
            sigma += s.k * s.k * (1 - s.p) + 4 * s.k * eta
    return sigma % 8


def signature_gauss(form: FiniteQuadraticForm, cap: int = GAUSS_CAP) -> int:
    """Signature mod 8 via the Milgram Gauss sum (floating-point oracle).

    sum_x exp(pi*i*q(x)) = sqrt(|G|) * exp(2*pi*i*sigma/8); the magnitude is
    asserted to 1e-6 relative error, which also certifies nondegeneracy.
    """
    n = form.group_order
    if n > cap:
        raise CapExceededError(f"group order {n} exceeds Gauss-sum cap {cap}")
    if n == 1:
        return 0
    m = len(form.orders)
    shape = tuple(form.orders)
    phase = np.zeros(shape)
    axes = []
    for i, d in enumerate(form.orders):
        x = np.arange(d)
        sh = [1] * m
        sh[i] = d
        axes.append(x.reshape(sh))
    for i in range(m):
        phase = phase + float(form.q[i]) * (axes[i] ** 2)
        for j in range(i + 1, m):
            bij = float(form.b[i][j])
            if bij:
                phase = phase + 2.0 * bij * axes[i] * axes[j]
    total = np.exp(1j * np.pi * phase).sum()
    mag = abs(total)
    root = n**0.5
    if abs(mag - root) > 1e-6 * root:
        raise NondegenerateBilinearViolated(
            f"|Gauss sum| = {mag:.6g}, expected sqrt({n}) = {root:.6g}"
        )
    angle = float(np.angle(total)) / (np.pi / 4)
    sigma = round(angle)
    if abs(angle - sigma) > 1e-6:
        raise NondegenerateBilinearViolated(
            f"Gauss-sum phase {angle:.6g} is not a multiple of pi/4"
        )
    return sigma % 8


@lru_cache(maxsize=None)
def _cached_signature(form: FiniteQuadraticForm) -> int:
    return signature_gauss(form)


def signature_of(form: FiniteQuadraticForm, cap: int = GAUSS_CAP) -> int:
    if form.group_order > cap:
        raise CapExceededError(f"group order {form.group_order} exceeds cap")
    return _cached_signature(form)


# ---------------------------------------------------------------------------
# isomorphism testing


@lru_cache(maxsize=None)
def _value_profile(form: FiniteQuadraticForm):
    prof: dict[tuple[int, Fraction], int] = {}
    for x in form.elements():
        key = (form.element_order(x), form.q_of(x))
        prof[key] = prof.get(key, 0) + 1
    return tuple(sorted(prof.items()))


def iso_test(
    a: FiniteQuadraticForm, b: FiniteQuadraticForm, cap: int = ISO_CAP
) -> list[tuple[int, ...]] | None:
    """Explicit isomorphism between finite quadratic forms, or None.

    Backtracks over generator images preserving orders, q and b; the
    returned witness maps generator i of `a` to the coordinate tuple
    witness[i] in `b`.  Quick rejection uses the (order, q)-value profile.
    """
    if a.orders != b.orders:
        return None
    if not a.orders:
        return []
    if a.group_order > cap or b.group_order > cap:
        raise CapExceededError(f"group order exceeds iso cap {cap}")
    if _value_profile(a) != _value_profile(b):
        return None

    elements = [x for x in b.elements()]
    by_constraint: dict[tuple[int, Fraction], list[tuple[int, ...]]] = {}
    for x in elements:
        key = (b.element_order(x), b.q_of(x))
        by_constraint.setdefault(key, []).append(x)

    m = len(a.orders)
    total = b.group_order
    # span pruning: after placing i generators the span must reach at least
    # |G| / prod(remaining orders)
    suffix = [1] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] * a.orders[i]

    def add_to_span(span: frozenset, x: tuple[int, ...]) -> frozenset:
        # span is a subgroup, so the enlargement is the union of its x-cosets
        if x in span:
            return span
        ord_x = b.element_order(x)
        new = set(span)
        for k in range(1, ord_x):
            kx = tuple(k * xi % d for xi, d in zip(x, b.orders))
            new.update(tuple((si + yi) % d for si, yi, d in zip(s, kx, b.orders)) for s in span)
        return frozenset(new)

    images: list[tuple[int, ...]] = []
    zero = tuple(0 for _ in range(m))

    def backtrack(i: int, span: frozenset) -> bool:
        if i == m:
            return len(span) == total
        if len(span) * suffix[i] < total:
            return False
        # candidates: order divides a.orders[i], exact q match
        cands = []
        for (order, qval), xs in by_constraint.items():
            if a.orders[i] % order == 0 and qval == a.q[i]:
                cands.extend(xs)
        for x in cands:
            ok = True
            for j in range(i):
                if b.b_of(images[j], x) != a.b[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            images.append(x)
            if backtrack(i + 1, add_to_span(span, x)):
                return True
            images.pop()
        return False

    if backtrack(0, frozenset({zero})):
        result = list(images)
        # safety: re-verify the witness
        for i in range(m):
            assert b.q_of(result[i]) == a.q[i]
            for j in range(m):
                assert b.b_of(result[i], result[j]) == a.b[i][j]
        return result
    return None


def is_isomorphic(a: FiniteQuadraticForm, b: FiniteQuadraticForm, cap: int = ISO_CAP) -> bool:
    return iso_test(a, b, cap=cap) is not None


# ---------------------------------------------------------------------------
# Nikulin existence / uniqueness


@dataclass(frozen=True)
class NikulinReport:
    verdict: bool | str
    conditions: tuple[tuple[str, bool], ...]


def nikulin_exists(t_plus: int, t_minus: int, form: FiniteQuadraticForm) -> NikulinReport:
    """Even lattice of signature (t+, t-) with discriminant form q exists?

    (i) t+ - t- = sigma(q) mod 8;  (ii) t+ >= 0, t- >= 0, t+ + t- >= l(G).
    """
    sig = signature_of(form)
    c1 = (t_plus - t_minus) % 8 == sig
    c2 = t_plus >= 0 and t_minus >= 0 and t_plus + t_minus >= form.length()
    return NikulinReport(
        verdict=c1 and c2,
        conditions=(
            (f"signature congruence ({t_plus}-{t_minus} = {sig} mod 8)", c1),
            (f"t+ + t- = {t_plus + t_minus} >= l(G) = {form.length()}", c2),
        ),
    )


def nikulin_unique(t_plus: int, t_minus: int, form: FiniteQuadraticForm) -> NikulinReport:
    """Uniqueness criterion; verdict "unique" or "inapplicable"."""
    sig = signature_of(form)
    c1 = (t_plus - t_minus) % 8 == sig
    c2 = t_plus >= 1 and t_minus >= 1
    c3 = t_plus + t_minus >= 2 + form.length()
    return NikulinReport(
        verdict="unique" if (c1 and c2 and c3) else "inapplicable",
        conditions=(
            (f"signature congruence ({t_plus}-{t_minus} = {sig} mod 8)", c1),
            ("t+ >= 1 and t- >= 1", c2),
            (f"t+ + t- = {t_plus + t_minus} >= 2 + l(G) = {2 + form.length()}", c3),
        ),
    )


# ---------------------------------------------------------------------------
# enumeration of candidate forms


def _partitions(n: int):
    """Integer partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _local_spec_choices(p: int, partition: tuple[int, ...]):
    """All fundamental-form decorations of the p-group with given exponents."""
    from collections import Counter

    counts = Counter(partition)
    per_exponent: list[list[tuple[FundamentalFormSpec, ...]]] = []
    for k in sorted(counts):
        m = counts[k]
        choices: list[tuple[FundamentalFormSpec, ...]] = []
        if p != 2:
            # eps = -1 on some number of the m factors (order irrelevant)
            for neg in range(m + 1):
                specs = tuple(
                    FundamentalFormSpec("w", p, k, -1 if i < neg else 1) for i in range(m)
                )
                choices.append(specs)
        else:
            eps_values = (1, -1) if k == 1 else (1, -1, 5, -5)
            for nu in range(m // 2 + 1):
                for nv in range(m // 2 - nu + 1):
                    singles = m - 2 * (nu + nv)
                    base = tuple(FundamentalFormSpec("u", 2, k) for _ in range(nu)) + tuple(
                        FundamentalFormSpec("v", 2, k) for _ in range(nv)
                    )
                    # multisets of eps over the remaining single factors
                    for combo in itertools.combinations_with_replacement(eps_values, singles):
                        choices.append(
                            base + tuple(FundamentalFormSpec("w", 2, k, e) for e in combo)
                        )
            choices = list(dict.fromkeys(choices))
        per_exponent.append(choices)
    for combo in itertools.product(*per_exponent):
        yield tuple(itertools.chain.from_iterable(combo))


def enumerate_forms(
    rho: int, delta: int, iso_cap: int = ISO_CAP
) -> list[tuple[FiniteQuadraticForm, tuple[FundamentalFormSpec, ...]]]:
    """All finite quadratic forms of signature 2-rho mod 8 on groups of
    order delta with l(G) <= rho, up to isomorphism.

    Enumerates abelian groups of order delta prime by prime, decorates each
    with orthogonal sums of fundamental forms, filters by signature and
    length, and dedupes via iso_test.
    """
    if rho < 1 or delta < 1:
        raise ValueError("rho and delta must be positive")
    target = (2 - rho) % 8
    factors = _factor(delta)
    primes = sorted(factors)
    partition_sets = [list(_partitions(factors[p])) for p in primes]
    found: list[tuple[FiniteQuadraticForm, tuple[FundamentalFormSpec, ...]]] = []
    for partition_combo in itertools.product(*partition_sets):
        length = max((len(part) for part in partition_combo), default=0)
        if length > rho:
            continue
        local_choices = [
            list(_local_spec_choices(p, part)) for p, part in zip(primes, partition_combo)
        ]
        for chosen in itertools.product(*local_choices):
            specs = tuple(itertools.chain.from_iterable(chosen))
            if signature_formula(list(specs)) != target:
                continue
            form = form_from_specs(list(specs))
            if form.length() > rho:
                continue
            if any(is_isomorphic(form, seen, cap=iso_cap) for seen, _ in found):
                continue
            found.append((form, specs))
    found.sort(key=lambda fs: (fs[0].orders, str_of_specs(fs[1])))
    return found


def str_of_specs(specs) -> str:
    return "|".join(str(s) for s in specs) if specs else "triv"


def canonical_expr(form: FiniteQuadraticForm, iso_cap: int = ISO_CAP) -> str | None:
    """A fundamental-sum expression isomorphic to `form`, if one is found.

    Searches decorations of the form's own group; None when the group
    exceeds the iso cap.
    """
    if not form.orders:
        return "triv"
    if form.group_order > iso_cap:
        return None
    # the partition of each prime is pinned by the group itself
    per_prime: dict[int, list[int]] = {}
    for d in form.orders:
        for p, a in _factor(d).items():
            per_prime.setdefault(p, []).append(a)
    for p in per_prime:
        per_prime[p] = sorted(per_prime[p], reverse=True)
    primes = sorted(per_prime)
    local_choices = [
        list(_local_spec_choices(p, tuple(per_prime[p]))) for p in primes
    ]
    for chosen in itertools.product(*local_choices):
        specs = tuple(itertools.chain.from_iterable(chosen))
        candidate = form_from_specs(list(specs))
        if candidate.orders != form.orders:
            continue
        if is_isomorphic(form, candidate, cap=iso_cap):
            return str_of_specs(specs)
    return None
