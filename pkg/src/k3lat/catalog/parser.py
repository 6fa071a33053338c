"""Expression grammars for lattices and finite quadratic forms.

Lattice grammar:

    U            hyperbolic plane          U(k)       twisted plane
    <k>          rank one, k even          A(n) D(n) E(n)  root lattices
    T(p,q,r)     T-shaped tree lattice     L1 + L2    direct sum
    k*L          twist by k                L^n        n-fold direct sum
    sub(U^a E8^b; v1; v2; ...)             sublattice from generator vectors
    gram[a,b;b,c]                          explicit Gram matrix
    S(<form>)    named representation lattice from the catalog

Form grammar:  w(p,k,e), u(k), v(k), `triv`, joined by `|`, with `^n` for
repeated orthogonal summands.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..discform import FiniteQuadraticForm, FundamentalFormSpec, form_from_specs
from ..lattice import (
    DEFAULT_E8_LABELING,
    AmbientSpace,
    GramLattice,
    direct_sum,
    hyperbolic_U,
    rank_one,
    root_lattice,
    sublattice,
    tshape,
    twist,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass
class _Scanner:
    text: str
    pos: int = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.eat(token):
            raise ParseError(f"expected {token!r}", self.text, self.pos)

    def integer(self) -> int:
        self.skip_ws()
        m = re.match(r"[+-]?\d+", self.text[self.pos :])
        if not m:
            raise ParseError("expected an integer", self.text, self.pos)
        self.pos += m.end()
        return int(m.group())

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


# ---------------------------------------------------------------------------
# quadratic-form expressions


def parse_form_specs(text: str) -> list[FundamentalFormSpec]:
    sc = _Scanner(text)
    specs: list[FundamentalFormSpec] = []
    while True:
        sc.skip_ws()
        if sc.eat("triv"):
            part: list[FundamentalFormSpec] = []
        elif sc.eat("w"):
            sc.expect("(")
            p = sc.integer()
            sc.expect(",")
            k = sc.integer()
            sc.expect(",")
            e = sc.integer()
            sc.expect(")")
            part = [FundamentalFormSpec("w", p, k, e)]
        elif sc.eat("u") or sc.eat("v"):
            kind = sc.text[sc.pos - 1]
            sc.expect("(")
            k = sc.integer()
            sc.expect(")")
            part = [FundamentalFormSpec(kind, 2, k)]
        else:
            raise ParseError("expected w(...), u(...), v(...) or triv", text, sc.pos)
        if sc.eat("^"):
            n = sc.integer()
            if n < 1:
                raise ParseError("power must be >= 1", text, sc.pos)
            part = part * n
        specs.extend(part)
        if not sc.eat("|"):
            break
    if not sc.at_end():
        raise ParseError("trailing input", text, sc.pos)
    return specs


def parse_form(text: str) -> FiniteQuadraticForm:
    return form_from_specs(parse_form_specs(text))


# ---------------------------------------------------------------------------
# lattice expressions


SubRegistry = dict[str, tuple[str, list[tuple[int, ...]]]]
# canonical form expr -> (ambient description, generator vectors)


def _parse_ambient(desc: str, labeling: str) -> AmbientSpace:
    a = b = 0
    for item in desc.split():
        m = re.fullmatch(r"(U|E8)(?:\^(\d+))?", item)
        if not m:
            raise ValueError(f"bad ambient item {item!r}")
        count = int(m.group(2) or 1)
        if m.group(1) == "U":
            a += count
        else:
            b += count
    return AmbientSpace(a=a, b=b, e8_labeling=labeling)


def normalize_form_expr(text: str) -> str:
    return "|".join(str(s) for s in parse_form_specs(text)) or "triv"


class LatticeParser:
    """Recursive-descent parser evaluating lattice expressions directly."""

    def __init__(self, registry: SubRegistry | None = None, labeling: str = DEFAULT_E8_LABELING):
        self.registry = registry or {}
        self.labeling = labeling

    def parse(self, text: str) -> GramLattice:
        sc = _Scanner(text)
        lat = self._expr(sc)
        if not sc.at_end():
            raise ParseError("trailing input", text, sc.pos)
        return lat

    def _expr(self, sc: _Scanner) -> GramLattice:
        parts = [self._term(sc)]
        while sc.eat("+"):
            parts.append(self._term(sc))
        return direct_sum(*parts) if len(parts) > 1 else parts[0]

    def _term(self, sc: _Scanner) -> GramLattice:
        sc.skip_ws()
        # twist: k*L
        m = re.match(r"(\d+)\s*\*", sc.text[sc.pos :])
        if m:
            sc.pos += m.end()
            return twist(self._term(sc), int(m.group(1)))
        lat = self._atom(sc)
        if sc.eat("^"):
            n = sc.integer()
            if n < 1:
                raise ParseError("power must be >= 1", sc.text, sc.pos)
            lat = direct_sum(*([lat] * n))
        return lat

    def _atom(self, sc: _Scanner) -> GramLattice:
        sc.skip_ws()
        if sc.eat("("):
            lat = self._expr(sc)
            sc.expect(")")
            return lat
        if sc.eat("<"):
            k = sc.integer()
            sc.expect(">")
            return rank_one(k)
        if sc.eat("sub("):
            return self._sub(sc)
        if sc.eat("gram["):
            return self._gram(sc)
        if sc.eat("U"):
            if sc.eat("("):
                k = sc.integer()
                sc.expect(")")
                return hyperbolic_U(k)
            return hyperbolic_U(1)
        if sc.eat("T("):
            p = sc.integer()
            sc.expect(",")
            q = sc.integer()
            sc.expect(",")
            r = sc.integer()
            sc.expect(")")
            return tshape(p, q, r)
        for fam in ("A", "D", "E"):
            if sc.eat(f"{fam}("):
                n = sc.integer()
                sc.expect(")")
                return root_lattice(fam, n)
        for bare in ("E8", "E7", "E6"):  # bare spellings used in the tables
            if sc.eat(bare):
                return root_lattice("E", int(bare[1]))
        if sc.eat("S("):
            start = sc.pos
            depth = 1
            while sc.pos < len(sc.text) and depth:
                ch = sc.text[sc.pos]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                sc.pos += 1
            if depth:
                raise ParseError("unterminated S(...)", sc.text, sc.pos)
            key = normalize_form_expr(sc.text[start : sc.pos - 1])
            if key not in self.registry:
                raise ParseError(f"unknown representation lattice S({key})", sc.text, start)
            desc, gens = self.registry[key]
            return sublattice(_parse_ambient(desc, self.labeling), gens)
        raise ParseError("expected a lattice atom", sc.text, sc.pos)

    def _sub(self, sc: _Scanner) -> GramLattice:
        start = sc.pos
        end = sc.text.find(";", start)
        if end < 0:
            raise ParseError("sub(...) needs generators", sc.text, start)
        ambient = _parse_ambient(sc.text[start:end], self.labeling)
        sc.pos = end
        gens = []
        while sc.eat(";"):
            vec = [sc.integer()]
            while sc.eat(","):
                vec.append(sc.integer())
            gens.append(tuple(vec))
        sc.expect(")")
        return sublattice(ambient, gens)

    def _gram(self, sc: _Scanner) -> GramLattice:
        rows = []
        while True:
            row = [sc.integer()]
            while sc.eat(","):
                row.append(sc.integer())
            rows.append(row)
            if not sc.eat(";"):
                break
        sc.expect("]")
        return GramLattice(gram=tuple(tuple(r) for r in rows))


def parse_lattice_expr(
    text: str, registry: SubRegistry | None = None, labeling: str = DEFAULT_E8_LABELING
) -> GramLattice:
    return LatticeParser(registry=registry, labeling=labeling).parse(text)
