"""Loaders for the embedded table data and the external weight file.

The tables live as tab-separated text under ``data/`` so that typos can be
patched without touching code; every row keeps an ``as_printed`` note for
audit.  Rows carrying a suspected misprint are tagged in the ``disputed``
column and are reported separately by the verifiers instead of failing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from ..singularity import WeightSystem

SIGNED_DELTA_TABLES = {"alattices", "delattices", "hyperbolic", "lpqr"}
TABLE_IDS = (
    "alattices",
    "delattices",
    "hyperbolic",
    "lpqr",
    "rho1",
    "delta1",
    "prime",
    "reclassify",
)


class DataFormatError(ValueError):
    """A data file line does not match the documented format."""


@dataclass(frozen=True)
class TableEntry:
    table_id: str
    rho: int
    delta: int
    group: tuple[int, ...] | None  # factors as printed, None when absent
    form_expr: str | None
    lattice_expr: str | None
    nos: tuple[int, ...]
    disputed: frozenset[str]
    as_printed: str

    @property
    def signed_delta(self) -> bool:
        return self.table_id in SIGNED_DELTA_TABLES

    def key(self) -> tuple[str, int, int]:
        return (self.table_id, self.rho, abs(self.delta))


@dataclass(frozen=True)
class PropDefnEntry:
    form_expr: str
    ambient: str
    generators: tuple[tuple[int, ...], ...]
    disputed: frozenset[str]
    as_printed: str


@dataclass(frozen=True)
class WeightRecord:
    no: int | None
    weights: WeightSystem
    rho_claim: int | None = None
    delta_claim: int | None = None


def _read_data(name: str) -> list[list[str]]:
    text = resources.files("k3lat.catalog").joinpath(f"data/{name}.tsv").read_text()
    rows = []
    for line in text.splitlines():
        line = line.rstrip("\n")
        if not line or line.lstrip().startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows


def _parse_group(cell: str) -> tuple[int, ...] | None:
    if cell == "-":
        return None
    if cell == "triv":
        return ()
    return tuple(int(x) for x in cell.split(","))


def load_table(table_id: str) -> list[TableEntry]:
    entries = []
    for cells in _read_data(table_id):
        if len(cells) != 9:
            raise DataFormatError(f"{table_id}: expected 9 columns, got {len(cells)}")
        tid, rho, delta, group, form, lattice, nos, disputed, as_printed = cells
        entries.append(
            TableEntry(
                table_id=tid,
                rho=int(rho),
                delta=int(delta),
                group=_parse_group(group),
                form_expr=None if form == "-" else form,
                lattice_expr=None if lattice == "-" else lattice,
                nos=tuple(int(x) for x in nos.split(",")) if nos != "-" else (),
                disputed=frozenset() if disputed == "-" else frozenset(disputed.split(",")),
                as_printed=as_printed,
            )
        )
    return entries


def load_all_tables() -> dict[str, list[TableEntry]]:
    return {tid: load_table(tid) for tid in TABLE_IDS}


def load_propdefn() -> list[PropDefnEntry]:
    text = resources.files("k3lat.catalog").joinpath("data/propdefn.tsv").read_text()
    entries = []
    for line in text.splitlines():
        if not line or line.lstrip().startswith("#"):
            continue
        form, ambient, gens, disputed, as_printed = line.split("\t")
        vectors = tuple(
            tuple(int(x) for x in vec.split(",")) for vec in gens.split(";")
        )
        entries.append(
            PropDefnEntry(
                form_expr=form,
                ambient=ambient,
                generators=vectors,
                disputed=frozenset() if disputed == "-" else frozenset(disputed.split(",")),
                as_printed=as_printed,
            )
        )
    return entries


def sub_registry() -> dict[str, tuple[str, list[tuple[int, ...]]]]:
    """Map normalized form expressions to their representation lattices."""
    from .parser import normalize_form_expr

    return {
        normalize_form_expr(e.form_expr): (e.ambient, list(e.generators))
        for e in load_propdefn()
    }


@dataclass(frozen=True)
class SigmaFamily:
    """One column of the signature table: a form template and its sigma.

    Templates use ``k`` (any natural number, instantiated on demand),
    ``2k``/``2k+1`` for parity-restricted exponents, and ``e`` for a free
    sign; ``sigma`` is an integer or ``4k``.
    """

    template: str
    sigma: str

    def instantiate(self, k: int, e: int = 1) -> tuple[str, int]:
        t = self.template.replace("2k+1", str(2 * k + 1)).replace("2k", str(2 * k))
        t = t.replace("(k,", f"({k},").replace("(k)", f"({k})").replace(",k,", f",{k},")
        t = t.replace(",e)", f",{e})")
        return t, int(self.sigma.replace("4k", str(4 * k))) % 8

    @property
    def has_free_sign(self) -> bool:
        return ",e)" in self.template


def load_quadraticf() -> list[SigmaFamily]:
    text = resources.files("k3lat.catalog").joinpath("data/quadraticf.tsv").read_text()
    out = []
    for line in text.splitlines():
        if not line or line.lstrip().startswith("#"):
            continue
        template, sigma = line.split("\t")
        out.append(SigmaFamily(template=template, sigma=sigma))
    return out


_WEIGHT_LINE = re.compile(
    r"^no=(?P<no>\d+|-)\s+w=(?P<w>[0-9/,\s]+?)"
    r"(?:\s+rho=(?P<rho>-?\d+))?(?:\s+delta=(?P<delta>-?\d+))?\s*$"
)


def load_weights(path) -> list[WeightRecord]:
    """Parse a weight-system data file.

    Line format: ``no=<int> w=<s1>/<t1>,...,<s4>/<t4> [rho=<int>] [delta=<int>]``
    with ``#`` comments; weights may also be bare integers (denominator 1 is
    rejected downstream by the WeightSystem range check).
    """
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _WEIGHT_LINE.match(line)
            if not m:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}")
            try:
                parts = [s.strip() for s in m.group("w").split(",")]
                weights = []
                for part in parts:
                    if "/" in part:
                        num, den = part.split("/")
                        if int(den) == 0:
                            raise ZeroDivisionError
                        weights.append(Fraction(int(num), int(den)))
                    else:
                        weights.append(Fraction(int(part)))
                ws = WeightSystem(weights=tuple(weights))
            except (ValueError, ZeroDivisionError) as exc:
                raise DataFormatError(f"{path}:{lineno}: bad weights: {exc}") from exc
            records.append(
                WeightRecord(
                    no=None if m.group("no") == "-" else int(m.group("no")),
                    weights=ws,
                    rho_claim=int(m.group("rho")) if m.group("rho") else None,
                    delta_claim=int(m.group("delta")) if m.group("delta") else None,
                )
            )
    return records
