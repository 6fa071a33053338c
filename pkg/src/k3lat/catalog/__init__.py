from .parser import LatticeParser, ParseError, parse_form, parse_form_specs, parse_lattice_expr
from .tables import (
    DataFormatError,
    PropDefnEntry,
    SigmaFamily,
    TableEntry,
    WeightRecord,
    load_all_tables,
    load_propdefn,
    load_quadraticf,
    load_table,
    load_weights,
    sub_registry,
)
from .verify import (
    BlockReport,
    EntryReport,
    make_parser,
    reclassify_blocks,
    verify_elliptic,
    verify_entry,
    verify_formula,
    verify_propdefn,
    verify_reclassify_block,
)

__all__ = [
    "BlockReport",
    "DataFormatError",
    "EntryReport",
    "LatticeParser",
    "ParseError",
    "PropDefnEntry",
    "SigmaFamily",
    "TableEntry",
    "WeightRecord",
    "load_all_tables",
    "load_propdefn",
    "load_quadraticf",
    "load_table",
    "load_weights",
    "make_parser",
    "parse_form",
    "parse_form_specs",
    "parse_lattice_expr",
    "reclassify_blocks",
    "sub_registry",
    "verify_elliptic",
    "verify_entry",
    "verify_formula",
    "verify_propdefn",
    "verify_reclassify_block",
]
