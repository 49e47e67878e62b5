"""Catalog of nonconstrained fusion systems on p^{1+2}_+."""
from .data import NAMES, ROWS, CatalogRow, find_row
from .systems import (
    CatalogError,
    RVCatalog,
    agrees_mod_inner,
    line_of,
    line_vector,
    mat_apply,
    mat_apply_dual,
    mat_mul,
    out_of_matrix,
)
from .tables import (
    ORACLE_KINDS,
    TABLE_PRIMES,
    abelian_invariants,
    abelianization_invariants,
    class_count_oracle,
    class_count_verify,
    compute_row,
    diff_row,
    emit_tables,
    eval_expr,
    instantiations,
    load_golden,
    oracle_group,
    render_table,
    transcription_consistent,
)

__all__ = [
    "NAMES", "ROWS", "CatalogRow", "find_row", "CatalogError", "RVCatalog", "agrees_mod_inner",
    "line_of", "line_vector", "mat_apply", "mat_apply_dual", "mat_mul", "out_of_matrix",
    "ORACLE_KINDS", "TABLE_PRIMES", "abelian_invariants", "abelianization_invariants",
    "class_count_oracle", "class_count_verify", "compute_row", "diff_row", "emit_tables", "eval_expr",
    "instantiations", "load_golden", "oracle_group", "render_table", "transcription_consistent",
]
