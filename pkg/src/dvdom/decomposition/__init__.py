from .modular import (
    ParseNode,
    TypePartition,
    compute_modular_parse,
    is_module,
    join,
    leaf,
    subst,
    type_partition,
    union,
    validate_parse,
)
from .treedec import (
    NiceTreeDecomposition,
    TreeDecomposition,
    min_degree_decomposition,
    to_nice,
    validate_nice,
    validate_td,
)

__all__ = [
    "NiceTreeDecomposition",
    "ParseNode",
    "TreeDecomposition",
    "TypePartition",
    "compute_modular_parse",
    "is_module",
    "join",
    "leaf",
    "min_degree_decomposition",
    "subst",
    "to_nice",
    "type_partition",
    "union",
    "validate_nice",
    "validate_parse",
    "validate_td",
]
