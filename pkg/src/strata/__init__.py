"""Exact toolkit for quiver representations and stratifications of their
derived categories: hom/ext spaces, decomposition into indecomposables,
exceptional sequences, tilting modules, perpendicular categories, and
Jordan-Hoelder style verification of stratification factors."""

from .exactlin import GF, QQ, Field, Mat
from .quiver import Arrow, ParseError, Quiver, kronecker_quiver, linear_quiver, parse_quiver_text
from .repcat import (
    Rep,
    RepMap,
    ShortExactSeq,
    UndecidedError,
    cokernel_rep,
    decompose,
    direct_sum,
    end_dim,
    ext1_dim,
    ext1_space,
    extension_from_cocycle,
    hom_dim,
    hom_space,
    is_isomorphic,
    kernel_rep,
    parse_rep_blocks,
    projective,
    simple,
    zero_rep,
)
from .exceptional import (
    EnumerationResult,
    ExcSequence,
    enumerate_complete_exceptional_sequences,
    enumerate_exceptional,
    is_exceptional,
    is_exceptional_sequence,
    is_tilting_module,
    order_into_exceptional_sequence,
    tilting_coresolution,
)
from .perpcat import (
    PerpPresentation,
    bongartz_complement,
    free_module,
    lift_from_perp,
    perp_algebra,
    trace,
    transport_into_perp,
    universal_extension,
)
from .strat import (
    Chain,
    FactorDescriptor,
    Leaf,
    Node,
    StratTree,
    assemble_tree,
    endo_rings_of_simples,
    flatten_to_chain,
    is_derived_simple,
    kronecker_demo,
    standard_stratification,
    stratify_along_sequence,
    verify_jordan_holder,
    verify_ringel_tilting,
)

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "Chain",
    "EnumerationResult",
    "ExcSequence",
    "FactorDescriptor",
    "Field",
    "GF",
    "Leaf",
    "Mat",
    "Node",
    "ParseError",
    "PerpPresentation",
    "QQ",
    "Quiver",
    "Rep",
    "RepMap",
    "ShortExactSeq",
    "StratTree",
    "UndecidedError",
    "assemble_tree",
    "bongartz_complement",
    "cokernel_rep",
    "decompose",
    "direct_sum",
    "end_dim",
    "endo_rings_of_simples",
    "enumerate_complete_exceptional_sequences",
    "enumerate_exceptional",
    "ext1_dim",
    "ext1_space",
    "extension_from_cocycle",
    "flatten_to_chain",
    "free_module",
    "hom_dim",
    "hom_space",
    "is_derived_simple",
    "is_exceptional",
    "is_exceptional_sequence",
    "is_isomorphic",
    "is_tilting_module",
    "kernel_rep",
    "kronecker_demo",
    "kronecker_quiver",
    "lift_from_perp",
    "linear_quiver",
    "order_into_exceptional_sequence",
    "parse_quiver_text",
    "parse_rep_blocks",
    "perp_algebra",
    "projective",
    "simple",
    "standard_stratification",
    "stratify_along_sequence",
    "tilting_coresolution",
    "trace",
    "transport_into_perp",
    "universal_extension",
    "verify_jordan_holder",
    "verify_ringel_tilting",
    "zero_rep",
    "__version__",
]
