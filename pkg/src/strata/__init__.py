"""Connected components of strata of abelian differentials, computed."""

from .classify import classify_permutation, classify_surface, components_of_stratum
from .diagram import (
    SeparatrixDiagram,
    bubble_handle,
    contract_saddle_connection,
    diagram_to_surface,
    erase_handle,
    is_hyperelliptic_diagram,
    make_canonical,
    realizability,
    rotate_handle,
)
from .iet import IntervalExchange, build_iet, orbit, rauzy_step
from .perm import (
    Permutation,
    is_degenerate,
    parse_permutation,
    rauzy_a,
    rauzy_b,
    reduce_interior,
    reversal,
    standardize,
)
from .rauzy import census, extended_rauzy_class, rauzy_class, same_component
from .surface import (
    SquareTiledSurface,
    singularity_profile,
    spin_parity_perm,
    spin_parity_surface,
    suspend,
)

__all__ = [
    "IntervalExchange", "Permutation", "SeparatrixDiagram", "SquareTiledSurface",
    "bubble_handle", "build_iet", "census", "classify_permutation", "classify_surface",
    "components_of_stratum", "contract_saddle_connection", "diagram_to_surface",
    "erase_handle", "extended_rauzy_class", "is_degenerate", "is_hyperelliptic_diagram",
    "make_canonical", "orbit", "parse_permutation", "rauzy_a", "rauzy_b", "rauzy_class",
    "rauzy_step", "realizability", "reduce_interior", "reversal", "rotate_handle",
    "same_component", "singularity_profile", "spin_parity_perm", "spin_parity_surface",
    "standardize", "suspend",
]
