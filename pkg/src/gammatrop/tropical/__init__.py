"""Tropical side of the verification: piecewise-linear geometry over Q.

Laurent families with fractional powers of the degeneration parameter t
tropicalize to min-of-affine-forms functions; corner loci, complement
chambers, lattice-affine volumes and edge singularity counts are all
computed in exact rational arithmetic.
"""

from .forms import (
    AffineForm,
    LaurentFamily,
    LaurentTerm,
    TropicalPolynomial,
    amoeba_membership,
    log_t_image,
    monomial_substitution,
    tropicalize,
)
from .lattice import (
    affine_length,
    affine_volume,
    plane_lattice_basis,
    polygon_affine_area,
    primitive_vector,
)
from .monodromy import focus_focus_monodromy
from .polyhedra import (
    Cell,
    CellComplex,
    LatticePolytope,
    boundary_affine_area,
    compact_chamber,
    corner_locus,
    edge_singularities,
)

__all__ = [
    "AffineForm",
    "LaurentFamily",
    "LaurentTerm",
    "TropicalPolynomial",
    "tropicalize",
    "monomial_substitution",
    "log_t_image",
    "amoeba_membership",
    "primitive_vector",
    "plane_lattice_basis",
    "affine_length",
    "polygon_affine_area",
    "affine_volume",
    "Cell",
    "CellComplex",
    "LatticePolytope",
    "corner_locus",
    "compact_chamber",
    "boundary_affine_area",
    "edge_singularities",
    "focus_focus_monodromy",
]
