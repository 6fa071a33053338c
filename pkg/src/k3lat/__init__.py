"""Exact-arithmetic invariants of even lattices, finite quadratic forms,
and quasi-homogeneous K3 singularities, with machine-checked tables."""

from .discform import (
    FiniteQuadraticForm,
    FundamentalFormSpec,
    canonical_expr,
    enumerate_forms,
    form_from_specs,
    is_isomorphic,
    iso_test,
    make_fundamental,
    nikulin_exists,
    nikulin_unique,
    orth_sum,
    signature_formula,
    signature_gauss,
)
from .exactkernel import SnfResult, det, inertia, smith_normal_form
from .lattice import (
    AmbientSpace,
    GramLattice,
    IsotropyResult,
    direct_sum,
    discriminant_form,
    e8_gram,
    find_isotropic,
    hyperbolic_U,
    invariants,
    rank_one,
    root_lattice,
    sublattice,
    tshape,
    twist,
)
from .polytope import NewtonPolytope, convex_hull, edge_lattice_count, enumerate_points, newton_polytope
from .singularity import (
    PuiseuxPolynomial,
    SeifertBlockForm,
    WeightSystem,
    eigen_dims,
    milnor_number,
    monodromy_char_poly,
    poincare_series,
    real_seifert,
    verify_c2_identity,
)

__version__ = "0.1.0"
