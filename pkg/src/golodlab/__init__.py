"""golodlab: exact Golod-property verdicts for graded rings and modules."""

from .errors import (
    CapError,
    GolodlabError,
    InternalInvariantError,
    PolyParseError,
    SchemaError,
)
from .fields import QQ, FieldSpec
from .poly import (
    HomogeneousIdeal,
    NOT_HOMOGENEOUS,
    Poly,
    WeightedPolyRing,
    ZERO_DEGREE,
    derivative_ideal,
    parse_poly,
)
from .groebner import (
    GREVLEX,
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    ideal_contains,
    normal_form,
    standard_monomials,
)
from .series import TruncatedSeries
from .algebra import (
    FiniteGradedAlgebra,
    FiniteGradedModule,
    GradedAlgebraMap,
    MaxIdealData,
    algebra_as_module,
    direct_sum,
    fibre_product,
    generated_subspaces,
    ideal_as_module,
    ideal_module_from_polys,
    iterated_fibre,
    min_gens,
    min_gens_module,
    poly_class_vector,
    polynomial_ring_algebra,
    presented_module,
    quotient_algebra,
    quotient_by_subspaces,
    quotient_surjection,
    residue_field,
    restrict_module,
    submodule_from_subspaces,
    trivial_extension,
)
from .resolution import (
    BettiTable,
    ResolutionData,
    default_caps,
    hilbert_series,
    largeness_test,
    minimal_resolution,
    poincare_series,
    resolution_over_poly_ring,
    tor_comparison,
)
from .koszul import (
    KoszulComplex,
    chain_level_product_vanishing,
    cross_check_kappa,
    herzog_cycles,
    homology_product,
    koszul_complex,
    koszul_mul,
    koszul_of_module,
    koszul_polynomial,
    variable_max_ideal_data,
)
from .massey import MasseyResult, massey_product
from .golod import (
    GolodAnalysis,
    GolodVerdict,
    SerreBound,
    golod_module_test,
    golod_ring_test,
    herzog_huneke_certify,
    serre_bound,
    verify_theorem,
)

__version__ = "0.1.0"
