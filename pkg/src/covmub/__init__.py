"""Covariant mutually unbiased bases on finite phase spaces over GF(p^r):
finite fields, Weyl multipliers, Weyl systems, quadrature systems (maximal
MUB sets), symplectic actions, nonsplit toruses and metaplectic operators.
"""

__version__ = "0.1.0"

from .errors import CovMubError
from .fields import (
    FieldElement,
    FieldSpec,
    field_new,
    norm_one_generator,
    quadratic_extension,
    self_dual_basis,
)
from .multipliers import (
    MultiplierTable,
    PhaseFunction,
    canonical_m0,
    characteristic_two_multiplier,
    enumerate_weyl_multipliers,
    intertwiner,
    invariant_multipliers,
    invariant_odd_multiplier,
    is_multiplier,
    is_weyl_multiplier,
    phase_order,
    pullback,
    torus_average,
)
from .phase_space import (
    AffineLine,
    Direction,
    LinearMap2,
    PhaseVector,
    SymplecticForm,
    affine_action,
    all_vectors,
    directions,
    linear_map,
    lines,
    vector,
)
from .quadratures import (
    QuadratureSystem,
    are_equivalent,
    associated_multiplier,
    centered_weyl_from_quadratures,
    g_action,
    induced_symplectic_form,
    quadratures_from_weyl,
    range_conjugacy_witness,
    translation_covariance_check,
    verify_quadrature_axioms,
)
from .symplectic import (
    Torus,
    covariance_residual,
    covariant_quadrature_check,
    is_nonsplit,
    maximal_nonsplit_torus,
    metaplectic_operator,
    ordinary_phase_fix,
    sl_enumerate,
    sl_extension_probe,
    torus_orbits_on_directions,
)
from .weyl import (
    WeylSystem,
    clock_shift_system,
    commutation_bicharacter,
    is_irreducible,
    multiplier_of,
    recover_form,
    svn_intertwiner,
    weyl_system_from_multiplier,
)
