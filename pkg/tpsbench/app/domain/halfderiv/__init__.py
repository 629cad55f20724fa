from tpsbench.app.domain.halfderiv.checker import (
    HalfDerivationReport,
    all_pairs,
    check_half_derivation,
    half_derivation_residual,
    sample_pairs,
)
from tpsbench.app.domain.halfderiv.families import (
    AdCommutator,
    compose_ad,
    family_hwn,
    family_w_a_minus1_half,
    family_w_ab,
    family_wn,
    hwn_closed_form,
    hwn_coeff,
    identity_map,
)
from tpsbench.app.domain.halfderiv.maps import LinearMap, ShiftMap, ShiftTerm, WindowMap, apply
from tpsbench.app.domain.halfderiv.solver import (
    InteriorClassification,
    SolutionSpace,
    classify_interior,
    output_window,
    solve_all_shifts,
    solve_half_derivations,
)

__all__ = [
    "AdCommutator",
    "HalfDerivationReport",
    "InteriorClassification",
    "LinearMap",
    "ShiftMap",
    "ShiftTerm",
    "SolutionSpace",
    "WindowMap",
    "all_pairs",
    "apply",
    "check_half_derivation",
    "classify_interior",
    "compose_ad",
    "family_hwn",
    "family_w_a_minus1_half",
    "family_w_ab",
    "family_wn",
    "half_derivation_residual",
    "hwn_closed_form",
    "hwn_coeff",
    "identity_map",
    "output_window",
    "sample_pairs",
    "solve_all_shifts",
    "solve_half_derivations",
]
