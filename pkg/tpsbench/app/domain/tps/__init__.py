from tpsbench.app.domain.tps.checks import (
    LeftMultMap,
    PropertyCheck,
    TpsReport,
    Witness,
    check_poisson,
    check_tps,
    compatibility_residual,
    compatibility_residual_elements,
    left_mult_map,
)
from tpsbench.app.domain.tps.products import (
    CommProduct,
    MutationProduct,
    TableProduct,
    mul,
    mutation,
    w_plain,
    zero_product,
)
from tpsbench.app.domain.tps.solver import TpsSolution, check_family, solve_tps

__all__ = [
    "CommProduct",
    "LeftMultMap",
    "MutationProduct",
    "PropertyCheck",
    "TableProduct",
    "TpsReport",
    "TpsSolution",
    "Witness",
    "check_family",
    "check_poisson",
    "check_tps",
    "compatibility_residual",
    "compatibility_residual_elements",
    "left_mult_map",
    "mul",
    "mutation",
    "solve_tps",
    "w_plain",
    "zero_product",
]
