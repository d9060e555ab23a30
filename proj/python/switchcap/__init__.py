"""Holevo quantity of completely depolarizing channels in a quantum switch."""

from ._core import (
    CapacityReport,
    SizeGuardError,
    SwitchcapError,
    all_orders,
    analytic_output_state,
    apply_switch,
    asymptotic_limit,
    control_entropy,
    cyclic_orders,
    depolarize,
    det_factorization_residual,
    holevo,
    holevo_oracle,
    kraus_completeness,
    output_spectrum,
    s_min,
    von_neumann_entropy,
)

__version__ = "0.1.0"
