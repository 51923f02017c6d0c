"""Python bindings for the qwalknet simulator."""

from ._qwalknet import (
    CapacityError,
    Ensemble,
    NetworkSpec,
    QwalknetError,
    __version__,
    dcqw_line,
    estimate_alpha,
    exact_distributions,
    init_ensemble,
    negativity_qubits,
    network_negativity,
    sample_inhomogeneous,
    stationary,
    von_neumann_entropy,
)

SYMMETRIC_COIN = (2 ** -0.5, 1j * 2 ** -0.5)

__all__ = [
    "CapacityError",
    "Ensemble",
    "NetworkSpec",
    "QwalknetError",
    "SYMMETRIC_COIN",
    "__version__",
    "dcqw_line",
    "estimate_alpha",
    "exact_distributions",
    "init_ensemble",
    "negativity_qubits",
    "network_negativity",
    "sample_inhomogeneous",
    "stationary",
    "von_neumann_entropy",
]
