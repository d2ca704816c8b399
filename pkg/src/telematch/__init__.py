"""Probabilistic qubit teleportation through partially entangled channels.

The package models teleportation of alpha|0> + beta|1> through a pure
channel a|00> + b|11>. A partially entangled channel (|a| != |b|) cannot
teleport deterministically; matching the receiver's conditional unitary
to the channel coefficients turns it into a heralded probabilistic
protocol with unit fidelity on success. Closed-form success
probabilities, a brute-force state-vector simulation, and a seeded
Monte Carlo sampler are all provided and cross-checked.
"""

from .channel import (
    ChannelClass,
    PureInputState,
    TwoQubitChannel,
    UnteleportableChannelError,
    classify,
    concurrence,
    cpm,
    format_complex,
    parse_channel,
    parse_complex,
)
from .measurement import (
    InvalidBasisError,
    TwoQubitBasis,
    branch_operators,
    generalized_bell,
    parse_basis,
    project,
    standard_bell,
)
from .protocol import (
    Fig1Row,
    KOutOfRangeError,
    KPolicy,
    MonteCarloReport,
    OutcomeReport,
    ProtocolReport,
    UnsupportedChannelError,
    analytic_report,
    attach_ancilla,
    branch_coefficients,
    evolve_and_measure,
    fig1_data,
    k_bound,
    matched_unitary,
    monte_carlo,
    optimal_k,
    pauli_correction,
    simulate_report,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelClass",
    "Fig1Row",
    "InvalidBasisError",
    "KOutOfRangeError",
    "KPolicy",
    "MonteCarloReport",
    "OutcomeReport",
    "ProtocolReport",
    "PureInputState",
    "TwoQubitBasis",
    "TwoQubitChannel",
    "UnsupportedChannelError",
    "UnteleportableChannelError",
    "analytic_report",
    "attach_ancilla",
    "branch_coefficients",
    "branch_operators",
    "classify",
    "concurrence",
    "cpm",
    "evolve_and_measure",
    "fig1_data",
    "format_complex",
    "generalized_bell",
    "k_bound",
    "matched_unitary",
    "monte_carlo",
    "optimal_k",
    "parse_basis",
    "parse_channel",
    "parse_complex",
    "pauli_correction",
    "project",
    "simulate_report",
    "standard_bell",
    "__version__",
]
