"""Probabilistic teleportation through a partially entangled channel.

The channel a|00> + b|11> teleports alpha|0> + beta|1> only
probabilistically when |a| != |b|. After the sender measures, the
receiver holds a state whose amplitudes are weighted by a coefficient
pair (c0, c1) determined by the channel and the measured outcome. The
receiver then attaches an ancilla qubit in |0> and applies a unitary
built from that pair; reading the ancilla back in |0> heralds success,
after which a Pauli rotation restores the input state exactly.

The unitary has one free parameter K with 0 < K <= min(1/|c0|, 1/|c1|).
The probability that outcome lam occurs and the ancilla heralds success
is pref^2 * (K_lam * |c0 * c1|)^2 independent of the input state, where
pref is 1/sqrt(2) for the standard Bell basis and 1 for the generalized
basis. Summing over outcomes gives the closed forms checked by the test
suite: 2(K|ab|)^2 for the Bell basis with a common K, 4(K|a b a' b'|)^2
for the generalized basis, and 2*min(|b|, |b'|)^2 when each outcome
runs at its own maximal K.

Coefficient pairs per outcome for channel (a, b):

    Bell basis:         (a, b) for every outcome;
    generalized basis:  (a*a', b*b') for lam in {1, 4},
                        (a*b', b*a') for lam in {2, 3}.

Outcomes 3 and 4 deliver the input amplitudes swapped, so their success
branches are evaluated against (beta, alpha); the trailing Pauli fixes
the order. All probability formulas use coefficient moduli and hold for
complex amplitudes.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qlinalg
from .channel import (
    ChannelClass,
    PureInputState,
    TwoQubitChannel,
    UnteleportableChannelError,
    classify,
)
from .measurement import InvalidBasisError, TwoQubitBasis, _check_lam, project

# Accept K at the matching bound despite last-ulp roundoff, while still
# rejecting anything meaningfully above it.
K_BOUND_RTOL = 1e-12

# Basis coefficients closer to zero than this leave some outcome with a
# vanishing success amplitude.
DEGENERATE_TOL = 1e-9

K_POLICY_MODES = ("fixed", "max-global", "max-per-outcome")

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

# Correction per outcome: identity, phase flip, bit flip, both.
_CORRECTIONS = (
    PAULI["I"],
    PAULI["Z"],
    PAULI["X"],
    PAULI["Z"] @ PAULI["X"],
)

# Outcomes 3 and 4 arrive with the input amplitudes swapped.
_SWAPS_INPUT = (False, False, True, True)


class KOutOfRangeError(ValueError):
    """Raised when K violates an outcome's matching bound."""


class UnsupportedChannelError(ValueError):
    """Raised for channels outside the a|00> + b|11> family."""


@dataclass(frozen=True)
class KPolicy:
    """How to choose the matching parameter K.

    mode 'fixed' uses the given k for every outcome (it must respect
    every outcome's bound); 'max-global' uses the largest k valid for
    all outcomes at once; 'max-per-outcome' runs each outcome at its
    own bound.
    """

    mode: str
    k: float | None = None

    def __post_init__(self) -> None:
        if self.mode not in K_POLICY_MODES:
            raise ValueError(f"unknown K policy mode {self.mode!r}")
        if self.mode == "fixed":
            if self.k is None:
                raise ValueError("fixed K policy needs a value")
            k = float(self.k)
            if not math.isfinite(k) or k <= 0.0:
                raise KOutOfRangeError(f"K must be a finite positive number, got {self.k!r}")
            object.__setattr__(self, "k", k)
        elif self.k is not None:
            raise ValueError(f"policy {self.mode!r} takes no K value")

    @classmethod
    def fixed(cls, k: float) -> "KPolicy":
        return cls("fixed", k)

    @classmethod
    def max_global(cls) -> "KPolicy":
        return cls("max-global")

    @classmethod
    def max_per_outcome(cls) -> "KPolicy":
        return cls("max-per-outcome")

    @classmethod
    def parse(cls, text: str) -> "KPolicy":
        """Parse 'max', 'per-outcome', or a positive number."""
        s = text.strip().lower()
        if s in ("max", "max-global"):
            return cls.max_global()
        if s in ("per-outcome", "max-per-outcome"):
            return cls.max_per_outcome()
        try:
            k = float(s)
        except ValueError:
            raise ValueError(
                f"bad K literal {text!r} (want a number, 'max', or 'per-outcome')"
            ) from None
        return cls.fixed(k)


@dataclass(frozen=True)
class OutcomeReport:
    """Per-outcome numbers for one run of the protocol."""

    lam: int
    k_used: float
    p_alice: float
    p_bob: float
    p_joint: float
    fidelity: float


@dataclass(frozen=True)
class ProtocolReport:
    outcomes: tuple[OutcomeReport, ...]
    total: float


@dataclass(frozen=True)
class MonteCarloReport:
    trials: int
    seed: int
    outcome_counts: tuple[int, int, int, int]
    success_counts: tuple[int, int, int, int]
    p_hat: float
    std_err: float


class Fig1Row(NamedTuple):
    b: float
    p_opt: float
    p_k1: float
    p_ksqrt2: float


def k_bound(c0: complex, c1: complex) -> float:
    """Largest valid K for a coefficient pair: min(1/|c0|, 1/|c1|)."""
    m = max(abs(c0), abs(c1))
    return math.inf if m == 0.0 else 1.0 / m


def matched_unitary(c0: complex, c1: complex, k: float) -> np.ndarray:
    """Ancilla-assisted unitary matched to a coefficient pair.

    Acts on (receiver qubit, ancilla) with the ancilla index most
    significant and the ancilla starting in |0>. On the success branch
    it rescales both receiver amplitudes to K*c0*c1; the leftover
    weight moves to the ancilla |1> branch. Requires
    0 < k <= min(1/|c0|, 1/|c1|).
    """
    k = float(k)
    bound = k_bound(c0, c1)
    if not math.isfinite(k) or k <= 0.0 or k > bound * (1.0 + K_BOUND_RTOL):
        raise KOutOfRangeError(
            f"K={k!r} outside (0, {bound!r}] for coefficients ({c0!r}, {c1!r})"
        )
    m0 = k * c1  # success amplitude for receiver bit 0 picks up the other coefficient
    m1 = k * c0
    r0 = math.sqrt(max(0.0, 1.0 - (k * abs(c1)) ** 2))
    r1 = math.sqrt(max(0.0, 1.0 - (k * abs(c0)) ** 2))
    u = np.zeros((4, 4), dtype=np.complex128)
    u[0, 0] = m0
    u[0, 2] = r0
    u[1, 1] = m1
    u[1, 3] = r1
    u[2, 0] = r0
    u[2, 2] = -np.conj(m0)
    u[3, 1] = r1
    u[3, 3] = -np.conj(m1)
    return u


def attach_ancilla(receiver) -> np.ndarray:
    """Extend a receiver qubit state with an ancilla in |0>."""
    v = qlinalg.as_vector(receiver)
    if v.shape[0] != 2:
        raise ValueError(f"receiver state must have length 2, got {v.shape[0]}")
    out = np.zeros(4, dtype=np.complex128)
    out[:2] = v
    return out


def evolve_and_measure(state, u) -> tuple[float, np.ndarray, np.ndarray]:
    """Apply u to (receiver, ancilla) and read the ancilla.

    Returns (success probability, receiver state on ancilla |0>,
    receiver state on ancilla |1>), both conditional states normalized.
    The input state may be unnormalized; the probability is relative to
    its weight.
    """
    v = qlinalg.as_vector(state)
    if v.shape[0] != 4:
        raise ValueError(f"state must have length 4, got {v.shape[0]}")
    weight = qlinalg.norm2(v)
    if weight <= 1e-30:
        raise ValueError("state has zero norm")
    out = qlinalg.apply(u, v)
    succ, fail = out[:2], out[2:]
    succ_w, fail_w = qlinalg.norm2(succ), qlinalg.norm2(fail)
    succ_n = succ / math.sqrt(succ_w) if succ_w > 0 else succ
    fail_n = fail / math.sqrt(fail_w) if fail_w > 0 else fail
    return float(succ_w / weight), succ_n, fail_n


def pauli_correction(lam: int) -> np.ndarray:
    """Pauli rotation that restores the input state for outcome lam."""
    _check_lam(lam)
    return _CORRECTIONS[lam - 1].copy()


def _require_matchable(ch: TwoQubitChannel, basis: TwoQubitBasis) -> None:
    if not ch.is_diagonal:
        raise UnsupportedChannelError(
            "matching is implemented for channels a|00> + b|11>; "
            "this channel has off-diagonal amplitudes"
        )
    if classify(ch) is ChannelClass.UNTELEPORTABLE:
        raise UnteleportableChannelError(
            "channel carries no entanglement; nothing can be teleported"
        )
    if basis.kind == "gbm" and (
        abs(basis.a_p) <= DEGENERATE_TOL or abs(basis.b_p) <= DEGENERATE_TOL
    ):
        raise InvalidBasisError(
            "basis coefficients too close to zero: some outcome would "
            "never herald success"
        )


def branch_coefficients(
    ch: TwoQubitChannel, basis: TwoQubitBasis
) -> tuple[tuple[complex, complex], ...]:
    """Coefficient pair (c0, c1) for each outcome (see module doc)."""
    _require_matchable(ch, basis)
    a, b = ch.x00, ch.x11
    if basis.kind == "bell":
        return ((a, b),) * 4
    ap, bp = basis.a_p, basis.b_p
    direct = (a * ap, b * bp)
    crossed = (a * bp, b * ap)
    return (direct, crossed, crossed, direct)


def optimal_k(ch: TwoQubitChannel, basis: TwoQubitBasis, lam: int) -> float:
    """Largest K valid for outcome lam of this channel and basis."""
    _check_lam(lam)
    c0, c1 = branch_coefficients(ch, basis)[lam - 1]
    return k_bound(c0, c1)


def _prefactor2(basis: TwoQubitBasis) -> float:
    return 0.5 if basis.kind == "bell" else 1.0


def _resolve_ks(
    policy: KPolicy, bounds: tuple[float, ...]
) -> tuple[float, ...]:
    if policy.mode == "fixed":
        k = policy.k
        for lam0, bound in enumerate(bounds):
            if k > bound * (1.0 + K_BOUND_RTOL):
                raise KOutOfRangeError(
                    f"K={k!r} exceeds the bound {bound!r} of outcome {lam0 + 1}"
                )
        return (k,) * 4
    if policy.mode == "max-global":
        return (min(bounds),) * 4
    return tuple(bounds)


def analytic_report(
    inp: PureInputState,
    ch: TwoQubitChannel,
    basis: TwoQubitBasis,
    policy: KPolicy,
) -> ProtocolReport:
    """Closed-form per-outcome probabilities and fidelities.

    p_alice is the chance the sender sees each outcome, p_bob the
    conditional chance the ancilla heralds success, and p_joint their
    product; p_joint never depends on the input amplitudes. Fidelity
    after correction is exactly 1 on every success branch.
    """
    _require_matchable(ch, basis)
    pairs = branch_coefficients(ch, basis)
    ks = _resolve_ks(policy, tuple(k_bound(c0, c1) for c0, c1 in pairs))
    pref2 = _prefactor2(basis)
    outcomes = []
    total = 0.0
    for lam0, (c0, c1) in enumerate(pairs):
        u0, u1 = (inp.beta, inp.alpha) if _SWAPS_INPUT[lam0] else (inp.alpha, inp.beta)
        p_alice = pref2 * (abs(c0 * u0) ** 2 + abs(c1 * u1) ** 2)
        p_joint = pref2 * (ks[lam0] * abs(c0 * c1)) ** 2
        outcomes.append(
            OutcomeReport(
                lam=lam0 + 1,
                k_used=ks[lam0],
                p_alice=p_alice,
                p_bob=p_joint / p_alice,
                p_joint=p_joint,
                fidelity=1.0,
            )
        )
        total += p_joint
    return ProtocolReport(tuple(outcomes), total)


def simulate_report(
    inp: PureInputState,
    ch: TwoQubitChannel,
    basis: TwoQubitBasis,
    policy: KPolicy,
) -> ProtocolReport:
    """Run the protocol by brute-force state evolution.

    Builds the three-qubit product state, projects each measurement
    outcome, attaches the ancilla, applies the matched unitary, reads
    the ancilla, and applies the Pauli correction. Reports the same
    fields as analytic_report; the two must agree to double precision.
    """
    _require_matchable(ch, basis)
    pairs = branch_coefficients(ch, basis)
    ks = _resolve_ks(policy, tuple(k_bound(c0, c1) for c0, c1 in pairs))
    input_vec = inp.vector()
    total_state = qlinalg.tensor(input_vec, ch.vector())
    outcomes = []
    total = 0.0
    for lam0, (c0, c1) in enumerate(pairs):
        lam = lam0 + 1
        p_alice, receiver = project(total_state, basis, lam)
        p_bob, success, _ = evolve_and_measure(
            attach_ancilla(receiver), matched_unitary(c0, c1, ks[lam0])
        )
        corrected = pauli_correction(lam) @ success
        fidelity = abs(np.vdot(input_vec, corrected)) ** 2
        p_joint = p_alice * p_bob
        outcomes.append(
            OutcomeReport(
                lam=lam,
                k_used=ks[lam0],
                p_alice=float(p_alice),
                p_bob=float(p_bob),
                p_joint=float(p_joint),
                fidelity=float(fidelity),
            )
        )
        total += p_joint
    return ProtocolReport(tuple(outcomes), float(total))


def monte_carlo(
    inp: PureInputState,
    ch: TwoQubitChannel,
    basis: TwoQubitBasis,
    policy: KPolicy,
    trials: int,
    seed: int,
) -> MonteCarloReport:
    """Sample the protocol: draw an outcome, then draw herald success.

    Outcomes follow the analytic p_alice distribution and success the
    conditional p_bob, using an explicitly seeded generator; the same
    seed always reproduces the same counts. std_err is the binomial
    standard error of p_hat.
    """
    trials = operator.index(trials)
    seed = operator.index(seed)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    report = analytic_report(inp, ch, basis, policy)
    p_alice = np.array([o.p_alice for o in report.outcomes])
    p_bob = np.array([o.p_bob for o in report.outcomes])
    rng = np.random.default_rng(seed)
    draws = rng.random((trials, 2))
    cuts = np.cumsum(p_alice)
    idx = np.minimum(np.searchsorted(cuts, draws[:, 0], side="right"), 3)
    succeeded = draws[:, 1] < p_bob[idx]
    outcome_counts = np.bincount(idx, minlength=4)
    success_counts = np.bincount(idx[succeeded], minlength=4)
    p_hat = float(succeeded.sum()) / trials
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return MonteCarloReport(
        trials=trials,
        seed=seed,
        outcome_counts=tuple(int(n) for n in outcome_counts),
        success_counts=tuple(int(n) for n in success_counts),
        p_hat=p_hat,
        std_err=std_err,
    )


# Smallest b on the comparison grid. Kept strictly positive so the
# optimal curve stays strictly above the fixed-K curves in doubles.
B_LO = 1e-6


def fig1_data(steps: int) -> list[Fig1Row]:
    """Success-probability curves versus channel coefficient b.

    For each b on a uniform grid from near 0 to 1/sqrt(2) (with
    a = sqrt(1 - b^2)), tabulates the per-outcome-optimal total 2*b^2
    and the fixed-K Bell-basis totals 2*(ab)^2 for K=1 and 4*(ab)^2
    for K=sqrt(2).
    """
    steps = operator.index(steps)
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    rows = []
    for b in np.linspace(B_LO, 1.0 / math.sqrt(2.0), steps):
        b2 = float(b) * float(b)
        a2 = 1.0 - b2
        rows.append(Fig1Row(float(b), 2.0 * b2, 2.0 * a2 * b2, 4.0 * a2 * b2))
    return rows
