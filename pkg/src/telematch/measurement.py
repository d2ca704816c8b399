"""Two-qubit measurement bases and outcome projection.

A measurement basis is stored as a 4x4 matrix T whose rows are the four
basis states written over |00>, |01>, |10>, |11> (first digit = input
qubit, second digit = sender-side channel qubit). Outcomes are labeled
lam = 1..4, matching row order.

Each outcome lam induces a 2x2 branch operator sigma_lam on the
receiver qubit: if X is the channel parameter matrix, then

    sigma_lam = X @ B_lam,   B_lam[j, i] = sqrt(2) * conj(T[lam-1, 2*i + j]),

and the receiver's unnormalized post-measurement state is
(1/2) * sigma_lam @ (alpha, beta). The projection route in `project`
computes the same state directly from the three-qubit product state;
the two must agree, which the test suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qlinalg
from .channel import SQRT2, parse_complex

BASIS_KINDS = ("bell", "gbm")
ORTHONORMALITY_TOL = 1e-9


class InvalidBasisError(ValueError):
    """Raised when basis coefficients do not describe a valid basis."""


@dataclass(frozen=True, eq=False)
class TwoQubitBasis:
    """Orthonormal two-qubit measurement basis.

    kind is 'bell' for the standard basis or 'gbm' for the generalized
    family; a_p and b_p are the generalized coefficients (None for
    'bell'). Rows of t_matrix must be orthonormal.
    """

    kind: str
    a_p: float | None
    b_p: float | None
    t_matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.kind not in BASIS_KINDS:
            raise InvalidBasisError(f"unknown basis kind {self.kind!r}")
        t = np.asarray(self.t_matrix, dtype=np.complex128)
        if t.shape != (4, 4):
            raise InvalidBasisError(f"basis matrix must be 4x4, got {t.shape}")
        gram = t @ t.conj().T
        if float(np.max(np.abs(gram - np.eye(4)))) > ORTHONORMALITY_TOL:
            raise InvalidBasisError("basis rows are not orthonormal")
        t.setflags(write=False)
        object.__setattr__(self, "t_matrix", t)

    def state(self, lam: int) -> np.ndarray:
        """Basis state for outcome lam (1..4) as a 4-vector."""
        _check_lam(lam)
        return self.t_matrix[lam - 1].copy()

    @property
    def states(self) -> tuple[np.ndarray, ...]:
        return tuple(self.t_matrix[i].copy() for i in range(4))


def _check_lam(lam: int) -> None:
    if lam not in (1, 2, 3, 4):
        raise ValueError(f"outcome label must be 1..4, got {lam!r}")


def standard_bell() -> TwoQubitBasis:
    """The four Bell states, rows ordered (phi+, phi-, psi+, psi-)."""
    h = 1.0 / SQRT2
    t = np.array(
        [
            [h, 0, 0, h],
            [h, 0, 0, -h],
            [0, h, h, 0],
            [0, h, -h, 0],
        ],
        dtype=np.complex128,
    )
    return TwoQubitBasis("bell", None, None, t)


def generalized_bell(a_p: float, b_p: float) -> TwoQubitBasis:
    """Generalized measurement basis with real coefficients a_p, b_p.

    Rows are a_p|00> + b_p|11>, b_p|00> - a_p|11>, a_p|01> + b_p|10>,
    b_p|01> - a_p|10>. Requires a_p^2 + b_p^2 = 1; real coefficients
    keep the rows orthonormal.
    """
    if isinstance(a_p, complex) or isinstance(b_p, complex):
        if complex(a_p).imag != 0 or complex(b_p).imag != 0:
            raise InvalidBasisError("basis coefficients must be real")
        a_p, b_p = complex(a_p).real, complex(b_p).real
    a_p, b_p = float(a_p), float(b_p)
    if not (np.isfinite(a_p) and np.isfinite(b_p)):
        raise InvalidBasisError("basis coefficients must be finite")
    if abs(a_p * a_p + b_p * b_p - 1.0) > ORTHONORMALITY_TOL:
        raise InvalidBasisError(
            f"basis coefficients must satisfy a'^2 + b'^2 = 1, "
            f"got {a_p * a_p + b_p * b_p!r}"
        )
    t = np.array(
        [
            [a_p, 0, 0, b_p],
            [b_p, 0, 0, -a_p],
            [0, a_p, b_p, 0],
            [0, b_p, -a_p, 0],
        ],
        dtype=np.complex128,
    )
    return TwoQubitBasis("gbm", a_p, b_p, t)


def branch_operators(x_cpm, basis: TwoQubitBasis) -> tuple[np.ndarray, ...]:
    """Per-outcome 2x2 operators sigma_lam = X @ B_lam (see module doc)."""
    x = qlinalg.as_matrix(x_cpm)
    if x.shape != (2, 2):
        raise ValueError(f"channel parameter matrix must be 2x2, got {x.shape}")
    ops = []
    for lam in range(4):
        block = SQRT2 * basis.t_matrix[lam].reshape(2, 2).conj().T
        ops.append(x @ block)
    return tuple(ops)


def project(total, basis: TwoQubitBasis, lam: int) -> tuple[float, np.ndarray]:
    """Project a three-qubit state onto outcome lam of the basis.

    `total` is an 8-vector over |q1 q2 q3> with q1 the input qubit,
    q2 the sender-side channel qubit, q3 the receiver qubit; the
    measured pair is (q1, q2). Returns (probability, receiver state),
    with the receiver state left unnormalized so that its squared norm
    is the probability.
    """
    _check_lam(lam)
    v = qlinalg.as_vector(total)
    if v.shape[0] != 8:
        raise ValueError(f"total state must have length 8, got {v.shape[0]}")
    receiver = basis.t_matrix[lam - 1].conj() @ v.reshape(4, 2)
    return qlinalg.norm2(receiver), receiver


def parse_basis(text: str) -> TwoQubitBasis:
    """Parse a basis literal: 'bell' or 'gbm:a,b' with real a, b."""
    s = text.strip()
    if s.lower() == "bell":
        return standard_bell()
    if s.lower().startswith("gbm:"):
        parts = s[4:].split(",")
        if len(parts) != 2:
            raise InvalidBasisError(
                f"gbm basis needs two coefficients, got {text!r}"
            )
        vals = []
        for p in parts:
            z = parse_complex(p)
            if z.imag != 0:
                raise InvalidBasisError("basis coefficients must be real")
            vals.append(z.real)
        return generalized_bell(vals[0], vals[1])
    raise InvalidBasisError(f"unknown basis literal {text!r} (want 'bell' or 'gbm:a,b')")
