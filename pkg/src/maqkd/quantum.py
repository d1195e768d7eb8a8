"""Bell-diagonal two-qubit state algebra.

Entangled pairs start as perfect phi+ states and only ever pass through
Pauli channels (storage dephasing, detector white noise) and Bell-measurement
swapping, all of which preserve Bell diagonality.  States are therefore kept
as probability 4-vectors over (phi+, phi-, psi+, psi-); the dense density
matrix form exists only as a test oracle.

Single-qubit Pauli channels act identically on the Bell-diagonal coefficient
vector no matter which qubit they hit, so the channel functions take no qubit
index; callers pick which qubit's storage time feeds the channel.
"""

from __future__ import annotations

import math
from typing import NamedTuple


class BellDiagonalState(NamedTuple):
    """Probability weights over the four Bell states, in order
    (phi+, phi-, psi+, psi-)."""

    phi_plus: float
    phi_minus: float
    psi_plus: float
    psi_minus: float

    def validate(self, tol: float = 1e-9) -> "BellDiagonalState":
        if min(self) < -tol:
            raise ValueError(f"negative Bell coefficient in {self}")
        if abs(sum(self) - 1.0) > tol:
            raise ValueError(f"Bell coefficients of {self} do not sum to 1")
        return self


PHI_PLUS = BellDiagonalState(1.0, 0.0, 0.0, 0.0)
FULLY_MIXED = BellDiagonalState(0.25, 0.25, 0.25, 0.25)


def dephasing_weight(elapsed_s: float, dephasing_time_s: float) -> float:
    """Phase-flip probability accumulated over a storage interval."""
    if elapsed_s < 0:
        raise ValueError("elapsed time must be nonnegative")
    if dephasing_time_s <= 0:
        raise ValueError("dephasing time must be strictly positive")
    return -math.expm1(-elapsed_s / dephasing_time_s) / 2.0


def dephase(
    state: BellDiagonalState, elapsed_s: float, dephasing_time_s: float
) -> BellDiagonalState:
    """Storage dephasing of one qubit for a given time.

    Applies a Z flip with probability lambda(t), exchanging weight inside the
    (phi+, phi-) and (psi+, psi-) pairs.  Composes additively in time:
    dephasing for t1 then t2 equals dephasing for t1 + t2.
    """
    lam = dephasing_weight(elapsed_s, dephasing_time_s)
    if lam == 0.0:
        return state
    keep = 1.0 - lam
    p1, p2, p3, p4 = state
    return BellDiagonalState(
        keep * p1 + lam * p2,
        keep * p2 + lam * p1,
        keep * p3 + lam * p4,
        keep * p4 + lam * p3,
    )


def white_noise(state: BellDiagonalState, alpha: float) -> BellDiagonalState:
    """Local depolarizing noise on one qubit.

    With probability 1 - alpha the qubit is replaced by the fully mixed
    state, which flattens the Bell distribution toward uniform.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if alpha == 1.0:
        return state
    mixed = (1.0 - alpha) * 0.25
    return BellDiagonalState(
        alpha * state.phi_plus + mixed,
        alpha * state.phi_minus + mixed,
        alpha * state.psi_plus + mixed,
        alpha * state.psi_minus + mixed,
    )


def swap(a: BellDiagonalState, b: BellDiagonalState) -> BellDiagonalState:
    """Entanglement swap of two pairs sharing a middle station.

    Bell measurement at the shared node plus the announced Pauli correction;
    in the Bell-diagonal picture the bit- and phase-flip labels add mod 2,
    i.e. the coefficient vectors convolve over Z2 x Z2.  All four measurement
    outcomes give the same corrected state, so no sampling is involved.
    """
    out = [0.0, 0.0, 0.0, 0.0]
    for i in range(4):
        ai = a[i]
        if ai == 0.0:
            continue
        for j in range(4):
            out[i ^ j] += ai * b[j]
    return BellDiagonalState(*out)


def error_rates(state: BellDiagonalState) -> tuple[float, float]:
    """QBER pair (e_X, e_Z) of the state relative to the phi+ target.

    e_Z collects the bit-flip weight (psi components), e_X the phase-flip
    weight (minus components).
    """
    e_x = state.phi_minus + state.psi_minus
    e_z = state.psi_plus + state.psi_minus
    return e_x, e_z
