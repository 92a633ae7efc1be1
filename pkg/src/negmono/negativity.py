"""Negativity of a bipartition.

For a density matrix rho and a focus subset F, the negativity is

    N = (||rho^{T_F}||_1 - 1) / (d - 1),   d = 2^|F|,

equivalently twice the absolute sum of the negative partial-transpose
eigenvalues divided by d - 1. Every use case in this package has a
single-qubit focus (d = 2), where the divisor is 1 and 0 <= N <= 1.
"""

from __future__ import annotations

import numpy as np

from .linalg import (
    TOL,
    as_state,
    check_density,
    hermitian_eigenvalues,
    num_qubits,
    partial_transpose,
    _sqrt_nonneg,
)


def _as_subset(focus) -> tuple[int, ...]:
    if isinstance(focus, (int, np.integer)):
        return (int(focus),)
    return tuple(int(q) for q in focus)


def negativity(rho, focus) -> float:
    """Negativity of rho across focus | rest.

    The input must pass the density-matrix checks (a non-PSD matrix is
    rejected, not silently transposed), and focus must be a proper
    nonempty subset of the qubits. Eigenvalues in [-TOL.eig_clamp, 0)
    are treated as zero so separable states come out exactly 0.
    """
    rho = check_density(rho)
    n = num_qubits(rho.shape[0])
    focus = _as_subset(focus)
    if not 0 < len(focus) < n:
        raise ValueError(f"focus must be a proper nonempty subset, got {focus} of {n} qubits")
    ev = hermitian_eigenvalues(partial_transpose(rho, focus))
    neg = ev[ev < -TOL.eig_clamp]
    d = 2 ** len(focus)
    # the + 0.0 keeps an empty negative part from printing as -0
    return float(-2.0 * neg.sum() / (d - 1)) + 0.0


def pure_state_negativity(psi, focus) -> float:
    """One-qubit-to-rest negativity of a pure state, via Schmidt coefficients.

    Equals 2 sqrt(lam1 lam2) with lam1, lam2 the eigenvalues of the focus
    qubit's reduced density matrix; used as an independent cross-check of
    the partial-transpose route.
    """
    psi = as_state(psi, atol=TOL.norm_api)
    n = num_qubits(psi.size)
    focus = _as_subset(focus)
    if len(focus) != 1:
        raise ValueError("the pure-state shortcut handles a single focus qubit; use negativity()")
    (q,) = focus
    if not 0 <= q < n:
        raise ValueError(f"qubit {q} out of range for {n} qubits")
    rows = np.moveaxis(psi.reshape([2] * n), q, 0).reshape(2, -1)
    rdm = rows @ rows.conj().T
    det = float(rdm[0, 0].real) * float(rdm[1, 1].real) - abs(rdm[0, 1]) ** 2
    return 2.0 * _sqrt_nonneg(det)
