"""Dense complex linear algebra for small multi-qubit systems.

States and density matrices are plain numpy arrays. Qubit 0 is the
leftmost party label and the most significant bit of the computational
basis index, so |q0 q1 ... q_{n-1}> lives at index sum_i q_i 2^(n-1-i).
That convention is fixed here once and used by every other module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    """Single numeric policy record shared by all modules.

    norm_api       unit-norm slack accepted at public entry points
    norm_internal  slack for freshly constructed states and parameters
    hermiticity    largest asymmetry the eigensolver will symmetrize away
    psd_floor      most negative eigenvalue a density matrix may carry
    eig_clamp      partial-transpose eigenvalues above -eig_clamp count as zero
    residual       third-order residuals below -residual make fourth-order
                   scores not applicable
    """

    norm_api: float = 1e-9
    norm_internal: float = 1e-12
    hermiticity: float = 1e-10
    psd_floor: float = -1e-10
    eig_clamp: float = 1e-12
    residual: float = 1e-9


TOL = Tolerances()


def num_qubits(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension, rejecting non powers of two."""
    n = max(int(dim).bit_length() - 1, 0)
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def as_state(amplitudes, atol: float = TOL.norm_internal) -> np.ndarray:
    """Validate and return a 1-D complex state vector.

    Rejects non-finite entries, lengths that are not powers of two, and
    squared norms deviating from 1 by more than atol. Never renormalizes:
    silent renormalization would hide caller bugs (samplers use
    :func:`normalize` explicitly instead).
    """
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(psi.real)) or not np.all(np.isfinite(psi.imag)):
        raise ValueError("state amplitudes must be finite")
    num_qubits(psi.size)
    dev = abs(float(np.vdot(psi, psi).real) - 1.0)
    if dev > atol:
        raise ValueError(f"state norm^2 deviates from 1 by {dev:.3g} (atol {atol:g})")
    return psi


def normalize(vec) -> np.ndarray:
    """Scale a nonzero vector to unit norm."""
    v = np.asarray(vec, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / norm


def kron(a, b) -> np.ndarray:
    """Kronecker product, for assembling composite states and operators."""
    return np.kron(np.asarray(a), np.asarray(b))


def outer(psi) -> np.ndarray:
    """Projector |psi><psi| of a normalized pure state."""
    psi = as_state(psi, atol=TOL.norm_api)
    return np.outer(psi, psi.conj())


def check_density(rho) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite.

    Tolerances come from TOL: entrywise asymmetry and trace deviation up to
    norm_internal, smallest eigenvalue down to psd_floor.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    num_qubits(rho.shape[0])
    if not np.all(np.isfinite(rho.real)) or not np.all(np.isfinite(rho.imag)):
        raise ValueError("density matrix entries must be finite")
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    if asym > TOL.norm_internal:
        raise ValueError(f"density matrix is not Hermitian: max asymmetry {asym:.3g}")
    tr = float(rho.trace().real)
    if abs(tr - 1.0) > TOL.norm_internal:
        raise ValueError(f"density matrix trace is {tr!r}, not 1")
    smallest = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)[0])
    if smallest < TOL.psd_floor:
        raise ValueError(f"density matrix is not PSD: smallest eigenvalue {smallest:.3g}")
    return rho


def _check_subset(subset, n: int, what: str) -> list[int]:
    qs = [int(q) for q in subset]
    if len(set(qs)) != len(qs):
        raise ValueError(f"duplicate qubit in {what}: {qs}")
    for q in qs:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n} qubits")
    return qs


def partial_trace(rho, keep) -> np.ndarray:
    """Trace out all qubits not listed in keep.

    The result's qubit order follows keep as given, so keep=(2, 0) puts
    qubit 2 in the most significant slot of the marginal.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    n = num_qubits(rho.shape[0])
    keep = _check_subset(keep, n, "keep")
    if not keep:
        raise ValueError("keep must name at least one qubit")
    rest = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    perm = keep + rest + [n + q for q in keep] + [n + q for q in rest]
    t = np.transpose(t, perm)
    dk, dr = 2 ** len(keep), 2 ** len(rest)
    return np.einsum("ijkj->ik", t.reshape(dk, dr, dk, dr))


def partial_transpose(rho, subset) -> np.ndarray:
    """Transpose the indices of the listed qubits only.

    Pure index rearrangement, so applying it twice restores the input
    exactly. The output is generally not positive semidefinite.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    n = num_qubits(rho.shape[0])
    subset = _check_subset(subset, n, "subset")
    t = rho.reshape([2] * (2 * n))
    axes = list(range(2 * n))
    for q in subset:
        axes[q], axes[n + q] = axes[n + q], axes[q]
    return np.transpose(t, axes).reshape(rho.shape)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Inputs with asymmetry up to TOL.hermiticity are symmetrized to
    (M + M^dagger)/2 first; anything worse is rejected rather than
    silently projected.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    asym = float(np.max(np.abs(m - m.conj().T)))
    if asym > TOL.hermiticity:
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:.3g}")
    return np.linalg.eigvalsh((m + m.conj().T) / 2.0)


def trace_norm_hermitian(m) -> float:
    """Trace norm (sum of absolute eigenvalues) of a Hermitian matrix."""
    return float(np.abs(hermitian_eigenvalues(m)).sum())


def _sqrt_nonneg(x: float) -> float:
    """Square root with tiny negative rounding noise clamped to zero."""
    return math.sqrt(x) if x > 0.0 else 0.0
