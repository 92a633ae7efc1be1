"""Tests for the state/operator helpers and the tolerance policy."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negmono.linalg import (
    TOL,
    as_state,
    check_density,
    hermitian_eigenvalues,
    kron,
    normalize,
    num_qubits,
    outer,
    partial_trace,
    partial_transpose,
    trace_norm_hermitian,
)
from oracles import haar_state, ptrace_loops, ptranspose_loops

RNG = np.random.default_rng(20260814)


def random_density(rng, n):
    g = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def test_num_qubits():
    """Hilbert-space dimension must be a power of two."""
    assert num_qubits(2) == 1
    assert num_qubits(16) == 4
    with pytest.raises(ValueError):
        num_qubits(12)
    with pytest.raises(ValueError):
        num_qubits(0)


def test_as_state_accepts_normalized():
    psi = as_state([1 / np.sqrt(2), 0, 0, 1j / np.sqrt(2)])
    assert psi.dtype == complex
    assert abs(np.vdot(psi, psi).real - 1.0) < 1e-15


def test_as_state_rejects_unnormalized_without_renormalizing():
    """A clearly unnormalized vector is an error, not a silent fix."""
    with pytest.raises(ValueError):
        as_state([1.0, 1.0])
    with pytest.raises(ValueError):
        as_state([np.nan, 0.0])


def test_as_state_internal_tolerance_is_tight():
    bad = np.array([1.0 + 4e-10, 0.0])
    with pytest.raises(ValueError):
        as_state(bad, atol=TOL.norm_internal)
    assert as_state(bad, atol=TOL.norm_api) is not None


def test_normalize():
    psi = normalize([3.0, 4.0])
    assert np.allclose(psi, [0.6, 0.8])
    with pytest.raises(ValueError):
        normalize([0.0, 0.0])


def test_kron_and_outer():
    up = np.array([1.0, 0.0])
    down = np.array([0.0, 1.0])
    assert np.array_equal(kron(up, down), np.array([0, 1, 0, 0], dtype=complex))
    rho = outer(normalize([1.0, 1.0]))
    assert np.allclose(rho, 0.5 * np.ones((2, 2)))


def test_check_density_accepts_valid():
    check_density(random_density(RNG, 2))


def test_check_density_rejects_bad_trace_and_nonhermitian():
    rho = np.eye(4) / 4
    with pytest.raises(ValueError):
        check_density(2 * rho)
    skew = rho.astype(complex).copy()
    skew[0, 1] = 0.3
    with pytest.raises(ValueError):
        check_density(skew)


def test_check_density_rejects_negative_operator():
    rho = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
    with pytest.raises(ValueError):
        check_density(rho)


def test_partial_trace_product_state():
    """Tracing half of a product state returns the other factor's projector."""
    a = normalize([1.0, 2.0])
    b = normalize([3.0 - 1j, 0.5])
    rho = outer(kron(a, b))
    assert np.allclose(partial_trace(rho, keep=[0]), outer(a), atol=1e-14)
    assert np.allclose(partial_trace(rho, keep=[1]), outer(b), atol=1e-14)


def test_partial_trace_w4_single_qubit():
    """One qubit of the four-qubit single-excitation symmetric state."""
    psi = np.zeros(16, dtype=complex)
    for idx in (0b1000, 0b0100, 0b0010, 0b0001):
        psi[idx] = 0.5
    rho1 = partial_trace(outer(psi), keep=[0])
    assert np.allclose(rho1, np.diag([0.75, 0.25]), atol=1e-14)


def test_partial_trace_keep_order():
    """keep=[1, 0] must transpose the factors relative to keep=[0, 1]."""
    a = normalize([1.0, 1j])
    b = normalize([2.0, -1.0])
    rho = outer(kron(a, b))
    direct = partial_trace(rho, keep=[0, 1])
    swapped = partial_trace(rho, keep=[1, 0])
    assert np.allclose(swapped, np.kron(outer(b), outer(a)), atol=1e-14)
    assert not np.allclose(direct, swapped)


def test_partial_trace_matches_loop_oracle():
    for n, keep in [(3, [0]), (3, [2]), (4, [1, 3]), (4, [0, 1, 2])]:
        rho = random_density(RNG, n)
        got = partial_trace(rho, keep=keep)
        want = ptrace_loops(rho, keep, n)
        assert np.allclose(got, want, atol=1e-13)


def test_partial_transpose_bell_spectrum():
    """PT of a maximally entangled pair has eigenvalues (-1/2, 1/2, 1/2, 1/2)."""
    bell = normalize([1.0, 0.0, 0.0, 1.0])
    pt = partial_transpose(outer(bell), [0])
    ev = np.sort(np.linalg.eigvalsh(pt))
    assert np.allclose(ev, [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_partial_transpose_involution_exact():
    """Applying the same partial transpose twice gives back the array exactly."""
    rho = random_density(RNG, 4)
    twice = partial_transpose(partial_transpose(rho, [0, 2]), [0, 2])
    assert np.array_equal(twice, rho)


def test_partial_transpose_matches_loop_oracle():
    for n, subset in [(2, [0]), (3, [1]), (4, [0, 3]), (4, [1, 2, 3])]:
        rho = random_density(RNG, n)
        got = partial_transpose(rho, subset)
        want = ptranspose_loops(rho, subset, n)
        assert np.array_equal(got, want)


def test_partial_transpose_full_subset_is_transpose():
    rho = random_density(RNG, 2)
    assert np.allclose(partial_transpose(rho, [0, 1]), rho.T)


def test_hermitian_eigenvalues_sum_is_trace():
    rho = random_density(RNG, 4)
    ev = hermitian_eigenvalues(rho)
    assert abs(ev.sum() - np.trace(rho).real) < 1e-12


def test_hermitian_eigenvalues_symmetrizes_small_asymmetry():
    rho = random_density(RNG, 2)
    bumped = rho.copy()
    bumped[0, 1] += 1e-12
    ev = hermitian_eigenvalues(bumped)
    assert np.allclose(np.sort(ev), np.sort(hermitian_eigenvalues(rho)), atol=1e-10)


def test_hermitian_eigenvalues_rejects_large_asymmetry():
    rho = random_density(RNG, 2).copy()
    rho[0, 1] += 0.05
    with pytest.raises(ValueError):
        hermitian_eigenvalues(rho)


def test_trace_norm_values():
    """Trace norm of a density matrix is 1; of a PT'd Bell pair it is 2."""
    rho = random_density(RNG, 3)
    assert abs(trace_norm_hermitian(rho) - 1.0) < 1e-12
    bell = normalize([1.0, 0.0, 0.0, 1.0])
    pt = partial_transpose(outer(bell), [0])
    assert abs(trace_norm_hermitian(pt) - 2.0) < 1e-12
    assert trace_norm_hermitian(np.zeros((4, 4))) == 0.0


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_partial_trace_of_pure_state_has_unit_trace(seed):
    """Any marginal of a random pure state is a valid density matrix."""
    rng = np.random.default_rng(seed)
    psi = haar_state(rng, 3)
    rho = outer(psi)
    for keep in ([0], [1, 2], [2, 0]):
        marg = partial_trace(rho, keep=keep)
        check_density(marg)
