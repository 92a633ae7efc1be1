"""Residual hierarchy for negativity and squared negativity.

For a four-qubit pure state with focus qubit f and partners j1 < j2 < j3:

    delta1        = N_{f|j1 j2 j3}          (one to rest)
    delta2_j      = N_{f|j}                 (two-qubit marginal)
    delta3_{j,k}  = N_{f|(jk)} - delta2_j - delta2_k
    delta4        = delta1 - sum_j delta2_j - sum_{j<k} [delta3_{j,k}]^mu3

and pi1..pi4 are the same residuals built from squared negativities.
The exponent mu2 is fixed at 1; mu3 > 0 is free. A fourth-order score is
"not applicable" (None) when any third-order residual is negative beyond
-TOL.residual, which is a different situation from a well-defined
negative score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import TOL, as_state, num_qubits, outer, partial_trace
from .negativity import negativity

MU2 = 1.0

_PAIR_POS = ((0, 1), (0, 2), (1, 2))

NOT_APPLICABLE_DELTA = "negative delta residual"
NOT_APPLICABLE_PI = "negative pi residual"


class NotApplicableError(ValueError):
    """A residual is negative beyond tolerance, so the score is undefined."""


def check_mu3(mu3) -> float:
    mu3 = float(mu3)
    if not math.isfinite(mu3) or mu3 <= 0.0:
        raise ValueError(f"mu3 must be a positive real, got {mu3!r}")
    return mu3


def powered(x: float, mu: float) -> float:
    """Clamped power [x]^mu for residuals.

    Values in [-TOL.residual, 0) are eigensolver noise and clamp to 0;
    anything more negative raises NotApplicableError because a fractional
    power of it would be complex.
    """
    x = float(x)
    if x < -TOL.residual:
        raise NotApplicableError(
            f"residual {x:.6g} is negative, cannot apply exponent {mu:g}"
        )
    return float(x**mu) if x > 0.0 else 0.0


def _check_distinct(n: int, *qubits: int) -> tuple[int, ...]:
    qs = tuple(int(q) for q in qubits)
    if len(set(qs)) != len(qs):
        raise ValueError(f"qubit indices must be distinct, got {qs}")
    for q in qs:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n} qubits")
    return qs


def two_delta(psi, focus: int, j: int) -> float:
    """Negativity of the two-qubit marginal rho_{focus,j}."""
    psi = as_state(psi, atol=TOL.norm_api)
    n = num_qubits(psi.size)
    focus, j = _check_distinct(n, focus, j)
    return negativity(partial_trace(outer(psi), (focus, j)), (0,))


def three_split_negativity(psi, focus: int, j: int, k: int) -> float:
    """Negativity of the three-qubit marginal rho_{focus,j,k} across focus|(jk)."""
    psi = as_state(psi, atol=TOL.norm_api)
    n = num_qubits(psi.size)
    focus, j, k = _check_distinct(n, focus, j, k)
    return negativity(partial_trace(outer(psi), (focus, j, k)), (0,))


def three_delta(psi, focus: int, j: int, k: int) -> float:
    """Third-order negativity residual; may be negative."""
    return (
        three_split_negativity(psi, focus, j, k)
        - two_delta(psi, focus, j)
        - two_delta(psi, focus, k)
    )


def three_pi(psi, focus: int, j: int, k: int) -> float:
    """Third-order squared-negativity residual; may be negative."""
    return (
        three_split_negativity(psi, focus, j, k) ** 2
        - two_delta(psi, focus, j) ** 2
        - two_delta(psi, focus, k) ** 2
    )


def ckw_check_three_qubit(psi, focus: int = 0) -> tuple[float, float, float]:
    """One-to-rest vs pairwise squared negativities of a three-qubit pure state.

    Returns (lhs, rhs, residual) where lhs = N^2_{f|rest}, rhs is the sum
    of the two pairwise squared negativities and residual = lhs - rhs.
    """
    psi = as_state(psi, atol=TOL.norm_api)
    if num_qubits(psi.size) != 3:
        raise ValueError("expected a three-qubit state")
    (focus,) = _check_distinct(3, focus)
    others = tuple(q for q in range(3) if q != focus)
    rho = outer(psi)
    lhs = negativity(rho, (focus,)) ** 2
    rhs = sum(negativity(partial_trace(rho, (focus, j)), (0,)) ** 2 for j in others)
    return lhs, rhs, lhs - rhs


@dataclass(frozen=True)
class ScoreComponents:
    """Every marginal negativity entering the fourth-order scores."""

    focus: int
    partners: tuple[int, int, int]
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    delta1: float
    delta2: tuple[float, float, float]
    split3: tuple[float, float, float]

    @property
    def delta3(self) -> tuple[float, float, float]:
        return tuple(
            self.split3[m] - self.delta2[a] - self.delta2[b]
            for m, (a, b) in enumerate(_PAIR_POS)
        )

    @property
    def pi1(self) -> float:
        return self.delta1**2

    @property
    def pi2(self) -> tuple[float, float, float]:
        return tuple(v**2 for v in self.delta2)

    @property
    def pi3(self) -> tuple[float, float, float]:
        return tuple(
            self.split3[m] ** 2 - self.pi2[a] - self.pi2[b]
            for m, (a, b) in enumerate(_PAIR_POS)
        )


def score_components(psi, focus: int = 0) -> ScoreComponents:
    """Compute all marginal negativities of a four-qubit pure state once."""
    psi = as_state(psi, atol=TOL.norm_api)
    if num_qubits(psi.size) != 4:
        raise ValueError("fourth-order scores are defined for four-qubit states")
    (focus,) = _check_distinct(4, focus)
    partners = tuple(q for q in range(4) if q != focus)
    pairs = tuple((partners[a], partners[b]) for a, b in _PAIR_POS)
    rho = outer(psi)
    delta1 = negativity(rho, (focus,))
    delta2 = tuple(negativity(partial_trace(rho, (focus, j)), (0,)) for j in partners)
    split3 = tuple(
        negativity(partial_trace(rho, (focus, j, k)), (0,)) for j, k in pairs
    )
    return ScoreComponents(focus, partners, pairs, delta1, delta2, split3)


def _tail(residuals, mu3: float) -> float:
    return sum(powered(x, mu3) for x in residuals)


def four_delta(psi, focus: int = 0, mu3: float = 1.0) -> float | None:
    """Fourth-order negativity residual, or None when not applicable."""
    mu3 = check_mu3(mu3)
    comp = score_components(psi, focus)
    try:
        tail = _tail(comp.delta3, mu3)
    except NotApplicableError:
        return None
    return comp.delta1 - sum(comp.delta2) - tail


def four_pi(psi, focus: int = 0, mu3: float = 1.0) -> float | None:
    """Fourth-order squared-negativity residual, or None when not applicable."""
    mu3 = check_mu3(mu3)
    comp = score_components(psi, focus)
    try:
        tail = _tail(comp.pi3, mu3)
    except NotApplicableError:
        return None
    return comp.pi1 - sum(comp.pi2) - tail


@dataclass(frozen=True)
class MonogamyReport:
    """Full residual breakdown of a four-qubit pure state for one focus qubit."""

    focus: int
    partners: tuple[int, int, int]
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    mu3_delta: float
    mu3_pi: float
    delta1: float
    delta2: tuple[float, float, float]
    delta3: tuple[float, float, float]
    delta4: float | None
    pi1: float
    pi2: tuple[float, float, float]
    pi3: tuple[float, float, float]
    pi4: float | None
    applicable_delta: bool
    applicable_pi: bool
    reason_delta: str | None
    reason_pi: str | None


def report_from_components(
    comp: ScoreComponents, mu3_delta: float = 1.0, mu3_pi: float = 1.0
) -> MonogamyReport:
    """Assemble a MonogamyReport from precomputed components."""
    mu3_delta = check_mu3(mu3_delta)
    mu3_pi = check_mu3(mu3_pi)
    delta3 = comp.delta3
    pi3 = comp.pi3
    applicable_delta = min(delta3) >= -TOL.residual
    applicable_pi = min(pi3) >= -TOL.residual
    delta4 = (
        comp.delta1 - sum(comp.delta2) - _tail(delta3, mu3_delta)
        if applicable_delta
        else None
    )
    pi4 = comp.pi1 - sum(comp.pi2) - _tail(pi3, mu3_pi) if applicable_pi else None
    return MonogamyReport(
        focus=comp.focus,
        partners=comp.partners,
        pairs=comp.pairs,
        mu3_delta=mu3_delta,
        mu3_pi=mu3_pi,
        delta1=comp.delta1,
        delta2=comp.delta2,
        delta3=delta3,
        delta4=delta4,
        pi1=comp.pi1,
        pi2=comp.pi2,
        pi3=pi3,
        pi4=pi4,
        applicable_delta=applicable_delta,
        applicable_pi=applicable_pi,
        reason_delta=None if applicable_delta else NOT_APPLICABLE_DELTA,
        reason_pi=None if applicable_pi else NOT_APPLICABLE_PI,
    )


def monogamy_report(
    psi, focus: int = 0, mu3_delta: float = 1.0, mu3_pi: float = 1.0
) -> MonogamyReport:
    """Compute the full delta/pi breakdown of a four-qubit pure state."""
    return report_from_components(score_components(psi, focus), mu3_delta, mu3_pi)
