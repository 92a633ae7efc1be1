"""Seeded samplers, sweeps, Monte Carlo censuses, histograms, and threshold search.

Sampling laws (the source material says only "random states", so these are
pinned here and in the docs): class-C coefficients are four independent
standard normals scaled to the unit 3-sphere; gw-ground draws p uniform on
(0, 1) and a complex-normal four-vector scaled to the unit 7-sphere. Every
sample uses its own generator seeded from (seed, sample index), so results
do not depend on evaluation order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import states
from .closed_forms import (
    COMPONENT_KEYS,
    VARIANT_OF,
    cf_class_b,
    cf_cluster,
    cf_dicke,
    cf_gghz,
    cf_w_ones,
    cf_wwt,
)
from .linalg import TOL
from .monogamy import (
    MonogamyReport,
    NotApplicableError,
    ScoreComponents,
    check_mu3,
    powered,
    report_from_components,
    score_components,
)

SAMPLED_FAMILIES = ("class-c", "gw-ground")
FILTERS = ("none", "require_nonneg_delta3", "require_nonneg_pi3")


def substream(seed: int, index: int) -> np.random.Generator:
    """Per-sample generator derived from (seed, index)."""
    return np.random.default_rng([int(seed), int(index)])


def draw_class_c(rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the unit 3-sphere: normalized standard normals."""
    x = rng.normal(size=4)
    return x / np.linalg.norm(x)


def sample_class_c(rng: np.random.Generator) -> np.ndarray:
    return states.class_c(*draw_class_c(rng))


def draw_gw_ground(rng: np.random.Generator) -> tuple[float, np.ndarray]:
    """p uniform on (0, 1), amplitudes uniform on the unit 7-sphere."""
    p = float(rng.uniform(0.0, 1.0))
    while p == 0.0:
        p = float(rng.uniform(0.0, 1.0))
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    return p, a / np.linalg.norm(a)


def sample_gw_ground(rng: np.random.Generator) -> np.ndarray:
    p, a = draw_gw_ground(rng)
    return states.gw_plus_ground(p, *a)


_DRAWERS = {
    "class-c": (draw_class_c, ("x1", "x2", "x3", "x4")),
    "gw-ground": (draw_gw_ground, ("p", "a1", "a2", "a3", "a4")),
}


@dataclass(frozen=True)
class GridAxis:
    """One linearly spaced sweep axis."""

    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"axis {self.name!r} needs at least one point")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError(f"axis {self.name!r} bounds must be finite")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully specified sweep or Monte Carlo run.

    Exactly one of samples > 0 (Monte Carlo over a sampled family) or a
    nonempty grid (sweep over a real-view family) must be set. Monte Carlo
    runs require an explicit seed; there is no ambient randomness anywhere.
    """

    family: str
    samples: int = 0
    grid: tuple[GridAxis, ...] = ()
    fixed: tuple[tuple[str, float], ...] = ()
    seed: int | None = None
    mu3_delta: float = 1.0
    mu3_pi: float = 1.0
    focus: int = 0
    filter: str = "none"

    def __post_init__(self):
        check_mu3(self.mu3_delta)
        check_mu3(self.mu3_pi)
        if self.filter not in FILTERS:
            raise ValueError(f"unknown filter {self.filter!r}; choose from {FILTERS}")
        if (self.samples > 0) == bool(self.grid):
            raise ValueError("specify either a positive sample count or a grid, not both")
        if self.samples > 0:
            if self.family not in SAMPLED_FAMILIES:
                raise ValueError(
                    f"family {self.family!r} has no sampler; choose from {SAMPLED_FAMILIES}"
                )
            if self.seed is None:
                raise ValueError("Monte Carlo runs require an explicit seed")
        elif self.family not in states.REAL_VIEWS:
            raise ValueError(f"family {self.family!r} has no real sweep parameterization")


@dataclass(frozen=True)
class SampleRecord:
    """One draw or grid point: parameters, full report, filter flag."""

    index: int
    params: tuple[tuple[str, complex | float], ...]
    report: MonogamyReport
    filter_pass: bool


def _filter_pass(report: MonogamyReport, which: str) -> bool:
    if which == "require_nonneg_delta3":
        return min(report.delta3) >= -TOL.residual
    if which == "require_nonneg_pi3":
        return min(report.pi3) >= -TOL.residual
    return True


def run_experiment(config: ExperimentConfig) -> list[SampleRecord]:
    """Evaluate every sample or grid point of a config, in index order."""
    records = []
    if config.samples > 0:
        drawer, names = _DRAWERS[config.family]
        for index in range(config.samples):
            rng = substream(config.seed, index)
            drawn = drawer(rng)
            if config.family == "class-c":
                values = tuple(float(v) for v in drawn)
                psi = states.class_c(*values)
            else:
                p, a = drawn
                values = (p,) + tuple(complex(v) for v in a)
                psi = states.gw_plus_ground(p, *a)
            records.append(_record(config, index, tuple(zip(names, values)), psi))
        return records
    axes = [axis.values() for axis in config.grid]
    names = [axis.name for axis in config.grid]
    fixed = dict(config.fixed)
    for index, point in enumerate(itertools.product(*axes)):
        values = dict(zip(names, (float(v) for v in point)))
        try:
            psi = states.build_real(config.family, {**fixed, **values})
        except ValueError as err:
            raise ValueError(f"grid point {index}: {err}") from err
        params = tuple(values.items()) + tuple(sorted(fixed.items()))
        records.append(_record(config, index, params, psi))
    return records


def _record(config, index, params, psi) -> SampleRecord:
    try:
        report = report_from_components(
            score_components(psi, config.focus), config.mu3_delta, config.mu3_pi
        )
    except ValueError as err:
        raise ValueError(f"sample {index}: {err}") from err
    return SampleRecord(index, params, report, _filter_pass(report, config.filter))


@dataclass(frozen=True)
class HistogramSpec:
    bins: int
    lower: float
    upper: float
    score: str  # "delta4" or "pi4"

    def __post_init__(self):
        if self.bins < 1:
            raise ValueError("bin count must be at least 1")
        if not self.lower < self.upper:
            raise ValueError("histogram range must have lower < upper")
        if self.score not in ("delta4", "pi4"):
            raise ValueError(f"score must be delta4 or pi4, got {self.score!r}")


@dataclass(frozen=True)
class HistogramResult:
    """Bin counts over in-range applicable scores, with exclusions tallied."""

    spec: HistogramSpec
    edges: np.ndarray
    counts: np.ndarray
    below: int
    above: int
    excluded: int  # not applicable, or removed by the run's filter


def histogram(records, spec: HistogramSpec) -> HistogramResult:
    """Bin one score kind over the applicable, filter-passing records."""
    records = list(records)
    if not records:
        raise ValueError("cannot histogram an empty record list")
    values = []
    excluded = 0
    for rec in records:
        value = getattr(rec.report, spec.score)
        if value is None or not rec.filter_pass:
            excluded += 1
        else:
            values.append(value)
    values = np.asarray(values, dtype=float)
    edges = np.linspace(spec.lower, spec.upper, spec.bins + 1)
    in_range = values[(values >= spec.lower) & (values <= spec.upper)]
    counts, _ = np.histogram(in_range, bins=edges)
    return HistogramResult(
        spec=spec,
        edges=edges,
        counts=counts,
        below=int(np.sum(values < spec.lower)),
        above=int(np.sum(values > spec.upper)),
        excluded=excluded,
    )


def score_range(records) -> tuple[float, float]:
    """Smallest and largest applicable filter-passing score of either kind."""
    lo, hi = math.inf, -math.inf
    for rec in records:
        if not rec.filter_pass:
            continue
        for value in (rec.report.delta4, rec.report.pi4):
            if value is not None:
                lo = min(lo, value)
                hi = max(hi, value)
    if lo > hi:
        raise ValueError("no applicable scores to range over")
    if lo == hi:  # degenerate but legal: widen so lower < upper
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def min_mu3(psi, score: str, bracket: tuple[float, float], tol: float, focus: int = 0) -> float:
    """Smallest mu3 in the bracket with a non-negative fourth-order score.

    Requires the score to be monotone in mu3 at this point, which holds
    when all third-order residuals lie in [0, 1]. Returns the bracket's
    lower end when the score is already non-negative there; raises when
    the score stays negative across the bracket or is not applicable.
    """
    if score not in ("delta", "pi"):
        raise ValueError(f"score must be 'delta' or 'pi', got {score!r}")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 < lo < hi:
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got {bracket!r}")
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    comp = score_components(psi, focus)
    if score == "delta":
        head, residuals = comp.delta1 - sum(comp.delta2), comp.delta3
    else:
        head, residuals = comp.pi1 - sum(comp.pi2), comp.pi3
    if min(residuals) < -TOL.residual:
        raise NotApplicableError(
            f"{score} score is not applicable here: residual {min(residuals):.6g} < 0"
        )
    if max(residuals) > 1.0 + TOL.residual:
        raise ValueError("monotone search needs third-order residuals in [0, 1]")

    def value(mu: float) -> float:
        return head - sum(powered(r, mu) for r in residuals)

    if value(lo) >= 0.0:
        return lo
    if value(hi) < 0.0:
        raise ValueError(f"no sign change in bracket ({lo:g}, {hi:g})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if value(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class ThresholdScan:
    """Largest per-point threshold over a collection of states."""

    max_mu3: float
    argmax_index: int
    applicable: int
    skipped: int


def pipeline_components(comp: ScoreComponents, report: MonogamyReport) -> dict:
    """Numeric pipeline values keyed like the closed-form components."""
    out = {
        "delta1": comp.delta1,
        "pi1": comp.pi1,
        "delta4": report.delta4,
        "pi4": report.pi4,
    }
    for i, tag in enumerate(("j1", "j2", "j3")):
        out[f"delta2_{tag}"] = comp.delta2[i]
        out[f"pi2_{tag}"] = comp.pi2[i]
    for i, tag in enumerate(("j1j2", "j1j3", "j2j3")):
        out[f"split3_{tag}"] = comp.split3[i]
        out[f"delta3_{tag}"] = comp.delta3[i]
        out[f"pi3_{tag}"] = comp.pi3[i]
    return out


CLOSED_FORM_FAMILIES = ("class-b", "cluster", "dicke", "wwt", "w-ones", "gghz")


def random_cluster_params(rng: np.random.Generator, constrained: bool) -> tuple[complex, complex, complex, complex]:
    """Random normalized cluster amplitudes, optionally obeying a c* = b d*.

    The constrained draw picks moduli and phases of a, b, c freely and
    solves for d, which keeps the constraint exact up to rounding and
    survives the final normalization (both sides scale the same way).
    """
    if not constrained:
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        return tuple(complex(z) for z in v)
    ra, rb, rc = rng.uniform(0.2, 1.0, size=3)
    pa, pb, pc = rng.uniform(0.0, 2.0 * np.pi, size=3)
    a = ra * np.exp(1j * pa)
    b = rb * np.exp(1j * pb)
    c = rc * np.exp(1j * pc)
    d = (ra * rc / rb) * np.exp(1j * (pb - pa + pc))
    v = np.array([a, b, c, d]) / math.sqrt(ra**2 + rb**2 + rc**2 + (ra * rc / rb) ** 2)
    return tuple(complex(z) for z in v)


def _default_points(family: str) -> list[tuple]:
    if family == "class-b":
        return [
            (float(r1), float(alpha), float(beta))
            for r1 in np.linspace(0.0, 1.0 / math.sqrt(2.0), 5)
            for alpha in np.linspace(0.0, 2.0 * np.pi, 5, endpoint=False)
            for beta in np.linspace(0.0, 2.0 * np.pi, 8, endpoint=False)
        ]
    if family == "gghz":
        return [
            (float(r), complex(math.sqrt(1.0 - r * r) * np.exp(1j * theta)))
            for r in np.linspace(0.0, 1.0, 25)
            for theta in np.linspace(0.0, 2.0 * np.pi, 8, endpoint=False)
        ]
    if family == "dicke":
        return [(1,), (3,)]
    if family == "wwt":
        return [(float(s),) for s in np.linspace(0.0, 1.0, 103)[1:-1]]
    if family == "w-ones":
        return [(float(a),) for a in np.linspace(0.0, 1.0, 101)]
    rng = np.random.default_rng(1234)
    return [random_cluster_params(rng, constrained=i >= 50) for i in range(100)]


def _point_state(family: str, point) -> np.ndarray:
    if family == "class-b":
        r1, alpha, beta = point
        r3 = math.sqrt(max(0.5 - r1 * r1, 0.0))
        return states.class_b_polar(r1, r3, alpha, beta)
    if family == "gghz":
        return states.gghz(*point)
    if family == "dicke":
        return states.dicke(4, point[0])
    if family == "wwt":
        return states.w_wtilde(point[0], 0.0)
    if family == "w-ones":
        a = point[0]
        return states.w_plus_ones(a, math.sqrt(max(1.0 - a * a, 0.0)))
    return states.cluster(*point)


def _point_oracle(family: str, point, mu3: float) -> tuple[dict, frozenset]:
    if family == "class-b":
        r1, alpha, beta = point
        r3 = math.sqrt(max(0.5 - r1 * r1, 0.0))
        d4, p4 = cf_class_b(r1, r3, alpha, beta, mu3)
        return {"delta4": d4, "pi4": p4}, frozenset()
    if family == "gghz":
        d4, p4 = cf_gghz(*point)
        return {"delta4": d4, "pi4": p4}, frozenset()
    if family == "dicke":
        d4, p4 = cf_dicke(point[0], mu3)
        return {"delta4": d4, "pi4": p4}, frozenset()
    if family == "wwt":
        bd = cf_wwt(point[0], mu3)
    elif family == "w-ones":
        bd = cf_w_ones(point[0], mu3)
    else:
        bd = cf_cluster(*point, mu3=mu3)
    return bd.components, bd.flagged


@dataclass(frozen=True)
class ComponentCheck:
    """Worst oracle-vs-pipeline discrepancy for one component over a grid."""

    component: str
    max_abs_diff: float
    flagged: bool
    worst_point: int


@dataclass(frozen=True)
class VerifyResult:
    family: str
    tol: float
    points: int
    checks: tuple[ComponentCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.flagged or c.max_abs_diff <= self.tol for c in self.checks)

    @property
    def reported(self) -> tuple[ComponentCheck, ...]:
        """Flagged components, reported rather than asserted."""
        return tuple(c for c in self.checks if c.flagged)


def verify_closed_forms(family: str, points=None, tol: float = 1e-8, mu3: float = 1.0) -> VerifyResult:
    """Compare every populated closed-form component against the pipeline.

    Returns the per-component worst absolute discrepancy over the grid.
    Flagged components (known tabulation disagreements and printed
    variants) never fail verification; they are carried as reports.
    """
    if family not in CLOSED_FORM_FAMILIES:
        raise ValueError(f"no closed forms for family {family!r}; choose from {CLOSED_FORM_FAMILIES}")
    mu3 = check_mu3(mu3)
    pts = list(points) if points is not None else _default_points(family)
    if not pts:
        raise ValueError("need at least one parameter point")
    worst: dict[str, tuple[float, int]] = {}
    flagged_keys: set[str] = set()
    for idx, point in enumerate(pts):
        oracle, flags = _point_oracle(family, point, mu3)
        flagged_keys |= flags
        comp = score_components(_point_state(family, point), 0)
        report = report_from_components(comp, mu3, mu3)
        pipeline = pipeline_components(comp, report)
        for key, value in oracle.items():
            ref = pipeline[VARIANT_OF.get(key, key)]
            diff = math.inf if ref is None else abs(value - ref)
            if key not in worst or diff > worst[key][0]:
                worst[key] = (diff, idx)
    checks = tuple(
        ComponentCheck(key, worst[key][0], key in flagged_keys, worst[key][1])
        for key in sorted(worst, key=_component_order)
    )
    return VerifyResult(family, tol, len(pts), checks)


def _component_order(key: str) -> tuple[int, str]:
    try:
        return (COMPONENT_KEYS.index(key), key)
    except ValueError:
        return (len(COMPONENT_KEYS), key)


def scan_min_mu3(psis, score: str, bracket, tol: float, focus: int = 0) -> ThresholdScan:
    """min_mu3 maximized over many states, skipping not-applicable points."""
    best, arg, applicable, skipped = -math.inf, -1, 0, 0
    for index, psi in enumerate(psis):
        try:
            m = min_mu3(psi, score, bracket, tol, focus)
        except NotApplicableError:
            skipped += 1
            continue
        applicable += 1
        if m > best:
            best, arg = m, index
    if applicable == 0:
        raise NotApplicableError("every point in the scan was not applicable")
    return ThresholdScan(best, arg, applicable, skipped)
