"""Constructors for the named four-qubit state families.

Every constructor validates its parameters (normalization within 1e-12,
finite entries) and never renormalizes silently; random samplers are
expected to call linalg.normalize themselves before passing parameters in.
Amplitude indexing follows the package convention: qubit 0 is the most
significant bit, so |0001> sits at index 1 and |1000> at index 8.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable

import numpy as np

from .linalg import TOL, kron

_SQRT2 = math.sqrt(2.0)

_BELL = {
    "phi+": np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / _SQRT2,
    "phi-": np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / _SQRT2,
    "psi+": np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / _SQRT2,
    "psi-": np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / _SQRT2,
}


def _as_complex(name: str, value) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"parameter {name} must be finite, got {value!r}")
    return z


def _as_real(name: str, value) -> float:
    if isinstance(value, complex):
        if value.imag != 0.0:
            raise ValueError(f"parameter {name} must be real, got {value!r}")
        value = value.real
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"parameter {name} must be finite, got {value!r}")
    return x


def _check_unit_sum(total: float, what: str) -> None:
    if abs(total - 1.0) > TOL.norm_internal:
        raise ValueError(f"{what} must equal 1 within {TOL.norm_internal:g}, got {total!r}")


def bell(kind: str) -> np.ndarray:
    """Two-qubit Bell state: one of phi+, phi-, psi+, psi-."""
    key = str(kind).lower()
    if key not in _BELL:
        raise ValueError(f"unknown Bell state {kind!r}; choose from {sorted(_BELL)}")
    return _BELL[key].copy()


def generic_a(z1, z2, z3, z4) -> np.ndarray:
    """Superposition z1 u1 + z2 u2 + z3 u3 + z4 u4 of tensor-squared Bell states.

    u1..u4 are phi+ phi+, phi- phi-, psi+ psi+, psi- psi- in that order.
    """
    zs = [_as_complex(f"z{i}", z) for i, z in enumerate((z1, z2, z3, z4), start=1)]
    _check_unit_sum(sum(abs(z) ** 2 for z in zs), "sum of |z_i|^2")
    psi = np.zeros(16, dtype=complex)
    for z, kind in zip(zs, ("phi+", "phi-", "psi+", "psi-")):
        psi += z * kron(_BELL[kind], _BELL[kind])
    return psi


def class_b(z1, z3) -> np.ndarray:
    """Generic-A state with z2 = z1 and z4 = z3."""
    z1 = _as_complex("z1", z1)
    z3 = _as_complex("z3", z3)
    _check_unit_sum(2.0 * (abs(z1) ** 2 + abs(z3) ** 2), "2(|z1|^2 + |z3|^2)")
    return generic_a(z1, z1, z3, z3)


def class_b_polar(r1: float, r3: float, alpha: float, beta: float) -> np.ndarray:
    """Polar form of class_b: z1 = r1 e^{i alpha}, z3 = r3 e^{i beta}, r1^2 + r3^2 = 1/2."""
    r1 = _as_real("r1", r1)
    r3 = _as_real("r3", r3)
    if r1 < 0.0 or r3 < 0.0:
        raise ValueError(f"radii must be non-negative, got r1={r1!r}, r3={r3!r}")
    if abs(r1 * r1 + r3 * r3 - 0.5) > TOL.norm_internal:
        raise ValueError(f"r1^2 + r3^2 must equal 1/2, got {r1 * r1 + r3 * r3!r}")
    alpha = _as_real("alpha", alpha)
    beta = _as_real("beta", beta)
    return class_b(r1 * cmath.exp(1j * alpha), r3 * cmath.exp(1j * beta))


def class_c(x1, x2, x3, x4) -> np.ndarray:
    """Generic-A state with real coefficients on the unit 3-sphere."""
    xs = [_as_real(f"x{i}", x) for i, x in enumerate((x1, x2, x3, x4), start=1)]
    _check_unit_sum(sum(x * x for x in xs), "sum of x_i^2")
    return generic_a(*xs)


def cluster(a, b, c, d) -> np.ndarray:
    """Four-qubit cluster state a|0000> + b|0011> + c|1100> - d|1111>."""
    a, b, c, d = (_as_complex(n, v) for n, v in zip("abcd", (a, b, c, d)))
    _check_unit_sum(abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2, "sum of squared moduli")
    psi = np.zeros(16, dtype=complex)
    psi[0b0000] = a
    psi[0b0011] = b
    psi[0b1100] = c
    psi[0b1111] = -d
    return psi


def dicke(n: int, k: int) -> np.ndarray:
    """Symmetric n-qubit state with k excitations, all C(n,k) amplitudes equal."""
    n = int(n)
    k = int(k)
    if not 1 <= n <= 8:
        raise ValueError(f"qubit count must be in 1..8, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"excitation count must be in 0..{n}, got {k}")
    amp = 1.0 / math.sqrt(math.comb(n, k))
    psi = np.zeros(2**n, dtype=complex)
    for idx in range(2**n):
        if idx.bit_count() == k:
            psi[idx] = amp
    return psi


def w_wtilde(s: float, phi: float = 0.0) -> np.ndarray:
    """Superposition sqrt(s) W + sqrt(1-s) e^{i phi} W-tilde, 0 < s < 1.

    W and W-tilde occupy disjoint basis states (one vs three excitations),
    so the result is normalized automatically.
    """
    s = _as_real("s", s)
    if not 0.0 < s < 1.0:
        raise ValueError(f"s must lie strictly between 0 and 1, got {s!r}")
    phi = _as_real("phi", phi)
    return math.sqrt(s) * dicke(4, 1) + math.sqrt(1.0 - s) * cmath.exp(1j * phi) * dicke(4, 3)


def gghz(z1, z2) -> np.ndarray:
    """Generalized GHZ state z1|0000> + z2|1111>."""
    z1 = _as_complex("z1", z1)
    z2 = _as_complex("z2", z2)
    _check_unit_sum(abs(z1) ** 2 + abs(z2) ** 2, "|z1|^2 + |z2|^2")
    psi = np.zeros(16, dtype=complex)
    psi[0b0000] = z1
    psi[0b1111] = z2
    return psi


def gw_plus_ground(p: float, a1, a2, a3, a4) -> np.ndarray:
    """Superposition sqrt(p) GW + sqrt(1-p) |0000> with GW a one-excitation state.

    GW = a1|0001> + a2|0010> + a3|0100> + a4|1000>; the ground component is
    disjoint from GW so the norm is automatic once sum |a_i|^2 = 1.
    """
    p = _as_real("p", p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p!r}")
    amps = [_as_complex(f"a{i}", a) for i, a in enumerate((a1, a2, a3, a4), start=1)]
    _check_unit_sum(sum(abs(a) ** 2 for a in amps), "sum of |a_i|^2")
    psi = np.zeros(16, dtype=complex)
    psi[0b0000] = math.sqrt(1.0 - p)
    root_p = math.sqrt(p)
    for a, idx in zip(amps, (0b0001, 0b0010, 0b0100, 0b1000)):
        psi[idx] = root_p * a
    return psi


def w_plus_ones(alpha, beta) -> np.ndarray:
    """Superposition alpha W + beta |1111>."""
    alpha = _as_complex("alpha", alpha)
    beta = _as_complex("beta", beta)
    _check_unit_sum(abs(alpha) ** 2 + abs(beta) ** 2, "|alpha|^2 + |beta|^2")
    psi = alpha * dicke(4, 1)
    psi[0b1111] = beta
    return psi


# CLI-facing registry: family name -> (constructor, parameter names and kinds).
FAMILY_SPECS: dict[str, tuple[Callable[..., np.ndarray], tuple[tuple[str, str], ...]]] = {
    "generic-a": (generic_a, (("z1", "complex"), ("z2", "complex"), ("z3", "complex"), ("z4", "complex"))),
    "class-b": (class_b, (("z1", "complex"), ("z3", "complex"))),
    "class-c": (class_c, (("x1", "real"), ("x2", "real"), ("x3", "real"), ("x4", "real"))),
    "cluster": (cluster, (("a", "complex"), ("b", "complex"), ("c", "complex"), ("d", "complex"))),
    "dicke": (dicke, (("n", "int"), ("k", "int"))),
    "wwt": (w_wtilde, (("s", "real"), ("phi", "real"))),
    "gghz": (gghz, (("z1", "complex"), ("z2", "complex"))),
    "gw-ground": (gw_plus_ground, (("p", "real"), ("a1", "complex"), ("a2", "complex"), ("a3", "complex"), ("a4", "complex"))),
    "w-ones": (w_plus_ones, (("alpha", "complex"), ("beta", "complex"))),
}


def _coerce(name: str, kind: str, value):
    if kind == "complex":
        return _as_complex(name, value)
    real = _as_real(name, value)
    if kind == "int":
        if real != int(real):
            raise ValueError(f"parameter {name} must be an integer, got {value!r}")
        return int(real)
    return real


def build(family: str, params) -> np.ndarray:
    """Construct a named family state from an ordered parameter list."""
    if family not in FAMILY_SPECS:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILY_SPECS)}")
    ctor, spec = FAMILY_SPECS[family]
    params = list(params)
    if len(params) != len(spec):
        names = ", ".join(name for name, _ in spec)
        raise ValueError(
            f"family {family!r} takes {len(spec)} parameters ({names}), got {len(params)}"
        )
    args = [_coerce(name, kind, value) for (name, kind), value in zip(spec, params)]
    # wwt accepts an omitted phase elsewhere, but build() always receives both.
    return ctor(*args)


# Real-valued sweep views: each maps a small set of real knobs onto a family
# whose remaining parameters are fixed by normalization.
REAL_VIEWS: dict[str, tuple[tuple[str, float | None], ...]] = {
    "w-ones": (("alpha", None),),
    "wwt": (("s", None), ("phi", 0.0)),
    "class-b": (("r1", None), ("alpha", 0.0), ("beta", 0.0)),
    "gghz": (("r1", None),),
}


def build_real(family: str, values: dict) -> np.ndarray:
    """Construct a family state from the real sweep parameterization."""
    if family not in REAL_VIEWS:
        raise ValueError(
            f"family {family!r} has no real sweep parameterization; choose from {sorted(REAL_VIEWS)}"
        )
    spec = REAL_VIEWS[family]
    known = {name for name, _ in spec}
    extra = set(values) - known
    if extra:
        raise ValueError(f"unknown sweep parameter(s) {sorted(extra)} for family {family!r}")
    filled = {}
    for name, default in spec:
        if name in values:
            filled[name] = _as_real(name, values[name])
        elif default is not None:
            filled[name] = default
        else:
            raise ValueError(f"sweep over family {family!r} needs parameter {name!r}")
    if family == "w-ones":
        a = filled["alpha"]
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {a!r}")
        return w_plus_ones(a, math.sqrt(max(1.0 - a * a, 0.0)))
    if family == "wwt":
        return w_wtilde(filled["s"], filled["phi"])
    if family == "class-b":
        r1 = filled["r1"]
        if not 0.0 <= r1 <= 1.0 / _SQRT2:
            raise ValueError(f"r1 must lie in [0, 1/sqrt(2)], got {r1!r}")
        r3 = math.sqrt(max(0.5 - r1 * r1, 0.0))
        return class_b_polar(r1, r3, filled["alpha"], filled["beta"])
    r1 = filled["r1"]
    if not 0.0 <= r1 <= 1.0:
        raise ValueError(f"r1 must lie in [0, 1], got {r1!r}")
    return gghz(r1, math.sqrt(max(1.0 - r1 * r1, 0.0)))
