"""Negativity-based strong-monogamy scores for four-qubit pure states.

Qubit 0 is the leftmost tensor factor (most significant bit of the
computational-basis index) and is the default focus party everywhere.
"""

__version__ = "0.1.0"

from .linalg import (
    TOL,
    Tolerances,
    as_state,
    check_density,
    kron,
    normalize,
    outer,
    partial_trace,
    partial_transpose,
)
from .monogamy import (
    MonogamyReport,
    NotApplicableError,
    ScoreComponents,
    ckw_check_three_qubit,
    four_delta,
    four_pi,
    monogamy_report,
    powered,
    report_from_components,
    score_components,
    three_delta,
    three_pi,
    three_split_negativity,
    two_delta,
)
from .negativity import negativity, pure_state_negativity
from .states import (
    FAMILY_SPECS,
    REAL_VIEWS,
    bell,
    build,
    build_real,
    class_b,
    class_b_polar,
    class_c,
    cluster,
    dicke,
    generic_a,
    gghz,
    gw_plus_ground,
    w_plus_ones,
    w_wtilde,
)

__all__ = [
    "TOL",
    "Tolerances",
    "as_state",
    "check_density",
    "kron",
    "normalize",
    "outer",
    "partial_trace",
    "partial_transpose",
    "MonogamyReport",
    "NotApplicableError",
    "ScoreComponents",
    "ckw_check_three_qubit",
    "four_delta",
    "four_pi",
    "monogamy_report",
    "powered",
    "report_from_components",
    "score_components",
    "three_delta",
    "three_pi",
    "three_split_negativity",
    "two_delta",
    "negativity",
    "pure_state_negativity",
    "FAMILY_SPECS",
    "REAL_VIEWS",
    "bell",
    "build",
    "build_real",
    "class_b",
    "class_b_polar",
    "class_c",
    "cluster",
    "dicke",
    "generic_a",
    "gghz",
    "gw_plus_ground",
    "w_plus_ones",
    "w_wtilde",
    "__version__",
]
