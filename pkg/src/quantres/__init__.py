"""Quantitative resilience of driftless linear systems losing actuator authority."""

from .core import (
    MalfunctionSplit,
    SystemSpec,
    Tolerances,
    is_controllable,
    load_system,
    matrix_rank,
    split,
)
from .reach import (
    disturbed_reach_time,
    malfunctioning_reach_time,
    nominal_reach_time,
    sweep_ratio,
    time_ratio,
)
from .resilience import (
    Verdict,
    full_report,
    lambda_star,
    quantitative_resilience,
    r_max,
    resilience_verdict,
)
from .scenarios import opinion_example, spacecraft_bbar, spacecraft_example

__version__ = "0.1.0"
