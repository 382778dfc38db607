"""Verification harness: check suites, flows, wave tests and the CLI."""
from .checks import (NEGATIVE_FLOOR, REPORT_VERSION, SUITES, TOL_COMPOSITE,
                     TOL_OPERATOR, Check, Report, dispersion_report,
                     initial_state, run_suite)
from .dispersion import (D_CHOICES, DispersionResult, predicted_frequency,
                         run_dispersion)
from .evolution import (EvolutionResult, bracket_flow, build_monitors, evolve,
                        rk4_step)

__all__ = [
    "Check", "Report", "REPORT_VERSION", "TOL_OPERATOR", "TOL_COMPOSITE",
    "NEGATIVE_FLOOR", "SUITES", "run_suite", "dispersion_report",
    "initial_state", "D_CHOICES", "DispersionResult", "predicted_frequency",
    "run_dispersion", "EvolutionResult", "bracket_flow", "build_monitors",
    "evolve", "rk4_step",
]
