from .main import main
from .suites import DEFAULT_TOLERANCES, SUITES, CheckRecord, SuiteConfig, SuiteReport, run_suite

__all__ = ["CheckRecord", "DEFAULT_TOLERANCES", "SUITES", "SuiteConfig", "SuiteReport", "main", "run_suite"]
