"""Command line, configuration and acceptance suites."""

from .cli import main, run
from .config import Config, ConfigError, load_config, parse_config
from .suites import SUITES, SuiteResult, run_suite

__all__ = ["SUITES", "Config", "ConfigError", "SuiteResult", "load_config", "main", "parse_config", "run",
           "run_suite"]
