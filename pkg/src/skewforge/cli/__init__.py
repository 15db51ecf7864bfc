"""Expression parser, printer, verification suites and the ``skewforge`` entry point."""

from .parser import ElementParser, parse_aut, parse_element
from .printer import format_aut, format_element
from .suites import SUITES, Check, SuiteReport, run_suite

__all__ = [
    "Check",
    "ElementParser",
    "SUITES",
    "SuiteReport",
    "format_aut",
    "format_element",
    "parse_aut",
    "parse_element",
    "run_suite",
]
