"""Universes, agent architectures, stability metrics and persistence experiments."""

from ._core import (
    Document,
    ExoError,
    check_oriented,
    constant_digits,
    diagnostics,
    logic_table,
    mann_whitney,
    parse,
    parse_file,
    render_logic_table,
    run_experiment,
    run_trajectory,
    stability,
)

__all__ = [
    "Document",
    "ExoError",
    "check_oriented",
    "constant_digits",
    "diagnostics",
    "logic_table",
    "mann_whitney",
    "parse",
    "parse_file",
    "render_logic_table",
    "run_experiment",
    "run_trajectory",
    "stability",
]
