"""CLI command modules; each exposes register(subparsers)."""

from l2boost.cli import classify, fit, greedy_check, simulate

__all__ = ["classify", "fit", "greedy_check", "simulate"]
