"""Bounded model checker for synchronous SMV-style models."""

from ._vcsmc import (
    CapExceeded,
    ConfigError,
    ElaborationError,
    InputError,
    ParseError,
    batch,
    brute_force_check,
    check,
    generate_vcs,
    plan,
    simulate,
    validate,
    variables,
)

__all__ = [
    "CapExceeded",
    "ConfigError",
    "ElaborationError",
    "InputError",
    "ParseError",
    "batch",
    "brute_force_check",
    "check",
    "generate_vcs",
    "plan",
    "simulate",
    "validate",
    "variables",
]
