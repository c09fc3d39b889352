"""Finite factor systems, their limits and the stage/limit interpreter."""

from ._fls import (
    FlsError,
    System,
    eval,
    fixture,
    funspace,
    infer_type,
    parse_system,
    read_system,
    reflect,
)

__all__ = [
    "FlsError",
    "System",
    "eval",
    "fixture",
    "funspace",
    "infer_type",
    "parse_system",
    "read_system",
    "reflect",
]
