"""Symmetric Reed-Muller codes over prime fields and their linear invariance groups."""

from .core import build_code, encode, params, validate_params
from .errors import SrmError
from .invariance import LinearMap, build_conjectured_set, build_K, build_M, check_group, preserves
from .search import exhaustive, falsify, two_phase, verify_claim

__all__ = [
    "build_code", "encode", "params", "validate_params", "SrmError", "LinearMap",
    "build_conjectured_set", "build_K", "build_M", "check_group", "preserves",
    "exhaustive", "falsify", "two_phase", "verify_claim",
]
