"""Ternary inclusion-exclusion polynomials Q_{p,q,r}."""

import json

from . import _core
from ._core import Error, __version__, coefficient_set, coeffs, degree

__all__ = [
    "Error",
    "__version__",
    "coefficient_set",
    "coeffs",
    "degree",
    "eq13_solutions",
    "height",
    "lemma",
    "run",
    "verify",
]


def height(p, q, r):
    """Height record of Q_{p,q,r} as a dict."""
    return json.loads(_core.height_json(p, q, r))


def verify(check, *args):
    """Runs main, corollary, eq1.5, eq1.6, iterated or eq1.11 and returns the report."""
    return json.loads(_core.verify_json(check, list(args)))


def lemma(name, p, q, r, s=None, samples=None, seed=0):
    """Checks one lemma on {p, q, r}; exhaustive unless samples is given."""
    return json.loads(_core.lemma_json(name, p, q, r, s, samples, seed))


def eq13_solutions(s, p_max, q_max):
    """Pairs (p, q) with A(p, q, pq + s) = s."""
    return json.loads(_core.eq13_json(s, p_max, q_max))


def run(*args):
    """Runs a command-line invocation in-process: (exit_code, stdout bytes, diagnostics)."""
    return _core.run_cli([str(a) for a in args])
