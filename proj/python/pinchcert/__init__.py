"""Exact pinching thresholds, certificates and curvature-tensor checks."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DimensionTooSmall,
    HypothesisUnverified,
    NonTracelessInput,
    ParseError,
    SOutOfRange,
    SymmetryViolation,
    cor_sec,
    decompose,
    f_norm_identity,
    min_sectional,
    model_names,
    model_space,
    prop21_first,
    prop21_second,
    random_curvature,
    random_positive_curvature,
    ricci,
    run_cli,
    scalar,
    sectional,
    weitzenboeck_contract,
)

__all__ = [
    "DimensionTooSmall",
    "HypothesisUnverified",
    "NonTracelessInput",
    "ParseError",
    "SOutOfRange",
    "SymmetryViolation",
    "certificate",
    "cor_sec",
    "decompose",
    "eps_bound",
    "epsilon_threshold",
    "f_norm_identity",
    "min_sectional",
    "model_names",
    "model_space",
    "optimize_eps",
    "prop21_first",
    "prop21_second",
    "random_curvature",
    "random_positive_curvature",
    "ricci",
    "run_cli",
    "scalar",
    "sectional",
    "solve_s",
    "verify",
    "weitzenboeck_contract",
]


def _exact(x):
    # Fractions and ints go through as "p/q"; floats are refused on purpose.
    if isinstance(x, float):
        raise TypeError("pass an int, Fraction or 'p/q' string, not a float")
    return str(Fraction(x)) if not isinstance(x, str) else x


def epsilon_threshold(n, t):
    return Fraction(_core.epsilon_threshold(n, _exact(t)))


def certificate(n, t):
    return json.loads(_core.certificate_json(n, _exact(t)))


def optimize_eps(n, t):
    out = _core.optimize_eps(n, _exact(t))
    for key in ("a1", "a2", "h", "epsilon"):
        out[key] = Fraction(out[key])
    return out


def solve_s(a1, a2, n):
    return Fraction(_core.solve_s(_exact(a1), _exact(a2), n))


def eps_bound(a1, a2, n, t):
    return Fraction(_core.eps_bound(_exact(a1), _exact(a2), n, _exact(t)))


def verify(suite, seed=0, samples=0, dims=()):
    return json.loads(_core.verify_json(suite, seed, samples, list(dims)))
