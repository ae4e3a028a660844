"""Exact exponential sums and local densities over polynomial ideals.

Polynomials are strings in x1..xn. Exact results come back as int or
Fraction; "inf" bounds come back as math.inf.
"""
import math
from fractions import Fraction

from . import _iosc
from ._iosc import (
    BudgetExceeded,
    Inconsistency,
    InvalidInput,
    budget,
    canonical,
    compa_check,
    gauss_sum,
    irreducibility_probe,
    set_budget,
    set_threads,
    singular_integral,
    threads,
    verify_moidef,
    waring_surjective,
)

__all__ = [
    "BudgetExceeded", "Inconsistency", "InvalidInput", "budget", "canonical", "compa_check",
    "gauss_sum", "irreducibility_probe", "set_budget", "set_threads", "singular_integral",
    "threads", "verify_moidef", "waring_surjective", "count_levels", "count_ff", "E_counts",
    "E_charsum", "zeta_series", "rational_reconstruct", "theta_probe", "E_composite",
    "singular_series", "sigma0", "sigma_tilde0w", "birch_bound", "bhb_tau0",
    "convolution_thresholds", "count_box_solutions",
]


def _q(s):
    return math.inf if s == "inf" else Fraction(s)


def count_levels(gens, n, p, M, method="lifting"):
    return [int(c) for c in _iosc.count_levels(gens, n, p, M, method)]


def count_ff(gens, n, p, k=1):
    return int(_iosc.count_ff(gens, n, p, k))


def E_counts(gens, n, p, m, r=None):
    return _q(_iosc.E_counts(gens, n, p, m, r))


def E_charsum(gens, n, p, m, r=None):
    d = _iosc.E_charsum(gens, n, p, m, r)
    d["residue"] = [_q(v) for v in d["residue"]]
    if d["rational"] is not None:
        d["rational"] = _q(d["rational"])
    return d


def zeta_series(gens, n, p, M):
    return [_q(c) for c in _iosc.zeta_series(gens, n, p, M)]


def rational_reconstruct(coeffs, max_order):
    d = _iosc.rational_reconstruct([str(Fraction(c)) for c in coeffs], max_order)
    for key in ("numerator", "denominator"):
        if key in d:
            d[key] = [_q(c) for c in d[key]]
    return d


def theta_probe(gens, n, p, M, r=None):
    terms, verdict = _iosc.theta_probe(gens, n, p, M, r)
    return [_q(t) for t in terms], verdict


def E_composite(gens, n, q, r=None):
    return _q(_iosc.E_composite(gens, n, q, r))


def singular_series(gens, n, Qmax, r=None):
    return _q(_iosc.singular_series(gens, n, Qmax, r))


def sigma0(gens, n, s=None):
    return _q(_iosc.sigma0(gens, n, s))


def sigma_tilde0w(gens, n, weights=None, s=None):
    return _q(_iosc.sigma_tilde0w(gens, n, weights, s))


def birch_bound(n, s, r, d):
    return _q(_iosc.birch_bound(n, s, r, d))


def bhb_tau0(groups, n):
    return _q(_iosc.bhb_tau0(groups, n))


def convolution_thresholds(r, R, D):
    t = _iosc.convolution_thresholds(r, R, D)
    return {k: (_q(v) if k == "affine_N_prime" else int(v)) for k, v in t.items()}


def count_box_solutions(gens, n, B):
    return int(_iosc.count_box_solutions(gens, n, B))
