"""Shared test helpers: tolerant Dec comparisons and instance generators."""

from __future__ import annotations

import random

from liqlab import Dec, RiskParams

TOL6 = Dec("0.000001")
TOL9 = Dec("0.000000001")
TOL12 = Dec("0.000000000001")
TWO_ULP = Dec.from_raw(2)


def assert_close(actual: Dec, expected: Dec, tol: Dec) -> None:
    assert abs(actual - expected) <= tol, f"{actual} vs {expected} (tol {tol})"


def rel_close(actual: Dec, expected: Dec, rel: Dec) -> bool:
    """|actual - expected| <= rel * max(|actual|, |expected|); exact match passes."""
    if actual == expected:
        return True
    scale = max(abs(actual), abs(expected))
    return abs(actual - expected) <= rel * scale


def random_valid_instance(rng: random.Random, margin_pct: int = 5):
    """A liquidatable over-collateralized instance inside the improvement band.

    Samples LT in [0.50, 0.90] and LS in [0.02, 0.15] (both at 2 fractional
    digits) with LT*(1+LS) < 1, CF from {0.5, 1}, then a collateral value with
    CR strictly inside (1+LS, 1/LT), keeping ``margin_pct`` percent of the
    band away from both ends so closed-form comparisons are not dominated by
    18th-digit rounding. Returns (c, d, lt, params).
    """
    one = Dec(1)
    while True:
        lt = Dec(rng.randint(50, 90)) / Dec(100)
        ls = Dec(rng.randint(2, 15)) / Dec(100)
        if lt * (one + ls) < one:
            break
    cf = Dec("0.5") if rng.random() < 0.5 else Dec(1)
    params = RiskParams(lt={}, ls=ls, cf=cf)
    d = Dec(rng.randint(100, 1_000_000))
    lo = (one + ls) * d
    hi = d / lt
    span = hi.raw - lo.raw
    margin = span * margin_pct // 100
    c = Dec.from_raw(rng.randrange(lo.raw + margin + 1, hi.raw - margin))
    return c, d, lt, params


def unclamped_instance(rng: random.Random):
    """Like random_valid_instance but resampled until the closed-form first
    repay stays at or under the close-factor cap."""
    one = Dec(1)
    while True:
        c, d, lt, params = random_valid_instance(rng)
        r_star = (d - lt * c) / (one - lt * (one + params.ls))
        if r_star <= params.cf * d:
            return c, d, lt, params
