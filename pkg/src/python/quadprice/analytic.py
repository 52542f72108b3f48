###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Closed-form Black-Scholes binaries over a single interval"""

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from quadprice.market import IntervalParams
from quadprice.util import DomainError

__all__ = [
    "BinaryQuote",
    "asset_or_nothing",
    "binary_asset",
    "binary_cash",
    "cash_or_nothing",
    "early_exercise_value",
    "norm_cdf",
    "norm_ppf",
    "normalize_terminal_leg",
    "terminal_value",
    "vanilla_value",
]


def norm_cdf(x):
    """Standard normal CDF, accurate far into both tails"""
    return ndtr(x)


def norm_ppf(p):
    return ndtri(p)


@dataclass(frozen=True)
class BinaryQuote:
    """A binary option paying on the ``epsilon`` side of ``strike``

    epsilon is +1 for a payment when S_t >= strike at the end of the
    interval and -1 for S_t <= strike.
    """

    spot: float
    strike: float
    epsilon: int
    params: IntervalParams

    def __post_init__(self):
        if self.epsilon not in (-1, 1):
            raise ValueError("epsilon must be +1 or -1")


def _d1(spot, strike, params):
    spot = np.asarray(spot, dtype=float)
    strike = np.asarray(strike, dtype=float)
    if np.any(spot <= 0.0) or np.any(strike <= 0.0):
        raise DomainError("binary options need positive spot and strike")
    drift = (params.rate - params.dividend_yield + 0.5 * params.variance) * params.dt
    return (np.log(spot / strike) + drift) / params.stddev


def asset_or_nothing(spot, strike, epsilon, params):
    """Value of receiving the asset on the ``epsilon`` side of ``strike``"""
    d1 = _d1(spot, strike, params)
    return params.carry * np.asarray(spot, dtype=float) * ndtr(epsilon * d1)


def cash_or_nothing(spot, strike, epsilon, params):
    """Value of receiving one unit of cash on the ``epsilon`` side"""
    d2 = _d1(spot, strike, params) - params.stddev
    return params.discount * ndtr(epsilon * d2)


def binary_asset(quote):
    return asset_or_nothing(quote.spot, quote.strike, quote.epsilon, quote.params)


def binary_cash(quote):
    return cash_or_nothing(quote.spot, quote.strike, quote.epsilon, quote.params)


def vanilla_value(spot, strike, epsilon, params):
    """European call (epsilon=1) or put (epsilon=-1)"""
    return epsilon * (
        asset_or_nothing(spot, strike, epsilon, params)
        - strike * cash_or_nothing(spot, strike, epsilon, params)
    )


def early_exercise_value(spot, leg, params):
    """Value one interval before ``leg`` of what ``leg`` pays out when hit

    Only sides with a finite level and a nonzero coefficient contribute.
    """
    spot = np.asarray(spot, dtype=float)
    total = np.zeros_like(spot)
    if leg.has_upper:
        if leg.a_plus:
            total = total + leg.a_plus * asset_or_nothing(spot, leg.k_plus, 1, params)
        if leg.b_plus:
            total = total + leg.b_plus * cash_or_nothing(spot, leg.k_plus, 1, params)
    if leg.has_lower:
        if leg.a_minus:
            total = total + leg.a_minus * asset_or_nothing(
                spot, leg.k_minus, -1, params
            )
        if leg.b_minus:
            total = total + leg.b_minus * cash_or_nothing(spot, leg.k_minus, -1, params)
    return total


def normalize_terminal_leg(leg, terminal, anchor):
    """Give the last leg finite positive levels without changing its payoff

    A missing lower level is replaced by ``min(anchor, k_plus)`` and a
    missing upper level by ``max(anchor, k_minus)``; the new side pays the
    terminal payoff, so the binaries telescope back to the same value.
    """
    changes = {}
    k_minus, k_plus = leg.k_minus, leg.k_plus
    if not leg.has_lower:
        k_minus = anchor if k_plus is None else min(anchor, k_plus)
        changes.update(k_minus=k_minus, a_minus=terminal.a, b_minus=terminal.b)
    if not leg.has_upper:
        changes.update(
            k_plus=max(anchor, k_minus), a_plus=terminal.a, b_plus=terminal.b
        )
    if not changes:
        return leg
    return dataclasses.replace(leg, **changes)


def terminal_value(spot, leg, terminal, params):
    """Value one interval before maturity of the final leg and payoff

    ``leg`` must have finite positive levels (see normalize_terminal_leg()).
    """
    if not leg.has_lower or not leg.has_upper:
        raise DomainError("terminal value needs finite positive exercise levels")
    value = early_exercise_value(spot, leg, params)
    if terminal.a:
        value = value + terminal.a * (
            asset_or_nothing(spot, leg.k_minus, 1, params)
            - asset_or_nothing(spot, leg.k_plus, 1, params)
        )
    if terminal.b:
        value = value + terminal.b * (
            cash_or_nothing(spot, leg.k_minus, 1, params)
            - cash_or_nothing(spot, leg.k_plus, 1, params)
        )
    return value


# vi: ts=4 sw=4 expandtab
