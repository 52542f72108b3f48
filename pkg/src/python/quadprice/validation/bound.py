###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""A-priori bound on the error from truncating the price domain

Every value function is bounded by exp(Q (t_m - t_M)) A S +
exp(R (t_m - t_M)) B, so the mass the quadrature ignores outside
[S0/C, S0 C] at each date is bounded by binaries struck at those two
prices, evaluated with the parameters averaged from t0 to that date.
"""

import math
from dataclasses import dataclass

from quadprice.analytic import asset_or_nothing, cash_or_nothing
from quadprice.engine import truncation_half_width
from quadprice.market import aggregate, reduce_curves
from quadprice.product import KnockIn

__all__ = ["TruncationBound", "truncation_bound"]


@dataclass(frozen=True)
class TruncationBound:
    a_max: float
    b_max: float
    r_min: float
    q_min: float
    log_c: float
    bound: float
    d_min: float
    d_max: float

    @staticmethod
    def reference(s0):
        """Size of a double-precision rounding error on a price near s0"""
        return 1e-15 * (s0 + 1.0)

    def to_dict(self):
        return {
            "A": self.a_max,
            "B": self.b_max,
            "R": self.r_min,
            "Q": self.q_min,
            "logC": self.log_c,
            "bound": self.bound,
            "d_min": self.d_min,
            "d_max": self.d_max,
        }


def _coefficients(schedule):
    a_values = [schedule.terminal.a]
    b_values = [schedule.terminal.b]
    for leg in schedule.legs:
        a_values += [leg.a_minus, leg.a_plus]
        b_values += [leg.b_minus, leg.b_plus]
    return max(abs(a) for a in a_values), max(abs(b) for b in b_values)


def _d_values(s0, strike, params):
    d1 = (
        math.log(s0 / strike)
        + (params.rate - params.dividend_yield + 0.5 * params.variance) * params.dt
    ) / params.stddev
    return d1, d1 - params.stddev


def truncation_bound(schedule, curves, log_c=None):
    """Bound the truncation error of pricing ``schedule`` with half-width log_c

    A knock-in is bounded by the sum of the bounds of its two parts.
    """
    if isinstance(schedule, KnockIn):
        parts = [
            truncation_bound(schedule.vanilla, curves, log_c),
            truncation_bound(schedule.knock_out, curves, log_c),
        ]
        return TruncationBound(
            a_max=max(p.a_max for p in parts),
            b_max=max(p.b_max for p in parts),
            r_min=min(p.r_min for p in parts),
            q_min=min(p.q_min for p in parts),
            log_c=parts[0].log_c,
            bound=sum(p.bound for p in parts),
            d_min=min(p.d_min for p in parts),
            d_max=max(p.d_max for p in parts),
        )

    intervals = reduce_curves(curves, schedule.dates)
    if log_c is None:
        log_c = truncation_half_width(intervals)
    a_max, b_max = _coefficients(schedule)
    r_min = min(min(p.rate for p in intervals), 0.0)
    q_min = min(min(p.dividend_yield for p in intervals), 0.0)
    s0 = schedule.s0
    upper = s0 * math.exp(log_c)
    lower = s0 * math.exp(-log_c)

    asset_mass = 0.0
    cash_mass = 0.0
    d_list = []
    for m in range(1, len(intervals)):
        params = aggregate(intervals[:m])
        asset_mass += float(asset_or_nothing(s0, upper, 1, params))
        asset_mass += float(asset_or_nothing(s0, lower, -1, params))
        cash_mass += float(cash_or_nothing(s0, upper, 1, params))
        cash_mass += float(cash_or_nothing(s0, lower, -1, params))
        d1_up, d2_up = _d_values(s0, upper, params)
        d1_down, d2_down = _d_values(s0, lower, params)
        d_list += [d1_up, d2_up, -d1_down, -d2_down]

    horizon = schedule.maturity - schedule.t0
    bound = math.exp(-q_min * horizon) * a_max * asset_mass + math.exp(
        -r_min * horizon
    ) * b_max * cash_mass
    return TruncationBound(
        a_max=a_max,
        b_max=b_max,
        r_min=r_min,
        q_min=q_min,
        log_c=log_c,
        bound=bound,
        d_min=min(d_list) if d_list else 0.0,
        d_max=max(d_list) if d_list else 0.0,
    )
