###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Products and markets shared by the pricing tests"""

import math

import subquad  # noqa: F401 - To set up PYTHONPATH

from quadprice.market import MarketCurves, PiecewiseConstant
from quadprice.product import (
    VanillaPayoff,
    make_autocallable,
    make_barrier,
    make_bermudan,
    make_knock_in,
)

AUTOCALL_DATES = [0.2, 0.4, 0.6, 0.8, 1.0]
AUTOCALL_BARRIERS = [3050.0, 3100.0, 3150.0, 3200.0, 3250.0]
AUTOCALL_RATES = [0.02, 0.021, 0.022, 0.023, 0.024]

BARRIER_DATES = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
BARRIER_LOWER = [2200.0, 2100.0, 2000.0, 1900.0, 1800.0, 1700.0, 1600.0, None]
BARRIER_UPPER = [2800.0, 2900.0, 3000.0, 3100.0, 3200.0, 3300.0, 3400.0, None]
BARRIER_RATES = [0.01, 0.011, 0.012, 0.013, 0.012, 0.013, 0.014, 0.015]


def curves(dates, rates, volatility, dividend_yield=0.0):
    return MarketCurves(
        rate=PiecewiseConstant.from_segments(0.0, zip(dates, rates), name="rate"),
        dividend_yield=PiecewiseConstant.constant(dividend_yield, name="yield"),
        volatility=PiecewiseConstant.constant(volatility, name="volatility"),
    )


def autocallable():
    """One-year up autocallable on 3000 paying 4% a year, premium -1%"""
    coupons = [0.04 * t for t in AUTOCALL_DATES]
    product = make_autocallable(
        AUTOCALL_DATES, AUTOCALL_BARRIERS, coupons, -0.01, s0=3000.0
    )
    return product, curves(AUTOCALL_DATES, AUTOCALL_RATES, 0.2)


def double_barrier(payoff=None):
    """Two-year knock-out double barrier put on 2500 struck at 2600"""
    payoff = payoff or VanillaPayoff("put", 2600.0)
    product = make_barrier(
        BARRIER_DATES, BARRIER_LOWER, BARRIER_UPPER, payoff, s0=2500.0
    )
    return product, curves(BARRIER_DATES, BARRIER_RATES, 0.25)


def double_barrier_knock_in(payoff=None):
    payoff = payoff or VanillaPayoff("put", 2600.0)
    product = make_knock_in(
        BARRIER_DATES, BARRIER_LOWER, BARRIER_UPPER, payoff, s0=2500.0
    )
    return product, curves(BARRIER_DATES, BARRIER_RATES, 0.25)


def bermudan_put(dates=None, kind="put"):
    """Ten-date at-the-money Bermudan, r = 5%, q = 0, vol 20%, one year"""
    dates = dates or [0.1 * k for k in range(1, 11)]
    product = make_bermudan(dates, 100.0, kind, s0=100.0)
    return product, MarketCurves.constant(0.05, 0.0, 0.2)


def value_bound(result):
    """Pointwise bound exp(Q (t_m - t_M)) A S + exp(R (t_m - t_M)) B per step"""
    schedule = result.schedule
    a_values = [schedule.terminal.a]
    b_values = [schedule.terminal.b]
    for leg in schedule.legs:
        a_values += [leg.a_minus, leg.a_plus]
        b_values += [leg.b_minus, leg.b_plus]
    a_max = max(abs(a) for a in a_values)
    b_max = max(abs(b) for b in b_values)
    r_min = min(min(p.rate for p in result.intervals), 0.0)
    q_min = min(min(p.dividend_yield for p in result.intervals), 0.0)
    maturity = schedule.maturity

    def bound(t, spots):
        return (
            math.exp(q_min * (t - maturity)) * a_max * spots
            + math.exp(r_min * (t - maturity)) * b_max
        )

    return bound
