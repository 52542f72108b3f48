#!/usr/bin/env python3

###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import math
import unittest

import numpy as np
import subquad  # noqa: F401 - To set up PYTHONPATH
from pycotap import TAPTestRunner
from scipy.integrate import quad
from scipy.stats import norm

from quadprice.analytic import (
    BinaryQuote,
    asset_or_nothing,
    binary_asset,
    binary_cash,
    cash_or_nothing,
    early_exercise_value,
    norm_cdf,
    norm_ppf,
    normalize_terminal_leg,
    terminal_value,
    vanilla_value,
)
from quadprice.market import IntervalParams, lognormal_density
from quadprice.product import ObservationLeg, TerminalPayoff
from quadprice.util import DomainError

PARAMS = IntervalParams(rate=0.05, dividend_yield=0.02, volatility=0.2, dt=1.0)


def black_scholes(spot, strike, params, kind):
    sd = params.stddev
    d1 = (
        math.log(spot / strike)
        + (params.rate - params.dividend_yield + 0.5 * params.variance) * params.dt
    ) / sd
    d2 = d1 - sd
    fwd = spot * params.carry
    disc = params.discount
    if kind == "call":
        return fwd * norm.cdf(d1) - strike * disc * norm.cdf(d2)
    return strike * disc * norm.cdf(-d2) - fwd * norm.cdf(-d1)


class TestNormal(unittest.TestCase):
    def test_tails(self):
        self.assertAlmostEqual(float(norm_cdf(0.0)), 0.5, places=15)
        self.assertGreater(float(norm_cdf(-30.0)), 0.0)
        self.assertAlmostEqual(float(norm_ppf(norm_cdf(1.25))), 1.25, places=12)


class TestBinaries(unittest.TestCase):
    def test_cash_digital(self):
        spot, strike = 100.0, 105.0
        sd = PARAMS.stddev
        d2 = (math.log(spot / strike) + (0.05 - 0.02 - 0.02) * 1.0) / sd
        expected = math.exp(-0.05) * norm.cdf(d2)
        value = float(cash_or_nothing(spot, strike, 1, PARAMS))
        self.assertAlmostEqual(value, expected, delta=1e-12 * expected)
        quote = BinaryQuote(spot, strike, 1, PARAMS)
        self.assertEqual(float(binary_cash(quote)), value)

    def test_asset_digital_sides_sum_to_forward(self):
        spot = np.array([50.0, 100.0, 150.0])
        up = asset_or_nothing(spot, 100.0, 1, PARAMS)
        down = asset_or_nothing(spot, 100.0, -1, PARAMS)
        np.testing.assert_allclose(up + down, spot * math.exp(-0.02), rtol=1e-14)
        quote = BinaryQuote(100.0, 100.0, -1, PARAMS)
        self.assertAlmostEqual(float(binary_asset(quote)), float(down[1]), places=14)

    def test_cash_sides_sum_to_discount(self):
        up = cash_or_nothing(80.0, 100.0, 1, PARAMS)
        down = cash_or_nothing(80.0, 100.0, -1, PARAMS)
        self.assertAlmostEqual(float(up + down), math.exp(-0.05), places=15)

    def test_vanilla_matches_black_scholes(self):
        for strike in (80.0, 100.0, 125.0):
            for epsilon, kind in ((1, "call"), (-1, "put")):
                expected = black_scholes(100.0, strike, PARAMS, kind)
                value = float(vanilla_value(100.0, strike, epsilon, PARAMS))
                self.assertAlmostEqual(value, expected, delta=1e-12 * expected)

    def test_domain(self):
        with self.assertRaises(DomainError):
            cash_or_nothing(0.0, 100.0, 1, PARAMS)
        with self.assertRaises(DomainError):
            asset_or_nothing(100.0, -1.0, 1, PARAMS)
        with self.assertRaises(ValueError):
            BinaryQuote(100.0, 100.0, 0, PARAMS)


class TestLegs(unittest.TestCase):
    def test_early_exercise_coupon(self):
        leg = ObservationLeg(0.2, k_plus=3050.0, b_plus=0.008)
        params = IntervalParams(rate=0.02, dividend_yield=0.0, volatility=0.2, dt=0.2)
        value = float(early_exercise_value(3000.0, leg, params))
        expected = 0.008 * float(cash_or_nothing(3000.0, 3050.0, 1, params))
        self.assertEqual(value, expected)

    def test_early_exercise_ignores_missing_sides(self):
        leg = ObservationLeg(1.0, a_minus=-1.0, b_minus=100.0)
        self.assertEqual(float(early_exercise_value(100.0, leg, PARAMS)), 0.0)

    def test_normalize_terminal_leg(self):
        leg = ObservationLeg(2.0, k_plus=2600.0)
        terminal = TerminalPayoff(-1.0, 2600.0)
        normal = normalize_terminal_leg(leg, terminal, 2500.0)
        self.assertEqual(normal.k_minus, 2500.0)
        self.assertEqual((normal.a_minus, normal.b_minus), (-1.0, 2600.0))
        self.assertEqual(normal.k_plus, 2600.0)

        open_leg = normalize_terminal_leg(ObservationLeg(1.0), terminal, 100.0)
        self.assertEqual((open_leg.k_minus, open_leg.k_plus), (100.0, 100.0))

        closed = ObservationLeg(1.0, k_minus=90.0, k_plus=110.0)
        self.assertIs(normalize_terminal_leg(closed, terminal, 100.0), closed)

    def test_terminal_put_against_integration(self):
        params = IntervalParams(
            rate=0.015, dividend_yield=0.0, volatility=0.25, dt=0.25
        )
        terminal = TerminalPayoff(-1.0, 2600.0)
        leg = normalize_terminal_leg(ObservationLeg(2.0, k_plus=2600.0), terminal, 2500.0)
        value = float(terminal_value(2500.0, leg, terminal, params))

        def integrand(y):
            return (2600.0 - y) * float(lognormal_density(params, y, 2500.0))

        integral, _ = quad(
            integrand, 1.0, 2600.0, points=[2500.0], epsabs=0.0, epsrel=1e-13, limit=400
        )
        expected = params.discount * integral
        self.assertAlmostEqual(value, expected, delta=1e-10 * expected)
        self.assertAlmostEqual(
            value, float(vanilla_value(2500.0, 2600.0, -1, params)), delta=1e-10 * value
        )

    def test_terminal_call_equals_vanilla(self):
        terminal = TerminalPayoff(1.0, -105.0)
        leg = normalize_terminal_leg(ObservationLeg(1.0, k_minus=105.0), terminal, 100.0)
        value = float(terminal_value(100.0, leg, terminal, PARAMS))
        expected = black_scholes(100.0, 105.0, PARAMS, "call")
        self.assertAlmostEqual(value, expected, delta=1e-12 * expected)

    def test_terminal_needs_levels(self):
        with self.assertRaises(DomainError):
            terminal_value(100.0, ObservationLeg(1.0), TerminalPayoff(), PARAMS)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
