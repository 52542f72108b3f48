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
import quadfixtures as fx
import subquad  # noqa: F401 - To set up PYTHONPATH
from pycotap import TAPTestRunner
from scipy.stats import norm

from quadprice.engine import build_grid, price, truncation_half_width
from quadprice.market import MarketCurves, aggregate, reduce_curves
from quadprice.product import (
    ObservationLeg,
    ProductSchedule,
    TerminalPayoff,
    VanillaPayoff,
    make_barrier,
    make_european,
)
from quadprice.util import ConfigError
from quadprice.validation import truncation_bound


def black_scholes(spot, strike, params, kind):
    sd = params.stddev
    d1 = (
        math.log(spot / strike)
        + (params.rate - params.dividend_yield + 0.5 * params.variance) * params.dt
    ) / sd
    d2 = d1 - sd
    fwd = spot * params.carry
    if kind == "call":
        return fwd * norm.cdf(d1) - strike * params.discount * norm.cdf(d2)
    return strike * params.discount * norm.cdf(-d2) - fwd * norm.cdf(-d1)


class GridShift:
    def assertShiftStable(self, product, curves, n):
        """Moving from N to N+2 points changes the price by O(h^3) at most"""
        coarse = price(product, curves, n)
        shifted = price(product, curves, n + 2).value
        scale = truncation_bound(product, curves).b_max
        limit = 100.0 * coarse.h**3 * scale
        self.assertLess(abs(shifted - coarse.value), limit, f"N={n}")


class BoundedValues:
    def assertValuesBounded(self, product, curves, n):
        result = price(product, curves, n, keep_values=True)
        bound = fx.value_bound(result)
        spots = build_grid(result.log_c, result.n).spots(product.s0)
        self.assertEqual(len(result.steps), len(product.legs) - 1)
        for step in result.steps:
            limit = bound(step.t, spots)
            excess = np.abs(step.value.u) - limit * (1.0 + 1e-12)
            self.assertLessEqual(float(np.max(excess)), 0.0, f"date {step.date}")


class TestAutocallable(unittest.TestCase, BoundedValues, GridShift):
    @classmethod
    def setUpClass(cls):
        cls.product, cls.curves = fx.autocallable()
        cls.reference = price(cls.product, cls.curves, 70001).value

    def test_reference_is_plausible(self):
        #  Bounded by the largest coupon and the premium
        self.assertLess(self.reference, 0.04)
        self.assertGreater(self.reference, -0.01)

    def test_relative_errors(self):
        for n in (501, 1001, 2001):
            value = price(self.product, self.curves, n).value
            rel = abs(value - self.reference) / abs(self.reference)
            self.assertLess(rel, 1e-5, f"N={n}")

    def test_runtime_at_501(self):
        runtime = min(price(self.product, self.curves, 501).runtime for _ in range(3))
        self.assertLess(runtime, 0.1)

    def test_diagnostics(self):
        result = price(self.product, self.curves, 1001)
        self.assertEqual(result.n, 1001)
        self.assertAlmostEqual(result.log_c, 3.02, places=12)
        self.assertAlmostEqual(result.h, 6.04 / 1000, places=14)
        self.assertEqual([s.date for s in result.steps], [1, 2, 3, 4])
        self.assertEqual([s.t for s in result.steps], [0.2, 0.4, 0.6, 0.8])
        diagnostics = result.diagnostics()
        self.assertEqual(len(diagnostics["steps"]), 4)
        self.assertIn("window", diagnostics["steps"][0])
        self.assertEqual(result.schedule, self.product)
        self.assertTrue(all(step.value is None for step in result.steps))

    def test_values_bounded(self):
        self.assertValuesBounded(self.product, self.curves, 2001)

    def test_doubling_truncation(self):
        log_c = truncation_half_width(reduce_curves(self.curves, self.product.dates))
        bound = truncation_bound(self.product, self.curves, log_c).bound
        narrow = price(self.product, self.curves, 1001, log_c=log_c).value
        wide = price(self.product, self.curves, 2001, log_c=2.0 * log_c).value
        self.assertLess(abs(narrow - wide), 10.0 * bound + 1e-10 * abs(narrow))

    def test_grid_shift(self):
        self.assertShiftStable(self.product, self.curves, 2001)


class TestDoubleBarrier(unittest.TestCase, BoundedValues, GridShift):
    @classmethod
    def setUpClass(cls):
        cls.product, cls.curves = fx.double_barrier()
        cls.reference = price(cls.product, cls.curves, 50001).value

    def test_relative_errors(self):
        for n in (701, 1401):
            value = price(self.product, self.curves, n).value
            rel = abs(value - self.reference) / abs(self.reference)
            self.assertLess(rel, 1e-5, f"N={n}")

    def test_cheaper_than_vanilla(self):
        intervals = reduce_curves(self.curves, self.product.dates)
        vanilla = black_scholes(2500.0, 2600.0, aggregate(intervals), "put")
        self.assertGreater(self.reference, 0.0)
        self.assertLess(self.reference, vanilla)

    def test_values_bounded(self):
        self.assertValuesBounded(self.product, self.curves, 1401)

    def test_grid_shift(self):
        self.assertShiftStable(self.product, self.curves, 1401)

    def test_doubling_truncation(self):
        log_c = truncation_half_width(reduce_curves(self.curves, self.product.dates))
        bound = truncation_bound(self.product, self.curves, log_c)
        self.assertLessEqual(bound.bound, bound.reference(self.product.s0))
        narrow = price(self.product, self.curves, 1401, log_c=log_c).value
        wide = price(self.product, self.curves, 2801, log_c=2.0 * log_c).value
        self.assertLess(abs(narrow - wide), 10.0 * bound.bound + 1e-10 * abs(narrow))

    def test_knock_in_parity(self):
        for payoff in (VanillaPayoff("put", 2600.0), VanillaPayoff("call", 2400.0)):
            knock_out, curves = fx.double_barrier(payoff)
            knock_in, _ = fx.double_barrier_knock_in(payoff)
            vanilla = make_barrier(fx.BARRIER_DATES, None, None, payoff, s0=2500.0)
            out_value = price(knock_out, curves, 1401).value
            in_result = price(knock_in, curves, 1401)
            vanilla_value = price(vanilla, curves, 1401).value
            self.assertAlmostEqual(
                out_value + in_result.value,
                vanilla_value,
                delta=1e-10 * abs(vanilla_value),
            )
            self.assertEqual(in_result.components["vanilla"], vanilla_value)
            self.assertEqual(in_result.components["knock_out"], out_value)
            self.assertIn("components", in_result.diagnostics())

    def test_vanilla_with_observations_is_european(self):
        payoff = VanillaPayoff("put", 2600.0)
        vanilla = make_barrier(fx.BARRIER_DATES, None, None, payoff, s0=2500.0)
        value = price(vanilla, self.curves, 1401).value
        params = aggregate(reduce_curves(self.curves, vanilla.dates))
        expected = black_scholes(2500.0, 2600.0, params, "put")
        self.assertAlmostEqual(value, expected, delta=1e-8 * expected)


class TestClosedForms(unittest.TestCase):
    curves = MarketCurves.constant(0.05, 0.02, 0.2)

    def test_european_with_quadrature_steps(self):
        params = aggregate(reduce_curves(self.curves, [0.0, 1.0]))
        for kind in ("call", "put"):
            product = make_barrier(
                [0.25, 0.5, 0.75, 1.0], None, None, VanillaPayoff(kind, 105.0), s0=100.0
            )
            result = price(product, self.curves, 4001)
            self.assertEqual(len(result.steps), 3)
            expected = black_scholes(100.0, 105.0, params, kind)
            self.assertAlmostEqual(result.value, expected, delta=1e-8 * expected)

    def test_single_date_european(self):
        params = aggregate(reduce_curves(self.curves, [0.0, 0.5]))
        product = make_european(0.5, VanillaPayoff("call", 95.0), s0=100.0)
        result = price(product, self.curves, 501)
        self.assertEqual(result.steps, [])
        expected = black_scholes(100.0, 95.0, params, "call")
        self.assertAlmostEqual(result.value, expected, delta=1e-12 * expected)

    def test_single_date_digital(self):
        product = ProductSchedule(
            [ObservationLeg(1.0, k_plus=105.0, b_plus=1.0)],
            TerminalPayoff(0.0, 0.0),
            s0=100.0,
        )
        value = price(product, self.curves, 501).value
        d2 = (math.log(100.0 / 105.0) + (0.05 - 0.02 - 0.02)) / 0.2
        expected = math.exp(-0.05) * norm.cdf(d2)
        self.assertAlmostEqual(value, expected, delta=1e-10 * expected)

    def test_cash_bond(self):
        product = make_barrier(
            [0.5, 1.0], None, None, VanillaPayoff("cash", 1.0), s0=100.0
        )
        value = price(product, self.curves, 1001).value
        self.assertAlmostEqual(value, math.exp(-0.05), delta=1e-10)


class TestErrors(unittest.TestCase):
    def test_bad_grid(self):
        product, curves = fx.autocallable()
        with self.assertRaises(ConfigError):
            price(product, curves, 3)
        with self.assertRaises(ConfigError):
            price(product, curves, 501, log_c=-1.0)

    def test_bermudan_negative_yield(self):
        product, _ = fx.bermudan_put()
        curves = MarketCurves.constant(0.05, -0.01, 0.2)
        with self.assertRaises(ConfigError):
            price(product, curves, 501)

    def test_curves_must_cover_dates(self):
        _, curves = fx.autocallable()
        late = make_barrier([1.5], None, None, VanillaPayoff("cash", 1.0), s0=3000.0)
        with self.assertRaises(ConfigError):
            price(late, curves, 501)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
