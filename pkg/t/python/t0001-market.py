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
from scipy.stats import lognorm

from quadprice.market import (
    IntervalParams,
    MarketCurves,
    PiecewiseConstant,
    aggregate,
    kernel_w,
    lognormal_density,
    reduce_curves,
)
from quadprice.util import ConfigError, DomainError


def autocallable_curves():
    rate = PiecewiseConstant.from_segments(
        0.0, [(0.2, 0.02), (0.4, 0.021), (0.6, 0.022), (0.8, 0.023), (1.0, 0.024)]
    )
    return MarketCurves(
        rate=rate,
        dividend_yield=PiecewiseConstant.constant(0.0),
        volatility=PiecewiseConstant.constant(0.2),
    )


class TestPiecewiseConstant(unittest.TestCase):
    def test_value_on_half_open_segments(self):
        curve = PiecewiseConstant.from_segments(0.0, [(1.0, 0.01), (2.0, 0.03)])
        self.assertEqual(curve(0.5), 0.01)
        self.assertEqual(curve(1.0), 0.01)
        self.assertEqual(curve(1.0 + 1e-12), 0.03)
        self.assertEqual(curve(2.0), 0.03)

    def test_integrals(self):
        curve = PiecewiseConstant.from_segments(0.0, [(1.0, 0.01), (2.0, 0.03)])
        self.assertAlmostEqual(curve.integral(0.5, 1.5), 0.005 + 0.015, places=15)
        self.assertAlmostEqual(
            curve.integral_of_square(0.0, 2.0), 0.0001 + 0.0009, places=15
        )
        self.assertEqual(curve.minimum(), 0.01)

    def test_constant_covers_everything(self):
        curve = PiecewiseConstant.constant(0.05)
        self.assertTrue(curve.covers(-100.0, 100.0))
        self.assertAlmostEqual(curve.integral(1.0, 3.0), 0.1, places=15)

    def test_shifted(self):
        curve = PiecewiseConstant.constant(0.2).shifted(0.01)
        self.assertAlmostEqual(float(curve(0.3)), 0.21, places=15)

    def test_bad_curves(self):
        with self.assertRaises(ConfigError):
            PiecewiseConstant([0.0, 1.0], [0.1, 0.2])
        with self.assertRaises(ConfigError):
            PiecewiseConstant([0.0, 2.0, 1.0], [0.1, 0.2])
        with self.assertRaises(ConfigError):
            PiecewiseConstant([0.0, 1.0], [math.nan])
        with self.assertRaises(ConfigError):
            PiecewiseConstant.from_segments(0.0, [])


class TestReduceCurves(unittest.TestCase):
    def test_constant_curves(self):
        curves = MarketCurves.constant(0.05, 0.01, 0.2)
        intervals = reduce_curves(curves, [0.0, 0.25, 1.0])
        self.assertEqual(len(intervals), 2)
        first, second = intervals
        self.assertAlmostEqual(first.dt, 0.25)
        self.assertAlmostEqual(second.dt, 0.75)
        for params in intervals:
            self.assertAlmostEqual(params.rate, 0.05, places=15)
            self.assertAlmostEqual(params.dividend_yield, 0.01, places=15)
            self.assertAlmostEqual(params.volatility, 0.2, places=15)

    def test_aligned_rates(self):
        intervals = reduce_curves(
            autocallable_curves(), [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
        )
        rates = [p.rate for p in intervals]
        np.testing.assert_allclose(
            rates, [0.02, 0.021, 0.022, 0.023, 0.024], rtol=1e-14
        )

    def test_misaligned_dates_average(self):
        curves = MarketCurves(
            rate=PiecewiseConstant.from_segments(0.0, [(1.0, 0.01), (2.0, 0.03)]),
            dividend_yield=PiecewiseConstant.constant(0.0),
            volatility=PiecewiseConstant.from_segments(0.0, [(1.0, 0.1), (2.0, 0.3)]),
        )
        (params,) = reduce_curves(curves, [0.5, 1.5])
        self.assertAlmostEqual(params.rate, 0.02, places=15)
        self.assertAlmostEqual(params.volatility, math.sqrt(0.05), places=15)

    def test_bad_dates(self):
        curves = MarketCurves.constant(0.05, 0.0, 0.2)
        with self.assertRaises(ConfigError):
            reduce_curves(curves, [0.0])
        with self.assertRaises(ConfigError):
            reduce_curves(curves, [0.0, 1.0, 1.0])
        with self.assertRaises(ConfigError):
            reduce_curves(autocallable_curves(), [0.0, 1.5])

    def test_nonpositive_volatility(self):
        with self.assertRaises(ConfigError):
            MarketCurves.constant(0.05, 0.0, 0.0)
        with self.assertRaises(ConfigError):
            MarketCurves.constant(0.05, 0.0, 0.01).with_volatility_shift(-0.02)


class TestIntervalParams(unittest.TestCase):
    def test_derived_quantities(self):
        params = IntervalParams(rate=0.05, dividend_yield=0.01, volatility=0.2, dt=0.5)
        self.assertAlmostEqual(params.tau, 0.01, places=15)
        self.assertAlmostEqual(params.alpha, (0.04 - 0.02) / 0.04, places=14)
        self.assertAlmostEqual(params.beta, 0.25 + 2.5, places=13)
        self.assertAlmostEqual(params.discount, math.exp(-0.025), places=15)

    def test_aggregate(self):
        intervals = reduce_curves(
            autocallable_curves(), [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
        )
        total = aggregate(intervals)
        self.assertAlmostEqual(total.dt, 1.0, places=14)
        self.assertAlmostEqual(total.rate, 0.022, places=14)
        self.assertAlmostEqual(total.volatility, 0.2, places=14)
        with self.assertRaises(ValueError):
            aggregate([])

    def test_density_integrates_to_one(self):
        params = IntervalParams(rate=0.02, dividend_yield=0.0, volatility=0.2, dt=0.2)
        mass, _ = quad(
            lambda y: float(lognormal_density(params, y, 3000.0)),
            1.0,
            20000.0,
            points=[2500.0, 3000.0, 3500.0],
            limit=200,
        )
        self.assertAlmostEqual(mass, 1.0, places=8)

    def test_density_matches_scipy(self):
        params = IntervalParams(rate=0.03, dividend_yield=0.01, volatility=0.25, dt=0.5)
        s = 100.0
        y = np.linspace(50.0, 200.0, 31)
        expected = lognorm.pdf(
            y, params.stddev, scale=s * math.exp(params.drift)
        )
        np.testing.assert_allclose(
            lognormal_density(params, y, s), expected, rtol=1e-12
        )

    def test_density_domain(self):
        params = IntervalParams(rate=0.03, dividend_yield=0.0, volatility=0.2, dt=0.5)
        with self.assertRaises(DomainError):
            lognormal_density(params, 0.0, 100.0)
        with self.assertRaises(DomainError):
            lognormal_density(params, 100.0, -1.0)

    def test_kernel(self):
        params = IntervalParams(rate=0.02, dividend_yield=0.0, volatility=0.2, dt=0.2)
        x = 0.05
        expected = math.exp(-(x**2) / (4.0 * params.tau) - params.alpha * x)
        self.assertAlmostEqual(
            float(kernel_w(params, x)), expected, delta=1e-14 * expected
        )


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
