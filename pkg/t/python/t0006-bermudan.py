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
from scipy.optimize import brentq

from quadprice.analytic import vanilla_value
from quadprice.bermudan import ExerciseResolver, exercise_tolerance, find_exercise_level
from quadprice.engine import build_grid, price
from quadprice.market import IntervalParams, MarketCurves
from quadprice.product import ObservationLeg
from quadprice.util import ConfigError, NumericError

STRIKE = 100.0


class LinearContinuation:
    """Continuation value slope * (S - K) + offset"""

    def __init__(self, slope, offset, s0=100.0, dividend_yield=0.0):
        self.slope = slope
        self.offset = offset
        self.s0 = s0
        self.params = IntervalParams(0.05, dividend_yield, 0.2, 0.1)

    def value(self, spots):
        return self.slope * (spots - STRIKE) + self.offset

    def at(self, x):
        return self.value(self.s0 * np.exp(np.atleast_1d(x)))


class TestFindExerciseLevel(unittest.TestCase):
    grid = build_grid(1.0, 201)

    def solve(self, evaluator, side, method="bisect"):
        values = evaluator.value(self.grid.spots(100.0))
        return find_exercise_level(
            evaluator, values, STRIKE, side, self.grid, 100.0, evaluator.params, method
        )

    def test_put_level(self):
        evaluator = LinearContinuation(-0.5, 10.0)
        tol = exercise_tolerance(self.grid, 100.0)
        for method in ("bisect", "secant"):
            solve = self.solve(evaluator, "minus", method)
            self.assertTrue(solve.converged)
            self.assertAlmostEqual(solve.level, 80.0, delta=tol)
            self.assertEqual(solve.method, method)
            low, high = self.grid.spots(100.0)[list(solve.bracket)]
            self.assertTrue(low <= solve.level <= high)

    def test_call_level(self):
        evaluator = LinearContinuation(0.5, 10.0)
        solve = self.solve(evaluator, "plus")
        tol = exercise_tolerance(self.grid, 100.0)
        self.assertAlmostEqual(solve.level, 120.0, delta=tol)
        self.assertEqual(solve.bracket[1], solve.bracket[0] + 1)

    def test_never_exercised(self):
        evaluator = LinearContinuation(-1.0, 1.0)
        solve = self.solve(evaluator, "minus")
        self.assertIsNone(solve.level)
        self.assertIsNone(solve.bracket)
        self.assertIsNone(solve.to_dict()["bracket"])

    def test_always_exercised(self):
        evaluator = LinearContinuation(-1.0, -1.0)
        with self.assertRaises(NumericError):
            self.solve(evaluator, "minus")

    def test_errors(self):
        evaluator = LinearContinuation(-0.5, 10.0, dividend_yield=-0.01)
        with self.assertRaises(ConfigError):
            self.solve(evaluator, "minus")
        with self.assertRaises(ConfigError):
            self.solve(LinearContinuation(-0.5, 10.0), "minus", method="newton")

    def test_tolerance(self):
        self.assertEqual(exercise_tolerance(build_grid(3.0, 7), 100.0), 100.0)
        fine = build_grid(3.0, 2000001)
        self.assertAlmostEqual(exercise_tolerance(fine, 100.0), 1e-10, delta=1e-24)

    def test_resolver_fills_leg(self):
        evaluator = LinearContinuation(-0.5, 10.0)
        values = evaluator.value(self.grid.spots(100.0))
        leg = ObservationLeg(0.5, a_minus=-1.0, b_minus=STRIKE, solve_side="minus")
        resolver = ExerciseResolver(STRIKE, self.grid, 100.0, "secant")
        resolved, solve = resolver(evaluator, values, leg)
        self.assertIsNone(resolved.solve_side)
        self.assertEqual(resolved.k_minus, solve.level)
        self.assertEqual((resolved.a_minus, resolved.b_minus), (-1.0, STRIKE))


class TestBermudanPut(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.product, cls.curves = fx.bermudan_put()
        cls.result = price(cls.product, cls.curves, 2001, keep_values=True)
        cls.european = float(
            vanilla_value(100.0, STRIKE, -1, IntervalParams(0.05, 0.0, 0.2, 1.0))
        )

    def spots(self):
        return build_grid(self.result.log_c, self.result.n).spots(100.0)

    def test_worth_more_than_european(self):
        self.assertGreater(self.result.value, self.european)
        self.assertLess(self.result.value, STRIKE)

    def test_levels_resolved(self):
        schedule = self.result.schedule
        self.assertTrue(schedule.resolved)
        self.assertFalse(self.product.resolved)
        levels = [leg.k_minus for leg in schedule.legs[:-1]]
        for level in levels:
            self.assertGreater(level, 50.0)
            self.assertLess(level, STRIKE)
        for step in self.result.steps:
            self.assertEqual(step.boundary.level, schedule.legs[step.date - 1].k_minus)
            self.assertTrue(step.boundary.converged)

    def test_single_crossing(self):
        spots = self.spots()
        for step in self.result.steps:
            gap = step.value.u - (STRIKE - spots)
            above = gap > 0.0
            crossings = np.count_nonzero(above[1:] != above[:-1])
            self.assertEqual(crossings, 1, f"date {step.date}")
            self.assertFalse(above[0])
            self.assertTrue(above[-1])

    def test_near_contraction(self):
        spots = self.spots()
        rng = np.random.default_rng(10000)
        for step in self.result.steps:
            u = step.value.u
            candidates = np.flatnonzero((spots >= 60.0) & (spots <= 140.0) & (u > 1e-4))
            first = rng.choice(candidates, 1200)
            second = rng.choice(candidates, 1200)
            keep = first != second
            i = np.minimum(first, second)[keep]
            j = np.maximum(first, second)[keep]
            drop = u[i] - u[j]
            self.assertTrue(np.all(drop > 0.0), f"date {step.date}")
            self.assertTrue(
                np.all(drop < (spots[j] - spots[i]) + 1e-10), f"date {step.date}"
            )

    def test_values_bounded(self):
        bound = fx.value_bound(self.result)
        spots = self.spots()
        for step in self.result.steps:
            limit = bound(step.t, spots) * (1.0 + 1e-12)
            self.assertTrue(np.all(np.abs(step.value.u) <= limit))

    def test_secant_agrees_with_bisection(self):
        secant = price(self.product, self.curves, 2001, method="secant")
        self.assertAlmostEqual(
            secant.value, self.result.value, delta=1e-9 * self.result.value
        )
        tol = exercise_tolerance(build_grid(self.result.log_c, 2001), 100.0)
        for ours, theirs in zip(secant.schedule.legs, self.result.schedule.legs):
            self.assertAlmostEqual(ours.k_minus, theirs.k_minus, delta=10.0 * tol)

    def test_single_date_is_european(self):
        product, curves = fx.bermudan_put(dates=[1.0])
        value = price(product, curves, 501).value
        self.assertAlmostEqual(value, self.european, delta=1e-9 * self.european)

    def test_bisection_cost(self):
        spots = self.spots()
        for step in self.result.steps:
            solve = step.boundary
            self.assertEqual(solve.method, "bisect")
            low, high = spots[list(solve.bracket)]
            limit = math.ceil(math.log2((high - low) / solve.tolerance)) + 1
            self.assertLessEqual(solve.iterations, limit, f"date {step.date}")

    def test_two_date_level_matches_closed_form(self):
        product, curves = fx.bermudan_put(dates=[0.5, 1.0])
        result = price(product, curves, 2001)
        half_year = IntervalParams(0.05, 0.0, 0.2, 0.5)

        def gap(spot):
            return float(vanilla_value(spot, STRIKE, -1, half_year)) - (STRIKE - spot)

        expected = brentq(gap, 1.0, STRIKE, xtol=1e-14, rtol=1e-15)
        level = result.schedule.legs[0].k_minus
        self.assertAlmostEqual(level, expected, delta=1e-9 * expected)

    def test_more_dates_worth_more(self):
        product, curves = fx.bermudan_put(dates=[0.5, 1.0])
        value = price(product, curves, 2001).value
        self.assertGreater(value, self.european)
        self.assertLess(value, self.result.value)


class TestBermudanCall(unittest.TestCase):
    def test_no_dividend_is_european(self):
        product, curves = fx.bermudan_put(kind="call")
        value = price(product, curves, 2001).value
        european = float(
            vanilla_value(100.0, STRIKE, 1, IntervalParams(0.05, 0.0, 0.2, 1.0))
        )
        self.assertAlmostEqual(value, european, delta=1e-8 * european)

    def test_dividend_makes_exercise_pay(self):
        product, _ = fx.bermudan_put(kind="call")
        curves = MarketCurves.constant(0.03, 0.08, 0.2)
        result = price(product, curves, 2001)
        european = float(
            vanilla_value(100.0, STRIKE, 1, IntervalParams(0.03, 0.08, 0.2, 1.0))
        )
        self.assertGreater(result.value, european)
        level = result.schedule.legs[-2].k_plus
        self.assertIsNotNone(level)
        self.assertGreater(level, STRIKE)
        self.assertTrue(math.isfinite(result.value))


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
