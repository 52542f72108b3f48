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

import quadfixtures as fx
import subquad
from pycotap import TAPTestRunner

from quadprice.engine import price, truncation_half_width
from quadprice.market import MarketCurves, reduce_curves
from quadprice.product import VanillaPayoff, make_barrier
from quadprice.util import ConfigError
from quadprice.validation import (
    McResult,
    convergence_study,
    mc_price,
    observed_order,
    richardson_extrapolate,
    truncation_bound,
)
from quadprice.validation.convergence import fitted_order


class TestExtrapolation(unittest.TestCase):
    def test_richardson_removes_leading_terms(self):
        def approx(h):
            return 1.0 + 3.0 * h**4 + 5.0 * h**8

        values = [approx(0.1), approx(0.05), approx(0.025)]
        self.assertAlmostEqual(richardson_extrapolate(values, 4), 1.0, places=13)
        self.assertAlmostEqual(richardson_extrapolate(values[:2], 4), 1.0, places=8)
        with self.assertRaises(ValueError):
            richardson_extrapolate([1.0], 4)

    def test_observed_order(self):
        values = [2.0 + 0.1 * h**4 for h in (1.0, 0.5, 0.25)]
        self.assertAlmostEqual(observed_order(*values), 4.0, places=10)
        self.assertIsNone(observed_order(1.0, 1.0, 1.0))

    def test_fitted_order(self):
        ns = [100, 200, 400, 800]
        errors = [7.0 / n**3 for n in ns]
        self.assertAlmostEqual(fitted_order(ns, errors), 3.0, places=10)
        self.assertIsNone(fitted_order(ns, [1e-3, 0.0, 0.0, 1e-17]))


class TestConvergenceStudy(unittest.TestCase):
    def test_autocallable(self):
        product, curves = fx.autocallable()
        study = convergence_study(product, curves, [501, 1001, 2001, 4001], 70001)
        self.assertEqual([row.n for row in study.rows], [501, 1001, 2001, 4001])
        for row in study.rows:
            self.assertLess(row.rel_error, 1e-5, f"N={row.n}")
        report = study.to_dict()
        self.assertEqual(report["reference_n"], 70001)
        self.assertEqual(set(report["rows"][0]), {"N", "value", "rel_error"})

    def test_european_call_order(self):
        curves = MarketCurves.constant(0.05, 0.02, 0.2)
        product = make_barrier(
            [0.25, 0.5, 0.75, 1.0], None, None, VanillaPayoff("call", 105.0), s0=100.0
        )
        #  Coarse grids: the default list is already at round-off
        study = convergence_study(product, curves, [33, 65, 129, 257], 4001)
        self.assertIsNotNone(study.order)
        self.assertGreaterEqual(study.order, 3.5)

    def test_threads_give_same_values(self):
        product, curves = fx.double_barrier()
        serial = convergence_study(product, curves, [701, 1401], 5601)
        threaded = convergence_study(product, curves, [701, 1401], 5601, jobs=3)
        self.assertEqual(serial.to_dict(), threaded.to_dict())

    def test_shared_truncation(self):
        product, curves = fx.autocallable()
        log_c = truncation_half_width(reduce_curves(curves, product.dates))
        study = convergence_study(product, curves, [501], 1001, log_c=1.5 * log_c)
        expected = price(product, curves, 501, log_c=1.5 * log_c).value
        self.assertEqual(study.rows[0].value, expected)

    def test_errors(self):
        product, curves = fx.autocallable()
        with self.assertRaises(ConfigError):
            convergence_study(product, curves, [], 1001)
        with self.assertRaises(ConfigError):
            convergence_study(product, curves, [501, 1001], 1001)


class TestTruncationBound(unittest.TestCase):
    def test_default_half_width_is_negligible(self):
        for build in (fx.autocallable, fx.double_barrier, fx.double_barrier_knock_in):
            product, curves = build()
            bound = truncation_bound(product, curves)
            self.assertLessEqual(bound.bound, bound.reference(product.s0))
            self.assertGreater(bound.log_c, 0.0)

    def test_coefficients(self):
        product, curves = fx.double_barrier()
        bound = truncation_bound(product, curves)
        self.assertEqual(bound.a_max, 1.0)
        self.assertEqual(bound.b_max, 2600.0)
        self.assertEqual(bound.r_min, 0.0)
        self.assertEqual(bound.q_min, 0.0)
        self.assertLess(bound.d_max, 0.0)
        keys = {"A", "B", "R", "Q", "logC", "bound", "d_min", "d_max"}
        self.assertEqual(set(bound.to_dict()), keys)

    def test_single_date_has_no_truncation(self):
        product, curves = fx.bermudan_put(dates=[1.0])
        self.assertEqual(truncation_bound(product, curves).bound, 0.0)

    def test_narrower_grid_bounds_more(self):
        product, curves = fx.autocallable()
        wide = truncation_bound(product, curves)
        narrow = truncation_bound(product, curves, log_c=0.5 * wide.log_c)
        self.assertGreater(narrow.bound, wide.bound)


class TestMonteCarlo(unittest.TestCase):
    def test_cash_bond_is_exact(self):
        curves = MarketCurves.constant(0.05, 0.02, 0.2)
        product = make_barrier(
            [0.5, 1.0], None, None, VanillaPayoff("cash", 1.0), s0=100.0
        )
        mc = mc_price(product, curves, 1000, seed=1)
        self.assertEqual(mc.std_error, 0.0)
        self.assertAlmostEqual(mc.estimate, math.exp(-0.05), places=14)
        self.assertEqual(mc.z_score(mc.estimate), 0.0)

    def test_z_score(self):
        mc = McResult(estimate=1.0, std_error=0.5, n_pairs=10, seed=0, batches=1)
        self.assertEqual(mc.z_score(2.0), 2.0)
        exact = McResult(estimate=1.0, std_error=0.0, n_pairs=10, seed=0, batches=1)
        self.assertEqual(exact.z_score(1.1), math.inf)
        self.assertEqual(exact.z_score(0.9), -math.inf)

    def test_autocallable_agrees(self):
        product, curves = fx.autocallable()
        value = price(product, curves, 2001).value
        mc = mc_price(product, curves, 200000, seed=11)
        self.assertEqual(mc.n_pairs, 200000)
        self.assertEqual(mc.batches, 4)
        self.assertLess(abs(mc.z_score(value)), 4.0)

    def test_knock_in_agrees(self):
        product, curves = fx.double_barrier_knock_in()
        value = price(product, curves, 1401).value
        mc = mc_price(product, curves, 100000, seed=5)
        self.assertLess(abs(mc.z_score(value)), 4.0)

    def test_bermudan_uses_resolved_levels(self):
        product, curves = fx.bermudan_put()
        with self.assertRaises(ConfigError):
            mc_price(product, curves, 1000)
        result = price(product, curves, 2001)
        mc = mc_price(result.schedule, curves, 100000, seed=2)
        self.assertLess(abs(mc.z_score(result.value)), 4.0)

    def test_deterministic_per_seed(self):
        product, curves = fx.autocallable()
        first = mc_price(product, curves, 20000, seed=3, batch_size=3000)
        again = mc_price(product, curves, 20000, seed=3, batch_size=3000, jobs=3)
        other = mc_price(product, curves, 20000, seed=4, batch_size=3000)
        self.assertEqual(first.batches, 7)
        self.assertEqual(first, again)
        self.assertNotEqual(first.estimate, other.estimate)

    def test_single_pair(self):
        product, curves = fx.autocallable()
        mc = mc_price(product, curves, 1, seed=1)
        self.assertEqual(mc.n_pairs, 1)
        self.assertEqual(mc.batches, 1)
        self.assertEqual(mc.std_error, 0.0)
        self.assertTrue(math.isfinite(mc.estimate))
        self.assertLessEqual(abs(mc.estimate), 0.04)

    def test_errors(self):
        product, curves = fx.autocallable()
        with self.assertRaises(ConfigError):
            mc_price(product, curves, 0)
        with self.assertRaises(ConfigError):
            mc_price(product, curves, 100, batch_size=0)


@unittest.skipUnless(subquad.longtest, "set LONGTEST to run")
class TestLong(unittest.TestCase):
    def test_autocallable_ten_million_pairs(self):
        product, curves = fx.autocallable()
        value = price(product, curves, 70001).value
        mc = mc_price(product, curves, 10**7, seed=2026, jobs=4)
        self.assertLessEqual(abs(mc.z_score(value)), 3.0)
        self.assertLess(mc.std_error / abs(value), 1e-2)

    def test_double_barrier_ten_million_pairs(self):
        product, curves = fx.double_barrier()
        value = price(product, curves, 50001).value
        mc = mc_price(product, curves, 10**7, seed=2026, jobs=4)
        self.assertLessEqual(abs(mc.z_score(value)), 3.0)
        self.assertLess(mc.std_error / abs(value), 1e-2)

    def test_double_barrier_order(self):
        product, curves = fx.double_barrier()
        study = convergence_study(product, curves, [501, 1001, 2001, 4001], 50001)
        self.assertIsNotNone(study.order)
        self.assertGreaterEqual(study.order, 2.5)
        self.assertLessEqual(study.order, 4.5)

    def test_autocallable_order(self):
        product, curves = fx.autocallable()
        study = convergence_study(product, curves, [501, 1001, 2001, 4001], 70001)
        self.assertIsNotNone(study.order)
        self.assertGreaterEqual(study.order, 2.5)
        self.assertLessEqual(study.order, 4.5)

    def test_runtime_scaling(self):
        product, curves = fx.autocallable()
        coarse = min(price(product, curves, 4001).runtime for _ in range(3))
        fine = min(price(product, curves, 64001).runtime for _ in range(3))
        #  16 times the points; quadratic work would cost 256 times as much
        self.assertLess(fine, 64.0 * coarse)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
