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
from scipy.stats import norm

from quadprice.engine import (
    QuadratureStep,
    ValueFunction,
    build_grid,
    fft_convolve,
    locate_window,
    simpson_weighted_values,
    truncation_half_width,
)
from quadprice.market import IntervalParams
from quadprice.product import ObservationLeg
from quadprice.util import ConfigError


def direct_convolve(weighted, kernel):
    n = (weighted.size + 1) // 2
    result = np.zeros(n)
    for j in range(n):
        for i in range(n):
            result[j] += weighted[i] * kernel[j - i + n - 1]
    return result


class TestTruncation(unittest.TestCase):
    def test_half_width(self):
        one_year = [IntervalParams(0.02, 0.0, 0.2, 0.2) for _ in range(5)]
        self.assertAlmostEqual(truncation_half_width(one_year), 3.02, places=12)
        two_years = [IntervalParams(0.01, 0.0, 0.25, 0.25) for _ in range(8)]
        self.assertAlmostEqual(
            truncation_half_width(two_years), 2.5 * math.sqrt(2.0) + 2.0625, places=12
        )

    def test_uses_largest_volatility(self):
        intervals = [
            IntervalParams(0.0, 0.0, 0.1, 0.5),
            IntervalParams(0.0, 0.0, 0.3, 0.5),
        ]
        expected = 3.0 + (1.0 + 0.045)
        self.assertAlmostEqual(truncation_half_width(intervals), expected, places=12)


class TestGrid(unittest.TestCase):
    def test_points(self):
        grid = build_grid(3.02, 501)
        self.assertEqual(grid.n, 501)
        self.assertEqual(grid.x.size, 501)
        self.assertEqual(grid.x[0], -3.02)
        self.assertEqual(grid.x[-1], 3.02)
        self.assertAlmostEqual(grid.h, 6.04 / 500, places=15)
        self.assertAlmostEqual(grid.x[250], 0.0, places=12)
        np.testing.assert_allclose(np.diff(grid.x), grid.h, rtol=1e-9)

    def test_z_hat(self):
        grid = build_grid(2.0, 64)
        self.assertEqual(grid.z_hat.size, 127)
        self.assertEqual(grid.z_hat[0], -4.0)
        self.assertAlmostEqual(grid.z_hat[63], 0.0, places=12)
        self.assertAlmostEqual(grid.z_hat[-1], 4.0, places=12)

    def test_spots(self):
        grid = build_grid(1.0, 5)
        np.testing.assert_allclose(
            grid.spots(100.0), 100.0 * np.exp([-1.0, -0.5, 0.0, 0.5, 1.0]), rtol=1e-15
        )

    def test_errors(self):
        with self.assertRaises(ConfigError):
            build_grid(3.0, 4)
        with self.assertRaises(ConfigError):
            build_grid(3.0, 100.5)
        with self.assertRaises(ConfigError):
            build_grid(0.0, 101)
        with self.assertRaises(ConfigError):
            build_grid(math.inf, 101)


class TestWindow(unittest.TestCase):
    def test_double_barrier_indices(self):
        log_c = 2.5 * math.sqrt(2.0) + 2.0625
        leg = ObservationLeg(0.25, k_minus=2200.0, k_plus=2800.0)
        for n in (101, 701, 1400, 1401):
            grid = build_grid(log_c, n)
            window = locate_window(leg, grid, 2500.0)
            self.assertAlmostEqual(window.b_minus, math.log(0.88), places=15)
            self.assertAlmostEqual(window.b_plus, math.log(1.12), places=15)
            x = grid.x
            first = min(i for i in range(n) if x[i] >= window.b_minus)
            last = max(i for i in range(n) if x[i] < window.b_plus)
            self.assertEqual(window.p_minus, first)
            self.assertEqual(window.p_plus, last)
            self.assertEqual((window.end - window.p_minus) % 2, 0)
            self.assertIn(window.p0, (0, 1))
            self.assertFalse(window.narrow)
            self.assertAlmostEqual(window.l_minus, 2200.0, places=9)
            self.assertAlmostEqual(window.l_plus, 2800.0, places=9)

    def test_unbounded_leg_covers_grid(self):
        grid = build_grid(3.0, 101)
        window = locate_window(ObservationLeg(1.0), grid, 100.0)
        self.assertEqual(window.b_minus, -3.0)
        self.assertEqual(window.b_plus, 3.0)
        self.assertEqual(window.p_minus, 0)
        self.assertEqual(window.end, 100)
        self.assertFalse(any(window.needed))

    def test_empty_window(self):
        grid = build_grid(1.0, 101)
        leg = ObservationLeg(1.0, k_minus=1000.0)
        self.assertIsNone(locate_window(leg, grid, 100.0))
        leg = ObservationLeg(1.0, k_plus=1.0)
        self.assertIsNone(locate_window(leg, grid, 100.0))
        leg = ObservationLeg(1.0, k_minus=100.0, k_plus=100.0)
        self.assertIsNone(locate_window(leg, grid, 100.0))

    def test_narrow_window(self):
        grid = build_grid(3.0, 101)
        leg = ObservationLeg(1.0, k_minus=100.0, k_plus=101.0)
        window = locate_window(leg, grid, 100.0)
        self.assertTrue(window.narrow)
        self.assertAlmostEqual(window.xi_minus, 0.5 * math.log(1.01), places=15)
        self.assertEqual(list(window.needed), [True, True, False, True])
        weighted = simpson_weighted_values(np.ones(101), window)
        self.assertFalse(np.any(weighted))

    def test_simpson_weights(self):
        grid = build_grid(3.0, 101)
        leg = ObservationLeg(1.0, k_minus=80.0, k_plus=125.0)
        window = locate_window(leg, grid, 100.0)
        weighted = simpson_weighted_values(np.ones(101), window)
        inside = weighted[window.p_minus : window.end + 1]
        self.assertEqual(inside[0], 1.0)
        self.assertEqual(inside[-1], 1.0)
        self.assertEqual(list(inside[1:-1:2]), [4.0] * ((inside.size - 1) // 2))
        self.assertEqual(list(inside[2:-1:2]), [2.0] * ((inside.size - 3) // 2))
        self.assertEqual(np.count_nonzero(weighted), inside.size)


class TestFFT(unittest.TestCase):
    def test_matches_direct_sum(self):
        rng = np.random.default_rng(20)
        for n in (33, 64, 257, 501):
            weighted = np.concatenate([rng.uniform(-1.0, 1.0, n), np.zeros(n - 1)])
            kernel = rng.uniform(0.0, 2.0, 2 * n - 1)
            expected = direct_convolve(weighted, kernel)
            result = fft_convolve(weighted, kernel)
            scale = np.max(np.abs(expected))
            self.assertLess(np.max(np.abs(result - expected)), 1e-12 * scale)

    def test_explicit_length(self):
        rng = np.random.default_rng(7)
        n = 33
        weighted = np.concatenate([rng.uniform(size=n), np.zeros(n - 1)])
        kernel = rng.uniform(size=2 * n - 1)
        np.testing.assert_allclose(
            fft_convolve(weighted, kernel, length=128),
            fft_convolve(weighted, kernel),
            rtol=1e-12,
        )
        with self.assertRaises(ValueError):
            fft_convolve(weighted, kernel, length=2 * n - 2)
        with self.assertRaises(ValueError):
            fft_convolve(weighted[:-1], kernel[:-1])


class TestQuadratureStep(unittest.TestCase):
    params = IntervalParams(rate=0.03, dividend_yield=0.01, volatility=0.2, dt=0.25)

    def constant_step(self, leg, n=2001, log_c=3.0):
        grid = build_grid(log_c, n)
        window = locate_window(leg, grid, 100.0)
        value = ValueFunction(u=np.ones(n), window=window, edges=np.ones(4), leg=leg)
        return grid, window, QuadratureStep(value, leg, self.params, grid, 100.0)

    def probability(self, x, b_minus, b_plus):
        tau = self.params.tau
        mean = x + 2.0 * self.params.alpha * tau
        sd = math.sqrt(2.0 * tau)
        return self.params.discount * (
            norm.cdf((b_plus - mean) / sd) - norm.cdf((b_minus - mean) / sd)
        )

    def test_window_probability(self):
        leg = ObservationLeg(0.5, k_minus=85.0, k_plus=112.0)
        _, window, step = self.constant_step(leg)
        for x in (-0.1, 0.0, 0.07):
            expected = self.probability(x, window.b_minus, window.b_plus)
            value = float(step.at(x)[0])
            self.assertAlmostEqual(value, expected, delta=1e-8 * expected)

    def test_narrow_window_probability(self):
        leg = ObservationLeg(0.5, k_minus=100.0, k_plus=100.2)
        _, window, step = self.constant_step(leg, n=101)
        self.assertTrue(window.narrow)
        expected = self.probability(0.0, window.b_minus, window.b_plus)
        self.assertAlmostEqual(float(step.at(0.0)[0]), expected, delta=1e-8 * expected)

    def test_grid_and_direct_agree(self):
        leg = ObservationLeg(0.5, k_minus=70.0, k_plus=140.0)
        grid, _, step = self.constant_step(leg, n=501)
        fast = step.on_grid()
        direct = step.at(grid.x)
        scale = np.max(np.abs(direct))
        self.assertLess(np.max(np.abs(fast - direct)), 1e-12 * scale)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
