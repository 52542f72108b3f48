#!/usr/bin/env python3

###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import unittest

import subquad  # noqa: F401 - To set up PYTHONPATH
from pycotap import TAPTestRunner

from quadprice.product import (
    ExerciseStyle,
    KnockIn,
    ObservationLeg,
    ProductSchedule,
    TerminalPayoff,
    VanillaPayoff,
    make_autocallable,
    make_barrier,
    make_bermudan,
    make_european,
    make_knock_in,
    make_touch,
)
from quadprice.util import ConfigError

DATES = [0.2, 0.4, 0.6, 0.8, 1.0]
BARRIERS = [3050.0, 3100.0, 3150.0, 3200.0, 3250.0]

BARRIER_DATES = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
LOWER = [2200.0, 2100.0, 2000.0, 1900.0, 1800.0, 1700.0, 1600.0, None]
UPPER = [2800.0, 2900.0, 3000.0, 3100.0, 3200.0, 3300.0, 3400.0, None]


class TestObservationLeg(unittest.TestCase):
    def test_defaults(self):
        leg = ObservationLeg(1.0)
        self.assertFalse(leg.has_lower)
        self.assertFalse(leg.has_upper)
        self.assertEqual(leg.coefficients()["k_plus"], None)

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            ObservationLeg(1.0, k_minus=-1.0)
        with self.assertRaises(ConfigError):
            ObservationLeg(1.0, k_minus=2.0, k_plus=1.0)
        with self.assertRaises(ConfigError):
            ObservationLeg(1.0, k_plus=0.0)
        with self.assertRaises(ConfigError):
            ObservationLeg(1.0, b_plus=float("inf"))
        with self.assertRaises(ConfigError):
            ObservationLeg(1.0, solve_side="middle")
        with self.assertRaises(ConfigError):
            ObservationLeg("1.0")


class TestSchedule(unittest.TestCase):
    def test_dates_must_increase(self):
        legs = [ObservationLeg(0.5), ObservationLeg(0.5)]
        with self.assertRaises(ConfigError):
            ProductSchedule(legs, TerminalPayoff())
        with self.assertRaises(ConfigError):
            ProductSchedule([ObservationLeg(0.5)], TerminalPayoff(), t0=0.5)
        with self.assertRaises(ConfigError):
            ProductSchedule([], TerminalPayoff())

    def test_spot(self):
        with self.assertRaises(ConfigError):
            ProductSchedule([ObservationLeg(1.0)], TerminalPayoff(), s0=0.0)
        schedule = ProductSchedule([ObservationLeg(1.0)], TerminalPayoff(), s0=5.0)
        self.assertEqual(schedule.with_spot(6.0).s0, 6.0)
        self.assertEqual(schedule.s0, 5.0)
        self.assertEqual(schedule.dates, [0.0, 1.0])
        self.assertEqual(schedule.maturity, 1.0)

    def test_bermudan_needs_strike(self):
        with self.assertRaises(ConfigError):
            ProductSchedule(
                [ObservationLeg(1.0)],
                TerminalPayoff(),
                exercise_style=ExerciseStyle.BERMUDAN_PUT,
            )


class TestAutocallable(unittest.TestCase):
    def test_coupon_schedule(self):
        coupons = [0.04 * t for t in DATES]
        schedule = make_autocallable(DATES, BARRIERS, coupons, -0.01, s0=3000.0)
        self.assertEqual(len(schedule.legs), 5)
        last = schedule.legs[-1]
        self.assertEqual(last.k_plus, 3250.0)
        self.assertAlmostEqual(last.b_plus, 0.04, places=15)
        self.assertEqual(last.a_plus, 0.0)
        self.assertFalse(last.has_lower)
        self.assertEqual(schedule.terminal, TerminalPayoff(0.0, -0.01))
        self.assertTrue(schedule.resolved)
        self.assertEqual(schedule.exercise_style, ExerciseStyle.SCHEDULED)

    def test_down(self):
        schedule = make_autocallable([1.0], [90.0], [5.0], 0.0, direction="down")
        self.assertEqual(schedule.legs[0].k_minus, 90.0)
        self.assertEqual(schedule.legs[0].b_minus, 5.0)
        self.assertIsNone(schedule.legs[0].k_plus)

    def test_errors(self):
        with self.assertRaises(ConfigError):
            make_autocallable(DATES, BARRIERS[:-1], [0.0] * 5, 0.0)
        with self.assertRaises(ConfigError):
            make_autocallable([1.0], [100.0], [1.0], 0.0, direction="sideways")
        with self.assertRaises(ConfigError):
            make_autocallable([1.0], [-100.0], [1.0], 0.0)


class TestBarrier(unittest.TestCase):
    def test_double_barrier_put(self):
        put = VanillaPayoff("put", 2600.0)
        schedule = make_barrier(BARRIER_DATES, LOWER, UPPER, put, s0=2500.0)
        self.assertEqual(len(schedule.legs), 8)
        seventh = schedule.legs[6]
        self.assertEqual(seventh.k_minus, 1600.0)
        self.assertEqual(seventh.k_plus, 3400.0)
        self.assertEqual(seventh.b_minus, 0.0)
        self.assertEqual(seventh.b_plus, 0.0)
        self.assertEqual(schedule.terminal, TerminalPayoff(-1.0, 2600.0))
        final = schedule.legs[-1]
        self.assertEqual(final.k_minus, 0.0)
        self.assertEqual(final.k_plus, 2600.0)

    def test_call_strike_above_barrier(self):
        call = VanillaPayoff("call", 120.0)
        schedule = make_barrier([1.0], [None], [110.0], call)
        final = schedule.legs[-1]
        self.assertLessEqual(final.k_minus, final.k_plus)
        self.assertEqual(final.k_plus, 110.0)

    def test_european(self):
        schedule = make_european(1.0, VanillaPayoff("call", 100.0), s0=100.0)
        self.assertEqual(len(schedule.legs), 1)
        self.assertEqual(schedule.legs[0].k_minus, 100.0)
        self.assertIsNone(schedule.legs[0].k_plus)
        self.assertEqual(schedule.terminal, TerminalPayoff(1.0, -100.0))
        self.assertEqual(schedule.name, "european-call")

    def test_invalid_levels(self):
        with self.assertRaises(ConfigError):
            make_barrier([1.0], [120.0], [110.0], VanillaPayoff("cash", 1.0))
        with self.assertRaises(ConfigError):
            make_barrier([1.0, 2.0], [None], None, VanillaPayoff("cash", 1.0))
        with self.assertRaises(ConfigError):
            VanillaPayoff("straddle", 1.0)
        with self.assertRaises(ConfigError):
            VanillaPayoff("put", 0.0)

    def test_knock_in(self):
        put = VanillaPayoff("put", 2600.0)
        product = make_knock_in(BARRIER_DATES, LOWER, UPPER, put, s0=2500.0)
        self.assertIsInstance(product, KnockIn)
        self.assertEqual(product.s0, 2500.0)
        self.assertEqual(product.dates, [0.0] + BARRIER_DATES)
        self.assertTrue(all(not leg.has_upper or leg.t == 2.0 for leg in product.vanilla.legs))
        moved = product.with_spot(2400.0)
        self.assertEqual(moved.vanilla.s0, 2400.0)
        self.assertEqual(moved.knock_out.s0, 2400.0)


class TestTouch(unittest.TestCase):
    def test_one_touch_pays_on_hit(self):
        schedule = make_touch([0.5, 1.0], [110.0, 110.0], 1.0, s0=100.0)
        self.assertEqual([leg.b_plus for leg in schedule.legs], [1.0, 1.0])
        self.assertEqual(schedule.terminal, TerminalPayoff(0.0, 0.0))
        self.assertEqual(schedule.name, "one-touch-up")

    def test_no_touch_pays_at_maturity(self):
        schedule = make_touch(
            [0.5, 1.0], [90.0, 90.0], 1.0, direction="down", kind="no-touch", s0=100.0
        )
        self.assertEqual([leg.k_minus for leg in schedule.legs], [90.0, 90.0])
        self.assertEqual(schedule.terminal, TerminalPayoff(0.0, 1.0))
        self.assertEqual(schedule.name, "no-touch-down")

    def test_errors(self):
        with self.assertRaises(ConfigError):
            make_touch([1.0], [90.0], 1.0, kind="double-touch")
        with self.assertRaises(ConfigError):
            make_touch([1.0], [90.0], 1.0, direction="left", kind="no-touch")


class TestBermudan(unittest.TestCase):
    def test_put_legs(self):
        dates = [0.1 * k for k in range(1, 11)]
        schedule = make_bermudan(dates, 100.0, "put", s0=100.0)
        self.assertEqual(schedule.exercise_style, ExerciseStyle.BERMUDAN_PUT)
        self.assertFalse(schedule.resolved)
        for leg in schedule.legs[:-1]:
            self.assertEqual(leg.solve_side, "minus")
            self.assertEqual((leg.a_minus, leg.b_minus), (-1.0, 100.0))
        final = schedule.legs[-1]
        self.assertIsNone(final.solve_side)
        self.assertEqual(final.k_minus, 100.0)
        self.assertEqual(schedule.terminal, TerminalPayoff(0.0, 0.0))
        self.assertEqual(schedule.strike, 100.0)

    def test_call_legs(self):
        schedule = make_bermudan([0.5, 1.0], 100.0, "call")
        self.assertEqual(schedule.exercise_style, ExerciseStyle.BERMUDAN_CALL)
        self.assertEqual(schedule.legs[0].solve_side, "plus")
        self.assertEqual(schedule.legs[-1].k_plus, 100.0)

    def test_errors(self):
        with self.assertRaises(ConfigError):
            make_bermudan([1.0], -1.0)
        with self.assertRaises(ConfigError):
            make_bermudan([1.0], 100.0, "straddle")
        with self.assertRaises(ConfigError):
            make_bermudan([], 100.0)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
