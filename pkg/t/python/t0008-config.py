#!/usr/bin/env python3

###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import os
import tempfile
import unittest
from unittest import mock

import numpy as np
import quadfixtures as fx
import subquad
from pycotap import TAPTestRunner

from quadprice.builder import ProductBuilderPlugin, ProductBuilders, Section
from quadprice.config import EngineSettings, McSettings, RunConfig
from quadprice.product import ExerciseStyle, KnockIn, TerminalPayoff
from quadprice.util import ConfigError


def run_config(product, market=None, **tables):
    initial = {"market": market or {"spot": 100.0, "rate": 5.0, "volatility": 20.0}}
    initial["product"] = product
    initial.update(tables)
    return RunConfig(initial, user_defaults=False)


class TestDefaults(unittest.TestCase):
    def test_defaults(self):
        config = RunConfig(user_defaults=False)
        self.assertEqual(config.engine(), EngineSettings(2001, None, "bisect"))
        self.assertEqual(config.mc(), McSettings(1000000, 1, 50000, 1))
        self.assertEqual(config.convergence(), ([501, 1001, 2001, 4001], 70001))
        self.assertEqual(config.greeks(), (0.01, 0.01))
        self.assertEqual(config.output_format(), "text")
        self.assertEqual(config.t0, 0.0)

    def test_user_defaults(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            os.mkdir(os.path.join(tmpdir, "quadprice"))
            with open(os.path.join(tmpdir, "quadprice", "quadprice.toml"), "w") as fp:
                fp.write("[engine]\nn = 3001\n[mc]\nseed = 42\n")
            env = {
                "XDG_CONFIG_HOME": tmpdir,
                "XDG_CONFIG_DIRS": os.path.join(tmpdir, "none"),
            }
            with mock.patch.dict(os.environ, env):
                config = RunConfig()
                self.assertEqual(config.engine().n, 3001)
                self.assertEqual(config.mc().seed, 42)
                #  A run file still wins over user defaults
                config.update({"engine": {"n": 501}})
                self.assertEqual(config.engine().n, 501)
                self.assertEqual(RunConfig(user_defaults=False).engine().n, 2001)


class TestExamples(unittest.TestCase):
    def load(self, name):
        return RunConfig.from_file(subquad.example(name), user_defaults=False)

    def test_autocallable(self):
        config = self.load("autocallable.toml")
        product, curves = fx.autocallable()
        self.assertEqual(config.product(), product)
        self.assertEqual(config.spot, 3000.0)
        loaded = config.curves()
        np.testing.assert_allclose(loaded.rate.values, curves.rate.values, rtol=1e-15)
        np.testing.assert_array_equal(loaded.rate.knots, curves.rate.knots)
        self.assertEqual(loaded.volatility.values.tolist(), [0.2])
        self.assertEqual(loaded.dividend_yield.values.tolist(), [0.0])
        self.assertEqual(config.convergence(), ([501, 1001, 2001, 4001], 70001))

    def test_double_barrier(self):
        config = self.load("double-barrier.toml")
        product, _ = fx.double_barrier()
        self.assertEqual(config.product(), product)
        self.assertEqual(config.product().legs[-1].k_plus, 2600.0)
        self.assertEqual(config.convergence(), ([701, 1401, 2801], 50001))

    def test_bermudan(self):
        config = self.load("bermudan-put.toml")
        product = config.product()
        self.assertIs(product.exercise_style, ExerciseStyle.BERMUDAN_PUT)
        self.assertEqual(product.strike, 100.0)
        self.assertEqual(len(product.legs), 10)
        np.testing.assert_allclose(product.dates, np.linspace(0.0, 1.0, 11), atol=1e-15)
        self.assertEqual(config.engine(), EngineSettings(2001, None, "bisect"))

    def test_european_yaml(self):
        config = self.load("european-call.yaml")
        product = config.product()
        self.assertEqual([leg.t for leg in product.legs], [0.25, 0.5, 0.75, 1.0])
        self.assertEqual(product.terminal, TerminalPayoff(1.0, -105.0))
        self.assertEqual(product.legs[-1].k_minus, 105.0)
        self.assertEqual(config.engine().n, 4001)
        self.assertEqual(config.curves().dividend_yield.values.tolist(), [0.02])

    def test_market_echo(self):
        config = self.load("autocallable.toml")
        echo = config.market_echo()
        self.assertEqual(echo["volatility"], {"percent": 20.0, "decimal": [0.2]})
        self.assertEqual(echo["rate"]["percent"][0], [0.2, 2.0])
        self.assertEqual(len(echo["rate"]["decimal"]), 5)


class TestOverrides(unittest.TestCase):
    def test_keyval(self):
        config = RunConfig.from_file(
            subquad.example("bermudan-put.toml"),
            overrides=["engine.n=4001", "engine.method=secant", "product.strike=90"],
            user_defaults=False,
        )
        self.assertEqual(config.engine(), EngineSettings(4001, None, "secant"))
        self.assertEqual(config.product().strike, 90.0)

    def test_bad_keyval(self):
        config = RunConfig(user_defaults=False)
        for keyval in ("engine.n", "=3"):
            with self.assertRaises(ConfigError):
                config.update_keyval(keyval)

    def test_dump_and_reload(self):
        config = RunConfig.from_file(
            subquad.example("double-barrier.toml"), user_defaults=False
        )
        with tempfile.TemporaryDirectory() as tmpdir:
            for name in ("run.json", "run.yaml"):
                path = os.path.join(tmpdir, name)
                config.dump(path)
                again = RunConfig.from_file(path, user_defaults=False)
                self.assertEqual(again.to_dict(), config.to_dict())
                self.assertEqual(again.product(), config.product())
            with self.assertRaises(ConfigError):
                config.dump(os.path.join(tmpdir, "run.toml"))

    def test_load_errors(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            bad = os.path.join(tmpdir, "bad.toml")
            with open(bad, "w") as fp:
                fp.write("[market\n")
            with self.assertRaises(ConfigError):
                RunConfig.from_file(bad, user_defaults=False)
            listing = os.path.join(tmpdir, "list.json")
            with open(listing, "w") as fp:
                fp.write("[1, 2]")
            with self.assertRaises(ConfigError):
                RunConfig.from_file(listing, user_defaults=False)
            with self.assertRaises(ConfigError):
                RunConfig.from_file(os.path.join(tmpdir, "run.ini"), user_defaults=False)


class TestValidation(unittest.TestCase):
    def assertConfigError(self, func, text=None):
        with self.assertRaises(ConfigError) as ctx:
            func()
        if text:
            self.assertIn(text, str(ctx.exception))

    def test_market(self):
        product = {"style": "bermudan", "strike": 100.0, "maturity": 1.0}
        config = run_config(product, market={"rate": 5.0, "volatility": 20.0})
        self.assertConfigError(lambda: config.spot, "market.spot")
        config = run_config(product, market={"spot": 100.0, "volatility": 20.0})
        self.assertConfigError(config.curves, "market.rate")
        market = {"spot": 100.0, "rate": 5.0, "volatility": -20.0}
        self.assertConfigError(run_config(product, market=market).curves)
        market = {"spot": 100.0, "rate": [[1.0]], "volatility": 20.0}
        self.assertConfigError(run_config(product, market=market).curves, "pairs")
        market = {"spot": 100.0, "rate": True, "volatility": 20.0}
        self.assertConfigError(run_config(product, market=market).curves, "number")
        market = {"spot": 100.0, "rate": 5.0, "volatility": 20.0, "vol": 1}
        self.assertConfigError(run_config(product, market=market).curves, "vol")

    def test_product(self):
        self.assertConfigError(run_config({"style": "lookback"}).product, "style")
        product = {"style": "bermudan", "strike": 100.0, "maturity": 1.0, "lower": []}
        self.assertConfigError(run_config(product).product, "lower")
        product = {"style": "autocallable", "dates": [0.5, 1.0], "barriers": [110.0]}
        self.assertConfigError(run_config(product).product, "product.barriers")
        product = {
            "style": "autocallable",
            "dates": [1.0],
            "barriers": [110.0],
            "coupons": [1.0],
            "coupon-rate": 4.0,
        }
        self.assertConfigError(run_config(product).product, "coupon")
        product = {"style": "bermudan", "strike": 100.0, "maturity": 1.0}
        market = {"spot": 100.0, "t0": 2.0, "rate": 5.0, "volatility": 20.0}
        self.assertConfigError(run_config(product, market=market).product, "maturity")

    def test_engine(self):
        product = {"style": "bermudan", "strike": 100.0, "maturity": 1.0}
        config = run_config(product, engine={"n": 4})
        self.assertConfigError(config.engine, "engine.n")
        config = run_config(product, engine={"method": "newton"})
        self.assertConfigError(config.engine, "engine.method")
        config = run_config(product, engine={"log-c": 0.0})
        self.assertConfigError(config.engine, "engine.log-c")
        config = run_config(product, engine={"grid": 3})
        self.assertConfigError(config.engine, "grid")
        config = run_config(product, mc={"pairs": 0})
        self.assertConfigError(config.mc, "mc.pairs")
        self.assertEqual(run_config(product, mc={"pairs": 1}).mc().pairs, 1)
        config = run_config(product, output={"format": "xml"})
        self.assertConfigError(config.output_format, "output.format")


class TestSection(unittest.TestCase):
    def test_numbers(self):
        section = Section({"lower": [1.0, "none", None, "INF", 2]}, "product")
        self.assertEqual(
            section.numbers("lower", allow_none=True), [1.0, None, None, None, 2.0]
        )
        with self.assertRaises(ConfigError):
            section.numbers("lower")
        with self.assertRaises(ConfigError):
            section.numbers("lower", length=4, allow_none=True)
        self.assertIsNone(section.numbers("upper", None))

    def test_dates(self):
        section = Section({"maturity": 2.0, "observations": 4}, "product")
        self.assertEqual(section.dates(0.0), [0.5, 1.0, 1.5, 2.0])
        self.assertEqual(section.dates(1.0), [1.25, 1.5, 1.75, 2.0])
        self.assertEqual(Section({"maturity": 1.0}, "product").dates(0.0), [1.0])
        with self.assertRaises(ConfigError):
            Section({"dates": []}, "product").dates(0.0)

    def test_must_be_table(self):
        with self.assertRaises(ConfigError):
            Section([1, 2], "market")
        with self.assertRaises(ConfigError) as ctx:
            Section({}, "market").get("spot")
        self.assertIn("market.spot: missing", str(ctx.exception))


class TestPlugins(unittest.TestCase):
    def test_styles(self):
        plugins = ProductBuilders().plugins()
        self.assertEqual(
            set(plugins),
            {"autocallable", "barrier", "bermudan", "custom", "european", "touch"},
        )
        self.assertTrue(all(isinstance(text, str) and text for text in plugins.values()))

    def test_knock_in(self):
        product = {
            "style": "barrier",
            "knock": "in",
            "payoff": "call",
            "strike": 100.0,
            "dates": [0.5, 1.0],
            "upper": [130.0, 130.0],
        }
        built = run_config(product).product()
        self.assertIsInstance(built, KnockIn)
        self.assertEqual(built.knock_out.legs[0].k_plus, 130.0)
        self.assertIsNone(built.vanilla.legs[0].k_plus)

    def test_touch(self):
        product = {
            "style": "touch",
            "kind": "no-touch",
            "direction": "down",
            "dates": [0.5, 1.0],
            "barriers": [80.0, 85.0],
            "cash": 10.0,
        }
        built = run_config(product).product()
        self.assertEqual(built.name, "no-touch-down")
        self.assertEqual([leg.k_minus for leg in built.legs], [80.0, 85.0])
        self.assertEqual(built.terminal, TerminalPayoff(0.0, 10.0))

    def test_custom(self):
        product = {
            "style": "custom",
            "legs": [
                {"t": 0.5, "k-plus": 120.0, "b-plus": 5.0},
                {"t": 1.0, "k-minus": 80.0, "k-plus": 120.0},
            ],
            "terminal": {"b": 1.0},
        }
        built = run_config(product).product()
        self.assertEqual(built.legs[0].k_plus, 120.0)
        self.assertEqual(built.legs[0].b_plus, 5.0)
        self.assertFalse(built.legs[0].has_lower)
        self.assertEqual(built.legs[1].k_minus, 80.0)
        self.assertEqual(built.terminal, TerminalPayoff(0.0, 1.0))
        product["legs"][0]["k_plus"] = 1.0
        with self.assertRaises(ConfigError):
            run_config(product).product()

    def test_base_plugin_methods_raise(self):
        class Partial(ProductBuilderPlugin):
            def describe(self):
                return super().describe()

            def build(self, section, t0, s0):
                return super().build(section, t0, s0)

        plugin = Partial()
        with self.assertRaises(NotImplementedError):
            plugin.describe()
        with self.assertRaises(NotImplementedError):
            plugin.build(Section({}, "product"), 0.0, 100.0)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
