#!/usr/bin/env python3

###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import contextlib
import io
import json
import math
import os
import subprocess
import sys
import tempfile
import unittest
from unittest import mock

import subquad
from pycotap import TAPTestRunner
from scipy.stats import norm

from quadprice.cli.greeks import Greek, bump_greeks
from quadprice.cli.main import create_parser, run
from quadprice.cli.mccheck import McCheckCmd
from quadprice.market import MarketCurves
from quadprice.product import VanillaPayoff, make_barrier
from quadprice.util import CheckFailed, ConfigError, OutputFormat
from quadprice.validation import McResult

NO_USER_DEFAULTS = {
    "XDG_CONFIG_HOME": os.path.join(subquad.script_dir, "no-such-config"),
    "XDG_CONFIG_DIRS": os.path.join(subquad.script_dir, "no-such-config"),
}


def quadprice(*args):
    """Run a subcommand in-process and return its standard output"""
    out = io.StringIO()
    with mock.patch.dict(os.environ, NO_USER_DEFAULTS), contextlib.redirect_stdout(out):
        run(list(args))
    return out.getvalue()


def quadprice_cmd(*args):
    """Run the quadprice command in a child process"""
    return subprocess.run(
        [sys.executable, subquad.quadprice_cmd, *args],
        env=subquad.child_env(),
        capture_output=True,
        text=True,
    )


class TestPrice(unittest.TestCase):
    european = subquad.example("european-call.yaml")
    bermudan = subquad.example("bermudan-put.toml")

    def test_json(self):
        report = json.loads(quadprice("price", "-c", self.european, "--format", "json"))
        self.assertEqual(set(report), {"price", "N", "logC", "runtime_ms", "diagnostics"})
        self.assertEqual(report["N"], 4001)
        self.assertEqual(report["diagnostics"]["market"]["rate"]["decimal"], [0.05])
        self.assertEqual(len(report["diagnostics"]["steps"]), 3)
        d1 = (math.log(100.0 / 105.0) + 0.05 - 0.02 + 0.02) / 0.2
        expected = 100.0 * math.exp(-0.02) * norm.cdf(d1) - 105.0 * math.exp(
            -0.05
        ) * norm.cdf(d1 - 0.2)
        self.assertAlmostEqual(report["price"], expected, delta=1e-8 * expected)

    def test_text_with_boundaries(self):
        lines = quadprice("price", "-c", self.bermudan).splitlines()
        self.assertTrue(lines[0].startswith("price"))
        columns = ["DATE", "T", "LEVEL", "ITER", "METHOD"]
        header = [line.split() for line in lines].index(columns)
        rows = lines[header + 1 :]
        self.assertEqual(len(rows), 9)
        self.assertEqual(rows[0].split()[0], "1")
        self.assertTrue(all(row.split()[-1] == "bisect" for row in rows))

    def test_csv_and_overrides(self):
        text = quadprice(
            "price", "-c", self.bermudan, "-n", "501", "--method", "secant", "--format", "csv"
        )
        header, row = text.splitlines()
        self.assertEqual(header, "price,N,logC,h,runtime_ms")
        self.assertEqual(row.split(",")[1], "501")
        text = quadprice(
            "price", "-c", self.bermudan, "--set", "engine.n=501", "--format", "json"
        )
        self.assertEqual(json.loads(text)["N"], 501)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "out.json")
            stdout = quadprice(
                "price", "-c", self.european, "--format", "json", "-o", path
            )
            self.assertEqual(stdout, "")
            with open(path) as fp:
                self.assertEqual(json.load(fp)["N"], 4001)

    def test_config_required(self):
        with self.assertRaises(ConfigError):
            quadprice("price")
        with self.assertRaisesRegex(ConfigError, "^--config: .*missing.toml"):
            quadprice("price", "-c", os.path.join(subquad.script_dir, "missing.toml"))
        with self.assertRaises(ConfigError):
            quadprice("price", "-c", self.bermudan, "--set", "engine.n=4")


class TestOtherCommands(unittest.TestCase):
    bermudan = subquad.example("bermudan-put.toml")
    barrier = subquad.example("double-barrier.toml")

    def test_converge_csv(self):
        text = quadprice(
            "converge",
            "-c",
            self.bermudan,
            "--n-list",
            "501,1001",
            "--reference-n",
            "4001",
            "--format",
            "csv",
        )
        lines = text.splitlines()
        self.assertEqual(lines[0], "N,value,rel_error")
        self.assertEqual([line.split(",")[0] for line in lines[1:]], ["501", "1001"])
        for line in lines[1:]:
            self.assertLess(float(line.split(",")[2]), 1e-3)

    def test_converge_text(self):
        text = quadprice(
            "converge", "-c", self.bermudan, "--n-list", "501", "--reference-n", "1001"
        )
        self.assertIn("REL_ERROR", text.splitlines()[0])
        self.assertIn("reference   N=1001", text)
        self.assertIn("order       n/a", text)

    def test_converge_empty_list(self):
        with self.assertRaises(ConfigError):
            quadprice("converge", "-c", self.bermudan, "--n-list", "")

    def test_bound(self):
        report = json.loads(quadprice("bound", "-c", self.barrier, "--format", "json"))
        self.assertLessEqual(report["bound"], report["reference"])
        self.assertEqual(report["B"], 2600.0)
        text = quadprice("bound", "-c", self.barrier)
        self.assertTrue(text.startswith("A           1"))

    def test_greeks(self):
        report = json.loads(
            quadprice(
                "greeks", "-c", subquad.example("european-call.yaml"), "--format", "json"
            )
        )
        self.assertEqual(set(report), {"price", "N", "delta", "gamma", "vega"})
        self.assertEqual(
            set(report["delta"]), {"value", "bump", "half_bump", "consistency"}
        )
        self.assertGreater(report["delta"]["value"], 0.0)
        self.assertLess(report["delta"]["value"], 1.0)

    def test_mc_check_passes(self):
        report = json.loads(
            quadprice(
                "mc-check", "-c", self.bermudan, "--pairs", "20000", "--format", "json"
            )
        )
        self.assertEqual(report["pairs"], 20000)
        self.assertEqual(report["seed"], 1)
        self.assertLess(abs(report["z"]), 4.0)
        self.assertGreater(report["std_error"], 0.0)

    def test_mc_check_fails(self):
        far = McResult(estimate=100.0, std_error=0.01, n_pairs=10, seed=1, batches=1)
        with mock.patch("quadprice.cli.mccheck.mc_price", return_value=far):
            with self.assertRaises(CheckFailed):
                quadprice("mc-check", "-c", self.bermudan, "-n", "501")

    def test_mc_check_zero_std_error_is_valid_json(self):
        exact = McResult(estimate=100.0, std_error=0.0, n_pairs=10, seed=1, batches=1)
        out = io.StringIO()
        with mock.patch("quadprice.cli.mccheck.mc_price", return_value=exact):
            with mock.patch.dict(os.environ, NO_USER_DEFAULTS), contextlib.redirect_stdout(
                out
            ):
                with self.assertRaises(CheckFailed):
                    run(["mc-check", "-c", self.bermudan, "-n", "501", "--format", "json"])
        self.assertNotIn("Infinity", out.getvalue())
        report = json.loads(out.getvalue(), parse_constant=self.fail)
        self.assertIsNone(report["z"])
        self.assertEqual(report["std_error"], 0.0)
        self.assertIn("z           n/a", McCheckCmd().format_text(report))

    def test_parser(self):
        parser = create_parser()
        self.assertIn("autocallable", parser.epilog)
        args = parser.parse_args(["mc-check", "-c", "run.toml", "--seed", "9"])
        self.assertEqual(args.seed, 9)
        self.assertEqual(args.func.__self__.name, McCheckCmd.name)


class TestGreeks(unittest.TestCase):
    def test_european_against_closed_form(self):
        curves = MarketCurves.constant(0.05, 0.02, 0.2)
        product = make_barrier(
            [0.25, 0.5, 0.75, 1.0], None, None, VanillaPayoff("call", 105.0), s0=100.0
        )
        base, (delta, gamma, vega) = bump_greeks(product, curves, 4001)
        d1 = (math.log(100.0 / 105.0) + 0.05 - 0.02 + 0.02) / 0.2
        carry = math.exp(-0.02)
        self.assertGreater(base, 0.0)
        self.assertAlmostEqual(delta.value, carry * norm.cdf(d1), delta=1e-5)
        self.assertAlmostEqual(
            gamma.value, carry * norm.pdf(d1) / (100.0 * 0.2), delta=1e-4
        )
        self.assertAlmostEqual(vega.value, 100.0 * carry * norm.pdf(d1), delta=1e-3)
        self.assertLess(delta.consistency, 1e-3)

    def test_greek(self):
        greek = Greek("delta", 0.5, 0.6)
        self.assertAlmostEqual(greek.value, (4.0 * 0.6 - 0.5) / 3.0, places=15)
        self.assertAlmostEqual(greek.consistency, 0.1 / 0.6, places=15)


class TestCommand(unittest.TestCase):
    def test_price(self):
        proc = quadprice_cmd(
            "price", "-c", subquad.example("european-call.yaml"), "--format", "json"
        )
        self.assertEqual(proc.returncode, 0, proc.stderr)
        self.assertEqual(json.loads(proc.stdout)["N"], 4001)

    def test_help(self):
        proc = quadprice_cmd("--help")
        self.assertEqual(proc.returncode, 0)
        self.assertIn("Supported product styles:", proc.stdout)
        self.assertIn("bermudan", proc.stdout)

    def test_usage_errors(self):
        proc = quadprice_cmd("price")
        self.assertEqual(proc.returncode, 2)
        self.assertIn("--config", proc.stderr)
        proc = quadprice_cmd(
            "price", "-c", subquad.example("bermudan-put.toml"), "--set", "engine.n=4"
        )
        self.assertEqual(proc.returncode, 2)
        self.assertIn("engine.n", proc.stderr)
        proc = quadprice_cmd("price", "--format", "xml")
        self.assertEqual(proc.returncode, 2)

    def test_missing_config(self):
        proc = quadprice_cmd("price", "-c", os.path.join(subquad.script_dir, "missing.toml"))
        self.assertEqual(proc.returncode, 2, proc.stderr)
        self.assertIn("--config", proc.stderr)
        self.assertIn("No such file or directory", proc.stderr)

    def test_header_widths(self):
        fmt = OutputFormat(
            "{N:>8} {value:>12.4e}", headings={"N": "N", "value": "VALUE"}
        )
        self.assertEqual(fmt.header(), "       N        VALUE")


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
