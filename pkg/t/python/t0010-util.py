#!/usr/bin/env python3

###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import argparse
import logging
import os
import tempfile
import unittest
from types import SimpleNamespace
from unittest import mock

import subquad  # noqa: F401 - To set up PYTHONPATH
from pycotap import TAPTestRunner

from quadprice.cli.base import int_list
from quadprice.util import (
    CheckFailed,
    CLIMain,
    ConfigError,
    DomainError,
    NumericError,
    OutputFormat,
    UtilConfig,
    dict_merge,
    exit_code_for,
    help_formatter,
    load_file,
    parse_keyval,
    set_treedict,
)


class TestOutputFormat(unittest.TestCase):
    headings = {"date": "DATE", "level": "LEVEL", "method": "METHOD"}

    def test_header(self):
        fmt = OutputFormat("{date:>5} {level:<12.6g} {method}", self.headings)
        self.assertEqual(fmt.fields, ["date", "level", "method"])
        self.assertEqual(fmt.header_format(), "{date:>5} {level:<12} {method}")
        self.assertEqual(fmt.header(), " DATE LEVEL        METHOD")

    def test_format(self):
        fmt = OutputFormat("{date:>5} {level:.3f}", self.headings)
        self.assertEqual(fmt.format({"date": 3, "level": 1.23456}), "    3 1.235")
        self.assertEqual(fmt.format(SimpleNamespace(date=1, level=2.0)), "    1 2.000")

    def test_unknown_field(self):
        with self.assertRaises(ValueError):
            OutputFormat("{price}", self.headings)


class TestTreedict(unittest.TestCase):
    def test_set_treedict(self):
        conf = {"engine": {"n": 2001}}
        set_treedict(conf, "engine.method", "secant")
        set_treedict(conf, "mc.pairs", 10)
        self.assertEqual(
            conf, {"engine": {"n": 2001, "method": "secant"}, "mc": {"pairs": 10}}
        )

    def test_parse_keyval(self):
        self.assertEqual(parse_keyval("engine.n=4001"), ("engine.n", 4001))
        self.assertEqual(parse_keyval("output.format=json"), ("output.format", "json"))
        self.assertEqual(parse_keyval("product.lower=[1, null]"), ("product.lower", [1, None]))
        self.assertEqual(parse_keyval("a=b=c"), ("a", "b=c"))
        with self.assertRaises(ConfigError):
            parse_keyval("engine.n")

    def test_dict_merge(self):
        src = {"market": {"spot": 100.0, "rate": 5.0}, "engine": {"n": 2001}}
        dict_merge(src, {"market": {"rate": [[1.0, 4.0]]}, "mc": {"seed": 3}})
        self.assertEqual(src["market"], {"spot": 100.0, "rate": [[1.0, 4.0]]})
        self.assertEqual(src["mc"], {"seed": 3})
        self.assertEqual(dict_merge(None, {"a": 1}), {"a": 1})

    def test_int_list(self):
        self.assertEqual(int_list("501, 1001,2001"), [501, 1001, 2001])
        self.assertEqual(int_list(""), [])
        with self.assertRaises(ConfigError):
            int_list("501,big")


class TestFiles(unittest.TestCase):
    def write(self, tmpdir, name, text):
        path = os.path.join(tmpdir, name)
        with open(path, "w") as fp:
            fp.write(text)
        return path

    def test_load_formats(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            expected = {"engine": {"n": 501}}
            for name, text in (
                ("a.toml", "[engine]\nn = 501\n"),
                ("a.json", '{"engine": {"n": 501}}'),
                ("a.yaml", "engine:\n  n: 501\n"),
                ("a.yml", "engine: {n: 501}\n"),
            ):
                self.assertEqual(load_file(self.write(tmpdir, name, text)), expected)
            self.assertEqual(load_file(self.write(tmpdir, "empty.yaml", "")), {})

    def test_load_errors(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            with self.assertRaisesRegex(ConfigError, "No such file or directory"):
                load_file(os.path.join(tmpdir, "missing.toml"))
            with self.assertRaises(ConfigError):
                load_file(self.write(tmpdir, "a.cfg", "n = 1"))
            with self.assertRaises(ConfigError):
                load_file(self.write(tmpdir, "a.json", "{"))
            with self.assertRaises(ConfigError):
                load_file(self.write(tmpdir, "a.yaml", "- 1\n- 2\n"))

    def test_util_config_precedence(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            system = os.path.join(tmpdir, "system")
            user = os.path.join(tmpdir, "user")
            for base, n in ((system, 501), (user, 1001)):
                os.makedirs(os.path.join(base, "quadprice"))
                self.write(
                    os.path.join(base, "quadprice"),
                    "quadprice.toml",
                    f"[engine]\nn = {n}\n[output]\nformat = 'csv'\n",
                )
            self.write(os.path.join(system, "quadprice"), "quadprice.txt", "ignored")
            env = {"XDG_CONFIG_HOME": user, "XDG_CONFIG_DIRS": system}
            with mock.patch.dict(os.environ, env):
                config = UtilConfig("quadprice", subcommand="engine").load()
            self.assertEqual(config.dict["engine"], {"n": 1001})
            self.assertEqual(config.n, 1001)
            with self.assertRaises(AttributeError):
                config.method


class TestErrors(unittest.TestCase):
    def test_exit_codes(self):
        self.assertEqual(exit_code_for(ConfigError("x")), 2)
        self.assertEqual(exit_code_for(DomainError("x")), 2)
        self.assertEqual(exit_code_for(NumericError("x")), 3)
        self.assertEqual(exit_code_for(CheckFailed("x")), 1)
        self.assertEqual(exit_code_for(RuntimeError("x")), 1)

    def run_main(self, func):
        logger = logging.getLogger("quadprice.test")
        with self.assertLogs(logger, level="ERROR") as logs:
            with self.assertRaises(SystemExit) as ctx:
                CLIMain(logger)(func)
        return ctx.exception.code, logs.output

    def test_climain(self):
        def bad_config():
            raise ConfigError("engine.n: must be at least 5")

        code, output = self.run_main(bad_config)
        self.assertEqual(code, 2)
        self.assertIn("engine.n: must be at least 5", output[0])

        def missing_file():
            open("/no/such/run.toml")

        code, output = self.run_main(missing_file)
        self.assertEqual(code, 1)
        self.assertIn("'/no/such/run.toml'", output[0])

    def test_climain_passes_exit_status(self):
        def usage():
            raise SystemExit(2)

        with self.assertRaises(SystemExit) as ctx:
            CLIMain()(usage)
        self.assertEqual(ctx.exception.code, 2)

        with self.assertRaises(SystemExit) as ctx:
            CLIMain()(lambda: None)
        self.assertEqual(ctx.exception.code, 0)


class TestHelpFormatter(unittest.TestCase):
    def test_invocation(self):
        parser = argparse.ArgumentParser(prog="quadprice", formatter_class=help_formatter())
        parser.add_argument("-n", "--n", type=int, metavar="N")
        parser.add_argument("--format", metavar="FORMAT")
        parser.add_argument("-v", "--verbose", action="store_true")
        text = parser.format_help()
        self.assertIn("-n, --n=N", text)
        self.assertIn("    --format=FORMAT", text)
        self.assertIn("-v, --verbose", text)


if __name__ == "__main__":
    unittest.main(testRunner=TAPTestRunner())
