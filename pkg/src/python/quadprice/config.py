###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Run configuration for the quadprice command

A run configuration is built up, in increasing precedence, from the
built-in defaults, user defaults found in the XDG config path
(``quadprice.toml``, ``.json`` or ``.yaml``), a run file given with
``--config`` and ``--set KEY=VAL`` overrides.

Rates, yields and volatilities in the ``[market]`` table are given in
percent. Each is either a number or a list of ``[until, percent]``
pairs with segments starting at ``market.t0``.
"""

import copy
import json
import logging
from dataclasses import dataclass
from pathlib import PurePosixPath

import yaml

from quadprice.builder import ProductBuilders, Section
from quadprice.market import MarketCurves, PiecewiseConstant
from quadprice.util import (
    ConfigError,
    UtilConfig,
    dict_merge,
    load_file,
    parse_keyval,
    set_treedict,
)

LOGGER = logging.getLogger(__name__)

__all__ = ["DEFAULTS", "EngineSettings", "McSettings", "RunConfig"]

DEFAULTS = {
    "market": {"t0": 0.0, "yield": 0.0},
    "engine": {"n": 2001, "method": "bisect"},
    "mc": {"pairs": 1000000, "seed": 1, "batch-size": 50000, "jobs": 1},
    "convergence": {"n-list": [501, 1001, 2001, 4001], "reference-n": 70001},
    "greeks": {"spot-bump": 0.01, "vol-bump": 0.01},
    "output": {"format": "text"},
}

MARKET_KEYS = ("spot", "t0", "rate", "yield", "volatility")
OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class EngineSettings:
    n: int
    log_c: object
    method: str


@dataclass(frozen=True)
class McSettings:
    pairs: int
    seed: int
    batch_size: int
    jobs: int


def _curve(section, key):
    value = section.get(key)
    name = section.name(key)
    if isinstance(value, list):
        t0 = section.number("t0")
        segments = []
        for item in value:
            if not isinstance(item, list) or len(item) != 2:
                raise ConfigError(f"{name}: expected [until, percent] pairs")
            until, percent = (section.to_number(key, x) for x in item)
            segments.append((until, percent / 100.0))
        return PiecewiseConstant.from_segments(t0, segments, name=name)
    return PiecewiseConstant.constant(section.number(key) / 100.0, name=name)


class RunConfig:
    """Merged run configuration with typed accessors

    Args:
        initial (dict, optional): configuration merged over the defaults
        user_defaults (bool): also merge the XDG user defaults
    """

    def __init__(self, initial=None, user_defaults=True):
        self.config = copy.deepcopy(DEFAULTS)
        if user_defaults:
            dict_merge(self.config, UtilConfig("quadprice").load().dict)
        if initial:
            dict_merge(self.config, copy.deepcopy(initial))
        self._builders = None

    @classmethod
    def from_file(cls, path, overrides=None, user_defaults=True):
        config = cls(user_defaults=user_defaults).update_file(path)
        for keyval in overrides or []:
            config.update_keyval(keyval)
        return config

    def update_file(self, path):
        LOGGER.debug("loading run configuration %s", path)
        dict_merge(self.config, load_file(path))
        return self

    def update_keyval(self, keyval):
        key, value = parse_keyval(keyval)
        set_treedict(self.config, key, value)
        return self

    def set(self, key, value):
        set_treedict(self.config, key, value)
        return self

    def update(self, conf):
        dict_merge(self.config, copy.deepcopy(conf))
        return self

    def to_dict(self):
        return copy.deepcopy(self.config)

    def dump(self, path):
        """Write the merged configuration as JSON or YAML"""
        suffix = PurePosixPath(path).suffix
        if suffix not in (".json", ".yaml", ".yml"):
            raise ConfigError(f"{path}: can only write .json or .yaml")
        with open(path, "w") as ofile:
            if suffix == ".json":
                json.dump(self.config, ofile, indent=2, sort_keys=True)
            else:
                yaml.safe_dump(self.config, ofile, sort_keys=True)

    def section(self, name):
        return Section(self.config.get(name, {}), name)

    @property
    def builders(self):
        if self._builders is None:
            self._builders = ProductBuilders()
        return self._builders

    @property
    def spot(self):
        return self.section("market").number("spot", positive=True)

    @property
    def t0(self):
        return self.section("market").number("t0")

    def curves(self):
        market = self.section("market")
        market.check_keys(MARKET_KEYS)
        return MarketCurves(
            rate=_curve(market, "rate"),
            dividend_yield=_curve(market, "yield"),
            volatility=_curve(market, "volatility"),
        )

    def product(self):
        return self.builders.build(self.section("product"), self.t0, self.spot)

    def engine(self):
        engine = self.section("engine")
        engine.check_keys(("n", "log-c", "method"))
        return EngineSettings(
            n=engine.integer("n", minimum=5),
            log_c=engine.number("log-c", None, positive=True),
            method=engine.choice("method", ("bisect", "secant")),
        )

    def mc(self):
        mc = self.section("mc")
        mc.check_keys(("pairs", "seed", "batch-size", "jobs"))
        return McSettings(
            pairs=mc.integer("pairs", minimum=1),
            seed=mc.integer("seed", minimum=0),
            batch_size=mc.integer("batch-size", minimum=1),
            jobs=mc.integer("jobs", minimum=1),
        )

    def convergence(self):
        conv = self.section("convergence")
        n_list = [int(n) for n in conv.numbers("n-list")]
        return n_list, conv.integer("reference-n", minimum=5)

    def greeks(self):
        greeks = self.section("greeks")
        return (
            greeks.number("spot-bump", positive=True),
            greeks.number("vol-bump", positive=True),
        )

    def output_format(self):
        return self.section("output").choice("format", OUTPUT_FORMATS)

    def market_echo(self):
        """Market inputs as given (percent) and as used (decimal)"""
        market = self.section("market")
        result = {}
        for key in ("rate", "yield", "volatility"):
            result[key] = {
                "percent": market.get(key),
                "decimal": _curve(market, key).values.tolist(),
            }
        return result


# vi: ts=4 sw=4 expandtab
