###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Plugin-based construction of products from configuration tables

Builders are loaded from the ``quadprice.products`` namespace; each
module there defines a ``ProductBuilder`` class and the module name is
the ``product.style`` it handles.
"""

import math
from abc import ABC, abstractmethod

from quadprice.importer import import_plugins
from quadprice.util import ConfigError

__all__ = ["ProductBuilderPlugin", "ProductBuilders", "Section"]

_MISSING = object()

#  Spellings accepted for "no barrier" in lists (TOML has no null)
_NONE_WORDS = ("none", "inf", "infinity", "")


class Section:
    """Typed access to one configuration table

    Errors name the offending key by its dotted path, e.g.
    ``product.barriers``.
    """

    def __init__(self, data, path):
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: must be a table")
        self.data = data
        self.path = path

    def name(self, key):
        return f"{self.path}.{key}"

    def __contains__(self, key):
        return key in self.data

    def get(self, key, default=_MISSING):
        if key in self.data:
            return self.data[key]
        if default is _MISSING:
            raise ConfigError(f"{self.name(key)}: missing")
        return default

    def check_keys(self, allowed):
        unknown = sorted(set(self.data) - set(allowed))
        if unknown:
            raise ConfigError(f"{self.path}: unknown key(s): {', '.join(unknown)}")

    def to_number(self, key, value):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{self.name(key)}: expected a number, got {value!r}")
        if not math.isfinite(value):
            raise ConfigError(f"{self.name(key)}: must be finite")
        return float(value)

    def number(self, key, default=_MISSING, positive=False, percent=False):
        value = self.get(key, default)
        if value is None:
            return None
        value = self.to_number(key, value)
        if positive and value <= 0.0:
            raise ConfigError(f"{self.name(key)}: must be positive")
        return value / 100.0 if percent else value

    def integer(self, key, default=_MISSING, minimum=None):
        value = self.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{self.name(key)}: expected an integer, got {value!r}")
        if minimum is not None and value < minimum:
            raise ConfigError(f"{self.name(key)}: must be at least {minimum}")
        return value

    def choice(self, key, choices, default=_MISSING):
        value = self.get(key, default)
        if value not in choices:
            raise ConfigError(
                f"{self.name(key)}: must be one of {', '.join(map(str, choices))}"
            )
        return value

    def numbers(self, key, default=_MISSING, length=None, allow_none=False):
        values = self.get(key, default)
        if values is None:
            return None
        if not isinstance(values, list):
            raise ConfigError(f"{self.name(key)}: expected a list")
        if length is not None and len(values) != length:
            raise ConfigError(
                f"{self.name(key)}: expected {length} entries, got {len(values)}"
            )
        result = []
        for value in values:
            if allow_none and (
                value is None
                or (isinstance(value, str) and value.lower() in _NONE_WORDS)
            ):
                result.append(None)
            else:
                result.append(self.to_number(key, value))
        return result

    def dates(self, t0):
        """Observation dates from ``dates`` or ``maturity`` + ``observations``"""
        if "dates" in self.data:
            dates = self.numbers("dates")
            if not dates:
                raise ConfigError(f"{self.name('dates')}: at least one date required")
            return dates
        maturity = self.number("maturity", positive=True)
        count = self.integer("observations", 1, minimum=1)
        span = maturity - t0
        if span <= 0.0:
            raise ConfigError(f"{self.name('maturity')}: must be after market.t0")
        return [t0 + span * k / count for k in range(1, count)] + [maturity]

    def table(self, key, default=_MISSING):
        return Section(self.get(key, default), self.name(key))

    def list_of_tables(self, key):
        items = self.get(key)
        if not isinstance(items, list) or not items:
            raise ConfigError(f"{self.name(key)}: expected a non-empty list of tables")
        return [Section(item, f"{self.name(key)}[{i}]") for i, item in enumerate(items)]


class ProductBuilderPlugin(ABC):  # pragma: no cover
    """Abstract type for a plugin building products from config tables"""

    def __init__(self, *args):
        """Initialize a product builder plugin"""

    #  Keys the plugin accepts in the [product] table besides "style"
    keys = ()

    @abstractmethod
    def describe(self):
        """Return a short description of the product style"""
        raise NotImplementedError

    @abstractmethod
    def build(self, section, t0, s0):
        """Return a ProductSchedule (or KnockIn) for ``section``"""
        raise NotImplementedError


class ProductBuilders:
    """Product builder plugins keyed by style name"""

    def __init__(self, pluginpath=None):
        self.plugin_namespace = "quadprice.products"
        self.builders = {}
        for name, plugin in import_plugins(self.plugin_namespace, pluginpath).items():
            self.builders[name.replace("_", "-")] = plugin.ProductBuilder()

    def build(self, section, t0, s0):
        style = section.choice("style", sorted(self.builders))
        builder = self.builders[style]
        section.check_keys(("style",) + tuple(builder.keys))
        return builder.build(section, t0, s0)

    def plugins(self):
        """Get a dict of loaded builders by {style: description}"""
        return {name: x.describe() for name, x in self.builders.items()}
