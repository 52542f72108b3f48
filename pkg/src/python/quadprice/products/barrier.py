###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.builder import ProductBuilderPlugin
from quadprice.product import VanillaPayoff, make_barrier, make_knock_in


def payoff_from(section):
    """VanillaPayoff from ``payoff`` plus ``strike`` or ``cash``"""
    kind = section.choice("payoff", VanillaPayoff.kinds)
    if kind in ("call", "put"):
        return VanillaPayoff(kind, section.number("strike", positive=True))
    if kind == "cash":
        return VanillaPayoff(kind, section.number("cash"))
    return VanillaPayoff(kind)


class ProductBuilder(ProductBuilderPlugin):
    keys = (
        "dates",
        "maturity",
        "observations",
        "lower",
        "upper",
        "payoff",
        "strike",
        "cash",
        "knock",
    )

    def describe(self):
        return "single or double barrier option, knock-out or knock-in"

    def build(self, section, t0, s0):
        dates = section.dates(t0)
        lower = section.numbers("lower", None, length=len(dates), allow_none=True)
        upper = section.numbers("upper", None, length=len(dates), allow_none=True)
        payoff = payoff_from(section)
        if section.choice("knock", ("out", "in"), "out") == "in":
            return make_knock_in(dates, lower, upper, payoff, t0=t0, s0=s0)
        return make_barrier(dates, lower, upper, payoff, t0=t0, s0=s0)
