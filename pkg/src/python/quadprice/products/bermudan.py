###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.builder import ProductBuilderPlugin
from quadprice.product import make_bermudan


class ProductBuilder(ProductBuilderPlugin):
    keys = ("dates", "maturity", "observations", "strike", "payoff")

    def describe(self):
        return "Bermudan call or put exercisable on every date"

    def build(self, section, t0, s0):
        return make_bermudan(
            section.dates(t0),
            section.number("strike", positive=True),
            section.choice("payoff", ("call", "put"), "put"),
            t0=t0,
            s0=s0,
        )
