###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.builder import ProductBuilderPlugin
from quadprice.product import make_barrier
from quadprice.products.barrier import payoff_from


class ProductBuilder(ProductBuilderPlugin):
    """European payoff, optionally observed on intermediate dates

    Extra observation dates do not change the value; they only make the
    engine run its quadrature steps.
    """

    keys = ("dates", "maturity", "observations", "payoff", "strike", "cash")

    def describe(self):
        return "European call, put, cash or asset payoff"

    def build(self, section, t0, s0):
        dates = section.dates(t0)
        return make_barrier(dates, None, None, payoff_from(section), t0=t0, s0=s0)
