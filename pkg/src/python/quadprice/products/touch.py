###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.builder import ProductBuilderPlugin
from quadprice.product import make_touch


class ProductBuilder(ProductBuilderPlugin):
    keys = ("dates", "maturity", "observations", "barriers", "cash", "direction", "kind")

    def describe(self):
        return "one-touch or no-touch digital on a discretely observed barrier"

    def build(self, section, t0, s0):
        dates = section.dates(t0)
        return make_touch(
            dates,
            section.numbers("barriers", length=len(dates)),
            section.number("cash", 1.0),
            direction=section.choice("direction", ("up", "down"), "up"),
            kind=section.choice("kind", ("one-touch", "no-touch"), "one-touch"),
            t0=t0,
            s0=s0,
        )
