###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.builder import ProductBuilderPlugin
from quadprice.product import make_autocallable
from quadprice.util import ConfigError


class ProductBuilder(ProductBuilderPlugin):
    """Autocallable note

    Coupons are given either as cash amounts per date (``coupons``) or
    as a yearly percentage of the nominal accrued to each date
    (``coupon-rate``). The premium paid at maturity when the note was
    never called is a percentage of the nominal.
    """

    keys = (
        "dates",
        "maturity",
        "observations",
        "barriers",
        "coupons",
        "coupon-rate",
        "premium",
        "nominal",
        "direction",
    )

    def describe(self):
        return "autocallable note called at a barrier"

    def build(self, section, t0, s0):
        dates = section.dates(t0)
        nominal = section.number("nominal", 1.0, positive=True)
        barriers = section.numbers("barriers", length=len(dates))
        if "coupons" in section and "coupon-rate" in section:
            raise ConfigError("product: give only one of coupons and coupon-rate")
        if "coupons" in section:
            coupons = section.numbers("coupons", length=len(dates))
        else:
            rate = section.number("coupon-rate", percent=True)
            coupons = [nominal * rate * (t - t0) for t in dates]
        premium = nominal * section.number("premium", 0.0, percent=True)
        direction = section.choice("direction", ("up", "down"), "up")
        return make_autocallable(
            dates, barriers, coupons, premium, direction, t0=t0, s0=s0
        )
