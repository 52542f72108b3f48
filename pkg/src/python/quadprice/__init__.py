###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""
quadprice: quadrature pricing of discretely monitored options under
Black-Scholes dynamics with piecewise constant parameters
"""

from quadprice.engine import PricingResult, price
from quadprice.market import MarketCurves, PiecewiseConstant
from quadprice.product import (
    ExerciseStyle,
    KnockIn,
    ObservationLeg,
    ProductSchedule,
    TerminalPayoff,
    VanillaPayoff,
    make_autocallable,
    make_barrier,
    make_bermudan,
    make_european,
    make_knock_in,
    make_touch,
)

__all__ = [
    "ExerciseStyle",
    "KnockIn",
    "MarketCurves",
    "ObservationLeg",
    "PiecewiseConstant",
    "PricingResult",
    "ProductSchedule",
    "TerminalPayoff",
    "VanillaPayoff",
    "make_autocallable",
    "make_barrier",
    "make_bermudan",
    "make_european",
    "make_knock_in",
    "make_touch",
    "price",
]
