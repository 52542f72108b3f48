###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.builder import ProductBuilderPlugin
from quadprice.product import ObservationLeg, ProductSchedule, TerminalPayoff

LEG_KEYS = ("t", "k-minus", "k-plus", "a-minus", "b-minus", "a-plus", "b-plus")


class ProductBuilder(ProductBuilderPlugin):
    """Explicit list of observation legs

    Each entry of ``legs`` is a table with ``t`` and any of the levels
    and coefficients; ``terminal`` holds ``a`` and ``b``.
    """

    keys = ("legs", "terminal")

    def describe(self):
        return "user-defined legs and terminal payoff"

    def build(self, section, t0, s0):
        legs = []
        for leg in section.list_of_tables("legs"):
            leg.check_keys(LEG_KEYS)
            legs.append(
                ObservationLeg(
                    t=leg.number("t"),
                    k_minus=leg.number("k-minus", 0.0),
                    k_plus=leg.number("k-plus", None, positive=True),
                    a_minus=leg.number("a-minus", 0.0),
                    b_minus=leg.number("b-minus", 0.0),
                    a_plus=leg.number("a-plus", 0.0),
                    b_plus=leg.number("b-plus", 0.0),
                )
            )
        terminal = section.table("terminal", {})
        terminal.check_keys(("a", "b"))
        return ProductSchedule(
            legs,
            TerminalPayoff(terminal.number("a", 0.0), terminal.number("b", 0.0)),
            t0=t0,
            s0=s0,
        )
