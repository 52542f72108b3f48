###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import logging
from dataclasses import dataclass

from quadprice.cli.base import PricingCmd
from quadprice.engine import price, truncation_half_width
from quadprice.market import reduce_curves
from quadprice.util import OutputFormat
from quadprice.validation import richardson_extrapolate

LOGGER = logging.getLogger(__name__)

GREEK_FORMAT = OutputFormat(
    "{name:<6} {value:>20.12g} {coarse:>20.12g} {fine:>20.12g} {consistency:>10.2e}",
    headings={
        "name": "GREEK",
        "value": "EXTRAPOLATED",
        "coarse": "BUMP",
        "fine": "HALF-BUMP",
        "consistency": "REL-DIFF",
    },
)


@dataclass(frozen=True)
class Greek:
    name: str
    coarse: float
    fine: float

    @property
    def value(self):
        return richardson_extrapolate([self.coarse, self.fine], order=2)

    @property
    def consistency(self):
        """Relative difference of the two bump sizes"""
        scale = max(abs(self.fine), 1e-300)
        return abs(self.coarse - self.fine) / scale

    def to_dict(self):
        return {
            "value": self.value,
            "bump": self.coarse,
            "half_bump": self.fine,
            "consistency": self.consistency,
        }


def bump_greeks(
    product, curves, n, spot_bump=0.01, vol_bump=0.01, log_c=None, method="bisect"
):
    """Delta, gamma and vega by central differences of the engine price

    Spot is bumped relative to S0 and volatility by an absolute shift of
    the whole curve. Each difference is taken with the bump and half the
    bump and the two are Richardson-extrapolated. The grid half-width is
    held fixed at its unbumped value.

    Returns:
        (base price, list of Greek)
    """
    if log_c is None:
        log_c = truncation_half_width(reduce_curves(curves, product.dates))

    def value(s0, market):
        return price(product.with_spot(s0), market, n, log_c=log_c, method=method).value

    s0 = product.s0
    base = value(s0, curves)
    delta, gamma, vega = [], [], []
    for scale in (1.0, 0.5):
        ds = spot_bump * scale * s0
        up, down = value(s0 + ds, curves), value(s0 - ds, curves)
        delta.append((up - down) / (2.0 * ds))
        gamma.append((up - 2.0 * base + down) / (ds * ds))
        dv = vol_bump * scale
        vol_up = value(s0, curves.with_volatility_shift(dv))
        vol_down = value(s0, curves.with_volatility_shift(-dv))
        vega.append((vol_up - vol_down) / (2.0 * dv))
        LOGGER.debug(
            "bump scale %g: delta=%.10g gamma=%.10g vega=%.10g",
            scale,
            delta[-1],
            gamma[-1],
            vega[-1],
        )
    return base, [
        Greek("delta", *delta),
        Greek("gamma", *gamma),
        Greek("vega", *vega),
    ]


class GreeksCmd(PricingCmd):
    name = "greeks"
    help = "Delta, gamma and vega by bump and reprice"

    overrides = PricingCmd.overrides + (
        ("greeks.spot-bump", "spot_bump"),
        ("greeks.vol-bump", "vol_bump"),
    )

    def add_options(self, parser):
        parser.add_argument(
            "--bump",
            dest="spot_bump",
            type=float,
            metavar="FRACTION",
            help="Relative spot bump (default: 0.01)",
        )
        parser.add_argument(
            "--vol-bump",
            type=float,
            metavar="SHIFT",
            help="Absolute volatility shift as a decimal (default: 0.01)",
        )

    def main(self, args):
        config = self.load_config(args)
        engine = config.engine()
        spot_bump, vol_bump = config.greeks()
        base, greeks = bump_greeks(
            config.product(),
            config.curves(),
            engine.n,
            spot_bump=spot_bump,
            vol_bump=vol_bump,
            log_c=engine.log_c,
            method=engine.method,
        )
        report = {"price": base, "N": engine.n}
        report.update({greek.name: greek.to_dict() for greek in greeks})
        self.emit(args, config, report)

    def _rows(self, report):
        return [
            {
                "name": name,
                "value": report[name]["value"],
                "coarse": report[name]["bump"],
                "fine": report[name]["half_bump"],
                "consistency": report[name]["consistency"],
            }
            for name in ("delta", "gamma", "vega")
        ]

    def format_text(self, report):
        lines = [f"price       {report['price']:.12g}", "", GREEK_FORMAT.header()]
        lines.extend(GREEK_FORMAT.format(row) for row in self._rows(report))
        return "\n".join(lines)

    def csv_table(self, report):
        header = ["greek", "value", "bump", "half_bump", "consistency"]
        rows = [
            [r["name"], r["value"], r["coarse"], r["fine"], r["consistency"]]
            for r in self._rows(report)
        ]
        return header, rows


# vi: ts=4 sw=4 expandtab
