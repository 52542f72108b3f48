###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import logging

from quadprice.cli.base import PricingCmd
from quadprice.engine import price
from quadprice.util import OutputFormat

LOGGER = logging.getLogger(__name__)

BOUNDARY_FORMAT = OutputFormat(
    "{date:>5} {t:>10.6g} {level:>18} {iterations:>6} {method}",
    headings={
        "date": "DATE",
        "t": "T",
        "level": "LEVEL",
        "iterations": "ITER",
        "method": "METHOD",
    },
)


def run_engine(config):
    """Price the configured product with the configured engine settings"""
    engine = config.engine()
    product = config.product()
    curves = config.curves()
    LOGGER.debug("pricing %s with N=%d", getattr(product, "name", "product"), engine.n)
    result = price(
        product, curves, engine.n, log_c=engine.log_c, method=engine.method
    )
    return product, curves, result


class PriceCmd(PricingCmd):
    name = "price"
    help = "Price a product by quadrature"

    overrides = PricingCmd.overrides + (("engine.method", "method"),)

    def add_options(self, parser):
        parser.add_argument(
            "--method",
            choices=["bisect", "secant"],
            help="Root finder for Bermudan exercise levels",
        )

    def main(self, args):
        config = self.load_config(args)
        _, _, result = run_engine(config)
        diagnostics = result.diagnostics()
        diagnostics["market"] = config.market_echo()
        report = {
            "price": result.value,
            "N": result.n,
            "logC": result.log_c,
            "runtime_ms": result.runtime * 1e3,
            "diagnostics": diagnostics,
        }
        self.emit(args, config, report)

    def format_text(self, report):
        diagnostics = report["diagnostics"]
        lines = [
            f"price       {report['price']:.12g}",
            f"N           {report['N']}",
            f"logC        {report['logC']:.6g}",
            f"h           {diagnostics['h']:.6g}",
            f"runtime_ms  {report['runtime_ms']:.3f}",
        ]
        for key, value in diagnostics.get("components", {}).items():
            lines.append(f"{key:<11} {value:.12g}")
        boundaries = [
            {
                "date": step["date"],
                "t": step["t"],
                "level": "none"
                if step["boundary"]["level"] is None
                else f"{step['boundary']['level']:.10g}",
                "iterations": step["boundary"]["iterations"],
                "method": step["boundary"]["method"],
            }
            for step in diagnostics["steps"]
            if "boundary" in step
        ]
        if boundaries:
            lines.append("")
            lines.append(BOUNDARY_FORMAT.header())
            lines.extend(BOUNDARY_FORMAT.format(item) for item in boundaries)
        return "\n".join(lines)

    def csv_table(self, report):
        header = ["price", "N", "logC", "h", "runtime_ms"]
        row = [
            report["price"],
            report["N"],
            report["logC"],
            report["diagnostics"]["h"],
            report["runtime_ms"],
        ]
        return header, [row]


# vi: ts=4 sw=4 expandtab
