###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import logging
import math

from quadprice.cli.base import PricingCmd
from quadprice.cli.price import run_engine
from quadprice.util import CheckFailed
from quadprice.validation import mc_price

LOGGER = logging.getLogger(__name__)

Z_LIMIT = 4.0


class McCheckCmd(PricingCmd):
    name = "mc-check"
    help = "Compare the quadrature price with a Monte-Carlo estimate"
    description = (
        "Price by quadrature, then estimate the same product by Monte-Carlo "
        + "with antithetic pairs. Exits with status 1 when the two differ "
        + f"by more than {Z_LIMIT:g} standard errors."
    )

    overrides = PricingCmd.overrides + (
        ("mc.pairs", "pairs"),
        ("mc.seed", "seed"),
        ("mc.jobs", "jobs"),
    )

    def add_options(self, parser):
        parser.add_argument(
            "--pairs", type=int, metavar="COUNT", help="Number of antithetic pairs"
        )
        parser.add_argument("--seed", type=int, metavar="SEED", help="Root seed")
        parser.add_argument(
            "-j", "--jobs", type=int, metavar="JOBS", help="Worker threads"
        )

    def main(self, args):
        config = self.load_config(args)
        settings = config.mc()
        _, curves, result = run_engine(config)
        mc = mc_price(
            result.schedule,
            curves,
            settings.pairs,
            seed=settings.seed,
            batch_size=settings.batch_size,
            jobs=settings.jobs,
        )
        z = mc.z_score(result.value)
        report = {
            "price": result.value,
            "N": result.n,
            "mc_estimate": mc.estimate,
            "std_error": mc.std_error,
            "pairs": mc.n_pairs,
            "seed": mc.seed,
            #  JSON has no infinity
            "z": z if math.isfinite(z) else None,
        }
        self.emit(args, config, report)
        if abs(z) > Z_LIMIT:
            raise CheckFailed(
                f"quadrature and Monte-Carlo differ by |z|={abs(z):.2f} > {Z_LIMIT:g}"
            )

    def format_text(self, report):
        z = report["z"]
        z_text = "n/a (zero std error)" if z is None else f"{z:.3f}"
        return "\n".join(
            [
                f"price       {report['price']:.12g}",
                f"mc          {report['mc_estimate']:.12g}",
                f"std_error   {report['std_error']:.3e}",
                f"pairs       {report['pairs']}",
                f"seed        {report['seed']}",
                f"z           {z_text}",
            ]
        )


# vi: ts=4 sw=4 expandtab
