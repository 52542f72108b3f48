###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.cli.base import PricingCmd
from quadprice.validation import truncation_bound


class BoundCmd(PricingCmd):
    name = "bound"
    help = "Report the a-priori truncation error bound"

    def main(self, args):
        config = self.load_config(args)
        product = config.product()
        bound = truncation_bound(product, config.curves(), config.engine().log_c)
        report = bound.to_dict()
        report["reference"] = bound.reference(product.s0)
        self.emit(args, config, report)

    def format_text(self, report):
        return "\n".join(
            [
                f"A           {report['A']:.6g}",
                f"B           {report['B']:.6g}",
                f"R           {report['R']:.6g}",
                f"Q           {report['Q']:.6g}",
                f"logC        {report['logC']:.6g}",
                f"d           [{report['d_min']:.4g}, {report['d_max']:.4g}]",
                f"bound       {report['bound']:.3e}",
                f"reference   {report['reference']:.3e}",
            ]
        )


# vi: ts=4 sw=4 expandtab
