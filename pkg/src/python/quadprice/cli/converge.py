###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.cli.base import PricingCmd, int_list
from quadprice.util import OutputFormat
from quadprice.validation import convergence_study

ROW_FORMAT = OutputFormat(
    "{N:>8} {value:>24.16g} {rel_error:>12.3e}",
    headings={"N": "N", "value": "VALUE", "rel_error": "REL_ERROR"},
)


class ConvergeCmd(PricingCmd):
    name = "converge"
    help = "Relative error against a fine reference grid for a list of N"

    overrides = PricingCmd.overrides + (
        ("convergence.n-list", "n_list"),
        ("convergence.reference-n", "reference_n"),
    )

    def add_options(self, parser):
        parser.add_argument(
            "--n-list",
            type=int_list,
            metavar="N,...",
            help="Comma separated grid sizes to study",
        )
        parser.add_argument(
            "--reference-n",
            type=int,
            metavar="N",
            help="Grid size of the reference price",
        )
        parser.add_argument(
            "-j",
            "--jobs",
            type=int,
            metavar="JOBS",
            help="Price up to JOBS grids concurrently",
        )

    def main(self, args):
        config = self.load_config(args)
        n_list, reference_n = config.convergence()
        study = convergence_study(
            config.product(),
            config.curves(),
            n_list,
            reference_n,
            log_c=config.engine().log_c,
            jobs=args.jobs or config.mc().jobs,
        )
        self.emit(args, config, study.to_dict())

    def format_text(self, report):
        lines = [ROW_FORMAT.header()]
        lines.extend(ROW_FORMAT.format(row) for row in report["rows"])
        lines.append("")
        lines.append(
            f"reference   N={report['reference_n']} "
            + f"value={report['reference_value']:.16g}"
        )
        order = report["order"]
        lines.append("order       " + ("n/a" if order is None else f"{order:.3f}"))
        return "\n".join(lines)

    def csv_table(self, report):
        rows = [
            [row["N"], repr(row["value"]), repr(row["rel_error"])]
            for row in report["rows"]
        ]
        return ["N", "value", "rel_error"], rows


# vi: ts=4 sw=4 expandtab
