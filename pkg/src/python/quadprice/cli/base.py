###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import csv
import io
import json
import logging
import sys

from quadprice.config import RunConfig
from quadprice.util import ConfigError, help_formatter

LOGGER = logging.getLogger(__name__)


def int_list(value):
    """Parse a comma separated list of integers, e.g. 501,1001,2001"""
    items = [item.strip() for item in value.split(",") if item.strip()]
    try:
        return [int(item) for item in items]
    except ValueError:
        raise ConfigError(f"expected comma separated integers, got '{value}'") from None


class PricingCmd:
    """
    PricingCmd is the base class for quadprice subcommands. It owns the
    options shared by all of them (run configuration, overrides, grid
    size and output) and the conversion of a report to text, JSON or CSV.
    """

    name = ""
    help = ""
    description = None

    #  (config key, argparse dest) pairs copied into the config when set
    overrides = (("engine.n", "n"), ("output.format", "format"))

    def add_parser(self, subparsers):
        parser = subparsers.add_parser(
            self.name,
            help=self.help,
            description=self.description or self.help,
            formatter_class=help_formatter(),
        )
        self.add_common_options(parser)
        self.add_options(parser)
        parser.set_defaults(func=self.main)
        return parser

    @staticmethod
    def add_common_options(parser):
        parser.add_argument(
            "-c",
            "--config",
            metavar="PATH",
            help="Load run configuration from PATH (.toml, .json or .yaml)",
        )
        parser.add_argument(
            "-S",
            "--set",
            metavar="KEY=VAL",
            action="append",
            default=[],
            help="Override a configuration key, e.g. engine.n=4001. "
            + "VAL is parsed as JSON when possible. May be repeated.",
        )
        parser.add_argument(
            "-n", "--n", type=int, metavar="N", help="Number of grid points"
        )
        parser.add_argument(
            "--format",
            choices=["text", "json", "csv"],
            help="Output format (default: text)",
        )
        parser.add_argument(
            "-o", "--out", metavar="PATH", help="Write output to PATH instead of stdout"
        )
        parser.add_argument(
            "-v", "--verbose", action="store_true", help="Log debug messages"
        )

    def add_options(self, parser):
        """Add subcommand specific options. Nothing in the base class."""

    def load_config(self, args):
        config = RunConfig()
        if args.config:
            try:
                config.update_file(args.config)
            except ConfigError as exc:
                raise ConfigError(f"--config: {exc}") from None
        elif not config.config.get("product"):
            raise ConfigError("--config: a run configuration is required")
        for keyval in args.set:
            config.update_keyval(keyval)
        for key, dest in self.overrides:
            value = getattr(args, dest, None)
            if value is not None:
                config.set(key, value)
        return config

    def main(self, args):
        raise NotImplementedError

    #  Output

    def format_text(self, report):
        return "\n".join(f"{key:<12} {value}" for key, value in report.items())

    def csv_table(self, report):
        """Return (header, rows) for CSV output"""
        keys = [key for key, value in report.items() if not isinstance(value, dict)]
        return keys, [[report[key] for key in keys]]

    def render(self, report, fmt):
        if fmt == "json":
            return json.dumps(report, indent=2, sort_keys=True)
        if fmt == "csv":
            header, rows = self.csv_table(report)
            stream = io.StringIO()
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
            return stream.getvalue().rstrip("\n")
        return self.format_text(report)

    def emit(self, args, config, report):
        text = self.render(report, config.output_format())
        if args.out:
            with open(args.out, "w") as ofile:
                print(text, file=ofile)
        else:
            print(text, file=sys.stdout)
