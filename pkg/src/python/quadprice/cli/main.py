###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import argparse
import logging
import sys

from quadprice.builder import ProductBuilders
from quadprice.cli.bound import BoundCmd
from quadprice.cli.converge import ConvergeCmd
from quadprice.cli.greeks import GreeksCmd
from quadprice.cli.mccheck import McCheckCmd
from quadprice.cli.price import PriceCmd
from quadprice.util import CLIMain

LOGGER = logging.getLogger("quadprice")

COMMANDS = (PriceCmd, ConvergeCmd, McCheckCmd, BoundCmd, GreeksCmd)


def create_parser():
    styles = [f"  {x:<14}{y}" for x, y in ProductBuilders().plugins().items()]
    parser = argparse.ArgumentParser(
        prog="quadprice",
        description="Price discretely monitored options by quadrature",
        epilog="Supported product styles:\n" + "\n".join(styles),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(
        title="subcommands", description="", dest="subcommand"
    )
    subparsers.required = True
    for command in COMMANDS:
        command().add_parser(subparsers)
    return parser


def run(argv=None):
    parser = create_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    args.func(args)


def main():
    """Console entry point; exits with the status of the subcommand"""
    sys.stdout = open(
        sys.stdout.fileno(), "w", encoding="utf8", errors="surrogateescape"
    )
    CLIMain(LOGGER)(run)


# vi: ts=4 sw=4 expandtab
