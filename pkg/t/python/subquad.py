###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import argparse
import os
import sys

script_dir = os.path.dirname(os.path.abspath(__file__))

srcdir = os.path.abspath(
    os.path.join(os.environ["srcdir"] if "srcdir" in os.environ else script_dir, "..", "..")
)
pythondir = os.path.join(srcdir, "src", "python")
quadprice_cmd = os.path.join(srcdir, "src", "cmd", "quadprice-run.py")
examples_dir = os.path.join(srcdir, "etc", "examples")

sys.path.insert(0, pythondir)

#  Long running checks (fine reference grids, 10^7 Monte-Carlo pairs and
#   runtime scaling) only run when LONGTEST is set in the environment.
longtest = bool(os.environ.get("LONGTEST"))

#  Ignore --debug and --root options so that test scripts absorb the same
#   options whatever harness runs them.
parser = argparse.ArgumentParser()
parser.add_argument("--debug", "-d", action="store_true")
parser.add_argument("--root", metavar="PATH", type=str)
args, remainder = parser.parse_known_args()

sys.argv[1:] = remainder


def example(name):
    return os.path.join(examples_dir, name)


def child_env():
    """Environment for running the quadprice command from the source tree"""
    env = dict(os.environ)
    path = env.get("PYTHONPATH")
    env["PYTHONPATH"] = pythondir + (os.pathsep + path if path else "")
    env["XDG_CONFIG_HOME"] = os.path.join(script_dir, "no-such-config")
    env["XDG_CONFIG_DIRS"] = os.path.join(script_dir, "no-such-config")
    return env
