###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from setuptools import setup

setup(
    name="quadprice",
    version="0.1.0",
    description="Quadrature pricing of discretely monitored options",
    packages=[
        "quadprice",
        "quadprice.cli",
        "quadprice.products",
        "quadprice.validation",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "pyyaml>=5.1",
        "memoized-property>=1.0.3",
        'tomli>=1.1; python_version < "3.11"',
    ],
    entry_points={"console_scripts": ["quadprice = quadprice.cli.main:main"]},
)
