###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

from quadprice.validation.bound import TruncationBound, truncation_bound
from quadprice.validation.convergence import (
    ConvergenceStudy,
    convergence_study,
    observed_order,
    richardson_extrapolate,
)
from quadprice.validation.montecarlo import McResult, mc_price
