###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Grid convergence studies against a fine reference grid"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from quadprice.engine import price, truncation_half_width
from quadprice.market import reduce_curves
from quadprice.util import ConfigError

LOGGER = logging.getLogger(__name__)

__all__ = [
    "ConvergenceRow",
    "ConvergenceStudy",
    "convergence_study",
    "fitted_order",
    "observed_order",
    "richardson_extrapolate",
]

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: float
    rel_error: float


@dataclass
class ConvergenceStudy:
    reference_n: int
    reference_value: float
    rows: List[ConvergenceRow] = field(default_factory=list)
    order: Optional[float] = None

    def to_dict(self):
        return {
            "reference_n": self.reference_n,
            "reference_value": self.reference_value,
            "order": self.order,
            "rows": [
                {"N": row.n, "value": row.value, "rel_error": row.rel_error}
                for row in self.rows
            ],
        }


def fitted_order(ns, errors):
    """Least-squares slope of log(error) against log(N), negated

    Errors within 100 machine epsilons are dropped; None when fewer
    than two points remain.
    """
    ns = np.asarray(ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = errors > 100.0 * EPS
    if np.count_nonzero(keep) < 2:
        return None
    slope, _ = np.polyfit(np.log(ns[keep]), np.log(errors[keep]), 1)
    return float(-slope)


def observed_order(coarse, middle, fine, ratio=2.0):
    """Order p from three results on grids refined by ``ratio`` each time"""
    numerator = abs(coarse - middle)
    denominator = abs(middle - fine)
    if numerator == 0.0 or denominator == 0.0:
        return None
    return math.log(numerator / denominator) / math.log(ratio)


def richardson_extrapolate(values, order, ratio=2.0):
    """Richardson extrapolation of a sequence of refinements

    ``values[k]`` uses a step ``ratio`` times smaller than ``values[k-1]``
    and carries errors of order ``order``, ``2 * order``, ...
    """
    if len(values) < 2:
        raise ValueError("richardson_extrapolate needs at least two values")
    table = [float(v) for v in values]
    for j in range(1, len(table)):
        factor = ratio ** (order * j)
        for k in range(len(table) - 1, j - 1, -1):
            table[k] = (factor * table[k] - table[k - 1]) / (factor - 1.0)
    return table[-1]


def convergence_study(schedule, curves, n_list, reference_n, log_c=None, jobs=1):
    """Price on each N of ``n_list`` and compare with ``reference_n``

    All runs share one truncation half-width so that only the grid
    spacing varies.
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ConfigError("--n-list: at least one grid size is required")
    if reference_n <= max(n_list):
        raise ConfigError(
            f"--reference-n: {reference_n} must exceed the largest N {max(n_list)}"
        )
    if log_c is None:
        log_c = truncation_half_width(reduce_curves(curves, schedule.dates))

    def run(n):
        result = price(schedule, curves, n, log_c=log_c)
        LOGGER.debug("N=%d value=%.15g (%.3fs)", n, result.value, result.runtime)
        return result.value

    sizes = [reference_n] + n_list
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(run, sizes))
    else:
        values = [run(n) for n in sizes]

    reference = values[0]
    scale = abs(reference) if reference != 0.0 else 1.0
    rows = [
        ConvergenceRow(n=n, value=value, rel_error=abs(value - reference) / scale)
        for n, value in zip(n_list, values[1:])
    ]
    order = fitted_order([r.n for r in rows], [r.rel_error for r in rows])
    return ConvergenceStudy(
        reference_n=reference_n, reference_value=reference, rows=rows, order=order
    )
