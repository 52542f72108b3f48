###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Early-exercise levels of Bermudan options

With a non-negative dividend yield the continuation value of a put
crosses the exercise value K - S exactly once, so the grid values locate
a bracket and a one-dimensional root finder polishes the level inside it.
Calls mirror this with S - K.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import bisect, root_scalar

from quadprice.util import ConfigError, NumericError

LOGGER = logging.getLogger(__name__)

__all__ = ["BoundarySolve", "ExerciseResolver", "exercise_tolerance", "find_exercise_level"]

METHODS = ("bisect", "secant")


@dataclass(frozen=True)
class BoundarySolve:
    level: Optional[float]
    bracket: Optional[Tuple[int, int]]
    iterations: int
    converged: bool
    method: str
    tolerance: float

    def to_dict(self):
        return {
            "level": self.level,
            "bracket": list(self.bracket) if self.bracket else None,
            "iterations": self.iterations,
            "converged": self.converged,
            "method": self.method,
        }


def exercise_tolerance(grid, s0):
    """Absolute tolerance on the level, below the quadrature error"""
    return max(grid.h**4 * s0, 1e-12 * s0)


def _bisect(func, lower, upper, tol):
    root, info = bisect(func, lower, upper, xtol=tol, full_output=True, disp=False)
    return root, info.iterations, info.converged


def _secant(func, lower, upper, tol):
    try:
        info = root_scalar(func, method="secant", x0=lower, x1=upper, xtol=tol)
    except (ArithmeticError, ValueError):
        return None
    if not info.converged or not lower <= info.root <= upper:
        return None
    return info.root, info.iterations, info.converged


def find_exercise_level(
    evaluator, grid_values, strike, side, grid, s0, params, method="bisect"
):
    """Find the exercise level of one date

    Args:
        evaluator: continuation value, evaluated at log-prices by ``at()``
        grid_values: the continuation value on the grid
        strike (float): the option strike
        side (str): "minus" for a put (exercise at S <= level),
            "plus" for a call (exercise at S >= level)
        grid (Grid): the pricing grid
        s0 (float): spot the grid is centred on
        params (IntervalParams): parameters of the interval following the date
        method (str): "bisect" or "secant" (falls back to bisection)

    Returns:
        BoundarySolve; ``level`` is None when early exercise never pays

    Raises:
        ConfigError: negative dividend yield or unknown method
        NumericError: the continuation value never exceeds the exercise value
    """
    if params.dividend_yield < 0.0:
        raise ConfigError("market.yield: Bermudan pricing needs a non-negative yield")
    if method not in METHODS:
        raise ConfigError(f"engine.method: must be one of {', '.join(METHODS)}")
    spots = grid.spots(s0)
    values = np.asarray(grid_values, dtype=float)
    sign = -1.0 if side == "minus" else 1.0
    tol = exercise_tolerance(grid, s0)

    above = np.flatnonzero(values > sign * (spots - strike))
    if above.size == 0:
        raise NumericError(
            f"continuation value below the exercise value on the whole grid (side {side})"
        )
    if side == "minus":
        index = int(above[0])
        if index == 0:
            return BoundarySolve(None, None, 0, True, method, tol)
        bracket = (index - 1, index)
    elif side == "plus":
        index = int(above[-1])
        if index == grid.n - 1:
            return BoundarySolve(None, None, 0, True, method, tol)
        bracket = (index, index + 1)
    else:
        raise ValueError(f"unknown exercise side {side}")

    def gap(spot):
        value = evaluator.at(math.log(spot / s0))[0]
        return float(value - sign * (spot - strike))

    lower, upper = float(spots[bracket[0]]), float(spots[bracket[1]])
    g_lower, g_upper = gap(lower), gap(upper)
    if g_lower == 0.0 or g_upper == 0.0 or (g_lower > 0.0) == (g_upper > 0.0):
        #  Direct sums and FFT values can differ in the last digits right at
        #   a grid point; take the end closer to the crossing.
        level = lower if abs(g_lower) <= abs(g_upper) else upper
        return BoundarySolve(level, bracket, 0, True, method, tol)

    used = method
    result = None
    if method == "secant":
        result = _secant(gap, lower, upper, tol)
        if result is None:
            LOGGER.debug("secant left [%g, %g], falling back to bisection", lower, upper)
            used = "secant->bisect"
    if result is None:
        result = _bisect(gap, lower, upper, tol)
    level, iterations, converged = result
    LOGGER.debug(
        "exercise level %.10g in [%.10g, %.10g] after %d iterations (%s)",
        level,
        lower,
        upper,
        iterations,
        used,
    )
    return BoundarySolve(float(level), bracket, int(iterations), bool(converged), used, tol)


class ExerciseResolver:
    """Fills in the exercise level of Bermudan legs during backward induction"""

    def __init__(self, strike, grid, s0, method="bisect"):
        self.strike = strike
        self.grid = grid
        self.s0 = s0
        self.method = method

    def __call__(self, evaluator, grid_values, leg):
        solve = find_exercise_level(
            evaluator,
            grid_values,
            self.strike,
            leg.solve_side,
            self.grid,
            self.s0,
            evaluator.params,
            self.method,
        )
        if leg.solve_side == "minus":
            level = 0.0 if solve.level is None else solve.level
            leg = dataclasses.replace(leg, k_minus=level, solve_side=None)
        else:
            leg = dataclasses.replace(leg, k_plus=solve.level, solve_side=None)
        return leg, solve


# vi: ts=4 sw=4 expandtab
