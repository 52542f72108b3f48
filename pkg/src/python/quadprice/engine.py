###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Backward induction by FFT-accelerated Simpson quadrature

At each observation date the continuation value one interval earlier is

    V(S0 e^x) = E(S0 e^x) + integral over the continuation window of
                k(x - z) u(z) dz

where E is the closed-form value of what the leg pays when hit and k is
the discounted Gaussian transition kernel in log-price. The integral is
evaluated with composite Simpson weights on a fixed uniform grid (a
Toeplitz product computed by FFT) plus two three-point Simpson
corrections for the window ends, which rarely fall on grid points.
"""

import dataclasses
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from memoized_property import memoized_property
from scipy.fft import irfft, next_fast_len, rfft

from quadprice.analytic import (
    early_exercise_value,
    normalize_terminal_leg,
    terminal_value,
)
from quadprice.bermudan import BoundarySolve, ExerciseResolver
from quadprice.market import kernel_w, reduce_curves
from quadprice.product import KnockIn
from quadprice.util import ConfigError, NumericError

LOGGER = logging.getLogger(__name__)

__all__ = [
    "Grid",
    "PricingResult",
    "QuadratureStep",
    "StepWindow",
    "TerminalEvaluator",
    "ValueFunction",
    "build_grid",
    "edge_integrals",
    "fft_convolve",
    "locate_window",
    "price",
    "price_knock_in",
    "settle",
    "simpson_weighted_values",
    "step_back",
    "truncation_half_width",
]


def truncation_half_width(intervals, horizon=None):
    """Half-width log(C) of the log-price domain

    Uses the largest interval volatility and the total horizon, which
    leaves a probability mass far below double precision outside
    [S0/C, S0 C].
    """
    sigma = max(p.volatility for p in intervals)
    if horizon is None:
        horizon = sum(p.dt for p in intervals)
    return 10.0 * sigma * math.sqrt(horizon) + (1.0 + 0.5 * sigma**2) * horizon


class Grid:
    """Uniform log-price grid x_0..x_{N-1} on [-log C, log C]"""

    def __init__(self, log_c, n):
        self.log_c = float(log_c)
        self.n = int(n)
        self.h = 2.0 * self.log_c / (self.n - 1)

    def __repr__(self):
        return f"Grid(log_c={self.log_c!r}, n={self.n})"

    @memoized_property
    def x(self):
        x = -self.log_c + self.h * np.arange(self.n)
        x[-1] = self.log_c
        return x

    @memoized_property
    def z_hat(self):
        """Differences x_j - x_i laid out for the Toeplitz product"""
        return -2.0 * self.log_c + self.h * np.arange(2 * self.n - 1)

    def spots(self, s0):
        return s0 * np.exp(self.x)


def build_grid(log_c, n):
    if isinstance(n, bool) or int(n) != n or n < 5:
        raise ConfigError(f"engine.n: need an integer of at least 5, got {n}")
    if not math.isfinite(log_c) or log_c <= 0.0:
        raise ConfigError(f"engine.log-c: must be positive, got {log_c}")
    return Grid(log_c, int(n))


@dataclass(frozen=True)
class StepWindow:
    """Continuation region of one leg on the truncated grid

    Indices are 0-based. ``end`` is the last grid point of the Simpson
    panel, one past ``p_plus`` when that makes the panel count even.
    """

    b_minus: float
    b_plus: float
    p_minus: int
    p_plus: int
    p0: int
    xi_minus: float
    xi_plus: float
    x_left: float
    x_right: float
    narrow: bool
    l_minus: float
    l_plus: float

    @property
    def end(self):
        return self.p_plus + self.p0

    def edge_points(self):
        return np.array([self.b_minus, self.xi_minus, self.xi_plus, self.b_plus])

    @property
    def needed(self):
        """Which of edge_points() enter an edge integral"""
        if self.narrow:
            return np.array([True, True, False, True])
        left = self.x_left != self.b_minus
        right = self.x_right != self.b_plus
        return np.array([left, left, right, right])

    def to_dict(self):
        return {
            "b_minus": self.b_minus,
            "b_plus": self.b_plus,
            "p_minus": self.p_minus,
            "p_plus": self.p_plus,
            "p0": self.p0,
            "narrow": self.narrow,
        }


def locate_window(leg, grid, s0):
    """Return the StepWindow of ``leg`` or None when it is empty"""
    log_c = grid.log_c
    lower = math.log(leg.k_minus / s0) if leg.has_lower else -math.inf
    upper = math.log(leg.k_plus / s0) if leg.has_upper else math.inf
    if lower >= log_c or upper <= -log_c:
        return None
    b_minus = max(lower, -log_c)
    b_plus = min(upper, log_c)
    if b_minus >= b_plus:
        return None

    x = grid.x
    p_minus = int(np.searchsorted(x, b_minus, side="left"))
    p_plus = int(np.searchsorted(x, b_plus, side="left")) - 1
    p0 = (p_plus - p_minus) % 2
    end = p_plus + p0
    narrow = end - p_minus < 2
    if narrow:
        mid = 0.5 * (b_minus + b_plus)
        xi_minus = xi_plus = mid
        x_left, x_right = b_minus, b_plus
    else:
        x_left, x_right = float(x[p_minus]), float(x[end])
        xi_minus = 0.5 * (x_left + b_minus)
        xi_plus = 0.5 * (x_right + b_plus)
    return StepWindow(
        b_minus=b_minus,
        b_plus=b_plus,
        p_minus=p_minus,
        p_plus=p_plus,
        p0=p0,
        xi_minus=xi_minus,
        xi_plus=xi_plus,
        x_left=x_left,
        x_right=x_right,
        narrow=narrow,
        l_minus=s0 * math.exp(b_minus),
        l_plus=s0 * math.exp(b_plus),
    )


def simpson_weighted_values(u, window):
    """u times the composite Simpson weights 1, 4, 2, ..., 4, 1 on the window"""
    u = np.asarray(u, dtype=float)
    weighted = np.zeros_like(u)
    if window is None or window.narrow:
        return weighted
    first, last = window.p_minus, window.end
    weights = np.ones(last - first + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weighted[first : last + 1] = weights * u[first : last + 1]
    return weighted


def fft_convolve(weighted, kernel, length=None):
    """Toeplitz product sum_i kernel(x_j - x_i) U_i for all j by FFT

    Args:
        weighted: the N weighted values followed by N-1 zeros
        kernel: the kernel sampled at Grid.z_hat (2N-1 values)
        length: transform length, at least 2N-1 (default: next fast length)

    Returns:
        array of N convolution values, one per grid point
    """
    weighted = np.asarray(weighted, dtype=float)
    kernel = np.asarray(kernel, dtype=float)
    if weighted.shape != kernel.shape or weighted.ndim != 1 or weighted.size % 2 == 0:
        raise ValueError("fft_convolve: need two arrays of the same odd length 2N-1")
    size = weighted.size
    n = (size + 1) // 2
    if length is None:
        length = next_fast_len(size, real=True)
    if length < size:
        raise ValueError(f"fft_convolve: transform length {length} below {size}")
    full = irfft(rfft(weighted, length) * rfft(kernel, length), length)
    return full[n - 1 : 2 * n - 1]


@dataclass
class ValueFunction:
    """Values at one observation date on the grid and at the window ends

    ``edges`` holds the values at ``window.edge_points()``; entries that
    no edge integral uses are left at zero.
    """

    u: np.ndarray
    window: Optional[StepWindow]
    edges: np.ndarray
    leg: Any = None
    boundary: Optional[BoundarySolve] = None


def edge_integrals(value, params, x_eval, kernel=None):
    """Three-point Simpson integrals over the window ends

    The left piece covers [B-, x_left], the right piece [x_right, B+]
    with a signed length, so it subtracts the overshoot when the Simpson
    panel ends past B+. For a narrow window the whole integral over
    [B-, B+] is returned as the left piece.
    """
    if kernel is None:
        def kernel(d):
            return kernel_w(params, d)

    x = np.asarray(x_eval, dtype=float)
    window = value.window
    v_bm, v_xm, v_xp, v_bp = value.edges
    zero = np.zeros_like(x)
    if window is None:
        return zero, zero
    if window.narrow:
        length = window.b_plus - window.b_minus
        whole = (length / 6.0) * (
            kernel(x - window.b_minus) * v_bm
            + 4.0 * kernel(x - window.xi_minus) * v_xm
            + kernel(x - window.b_plus) * v_bp
        )
        return whole, zero

    left = zero
    length = window.x_left - window.b_minus
    if length != 0.0:
        left = (length / 6.0) * (
            kernel(x - window.b_minus) * v_bm
            + 4.0 * kernel(x - window.xi_minus) * v_xm
            + kernel(x - window.x_left) * value.u[window.p_minus]
        )
    right = zero
    length = window.b_plus - window.x_right
    if length != 0.0:
        right = (length / 6.0) * (
            kernel(x - window.x_right) * value.u[window.end]
            + 4.0 * kernel(x - window.xi_plus) * v_xp
            + kernel(x - window.b_plus) * v_bp
        )
    return left, right


class TerminalEvaluator:
    """Closed-form value one interval before maturity"""

    def __init__(self, leg, terminal, params, grid, s0):
        self.leg = leg
        self.terminal = terminal
        self.params = params
        self.grid = grid
        self.s0 = s0

    def on_grid(self):
        return terminal_value(self.grid.spots(self.s0), self.leg, self.terminal, self.params)

    def at(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return terminal_value(self.s0 * np.exp(x), self.leg, self.terminal, self.params)


class QuadratureStep:
    """Value one interval before the date of ``value``

    ``on_grid()`` evaluates every grid point at once by FFT, ``at()``
    evaluates arbitrary log-prices by direct O(N) sums.
    """

    def __init__(self, value, leg, params, grid, s0):
        self.value = value
        self.leg = leg
        self.params = params
        self.grid = grid
        self.s0 = s0
        tau = params.tau
        self._shift = 2.0 * params.alpha * tau
        #  e^{-beta tau} / (2 sqrt(pi tau)) with the Gaussian completed,
        #   kept in the exponent so small volatilities do not overflow.
        self._log_scale = -params.rate * params.dt - math.log(
            2.0 * math.sqrt(math.pi * tau)
        )
        self.weighted = simpson_weighted_values(value.u, value.window)

    def kernel(self, d):
        d = np.asarray(d, dtype=float)
        tau = self.params.tau
        return np.exp(self._log_scale - (d + self._shift) ** 2 / (4.0 * tau))

    def _integral(self, x, main):
        window = self.value.window
        if window is None:
            return np.zeros_like(x)
        left, right = edge_integrals(self.value, self.params, x, kernel=self.kernel)
        return main + left + right

    def on_grid(self):
        grid = self.grid
        window = self.value.window
        main = np.zeros(grid.n)
        if window is not None and not window.narrow:
            padded = np.concatenate([self.weighted, np.zeros(grid.n - 1)])
            main = (grid.h / 3.0) * fft_convolve(padded, self.kernel(grid.z_hat))
        integral = self._integral(grid.x, main)
        return integral + early_exercise_value(grid.spots(self.s0), self.leg, self.params)

    def at(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        grid = self.grid
        window = self.value.window
        main = np.zeros_like(x)
        if window is not None and not window.narrow:
            first, last = window.p_minus, window.end + 1
            weights = self.kernel(x[:, None] - grid.x[None, first:last])
            main = (grid.h / 3.0) * (weights @ self.weighted[first:last])
        integral = self._integral(x, main)
        return integral + early_exercise_value(self.s0 * np.exp(x), self.leg, self.params)


def settle(evaluator, leg, grid, s0, resolve=None):
    """Turn continuation values into the ValueFunction of ``leg``'s date

    Solves a Bermudan exercise level first when ``leg`` still needs one.
    """
    u = np.asarray(evaluator.on_grid(), dtype=float)
    if not np.all(np.isfinite(u)):
        when = f" at t={leg.t:g}" if leg is not None else ""
        raise NumericError(f"non-finite continuation value{when}")
    boundary = None
    if leg is not None and leg.solve_side is not None:
        if resolve is None:
            raise ConfigError(f"leg at t={leg.t:g}: exercise level was never solved")
        leg, boundary = resolve(evaluator, u, leg)
    window = locate_window(leg, grid, s0) if leg is not None else None
    edges = np.zeros(4)
    if window is not None:
        needed = window.needed
        edges[needed] = evaluator.at(window.edge_points()[needed])
        if not np.all(np.isfinite(edges)):
            raise NumericError(f"non-finite edge value at t={leg.t:g}")
    return ValueFunction(u=u, window=window, edges=edges, leg=leg, boundary=boundary)


def step_back(value, leg, params, grid, s0, prev_leg=None, resolve=None):
    """One backward step from the date of ``leg`` to the previous date

    Args:
        value (ValueFunction): values at the date of ``leg``
        leg (ObservationLeg): the leg observed at that date
        params (IntervalParams): parameters of the interval before it
        grid (Grid): the pricing grid
        s0 (float): spot the grid is centred on
        prev_leg (ObservationLeg, optional): leg of the previous date,
            whose window and edge values are attached to the result
        resolve (callable, optional): Bermudan exercise level solver

    Returns:
        ValueFunction at the previous date
    """
    step = QuadratureStep(value, leg, params, grid, s0)
    return settle(step, prev_leg, grid, s0, resolve)


@dataclass
class StepDiagnostics:
    date: int
    t: float
    window: Optional[StepWindow]
    max_abs: float
    boundary: Optional[BoundarySolve] = None
    value: Optional[ValueFunction] = None

    def to_dict(self):
        result: Dict[str, Any] = {
            "date": self.date,
            "t": self.t,
            "max_abs": self.max_abs,
            "window": self.window.to_dict() if self.window else None,
        }
        if self.boundary is not None:
            result["boundary"] = self.boundary.to_dict()
        return result


@dataclass
class PricingResult:
    value: float
    n: int
    log_c: float
    h: float
    schedule: Any
    intervals: List[Any]
    steps: List[StepDiagnostics] = field(default_factory=list)
    runtime: float = 0.0
    components: Dict[str, float] = field(default_factory=dict)

    def diagnostics(self):
        result: Dict[str, Any] = {
            "h": self.h,
            "steps": [step.to_dict() for step in self.steps],
        }
        if self.components:
            result["components"] = dict(self.components)
        return result


def price(schedule, curves, n, log_c=None, method="bisect", keep_values=False):
    """Price ``schedule`` on an N-point grid

    Args:
        schedule (ProductSchedule or KnockIn): the product
        curves (MarketCurves): market curves covering all dates
        n (int): number of grid points
        log_c (float, optional): half-width of the log-price domain,
            by default truncation_half_width()
        method (str): Bermudan root finder, "bisect" or "secant"
        keep_values (bool): keep every ValueFunction in the diagnostics

    Returns:
        PricingResult; its ``schedule`` has Bermudan levels filled in
    """
    if isinstance(schedule, KnockIn):
        return price_knock_in(schedule, curves, n, log_c=log_c)

    started = time.perf_counter()
    intervals = reduce_curves(curves, schedule.dates)
    style = schedule.exercise_style
    if style.is_bermudan and any(p.dividend_yield < 0.0 for p in intervals):
        raise ConfigError("market.yield: Bermudan pricing needs a non-negative yield")
    if log_c is None:
        log_c = truncation_half_width(intervals)
    grid = build_grid(log_c, n)
    s0 = schedule.s0
    legs = list(schedule.legs)
    final = normalize_terminal_leg(legs[-1], schedule.terminal, s0)
    resolve = ExerciseResolver(schedule.strike, grid, s0, method) if style.is_bermudan else None

    LOGGER.debug("grid: N=%d logC=%.6g h=%.6g", grid.n, grid.log_c, grid.h)
    steps = []
    if len(legs) == 1:
        value = float(terminal_value(s0, final, schedule.terminal, intervals[0]))
    else:
        evaluator = TerminalEvaluator(final, schedule.terminal, intervals[-1], grid, s0)
        for date in range(len(legs) - 1, 0, -1):
            current = settle(evaluator, legs[date - 1], grid, s0, resolve)
            legs[date - 1] = current.leg
            max_abs = float(np.max(np.abs(current.u)))
            window = current.window
            LOGGER.debug(
                "date %d: window %s max|u|=%.6g",
                date,
                (window.p_minus, window.end) if window else None,
                max_abs,
            )
            steps.append(
                StepDiagnostics(
                    date=date,
                    t=current.leg.t,
                    window=window,
                    max_abs=max_abs,
                    boundary=current.boundary,
                    value=current if keep_values else None,
                )
            )
            evaluator = QuadratureStep(current, current.leg, intervals[date - 1], grid, s0)
        value = float(evaluator.at(0.0)[0])
    if not math.isfinite(value):
        raise NumericError("pricing produced a non-finite value")

    steps.reverse()
    return PricingResult(
        value=value,
        n=grid.n,
        log_c=grid.log_c,
        h=grid.h,
        schedule=schedule.with_legs(legs),
        intervals=intervals,
        steps=steps,
        runtime=time.perf_counter() - started,
    )


def price_knock_in(knock_in, curves, n, log_c=None):
    """Price a knock-in as vanilla minus knock-out on a common grid"""
    if log_c is None:
        intervals = reduce_curves(curves, knock_in.dates)
        log_c = truncation_half_width(intervals)
    vanilla = price(knock_in.vanilla, curves, n, log_c=log_c)
    knock_out = price(knock_in.knock_out, curves, n, log_c=log_c)
    return dataclasses.replace(
        knock_out,
        value=vanilla.value - knock_out.value,
        schedule=knock_in,
        runtime=vanilla.runtime + knock_out.runtime,
        components={"vanilla": vanilla.value, "knock_out": knock_out.value},
    )


# vi: ts=4 sw=4 expandtab
