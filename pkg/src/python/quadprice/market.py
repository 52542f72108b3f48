###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Market curves and per-interval Black-Scholes parameters"""

import math
from dataclasses import dataclass

import numpy as np

from quadprice.util import ConfigError, DomainError

__all__ = [
    "IntervalParams",
    "MarketCurves",
    "PiecewiseConstant",
    "aggregate",
    "kernel_w",
    "lognormal_density",
    "reduce_curves",
]


class PiecewiseConstant:
    """A function of time, constant between breakpoints

    ``values[j]`` applies on the half-open interval
    ``(knots[j], knots[j + 1]]``. The first knot may be ``-inf`` and the
    last ``+inf``, so a constant curve is ``PiecewiseConstant([-inf, inf],
    [v])``.

    Args:
        knots: strictly increasing breakpoints, one more than values
        values: finite value per segment
        name: used in error messages
    """

    def __init__(self, knots, values, name="curve"):
        self.name = name
        self.knots = np.asarray(knots, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if (
            self.knots.ndim != 1
            or self.values.ndim != 1
            or self.values.size == 0
            or self.knots.size != self.values.size + 1
        ):
            raise ConfigError(f"{name}: need one more breakpoint than values")
        if np.any(np.isnan(self.knots)) or np.any(np.diff(self.knots) <= 0):
            raise ConfigError(f"{name}: breakpoints must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ConfigError(f"{name}: values must be finite")

    @classmethod
    def constant(cls, value, name="curve"):
        return cls([-math.inf, math.inf], [value], name=name)

    @classmethod
    def from_segments(cls, start, segments, name="curve"):
        """Build from ``start`` and a list of ``(until, value)`` pairs"""
        segments = list(segments)
        if not segments:
            raise ConfigError(f"{name}: no segments")
        knots = [start] + [until for until, _ in segments]
        return cls(knots, [value for _, value in segments], name=name)

    def __call__(self, t):
        index = np.searchsorted(self.knots, t, side="left") - 1
        index = np.clip(index, 0, self.values.size - 1)
        return self.values[index]

    def __repr__(self):
        return f"PiecewiseConstant({self.knots.tolist()}, {self.values.tolist()})"

    def covers(self, start, end):
        return self.knots[0] <= start and end <= self.knots[-1]

    def _overlaps(self, start, end):
        lower = np.clip(self.knots[:-1], start, end)
        upper = np.clip(self.knots[1:], start, end)
        return upper - lower

    def integral(self, start, end):
        """Exact integral over [start, end]"""
        return float(np.dot(self.values, self._overlaps(start, end)))

    def integral_of_square(self, start, end):
        return float(np.dot(self.values**2, self._overlaps(start, end)))

    def shifted(self, delta):
        """Copy with ``delta`` added to every value"""
        return PiecewiseConstant(self.knots, self.values + delta, name=self.name)

    def minimum(self):
        return float(self.values.min())


@dataclass(frozen=True)
class MarketCurves:
    """Interest rate, dividend yield and volatility as functions of time"""

    rate: PiecewiseConstant
    dividend_yield: PiecewiseConstant
    volatility: PiecewiseConstant

    def __post_init__(self):
        if np.any(self.volatility.values <= 0.0):
            raise ConfigError(f"{self.volatility.name}: volatility must be positive")

    @classmethod
    def constant(cls, rate, dividend_yield, volatility):
        return cls(
            PiecewiseConstant.constant(rate, name="rate"),
            PiecewiseConstant.constant(dividend_yield, name="yield"),
            PiecewiseConstant.constant(volatility, name="volatility"),
        )

    def curves(self):
        return {
            "rate": self.rate,
            "yield": self.dividend_yield,
            "volatility": self.volatility,
        }

    def with_volatility_shift(self, delta):
        return MarketCurves(self.rate, self.dividend_yield, self.volatility.shifted(delta))


@dataclass(frozen=True)
class IntervalParams:
    """Constant Black-Scholes parameters over one observation interval"""

    rate: float
    dividend_yield: float
    volatility: float
    dt: float

    @property
    def variance(self):
        return self.volatility**2

    @property
    def tau(self):
        return 0.5 * self.variance * self.dt

    @property
    def alpha(self):
        return (self.rate - self.dividend_yield - 0.5 * self.variance) / self.variance

    @property
    def beta(self):
        return self.alpha**2 + 2.0 * self.rate / self.variance

    @property
    def discount(self):
        return math.exp(-self.rate * self.dt)

    @property
    def carry(self):
        return math.exp(-self.dividend_yield * self.dt)

    @property
    def drift(self):
        """Mean of the log-return over the interval"""
        return (self.rate - self.dividend_yield - 0.5 * self.variance) * self.dt

    @property
    def stddev(self):
        return self.volatility * math.sqrt(self.dt)


def reduce_curves(curves, dates):
    """Reduce market curves to one IntervalParams per observation interval

    Rates and yields are time averages over each interval, the volatility
    is the root of the time-averaged variance, which keeps the integrated
    rate, yield and variance (and so the law of the price at every date)
    unchanged.

    Args:
        curves (MarketCurves): market curves
        dates: t0 < t1 < ... < tM

    Returns:
        list of IntervalParams, one per (t_{m-1}, t_m]

    Raises:
        ConfigError: dates not strictly increasing or not covered by a curve
    """
    dates = np.asarray(dates, dtype=float)
    if dates.ndim != 1 or dates.size < 2:
        raise ConfigError("need a start date and at least one observation date")
    if np.any(np.diff(dates) <= 0):
        raise ConfigError("observation dates must be strictly increasing")
    for curve in curves.curves().values():
        if not curve.covers(dates[0], dates[-1]):
            raise ConfigError(
                f"{curve.name}: curve does not cover [{dates[0]:g}, {dates[-1]:g}]"
            )
    result = []
    for start, end in zip(dates[:-1], dates[1:]):
        length = end - start
        result.append(
            IntervalParams(
                rate=curves.rate.integral(start, end) / length,
                dividend_yield=curves.dividend_yield.integral(start, end) / length,
                volatility=math.sqrt(
                    curves.volatility.integral_of_square(start, end) / length
                ),
                dt=float(length),
            )
        )
    return result


def aggregate(intervals):
    """Merge consecutive intervals into one with time-averaged parameters"""
    intervals = list(intervals)
    if not intervals:
        raise ValueError("no intervals to aggregate")
    total = sum(p.dt for p in intervals)
    return IntervalParams(
        rate=sum(p.rate * p.dt for p in intervals) / total,
        dividend_yield=sum(p.dividend_yield * p.dt for p in intervals) / total,
        volatility=math.sqrt(sum(p.variance * p.dt for p in intervals) / total),
        dt=total,
    )


def lognormal_density(params, y, s):
    """Transition density of the price from ``s`` to ``y`` over one interval"""
    y = np.asarray(y, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(y <= 0.0) or np.any(s <= 0.0):
        raise DomainError("lognormal density needs positive prices")
    tau = params.tau
    shift = np.log(y / s) - 2.0 * params.alpha * tau
    return np.exp(-(shift**2) / (4.0 * tau)) / (2.0 * math.sqrt(math.pi * tau) * y)


def kernel_w(params, x):
    """Gaussian kernel exp(-x^2/(4 tau) - alpha x) of the log-price step"""
    x = np.asarray(x, dtype=float)
    return np.exp(-(x**2) / (4.0 * params.tau) - params.alpha * x)


# vi: ts=4 sw=4 expandtab
