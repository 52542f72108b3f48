###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Discretely monitored two-sided knock-out products

Every product is a schedule of observation legs. At the date of leg ``m``
the holder receives ``a_plus * S + b_plus`` if ``S >= k_plus`` or
``a_minus * S + b_minus`` if ``S <= k_minus`` and the product ends.
Otherwise it lives on to the next date. At the last date the terminal
payoff ``a * S + b`` is paid between the two levels.
"""

import dataclasses
import enum
import math
import numbers
from dataclasses import dataclass
from typing import Optional, Tuple

from quadprice.util import ConfigError

__all__ = [
    "ExerciseStyle",
    "KnockIn",
    "ObservationLeg",
    "ProductSchedule",
    "TerminalPayoff",
    "VanillaPayoff",
    "make_autocallable",
    "make_barrier",
    "make_bermudan",
    "make_european",
    "make_knock_in",
    "make_touch",
]


class ExerciseStyle(enum.Enum):
    SCHEDULED = "scheduled"
    BERMUDAN_CALL = "bermudan-call"
    BERMUDAN_PUT = "bermudan-put"

    @property
    def is_bermudan(self):
        return self is not ExerciseStyle.SCHEDULED


def _finite(name, value):
    if not isinstance(value, numbers.Real) or not math.isfinite(value):
        raise ConfigError(f"{name}: expected a finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class ObservationLeg:
    """Exercise levels and payoff coefficients at one observation date

    ``k_plus`` of None means the upper side is never hit, ``k_minus`` of
    0 means the lower side is never hit. ``solve_side`` marks a Bermudan
    exercise level that the engine still has to determine.
    """

    t: float
    k_minus: float = 0.0
    k_plus: Optional[float] = None
    a_minus: float = 0.0
    b_minus: float = 0.0
    a_plus: float = 0.0
    b_plus: float = 0.0
    solve_side: Optional[str] = None

    def __post_init__(self):
        _finite("leg.t", self.t)
        for name in ("k_minus", "a_minus", "b_minus", "a_plus", "b_plus"):
            _finite(f"leg.{name}", getattr(self, name))
        if self.k_minus < 0.0:
            raise ConfigError(f"leg at t={self.t:g}: k_minus must be >= 0")
        if self.k_plus is not None:
            _finite("leg.k_plus", self.k_plus)
            if self.k_plus <= 0.0:
                raise ConfigError(f"leg at t={self.t:g}: k_plus must be > 0")
            if self.k_minus > self.k_plus:
                raise ConfigError(
                    f"leg at t={self.t:g}: k_minus {self.k_minus:g}"
                    f" above k_plus {self.k_plus:g}"
                )
        if self.solve_side not in (None, "minus", "plus"):
            raise ConfigError(f"leg at t={self.t:g}: bad solve_side {self.solve_side}")

    @property
    def has_lower(self):
        return self.k_minus > 0.0

    @property
    def has_upper(self):
        return self.k_plus is not None

    def coefficients(self):
        return {
            "t": self.t,
            "k_minus": self.k_minus,
            "k_plus": self.k_plus,
            "a_minus": self.a_minus,
            "b_minus": self.b_minus,
            "a_plus": self.a_plus,
            "b_plus": self.b_plus,
        }


@dataclass(frozen=True)
class TerminalPayoff:
    """Payoff ``a * S + b`` at maturity between the final levels"""

    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        _finite("terminal.a", self.a)
        _finite("terminal.b", self.b)


@dataclass(frozen=True)
class VanillaPayoff:
    """A payoff linear in S on one side of a level

    kind is one of ``call``, ``put`` (level is the strike), ``cash``
    (level is the cash amount) or ``asset`` (level is ignored).
    """

    kind: str
    level: float = 0.0

    kinds = ("call", "put", "cash", "asset")

    def __post_init__(self):
        if self.kind not in self.kinds:
            raise ConfigError(f"payoff.kind: must be one of {', '.join(self.kinds)}")
        _finite("payoff.level", self.level)
        if self.kind in ("call", "put") and self.level <= 0.0:
            raise ConfigError("payoff.strike: must be positive")

    def coefficients(self):
        return {
            "call": (1.0, -self.level),
            "put": (-1.0, self.level),
            "cash": (0.0, self.level),
            "asset": (1.0, 0.0),
        }[self.kind]


@dataclass(frozen=True)
class ProductSchedule:
    legs: Tuple[ObservationLeg, ...]
    terminal: TerminalPayoff
    t0: float = 0.0
    s0: float = 1.0
    exercise_style: ExerciseStyle = ExerciseStyle.SCHEDULED
    strike: Optional[float] = None
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        if not self.legs:
            raise ConfigError("product: at least one observation date is required")
        _finite("market.spot", self.s0)
        if self.s0 <= 0.0:
            raise ConfigError("market.spot: must be positive")
        previous = self.t0
        for leg in self.legs:
            if leg.t <= previous:
                raise ConfigError(
                    "product.dates: must be strictly increasing and after t0"
                )
            previous = leg.t
        if self.exercise_style.is_bermudan:
            if self.strike is None or self.strike <= 0.0:
                raise ConfigError("product.strike: must be positive")

    @property
    def dates(self):
        return [self.t0] + [leg.t for leg in self.legs]

    @property
    def maturity(self):
        return self.legs[-1].t

    @property
    def resolved(self):
        """True when no Bermudan exercise level is left to solve"""
        return all(leg.solve_side is None for leg in self.legs)

    def with_spot(self, s0):
        return dataclasses.replace(self, s0=s0)

    def with_legs(self, legs):
        return dataclasses.replace(self, legs=tuple(legs))

    def coefficients(self):
        return {
            "legs": [leg.coefficients() for leg in self.legs],
            "terminal": {"a": self.terminal.a, "b": self.terminal.b},
        }


@dataclass(frozen=True)
class KnockIn:
    """A knock-in product, worth the vanilla minus its knock-out twin"""

    vanilla: ProductSchedule
    knock_out: ProductSchedule

    @property
    def s0(self):
        return self.vanilla.s0

    @property
    def t0(self):
        return self.vanilla.t0

    @property
    def dates(self):
        return self.vanilla.dates

    def with_spot(self, s0):
        return KnockIn(self.vanilla.with_spot(s0), self.knock_out.with_spot(s0))


def _check_lengths(dates, **lists):
    for name, values in lists.items():
        if len(values) != len(dates):
            raise ConfigError(
                f"product.{name}: expected {len(dates)} entries, got {len(values)}"
            )


def make_autocallable(
    dates, barriers, coupons, final_premium, direction="up", t0=0.0, s0=1.0
):
    """Autocallable note paying ``coupons[m]`` when the barrier is hit

    An up autocallable is called when ``S >= barrier``, a down one when
    ``S <= barrier``. If never called, ``final_premium`` is paid at
    maturity.
    """
    _check_lengths(dates, barriers=barriers, coupons=coupons)
    if direction not in ("up", "down"):
        raise ConfigError("product.direction: must be 'up' or 'down'")
    legs = []
    for t, barrier, coupon in zip(dates, barriers, coupons):
        barrier = _finite("product.barriers", barrier)
        if barrier <= 0.0:
            raise ConfigError("product.barriers: must be positive")
        if direction == "up":
            legs.append(ObservationLeg(t, k_plus=barrier, b_plus=coupon))
        else:
            legs.append(ObservationLeg(t, k_minus=barrier, b_minus=coupon))
    return ProductSchedule(
        legs,
        TerminalPayoff(0.0, final_premium),
        t0=t0,
        s0=s0,
        name=f"autocallable-{direction}",
    )


def _barrier_levels(dates, lower, upper):
    if not dates:
        raise ConfigError("product.dates: at least one observation date is required")
    if lower is None:
        lower = [None] * len(dates)
    if upper is None:
        upper = [None] * len(dates)
    _check_lengths(dates, lower=lower, upper=upper)
    levels = []
    for t, low, high in zip(dates, lower, upper):
        low = 0.0 if low is None else _finite("product.lower", low)
        if high is not None:
            high = _finite("product.upper", high)
            if high <= 0.0:
                raise ConfigError("product.upper: must be positive")
        if low < 0.0:
            raise ConfigError("product.lower: must not be negative")
        if high is not None and low > 0.0 and low >= high:
            raise ConfigError(
                f"product: lower barrier {low:g} not below upper {high:g} at t={t:g}"
            )
        levels.append((low, high))
    return levels


def make_barrier(dates, lower_barriers, upper_barriers, payoff, t0=0.0, s0=1.0):
    """Discretely monitored single or double knock-out option

    The option dies without payment when the price is at or beyond a
    barrier on an observation date. A missing barrier is given as None
    (or a whole list of None).
    """
    dates = list(dates)
    levels = _barrier_levels(dates, lower_barriers, upper_barriers)
    a, b = payoff.coefficients()
    legs = [
        ObservationLeg(t, k_minus=low, k_plus=high)
        for t, (low, high) in zip(dates[:-1], levels[:-1])
    ]

    low, high = levels[-1]
    if payoff.kind == "put":
        #  Above the strike the put pays nothing, so the strike acts as an
        #   upper knock-out level.
        high = payoff.level if high is None else min(high, payoff.level)
    elif payoff.kind == "call":
        low = max(low, payoff.level)
    if high is not None and low > high:
        low = high
    legs.append(ObservationLeg(dates[-1], k_minus=low, k_plus=high))
    name = "barrier" if any(lv != (0.0, None) for lv in levels) else "european"
    return ProductSchedule(
        legs, TerminalPayoff(a, b), t0=t0, s0=s0, name=f"{name}-{payoff.kind}"
    )


def make_european(maturity, payoff, t0=0.0, s0=1.0):
    return make_barrier([maturity], None, None, payoff, t0=t0, s0=s0)


def make_knock_in(dates, lower_barriers, upper_barriers, payoff, t0=0.0, s0=1.0):
    """Knock-in option as the difference of a vanilla and a knock-out"""
    vanilla = make_barrier(dates, None, None, payoff, t0=t0, s0=s0)
    knock_out = make_barrier(
        dates, lower_barriers, upper_barriers, payoff, t0=t0, s0=s0
    )
    return KnockIn(vanilla, knock_out)


def make_touch(dates, barriers, cash, direction="up", kind="one-touch", t0=0.0, s0=1.0):
    """One-touch (paid when first touched) or no-touch (paid at maturity)"""
    if kind == "one-touch":
        schedule = make_autocallable(
            dates, barriers, [cash] * len(dates), 0.0, direction, t0=t0, s0=s0
        )
        return dataclasses.replace(schedule, name=f"one-touch-{direction}")
    if kind != "no-touch":
        raise ConfigError("product.kind: must be 'one-touch' or 'no-touch'")
    if direction == "up":
        schedule = make_barrier(
            dates, None, barriers, VanillaPayoff("cash", cash), t0=t0, s0=s0
        )
    elif direction == "down":
        schedule = make_barrier(
            dates, barriers, None, VanillaPayoff("cash", cash), t0=t0, s0=s0
        )
    else:
        raise ConfigError("product.direction: must be 'up' or 'down'")
    return dataclasses.replace(schedule, name=f"no-touch-{direction}")


def make_bermudan(dates, strike, kind="put", t0=0.0, s0=1.0):
    """Bermudan option exercisable on every date

    The exercise levels of all dates but the last are unknown until the
    engine solves them; those legs are marked with ``solve_side``.
    """
    dates = list(dates)
    if not dates:
        raise ConfigError("product.dates: at least one observation date is required")
    strike = _finite("product.strike", strike)
    if strike <= 0.0:
        raise ConfigError("product.strike: must be positive")
    legs = []
    if kind == "put":
        for t in dates[:-1]:
            legs.append(
                ObservationLeg(t, a_minus=-1.0, b_minus=strike, solve_side="minus")
            )
        legs.append(
            ObservationLeg(dates[-1], k_minus=strike, a_minus=-1.0, b_minus=strike)
        )
        style = ExerciseStyle.BERMUDAN_PUT
    elif kind == "call":
        for t in dates[:-1]:
            legs.append(
                ObservationLeg(t, a_plus=1.0, b_plus=-strike, solve_side="plus")
            )
        legs.append(
            ObservationLeg(dates[-1], k_plus=strike, a_plus=1.0, b_plus=-strike)
        )
        style = ExerciseStyle.BERMUDAN_CALL
    else:
        raise ConfigError("product.kind: must be 'call' or 'put'")
    return ProductSchedule(
        legs,
        TerminalPayoff(0.0, 0.0),
        t0=t0,
        s0=s0,
        exercise_style=style,
        strike=strike,
        name=f"bermudan-{kind}",
    )


# vi: ts=4 sw=4 expandtab
