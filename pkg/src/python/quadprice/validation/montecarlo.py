###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

"""Monte-Carlo reference prices with antithetic variates

Paths are sampled exactly at the observation dates from the lognormal
transition of each interval. Each batch draws from its own counter-based
stream derived from (seed, batch), so estimates do not depend on how many
worker threads run the batches.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from quadprice.analytic import norm_ppf
from quadprice.market import reduce_curves
from quadprice.product import KnockIn
from quadprice.util import ConfigError

LOGGER = logging.getLogger(__name__)

__all__ = ["McResult", "mc_price", "path_payoffs", "sample_log_returns"]

DEFAULT_BATCH_SIZE = 50000


@dataclass(frozen=True)
class McResult:
    estimate: float
    std_error: float
    n_pairs: int
    seed: int
    batches: int

    def z_score(self, value, rtol=1e-12):
        """Standardized difference of ``value`` from the estimate

        With a zero standard error (a deterministic payoff) the score is
        0 when the two agree to ``rtol`` and infinite otherwise.
        """
        diff = value - self.estimate
        if self.std_error > 0.0:
            return diff / self.std_error
        scale = max(abs(value), abs(self.estimate))
        if abs(diff) <= rtol * scale:
            return 0.0
        return math.copysign(math.inf, diff)

    def to_dict(self):
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "pairs": self.n_pairs,
            "seed": self.seed,
            "batches": self.batches,
        }


def batch_generator(seed, batch):
    """Independent Philox stream for one batch"""
    sequence = np.random.SeedSequence(seed, spawn_key=(batch,))
    return np.random.Generator(np.random.Philox(sequence))


def standard_normals(rng, shape):
    """Normals by inverting 53-bit uniforms on the open interval (0, 1)"""
    bits = rng.integers(0, 2**53, size=shape, dtype=np.int64)
    return norm_ppf((bits + 0.5) * 2.0**-53)


def sample_log_returns(intervals, normals):
    """Log-returns per interval from standard normals of shape (paths, M)"""
    drift = np.array([p.drift for p in intervals])
    stddev = np.array([p.stddev for p in intervals])
    return drift + stddev * normals


def path_payoffs(schedule, intervals, log_returns):
    """Discounted payoff of each path of ``schedule``

    Args:
        schedule (ProductSchedule): a product with all levels known
        intervals: IntervalParams per observation interval
        log_returns: array of shape (paths, M)

    Returns:
        array with one discounted payoff per path
    """
    spots = schedule.s0 * np.exp(np.cumsum(log_returns, axis=1))
    discount = np.exp(-np.cumsum([p.rate * p.dt for p in intervals]))
    alive = np.ones(spots.shape[0], dtype=bool)
    payoff = np.zeros(spots.shape[0])
    last = len(schedule.legs) - 1
    for m, leg in enumerate(schedule.legs):
        spot = spots[:, m]
        low = np.zeros_like(alive)
        high = np.zeros_like(alive)
        if leg.has_lower:
            low = alive & (spot <= leg.k_minus)
        if leg.has_upper:
            high = alive & ~low & (spot >= leg.k_plus)
        payoff[low] += discount[m] * (leg.a_minus * spot[low] + leg.b_minus)
        payoff[high] += discount[m] * (leg.a_plus * spot[high] + leg.b_plus)
        alive &= ~(low | high)
        if m == last:
            terminal = schedule.terminal
            payoff[alive] += discount[m] * (terminal.a * spot[alive] + terminal.b)
    return payoff


def _pair_values(product, intervals, log_returns):
    if isinstance(product, KnockIn):
        return path_payoffs(product.vanilla, intervals, log_returns) - path_payoffs(
            product.knock_out, intervals, log_returns
        )
    return path_payoffs(product, intervals, log_returns)


def _moments(values):
    """Count, mean and sum of squared deviations, shifted by the first value"""
    shifted = values - values[0]
    mean = float(np.mean(shifted))
    return values.size, float(values[0]) + mean, float(np.sum((shifted - mean) ** 2))


def _merge(left, right):
    n_a, mean_a, m2_a = left
    n_b, mean_b, m2_b = right
    count = n_a + n_b
    delta = mean_b - mean_a
    return (
        count,
        mean_a + delta * n_b / count,
        m2_a + m2_b + delta * delta * n_a * n_b / count,
    )


def _run_batch(product, intervals, seed, batch, pairs):
    rng = batch_generator(seed, batch)
    normals = standard_normals(rng, (pairs, len(intervals)))
    plus = _pair_values(product, intervals, sample_log_returns(intervals, normals))
    minus = _pair_values(product, intervals, sample_log_returns(intervals, -normals))
    LOGGER.debug("batch %d: %d pairs", batch, pairs)
    return _moments(0.5 * (plus + minus))


def mc_price(product, curves, n_pairs, seed=0, batch_size=DEFAULT_BATCH_SIZE, jobs=1):
    """Monte-Carlo price of ``product`` from ``n_pairs`` antithetic pairs

    Args:
        product (ProductSchedule or KnockIn): product with known levels;
            price a Bermudan first and pass ``PricingResult.schedule``
        curves (MarketCurves): market curves
        n_pairs (int): number of antithetic pairs
        seed (int): root seed
        batch_size (int): pairs per batch
        jobs (int): worker threads

    Returns:
        McResult with the standard error of the pair means (0 for a
        single pair)
    """
    if n_pairs < 1:
        raise ConfigError(f"mc.pairs: need at least 1 pair, got {n_pairs}")
    if batch_size < 1:
        raise ConfigError("mc.batch-size: must be positive")
    if isinstance(product, KnockIn):
        schedules = [product.vanilla, product.knock_out]
    else:
        schedules = [product]
    if not all(s.resolved for s in schedules):
        raise ConfigError(
            "Monte-Carlo needs known exercise levels; price the Bermudan first"
        )
    intervals = reduce_curves(curves, product.dates)

    sizes = [batch_size] * (n_pairs // batch_size)
    if n_pairs % batch_size:
        sizes.append(n_pairs % batch_size)

    def run(batch):
        return _run_batch(product, intervals, seed, batch, sizes[batch])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            moments = list(pool.map(run, range(len(sizes))))
    else:
        moments = [run(batch) for batch in range(len(sizes))]

    total = moments[0]
    for item in moments[1:]:
        total = _merge(total, item)
    count, mean, m2 = total
    std_error = math.sqrt(m2 / (count - 1) / count) if count > 1 else 0.0
    return McResult(
        estimate=mean,
        std_error=std_error,
        n_pairs=count,
        seed=seed,
        batches=len(sizes),
    )


# vi: ts=4 sw=4 expandtab
