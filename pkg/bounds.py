## adder-ud
## bounds.py

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple

import mpmath

from code_core import CodeSystem, average_weights, sum_rate_seed
from errors import BalancedSeedError
from glue_construct import LOG_DPS, log2_product
from utils.logger import logger
from weight_spectrum import (
    Moments,
    WeightDistribution,
    band_count,
    moments,
    power,
    prefix_counts,
    range_count,
    spectrum,
)

# Berry-Esseen constants, used as given
ONE_SIDED_CONSTANT = 0.345
TWO_SIDED_CONSTANT = 0.69

#########################################################################################

@dataclass(frozen=True)
class TheoremParams:
    """Constants of the existence proof for one normalized seed code.

    Indices are 0-based: index 0 is the normalized first code.
    """
    d: int
    T: int
    rate: float
    mean_first: Fraction
    kappa: Fraction
    beta: float
    alpha: Optional[float]
    I: FrozenSet[int]
    sigmas: Tuple[float, ...]
    stats: Tuple[Moments, ...] = field(repr=False, default=())

    @property
    def weight_gap(self) -> Fraction:
        """d/2 minus the average weight of the first code."""
        return Fraction(self.d, 2) - self.mean_first

    def theta(self, n: int) -> float:
        terms = []
        if self.alpha is not None:
            terms.append(math.exp(-n * self.alpha ** 2 / 2) + 2 * self.beta / math.sqrt(n))
        if self.sigmas[0] > 0:
            exponent = -n * float(self.weight_gap) ** 2 / (8 * self.sigmas[0] ** 2)
            terms.append(0.5 * math.exp(exponent) + self.beta / math.sqrt(n))
        # no positive-variance constituent: every band constraint is redundant
        return max(terms) if terms else 0.0

    def guaranteed_rate(self, n: int) -> float:
        theta = self.theta(n)
        if theta >= 1:
            return float("-inf")
        return self.rate + (1 + self.T * math.log2(1 - theta)) / (self.d * n)

#########################################################################################

def upper_bound(T: int) -> mpmath.mpf:
    """Entropy upper bound on the sum rate of a T-user UD code.

    Uses p_k log2(1/p_k) = p_k (T - log2 C(T, k)) so dyadic terms stay exact.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    with mpmath.workdps(LOG_DPS):
        total = mpmath.mpf(0)
        for k in range(T + 1):
            count = math.comb(T, k)
            total += mpmath.mpf(count) / 2 ** T * (T - log2_product([count]))
        return +total


def phi(x: float) -> float:
    return float(mpmath.ncdf(x))


def gaussian_tail(x: float) -> float:
    """Upper bound 0.5*exp(-x^2/2) on the standard normal CDF for x <= 0."""
    if x > 0:
        raise ValueError(f"gaussian_tail needs x <= 0, got {x}")
    return 0.5 * math.exp(-x * x / 2)


def _checked_moments(dist: WeightDistribution, n: int, t: float) -> Moments:
    stats = moments(dist)
    if stats.variance == 0:
        raise ValueError("concentration bounds need a positive-variance base code")
    if t <= 0 or n < 1:
        raise ValueError(f"need t > 0 and n >= 1, got t={t}, n={n}")
    return stats


def lemma1_two_sided(dist: WeightDistribution, n: int, t: float) -> float:
    """Guaranteed fraction of the n-fold power within +-t of its mean weight."""
    stats = _checked_moments(dist, n, t)
    return (1 - math.exp(-t * t / (2 * n * float(stats.variance)))
            - TWO_SIDED_CONSTANT * (1 + stats.rho3) / math.sqrt(n))


def lemma1_one_sided(dist: WeightDistribution, n: int, t: float) -> float:
    """Guaranteed fraction on either side: weight >= mean - t, or weight <= mean + t."""
    stats = _checked_moments(dist, n, t)
    return (1 - 0.5 * math.exp(-t * t / (2 * n * float(stats.variance)))
            - ONE_SIDED_CONSTANT * (1 + stats.rho3) / math.sqrt(n))


def exact_band_fractions(dist: WeightDistribution, n: int, t) -> Tuple[Fraction, Fraction, Fraction]:
    """Exact (two-sided, lower one-sided, upper one-sided) fractions of dist^n.

    Thresholds are taken around the mean weight of the power, n*mean.
    """
    powered = power(dist, n)
    total = powered.total
    center = n * moments(dist).mean
    t = Fraction(t)
    prefix = prefix_counts(powered)
    two_sided = Fraction(band_count(powered, center - t, center + t), total)
    lower = Fraction(range_count(prefix, center - t, powered.span), total)
    upper = Fraction(range_count(prefix, 0, center + t), total)
    return two_sided, lower, upper


def theorem1_params(norm: CodeSystem) -> TheoremParams:
    means = average_weights(norm)
    gap = Fraction(norm.d, 2) - means[0]
    if gap == 0:
        raise BalancedSeedError("the first code has average weight d/2; the seed cannot be improved")
    if gap < 0:
        raise ValueError("the first code is not normalized: its average weight exceeds d/2")

    stats = tuple(moments(spectrum(code, norm.d)) for code in norm.codes)
    sigmas = tuple(s.sigma for s in stats)
    I = frozenset(i for i, s in enumerate(stats) if s.variance > 0)

    beta = ONE_SIDED_CONSTANT * max((1 + stats[i].rho3 for i in I), default=0.0)
    alpha = None
    if I - {0}:
        alpha = float(gap) / (2 * sum(sigmas[1:]))
    else:
        logger.info("alpha undefined: every constituent after the first has zero variance")

    return TheoremParams(
        d=norm.d,
        T=norm.T,
        rate=float(sum_rate_seed(norm)),
        mean_first=means[0],
        kappa=gap / 2,
        beta=beta,
        alpha=alpha,
        I=I,
        sigmas=sigmas,
        stats=stats,
    )


def smallest_improving_n(params: TheoremParams, limit: int = 1_000_000) -> Optional[int]:
    """Smallest n whose guaranteed rate beats the seed rate, or None up to limit."""
    for n in range(1, limit + 1):
        if params.guaranteed_rate(n) > params.rate:
            return n
    return None


def theta_profile(params: TheoremParams, ns: List[int]) -> List[Tuple[int, float, float]]:
    return [(n, params.theta(n), params.guaranteed_rate(n)) for n in ns]
