## adder-ud
## weight_spectrum.py

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from code_core import hamming_weight

Rational = Union[int, Fraction]

#########################################################################################

@dataclass(frozen=True, eq=False)
class WeightDistribution:
    """Exact weight enumerator: counts[w] codewords of weight w, 0 <= w <= span.

    Counts live in a dense numpy object array so they stay arbitrary-precision
    Python integers through every convolution.
    """
    span: int
    counts: np.ndarray

    @classmethod
    def from_counts(cls, counts: Dict[int, int], span: int) -> "WeightDistribution":
        dense = np.zeros(span + 1, dtype=object)
        for w, c in counts.items():
            if not 0 <= w <= span:
                raise ValueError(f"weight {w} outside [0, {span}]")
            if c < 0:
                raise ValueError(f"negative count {c} at weight {w}")
            dense[w] = int(c)
        return cls(span, dense)

    @property
    def total(self) -> int:
        return int(sum(self.counts))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(int(w) for w in np.flatnonzero(self.counts))

    def as_dict(self) -> Dict[int, int]:
        return {w: int(self.counts[w]) for w in self.support}

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return self.span == other.span and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash((self.span, tuple(self.as_dict().items())))

    def __repr__(self) -> str:
        return f"WeightDistribution(span={self.span}, counts={self.as_dict()})"


@dataclass(frozen=True)
class Moments:
    mean: Fraction
    variance: Fraction
    rho3: Optional[float] = None

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

#########################################################################################

def spectrum(code: Sequence[int], d: int) -> WeightDistribution:
    if not code:
        raise ValueError("cannot take the spectrum of an empty code")
    counts: Dict[int, int] = {}
    for c in code:
        w = hamming_weight(c)
        counts[w] = counts.get(w, 0) + 1
    return WeightDistribution.from_counts(counts, d)


def convolve(a: WeightDistribution, b: WeightDistribution) -> WeightDistribution:
    """Weight distribution of the concatenation of one word from each code."""
    out = np.zeros(a.span + b.span + 1, dtype=object)
    width = a.span + 1
    for w in np.flatnonzero(b.counts):
        out[w:w + width] += a.counts * b.counts[w]
    return WeightDistribution(a.span + b.span, out)


def iter_powers(dist: WeightDistribution, n_max: int) -> Iterator[Tuple[int, WeightDistribution]]:
    """Yield (n, dist^n) for n = 1..n_max, each built from the previous one."""
    current = dist
    for n in range(1, n_max + 1):
        if n > 1:
            current = convolve(current, dist)
        yield n, current


def power(dist: WeightDistribution, n: int) -> WeightDistribution:
    if n < 1:
        raise ValueError(f"power needs n >= 1, got {n}")
    result = dist
    for _, result in iter_powers(dist, n):
        pass
    return result


def reflect(dist: WeightDistribution) -> WeightDistribution:
    return WeightDistribution(dist.span, dist.counts[::-1].copy())


def moments(dist: WeightDistribution) -> Moments:
    total = dist.total
    if total < 1:
        raise ValueError("moments need a nonempty distribution")
    items = dist.as_dict().items()
    mean = Fraction(sum(w * c for w, c in items), total)
    variance = Fraction(sum(c * (w - mean) ** 2 for w, c in items), total)
    if variance == 0:
        return Moments(mean, variance)

    third = Fraction(sum(c * abs(w - mean) ** 3 for w, c in items), total)
    with mpmath.workdps(40):
        sigma3 = mpmath.power(mpmath.mpf(variance.numerator) / variance.denominator, 1.5)
        rho3 = mpmath.mpf(third.numerator) / third.denominator / sigma3
        return Moments(mean, variance, float(rho3))


def prefix_counts(dist: WeightDistribution) -> np.ndarray:
    """prefix[w] = number of words of weight <= w."""
    return np.cumsum(dist.counts)


def _count_up_to(prefix: np.ndarray, hi: int) -> int:
    if hi < 0:
        return 0
    return int(prefix[min(hi, len(prefix) - 1)])


def range_count(prefix: np.ndarray, lo: Rational, hi: Rational) -> int:
    """Words with lo <= weight <= hi, from precomputed prefix counts."""
    lo_int = max(math.ceil(lo), 0)
    hi_int = math.floor(hi)
    if hi_int < lo_int:
        return 0
    return _count_up_to(prefix, hi_int) - _count_up_to(prefix, lo_int - 1)


def band_count(dist: WeightDistribution, lo: Rational, hi: Rational) -> int:
    if lo > hi:
        raise ValueError(f"empty band [{lo}, {hi}]")
    return range_count(prefix_counts(dist), Fraction(lo), Fraction(hi))


def cumulative_count(dist: WeightDistribution, hi: Rational) -> int:
    return range_count(prefix_counts(dist), 0, Fraction(hi))


def normalized_key(dist: WeightDistribution) -> Tuple[Tuple[int, int], ...]:
    """Weights with counts divided by their gcd; equal keys mean equal profiles."""
    items = dist.as_dict()
    g = math.gcd(*items.values())
    return tuple((w, c // g) for w, c in items.items())


def format_distribution(dist: WeightDistribution) -> str:
    return "\n".join(f"{w} {c}" for w, c in dist.as_dict().items())
