## adder-ud
## glue_construct.py

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from code_core import CodeSystem, DEFAULT_TUPLE_GUARD, MAX_DIMENSION, average_weights
from errors import CertificationError, EmptyConstituentError, GuardExceededError
from utils.logger import logger
from weight_spectrum import (
    WeightDistribution,
    band_count,
    cumulative_count,
    power,
    reflect,
    spectrum,
)

LOG_DPS = 50
MANTISSA_BITS = 128
RATE_ERROR = 1e-12

#########################################################################################

@dataclass(frozen=True)
class GlueParams:
    n: int
    g: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(int(x) for x in self.g))
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if any(x < 0 for x in self.g):
            raise ValueError(f"g values must be nonnegative, got {self.g}")

    @property
    def g_total(self) -> int:
        return sum(self.g)


@dataclass(frozen=True)
class ConstructionResult:
    sizes: Tuple[int, ...]
    a_size: int
    b_size: int
    dim: int
    rate: mpmath.mpf
    params: Optional[GlueParams] = None
    rate_error: float = RATE_ERROR


@dataclass(frozen=True)
class SeparationCertificate:
    a_side_max: Fraction        # largest sum weight the A* side can reach
    b_side_min: Fraction        # smallest sum weight the B* side can reach
    gap: Fraction
    realized_a_max: int         # same quantities over the weights actually present
    realized_b_min: int

    @property
    def holds(self) -> bool:
        return self.a_side_max < self.b_side_min and self.realized_a_max < self.realized_b_min

#########################################################################################

def _log2_factor(factor: int) -> mpmath.mpf:
    if factor & (factor - 1) == 0:
        return mpmath.mpf(factor.bit_length() - 1)
    shift = max(0, factor.bit_length() - MANTISSA_BITS)
    return shift + mpmath.log(mpmath.mpf(factor >> shift), 2)


def log2_product(factors: Sequence[int]) -> mpmath.mpf:
    """Sum of log2 over big-integer factors, absolute error far below 1e-12."""
    with mpmath.workdps(LOG_DPS):
        total = mpmath.mpf(0)
        for f in factors:
            f = int(f)
            if f < 1:
                raise ValueError(f"log2_product needs factors >= 1, got {f}")
            total += _log2_factor(f)
        return +total


def rate_from_sizes(sizes: Sequence[int], dim: int) -> mpmath.mpf:
    with mpmath.workdps(LOG_DPS):
        return log2_product(sizes) / dim


def powers_for(norm: CodeSystem, n: int, powers: Optional[Sequence[WeightDistribution]] = None) -> List[WeightDistribution]:
    if powers is not None:
        return list(powers)
    cache: Dict[WeightDistribution, WeightDistribution] = {}
    out = []
    for code in norm.codes:
        base = spectrum(code, norm.d)
        if base not in cache:
            cache[base] = power(base, n)
        out.append(cache[base])
    return out


def _check_params(norm: CodeSystem, params: GlueParams):
    if len(params.g) != norm.T - 1:
        raise ValueError(f"expected {norm.T - 1} g values for T={norm.T}, got {len(params.g)}")


def improved_sizes(norm: CodeSystem, params: GlueParams,
                   powers: Optional[Sequence[WeightDistribution]] = None) -> ConstructionResult:
    _check_params(norm, params)
    n, d = params.n, norm.d
    dim = d * n
    means = average_weights(norm)
    powered = powers_for(norm, n, powers)
    half = Fraction(dim, 2)
    g = params.g_total

    a_size = cumulative_count(powered[0], half - g - 1)
    # B* keeps complemented words of weight >= dn/2 + g, i.e. original weight <= dn/2 - g
    b_size = cumulative_count(powered[0], half - g)
    sizes = [a_size + b_size]
    for i in range(1, norm.T):
        center = n * means[i]
        sizes.append(band_count(powered[i], center - params.g[i - 1], center + params.g[i - 1]))

    for i, size in enumerate(sizes):
        if size == 0:
            raise EmptyConstituentError(i + 1)

    return ConstructionResult(tuple(sizes), a_size, b_size, dim, rate_from_sizes(sizes, dim), params)


def _support_extremes(dist: WeightDistribution, lo: Fraction, hi: Fraction) -> Tuple[int, int]:
    inside = [w for w in dist.support if lo <= w <= hi]
    return min(inside), max(inside)


def weight_separation(norm: CodeSystem, params: GlueParams, result: ConstructionResult,
                      powers: Optional[Sequence[WeightDistribution]] = None) -> SeparationCertificate:
    _check_params(norm, params)
    if any(s == 0 for s in result.sizes):
        raise EmptyConstituentError(result.sizes.index(0) + 1)
    n = params.n
    dim = norm.d * n
    half = Fraction(dim, 2)
    g = params.g_total
    means = average_weights(norm)
    powered = powers_for(norm, n, powers)

    bands = [(n * means[i] - params.g[i - 1], n * means[i] + params.g[i - 1]) for i in range(1, norm.T)]
    a_side_max = (half - g - 1) + sum(hi for _, hi in bands)
    b_side_min = (half + g) + sum(lo for lo, _ in bands)

    realized = [_support_extremes(powered[i], *bands[i - 1]) for i in range(1, norm.T)]
    rest_max = sum(hi for _, hi in realized)
    rest_min = sum(lo for lo, _ in realized)
    # realized extremes of A* and B* (B* read through the complemented power)
    realized_a_max = (max(w for w in powered[0].support if w <= half - g - 1) + rest_max
                      if result.a_size else -1)
    realized_b_min = (min(w for w in reflect(powered[0]).support if w >= half + g) + rest_min
                      if result.b_size else dim * norm.T + 1)

    cert = SeparationCertificate(a_side_max, b_side_min, b_side_min - a_side_max,
                                 realized_a_max, realized_b_min)
    if not cert.holds:
        raise CertificationError(
            f"weight separation fails for n={n}, g={params.g}: "
            f"A side reaches {a_side_max}, B side starts at {b_side_min}"
        )
    return cert


def _product_words(code: Sequence[int], d: int, n: int) -> List[Tuple[int, int]]:
    """(word, weight) for every concatenation of n codewords."""
    weights = {c: c.bit_count() for c in code}
    words = []
    for blocks in product(code, repeat=n):
        word = 0
        for j, c in enumerate(blocks):
            word |= c << (d * j)
        words.append((word, sum(weights[c] for c in blocks)))
    return words


def materialize_small(norm: CodeSystem, params: GlueParams, guard: int = DEFAULT_TUPLE_GUARD) -> CodeSystem:
    """Build C_1*, ..., C_T* explicitly; only sensible for tiny n."""
    _check_params(norm, params)
    n, d = params.n, norm.d
    dim = d * n
    if dim > MAX_DIMENSION:
        raise GuardExceededError(dim, MAX_DIMENSION, what="coordinates")
    enumerated = sum(len(code) ** n for code in norm.codes)
    if enumerated > guard:
        raise GuardExceededError(enumerated, guard, what="product codewords")

    means = average_weights(norm)
    half = Fraction(dim, 2)
    g = params.g_total
    full = (1 << dim) - 1

    first = _product_words(norm.codes[0], d, n)
    a_star = [w for w, wt in first if wt <= half - g - 1]
    # B* lives in the complemented power; complementing every block complements the word
    b_star = [w ^ full for w, wt in first if dim - wt >= half + g]
    codes = [tuple(a_star + b_star)]
    for i in range(1, norm.T):
        center = n * means[i]
        lo, hi = center - params.g[i - 1], center + params.g[i - 1]
        codes.append(tuple(w for w, wt in _product_words(norm.codes[i], d, n) if lo <= wt <= hi))

    for i, code in enumerate(codes):
        if not code:
            raise EmptyConstituentError(i + 1)
    total = math.prod(len(code) for code in codes)
    if total > guard:
        raise GuardExceededError(total, guard)

    logger.debug(f"materialized glued system, sizes {[len(c) for c in codes]}",
                 extra={'code_name': norm.name, 'users': norm.T, 'n': n})
    return CodeSystem(dim, tuple(codes), name=f"{norm.name or 'code'}*n{n}")


def theorem_construction(norm: CodeSystem, n: int,
                         powers: Optional[Sequence[WeightDistribution]] = None) -> ConstructionResult:
    """Exact sizes of the existence-proof construction at a given n.

    Bands are +-alpha*n*sigma_i around n*wt(C_i) for positive-variance i >= 2, and the
    glued first code keeps weights below dn/2 - kappa*n (A*) or, in the complemented
    power, at least dn/2 + kappa*n (B*).
    """
    from bounds import theorem1_params

    params = theorem1_params(norm)
    d = norm.d
    dim = d * n
    means = average_weights(norm)
    powered = powers_for(norm, n, powers)
    half = Fraction(dim, 2)

    a_hi = half - params.kappa * n
    # weights strictly below a_hi
    a_size = cumulative_count(powered[0], math.ceil(a_hi) - 1)
    b_size = cumulative_count(powered[0], half - params.kappa * n)
    sizes = [a_size + b_size]
    with mpmath.workdps(LOG_DPS):
        # alpha and sigma_i are irrational in general; endpoints are rounded at 50 digits
        sigmas = [mpmath.sqrt(mpmath.mpf(s.variance.numerator) / s.variance.denominator)
                  for s in params.stats]
        gap = params.weight_gap
        alpha = (mpmath.mpf(gap.numerator) / gap.denominator / (2 * sum(sigmas[1:]))
                 if params.alpha is not None else None)
        for i in range(1, norm.T):
            if i not in params.I or alpha is None:
                sizes.append(powered[i].total)
                continue
            radius = alpha * n * sigmas[i]
            center = mpmath.mpf(means[i].numerator) / means[i].denominator * n
            lo = int(mpmath.ceil(center - radius))
            hi = int(mpmath.floor(center + radius))
            sizes.append(band_count(powered[i], lo, hi) if lo <= hi else 0)

    for i, size in enumerate(sizes):
        if size == 0:
            raise EmptyConstituentError(i + 1)
    return ConstructionResult(tuple(sizes), a_size, b_size, dim, rate_from_sizes(sizes, dim))
