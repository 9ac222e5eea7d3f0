## adder-ud
## rate_search.py

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from code_core import CodeSystem, NormalizationCandidate, average_weights, normalize_step1
from errors import BalancedSeedError, EmptyConstituentError
from glue_construct import ConstructionResult, GlueParams, improved_sizes, powers_for
from utils.logger import logger, search_logger
from weight_spectrum import (
    WeightDistribution,
    convolve,
    moments,
    normalized_key,
    prefix_counts,
    range_count,
    spectrum,
)

#########################################################################################

@dataclass(frozen=True)
class SearchConfig:
    """Search space over n and g.

    Constituent indices are 0-based positions in the normalized system, so the
    g-carrying constituents are 1..T-1. g_max maps an index to a fixed cap;
    indices without a fixed cap get ceil(factor * sigma_i * sqrt(n)), widened
    automatically whenever the per-n optimum sits on it.
    """
    n_max: int
    groups: Tuple[Tuple[int, ...], ...]
    zero_fixed: FrozenSet[int] = frozenset()
    g_max: Optional[Dict[int, int]] = None

    def validate(self, T: int):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        members = sorted(i for group in self.groups for i in group)
        if members != list(range(1, T)):
            raise ValueError(f"groups {self.groups} do not partition the indices 1..{T - 1}")
        if not self.zero_fixed <= set(range(1, T)):
            raise ValueError(f"pinned indices {sorted(self.zero_fixed)} outside 1..{T - 1}")
        for group in self.groups:
            pinned = [i in self.zero_fixed for i in group]
            if any(pinned) and not all(pinned):
                raise ValueError(f"group {group} is only partly pinned to g=0")
        if self.g_max and any(cap < 0 for cap in self.g_max.values()):
            raise ValueError("g caps must be nonnegative")

    def describe(self) -> str:
        free = [g for g in self.groups if g[0] not in self.zero_fixed]
        caps = "auto" if not self.g_max else ",".join(f"{i + 1}:{c}" for i, c in sorted(self.g_max.items()))
        groups = " ".join("{" + ",".join(str(i + 1) for i in g) + "}" for g in free) or "none"
        pinned = ",".join(str(i + 1) for i in sorted(self.zero_fixed)) or "none"
        return f"n in [1, {self.n_max}]; free groups {groups}; pinned {pinned}; caps {caps}"


@dataclass
class SearchOutcome:
    best: ConstructionResult
    evaluated: int
    ties: List[GlueParams] = field(default_factory=list)
    cap_hits: List[Tuple[int, int]] = field(default_factory=list)   # (n, index) at a fixed cap
    search_space: str = ""
    elapsed: float = 0.0


@dataclass
class NormalizedSearch:
    candidate: NormalizationCandidate
    outcome: SearchOutcome
    candidates_tried: int

#########################################################################################

def symmetry_groups(norm: CodeSystem, n_max: int = 1) -> SearchConfig:
    """Tie constituents with proportional weight profiles; pin zero-variance ones to g=0."""
    groups: Dict[Tuple, List[int]] = {}
    pinned = set()
    for i in range(1, norm.T):
        dist = spectrum(norm.codes[i], norm.d)
        groups.setdefault(normalized_key(dist), []).append(i)
        if moments(dist).variance == 0:
            pinned.add(i)
    return SearchConfig(
        n_max=n_max,
        groups=tuple(tuple(members) for members in groups.values()),
        zero_fixed=frozenset(pinned),
    )


def _log2(count: int) -> float:
    return math.log2(count) if count > 0 else -math.inf


class _GridSearch:
    """Float-scored exhaustive grid over the free g groups, one n at a time."""

    def __init__(self, norm: CodeSystem, config: SearchConfig, sigma_cap_factor: float):
        self.norm = norm
        self.config = config
        self.sigma_cap_factor = sigma_cap_factor
        self.means = average_weights(norm)
        self.bases = [spectrum(code, norm.d) for code in norm.codes]
        self.sigmas = [moments(b).sigma for b in self.bases]
        self.free = [g for g in config.groups if g[0] not in config.zero_fixed]
        self.pinned = [i for g in config.groups if g[0] in config.zero_fixed for i in g]

    def _cap(self, group: Tuple[int, ...], n: int) -> Tuple[int, bool]:
        fixed = [self.config.g_max[i] for i in group if self.config.g_max and i in self.config.g_max]
        if fixed:
            return min(fixed), True
        sigma = max(self.sigmas[i] for i in group)
        return max(0, math.ceil(self.sigma_cap_factor * sigma * math.sqrt(n))), False

    def _full_width(self, i: int, n: int) -> int:
        center = n * self.means[i]
        return math.ceil(max(center, n * self.norm.d - center))

    def _band_logs(self, i: int, prefix: np.ndarray, n: int, cap: int) -> np.ndarray:
        center = n * self.means[i]
        return np.array([_log2(range_count(prefix, center - g, center + g)) for g in range(cap + 1)])

    def _first_logs(self, prefix: np.ndarray, n: int, g_top: int) -> np.ndarray:
        half = Fraction(self.norm.d * n, 2)
        logs = []
        for g in range(g_top + 1):
            a = range_count(prefix, 0, half - g - 1)
            b = range_count(prefix, 0, half - g)
            logs.append(_log2(a + b))
        return np.array(logs)

    def evaluate_n(self, n: int, prefixes: List[np.ndarray]):
        """Return (score grid, caps, fixed flags) for this n; score = log2 of the size product."""
        caps, fixed = zip(*(self._cap(g, n) for g in self.free)) if self.free else ((), ())
        caps = list(caps)
        while True:
            pinned_score = 0.0
            for i in self.pinned:
                pinned_score += self._band_logs(i, prefixes[i], n, 0)[0]
            mults = [len(g) for g in self.free]
            g_top = sum(m * c for m, c in zip(mults, caps))
            first = self._first_logs(prefixes[0], n, g_top)

            score = np.full((), pinned_score)
            g_sum = np.zeros((), dtype=np.int64)
            for k, group in enumerate(self.free):
                shape = [1] * len(self.free)
                shape[k] = caps[k] + 1
                logs = self._band_logs(group[0], prefixes[group[0]], n, caps[k]) * len(group)
                score = score + logs.reshape(shape)
                g_sum = g_sum + (np.arange(caps[k] + 1) * len(group)).reshape(shape)
            score = score + first[g_sum]

            if not np.isfinite(score.max()):
                return score, caps, fixed
            best = np.unravel_index(np.argmax(score), score.shape)
            widened = False
            for k, group in enumerate(self.free):
                if fixed[k] or best[k] < caps[k]:
                    continue
                limit = max(self._full_width(i, n) for i in group)
                if caps[k] < limit:
                    caps[k] = min(2 * caps[k] + 1, limit)
                    widened = True
            if not widened:
                return score, caps, fixed
            logger.debug(f"widened g caps to {caps}", extra={'n': n})

    def expand(self, point: Sequence[int]) -> Tuple[int, ...]:
        g = [0] * (self.norm.T - 1)
        for k, group in enumerate(self.free):
            for i in group:
                g[i - 1] = int(point[k])
        return tuple(g)


def search(norm: CodeSystem, config: SearchConfig, sigma_cap_factor: float = 3.0,
           tie_tolerance: float = 1e-12,
           progress: Optional[Callable[[int, float], None]] = None) -> SearchOutcome:
    config.validate(norm.T)
    if average_weights(norm)[0] == Fraction(norm.d, 2):
        raise BalancedSeedError("the normalized first code has average weight d/2; gluing cannot improve it")

    started = time.monotonic()
    grid = _GridSearch(norm, config, sigma_cap_factor)

    # one running power per distinct base spectrum, advanced once per n
    distinct: Dict[WeightDistribution, WeightDistribution] = {b: b for b in grid.bases}
    evaluated = 0
    near_best: List[Tuple[float, int, Tuple[int, ...]]] = []
    best_rate = -math.inf
    cap_hits: List[Tuple[int, int]] = []

    for n in range(1, config.n_max + 1):
        if n > 1:
            distinct = {b: convolve(p, b) for b, p in distinct.items()}
        prefixes = [prefix_counts(distinct[b]) for b in grid.bases]
        dim = norm.d * n

        score, caps, fixed = grid.evaluate_n(n, prefixes)
        evaluated += int(score.size)
        top = float(score.max())
        if not math.isfinite(top):
            continue
        rates = score / dim
        n_best = top / dim
        for point in np.argwhere(rates >= n_best - tie_tolerance):
            near_best.append((float(rates[tuple(point)]), n, grid.expand(point)))
        arg = np.unravel_index(np.argmax(score), score.shape)
        for k, group in enumerate(grid.free):
            if fixed[k] and arg[k] == caps[k]:
                cap_hits.extend((n, i) for i in group)
        best_rate = max(best_rate, n_best)
        if progress:
            progress(n, n_best)
        search_logger.info(f"n={n} best rate {n_best:.12f} over {score.size} points",
                           extra={'code_name': norm.name, 'users': norm.T, 'n': n})

    if not near_best:
        raise EmptyConstituentError(1, "no admissible (n, g) point gives nonempty constituents")

    # exact re-evaluation of every float near-optimum; ties break on smallest n, then g
    contenders = sorted((n, g) for rate, n, g in near_best if rate >= best_rate - tie_tolerance)
    powers_at: Dict[int, List[WeightDistribution]] = {}
    exact = []
    for n, g in contenders:
        if n not in powers_at:
            powers_at[n] = powers_for(norm, n)
        exact.append(improved_sizes(norm, GlueParams(n, g), powers_at[n]))
    top_exact = max(r.rate for r in exact)
    winners = [r for r in exact if top_exact - r.rate <= tie_tolerance]
    best = winners[0]

    elapsed = time.monotonic() - started
    outcome = SearchOutcome(
        best=best,
        evaluated=evaluated,
        ties=[r.params for r in winners[1:]],
        cap_hits=sorted(set(cap_hits)),
        search_space=config.describe(),
        elapsed=elapsed,
    )
    logger.info(
        f"search done: n={best.params.n}, g={best.params.g}, rate {float(best.rate):.12f}, "
        f"{evaluated} points, {len(outcome.ties)} tie(s)",
        extra={'code_name': norm.name, 'users': norm.T, 'elapsed': elapsed},
    )
    return outcome


def _candidate_key(sys: CodeSystem) -> Tuple:
    dists = [tuple(spectrum(code, sys.d).as_dict().items()) for code in sys.codes]
    return dists[0], tuple(sorted(dists[1:]))


def search_normalizations(sys: CodeSystem, n_max: int, g_max: Optional[int] = None,
                          sigma_cap_factor: float = 3.0, tie_tolerance: float = 1e-12,
                          normalize_cap: int = 1024) -> NormalizedSearch:
    """Run the search on every distinct Step-1 candidate and keep the best."""
    step1 = normalize_step1(sys, cap=normalize_cap)
    seen = set()
    best: Optional[NormalizedSearch] = None
    tried = 0
    for candidate in step1:
        key = _candidate_key(candidate.system)
        if key in seen:
            continue
        seen.add(key)
        tried += 1
        config = symmetry_groups(candidate.system, n_max)
        if g_max is not None:
            config = SearchConfig(config.n_max, config.groups, config.zero_fixed,
                                  {i: g_max for i in range(1, sys.T)})
        outcome = search(candidate.system, config, sigma_cap_factor, tie_tolerance)
        if best is None or outcome.best.rate > best.outcome.best.rate + tie_tolerance:
            best = NormalizedSearch(candidate, outcome, tried)
        logger.info(f"candidate mask={candidate.mask} order={candidate.order}: rate {float(outcome.best.rate):.12f}",
                    extra={'code_name': sys.name, 'users': sys.T})
    best.candidates_tried = tried
    return best
