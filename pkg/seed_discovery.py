## adder-ud
## seed_discovery.py

import math
import time
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import numpy as np

from code_core import DEFAULT_TUPLE_GUARD, CodeSystem, sum_multiplicities, verify_ud
from errors import GuardExceededError, InvalidSizesError
from utils.logger import logger, search_logger

# dense histogram of sum vectors has (T+1)^d cells
HISTOGRAM_LIMIT = 1 << 26

#########################################################################################

@dataclass(frozen=True)
class DiscoverySpec:
    d: int
    sizes: Tuple[int, ...]
    budget: int = 10_000
    tenure: int = 8
    seed: int = 0
    stagnation: int = 2000
    guard: int = DEFAULT_TUPLE_GUARD

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))

    @property
    def T(self) -> int:
        return len(self.sizes)

    def validate(self):
        if not 1 <= self.d <= 26:
            raise InvalidSizesError(f"dimension must be in [1, 26] for discovery, got {self.d}")
        if not self.sizes:
            raise InvalidSizesError("at least one constituent size is needed")
        for i, s in enumerate(self.sizes):
            if not 1 <= s <= (1 << self.d):
                raise InvalidSizesError(f"size {s} of constituent {i + 1} is outside [1, 2^{self.d}]")
        total = math.prod(self.sizes)
        if total > self.guard:
            raise GuardExceededError(total, self.guard)
        cells = (self.T + 1) ** self.d
        if cells > HISTOGRAM_LIMIT:
            raise GuardExceededError(cells, HISTOGRAM_LIMIT, what="sum-vector cells")
        if self.budget < 0 or self.tenure < 0 or self.stagnation < 1:
            raise ValueError("budget and tenure must be nonnegative and stagnation positive")


@dataclass
class DiscoveryFailure:
    """No conflict-free system within the budget; best system seen is kept."""
    best_conflicts: int
    best_system: CodeSystem
    iterations: int
    restarts: int
    reason: str = "budget exhausted"


@dataclass
class _Move:
    index: int          # constituent
    slot: int           # position inside the constituent
    word: int           # incoming word
    delta: int

#########################################################################################

def conflict_count(sys: CodeSystem, guard: int = DEFAULT_TUPLE_GUARD) -> int:
    """Unordered pairs of distinct tuples sharing a sum vector."""
    _, _, counts = sum_multiplicities(sys, guard)
    counts = counts.astype(object)
    return int((counts * (counts - 1) // 2).sum())


def _pairs(m: np.ndarray) -> np.ndarray:
    return m * (m - 1) // 2


class TabuCodeSearch:
    """Single-word replacement tabu search on the number of colliding tuple pairs."""

    def __init__(self, spec: DiscoverySpec):
        spec.validate()
        self.spec = spec
        self.base = spec.T + 1
        words = np.arange(1 << spec.d)
        # spread[w]: word w with every coordinate as one base-(T+1) digit
        self.spread = sum(((words >> k) & 1) * self.base ** k for k in range(spec.d)).astype(np.int64)
        self.cells = self.base ** spec.d
        self.tabu: Dict[Tuple[int, int], int] = {}

    def _random_system(self, rng: np.random.Generator) -> List[np.ndarray]:
        return [rng.choice(1 << self.spec.d, size=s, replace=False) for s in self.spec.sizes]

    def _sums_except(self, chosen: List[np.ndarray], skip: int) -> Tuple[np.ndarray, np.ndarray]:
        sums = np.zeros(1, dtype=np.int64)
        for i, code in enumerate(chosen):
            if i != skip:
                sums = np.add.outer(sums, self.spread[code]).ravel()
        return np.unique(sums, return_counts=True)

    def _histogram(self, chosen: List[np.ndarray]) -> np.ndarray:
        sums, counts = self._sums_except(chosen, -1)
        hist = np.zeros(self.cells, dtype=np.int64)
        hist[sums] = counts
        return hist

    def _candidate_moves(self, chosen: List[np.ndarray], hist: np.ndarray) -> List[_Move]:
        moves = []
        n_words = 1 << self.spec.d
        for i, code in enumerate(chosen):
            unused = np.setdiff1d(np.arange(n_words), code)
            if unused.size == 0:
                continue
            others, mult = self._sums_except(chosen, i)
            own_pairs = int(_pairs(mult).sum())
            for slot, a in enumerate(code):
                removed_at = others + self.spread[a]
                reduced = hist.copy()
                reduced[removed_at] -= mult
                removal = int((_pairs(reduced[removed_at]) - _pairs(hist[removed_at])).sum())
                # new collisions of b's tuples against the rest, plus among themselves
                targets = others[:, None] + self.spread[unused][None, :]
                addition = mult @ reduced[targets] + own_pairs
                for b, gain in zip(unused, addition):
                    moves.append(_Move(i, slot, int(b), removal + int(gain)))
        return moves

    def _is_tabu(self, move: _Move, chosen: List[np.ndarray], it: int) -> bool:
        outgoing = int(chosen[move.index][move.slot])
        return (self.tabu.get((move.index, move.word), -1) >= it
                or self.tabu.get((move.index, outgoing), -1) >= it)

    def run(self) -> Union[CodeSystem, DiscoveryFailure]:
        spec = self.spec
        started = time.monotonic()
        restart = 0
        rng = np.random.default_rng([spec.seed, restart])
        chosen = self._random_system(rng)
        hist = self._histogram(chosen)
        conflicts = int(_pairs(hist).sum())
        best_conflicts, best_chosen = conflicts, [c.copy() for c in chosen]
        since_improvement = 0

        it = 0
        reason = "budget exhausted"
        while conflicts > 0 and it < spec.budget:
            moves = self._candidate_moves(chosen, hist)
            if not moves:
                reason = "no replacement word available"
                break
            admissible = [m for m in moves
                          if not self._is_tabu(m, chosen, it) or conflicts + m.delta == 0]
            if not admissible:
                self.tabu.clear()
                admissible = moves
            lowest = min(m.delta for m in admissible)
            ties = [m for m in admissible if m.delta == lowest]
            move = ties[int(rng.integers(len(ties)))]

            outgoing = int(chosen[move.index][move.slot])
            others, mult = self._sums_except(chosen, move.index)
            hist[others + self.spread[outgoing]] -= mult
            hist[others + self.spread[move.word]] += mult
            chosen[move.index][move.slot] = move.word
            conflicts += move.delta
            self.tabu[(move.index, outgoing)] = it + spec.tenure
            self.tabu[(move.index, move.word)] = it + spec.tenure
            it += 1

            if conflicts < best_conflicts:
                best_conflicts, best_chosen = conflicts, [c.copy() for c in chosen]
                since_improvement = 0
            else:
                since_improvement += 1
            if since_improvement >= spec.stagnation and conflicts > 0:
                restart += 1
                rng = np.random.default_rng([spec.seed, restart])
                chosen = self._random_system(rng)
                hist = self._histogram(chosen)
                conflicts = int(_pairs(hist).sum())
                self.tabu.clear()
                since_improvement = 0
                search_logger.info(f"restart {restart} after {it} moves, best so far {best_conflicts}")
            if it % 1000 == 0:
                search_logger.debug(f"move {it}: {conflicts} conflicts (best {best_conflicts})")

        elapsed = time.monotonic() - started
        system = CodeSystem(spec.d, tuple(tuple(sorted(int(w) for w in c)) for c in best_chosen),
                            name=f"tabu-d{spec.d}-" + "x".join(map(str, spec.sizes)))
        if best_conflicts == 0:
            if not verify_ud(system, spec.guard).is_ud:
                raise AssertionError("histogram bookkeeping drifted from the true sum multiset")
            logger.info(f"found UD system after {it} moves and {restart} restart(s)",
                        extra={'command': 'discover', 'users': spec.T, 'elapsed': elapsed})
            return system

        logger.info(f"no UD system found: best {best_conflicts} conflicts after {it} moves",
                    extra={'command': 'discover', 'users': spec.T, 'elapsed': elapsed})
        return DiscoveryFailure(best_conflicts, system, it, restart, reason)


def tabu_search(spec: DiscoverySpec) -> Union[CodeSystem, DiscoveryFailure]:
    return TabuCodeSearch(spec).run()
