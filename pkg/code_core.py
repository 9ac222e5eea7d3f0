## adder-ud
## code_core.py

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import (
    CodewordRangeError,
    DuplicateCodewordError,
    GuardExceededError,
    InvalidPermutationError,
)
from utils.logger import logger

MAX_DIMENSION = 64
DEFAULT_TUPLE_GUARD = 100_000_000

#########################################################################################

@dataclass(frozen=True)
class Codeword:
    """A d-bit binary vector; bit k of value is coordinate k+1."""
    value: int
    d: int

    def __post_init__(self):
        if not 1 <= self.d <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.d}")
        if not 0 <= self.value < (1 << self.d):
            raise CodewordRangeError(f"codeword {self.value} does not fit in dimension {self.d}")

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def bits(self) -> List[int]:
        return [(self.value >> k) & 1 for k in range(self.d)]


@dataclass(frozen=True)
class CodeSystem:
    """T constituent codes over {0,1}^d, each kept in its given order."""
    d: int
    codes: Tuple[Tuple[int, ...], ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not 1 <= self.d <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.d}")
        codes = tuple(tuple(int(c) for c in code) for code in self.codes)
        if not codes:
            raise ValueError("a code system needs at least one constituent code")
        limit = 1 << self.d
        for i, code in enumerate(codes):
            if not code:
                raise ValueError(f"constituent code {i + 1} is empty")
            seen = set()
            for j, c in enumerate(code):
                if not 0 <= c < limit:
                    raise CodewordRangeError(
                        f"codeword {c} does not fit in dimension {self.d}",
                        location=f"codes[{i}][{j}]",
                    )
                if c in seen:
                    raise DuplicateCodewordError(
                        f"codeword {c} appears twice in constituent code {i + 1}",
                        location=f"codes[{i}][{j}]",
                    )
                seen.add(c)
        object.__setattr__(self, "codes", codes)

    @property
    def T(self) -> int:
        return len(self.codes)

    @property
    def sizes(self) -> List[int]:
        return [len(code) for code in self.codes]

    @property
    def total_tuples(self) -> int:
        return prod(self.sizes)

    def as_sets(self) -> List[frozenset]:
        return [frozenset(code) for code in self.codes]

    def same_sets(self, other: "CodeSystem") -> bool:
        return self.d == other.d and self.as_sets() == other.as_sets()

    def renamed(self, name: Optional[str]) -> "CodeSystem":
        return CodeSystem(self.d, self.codes, name=name)


@dataclass(frozen=True)
class Witness:
    first: Tuple[int, ...]
    second: Tuple[int, ...]
    sum_vector: Tuple[int, ...]


@dataclass(frozen=True)
class UDReport:
    is_ud: bool
    total_tuples: int
    distinct_sums: int
    witness: Optional[Witness] = None

    @property
    def collisions(self) -> int:
        return self.total_tuples - self.distinct_sums


@dataclass(frozen=True)
class NormalizationCandidate:
    system: CodeSystem
    mask: int
    order: Tuple[int, ...]          # order[k] = original index of the new constituent k
    min_average: Fraction


@dataclass
class Step1Result:
    """All Step-1 optima; behaves like the list of candidates."""
    candidates: List[NormalizationCandidate]
    min_average: Fraction
    optimal_masks: int
    truncated: bool = False

    def __iter__(self) -> Iterator[NormalizationCandidate]:
        return iter(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __getitem__(self, index):
        return self.candidates[index]

#########################################################################################

def hamming_weight(c: Union[Codeword, int]) -> int:
    if isinstance(c, Codeword):
        return c.weight
    return int(c).bit_count()


def average_weight(code: Sequence[int]) -> Fraction:
    return Fraction(sum(hamming_weight(c) for c in code), len(code))


def average_weights(sys: CodeSystem) -> List[Fraction]:
    return [average_weight(code) for code in sys.codes]


def sum_vector(words: Sequence[int], d: int) -> Tuple[int, ...]:
    """Coordinate-wise integer sum of the given codewords."""
    return tuple(sum((w >> k) & 1 for w in words) for k in range(d))


def _spread_base(sys: CodeSystem) -> int:
    return sys.T + 1


def _spread(value: int, d: int, base: int) -> int:
    # Each coordinate becomes one base-(T+1) digit, so integer addition of spread
    # values never carries and equals the sum vector read as a number.
    out = 0
    scale = 1
    for k in range(d):
        if (value >> k) & 1:
            out += scale
        scale *= base
    return out


def spread_arrays(sys: CodeSystem) -> List[np.ndarray]:
    """Per constituent, the codewords mapped to integers encoding their sum vectors."""
    base = _spread_base(sys)
    dtype = np.int64 if base ** sys.d < 2 ** 62 else object
    return [
        np.array([_spread(c, sys.d, base) for c in code], dtype=dtype)
        for code in sys.codes
    ]


def enumerate_sums(sys: CodeSystem, guard: int = DEFAULT_TUPLE_GUARD) -> np.ndarray:
    """Encoded sum of every T-tuple; flat index follows C order over sys.sizes."""
    total = sys.total_tuples
    if total > guard:
        raise GuardExceededError(total, guard)
    arrays = spread_arrays(sys)
    sums = arrays[0]
    for arr in arrays[1:]:
        sums = np.add.outer(sums, arr).ravel()
    return sums


def sum_multiplicities(sys: CodeSystem, guard: int = DEFAULT_TUPLE_GUARD) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(all encoded sums, distinct sums, multiplicity of each distinct sum)."""
    sums = enumerate_sums(sys, guard)
    distinct, counts = np.unique(sums, return_counts=True)
    return sums, distinct, counts


def verify_ud(sys: CodeSystem, guard: int = DEFAULT_TUPLE_GUARD) -> UDReport:
    sums, distinct, counts = sum_multiplicities(sys, guard)
    total = sys.total_tuples
    n_distinct = int(len(distinct))
    if n_distinct == total:
        logger.debug(f"UD verified over {total} tuples", extra={'code_name': sys.name, 'users': sys.T})
        return UDReport(True, total, n_distinct)

    repeated = distinct[np.argmax(counts > 1)]
    first, second = np.flatnonzero(sums == repeated)[:2]
    idx_a = np.unravel_index(first, sys.sizes)
    idx_b = np.unravel_index(second, sys.sizes)
    tuple_a = tuple(sys.codes[i][int(k)] for i, k in enumerate(idx_a))
    tuple_b = tuple(sys.codes[i][int(k)] for i, k in enumerate(idx_b))
    witness = Witness(tuple_a, tuple_b, sum_vector(tuple_a, sys.d))
    logger.debug(
        f"not UD: {total - n_distinct} colliding tuples, witness {tuple_a} / {tuple_b}",
        extra={'code_name': sys.name, 'users': sys.T},
    )
    return UDReport(False, total, n_distinct, witness)

#########################################################################################

def negate_coords(sys: CodeSystem, mask: Union[Codeword, int]) -> CodeSystem:
    m = mask.value if isinstance(mask, Codeword) else int(mask)
    if not 0 <= m < (1 << sys.d):
        raise CodewordRangeError(f"mask {m} does not fit in dimension {sys.d}")
    return CodeSystem(sys.d, tuple(tuple(c ^ m for c in code) for code in sys.codes), name=sys.name)


def _permute_word(c: int, perm: Sequence[int]) -> int:
    out = 0
    for k, target in enumerate(perm):
        if (c >> k) & 1:
            out |= 1 << target
    return out


def permute_coords(sys: CodeSystem, perm: Sequence[int]) -> CodeSystem:
    """Move bit k of every codeword to position perm[k] (0-based coordinates)."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(sys.d)):
        raise InvalidPermutationError(f"{perm} is not a permutation of 0..{sys.d - 1}")
    return CodeSystem(
        sys.d,
        tuple(tuple(_permute_word(c, perm) for c in code) for code in sys.codes),
        name=sys.name,
    )


def reorder_constituents(sys: CodeSystem, order: Sequence[int]) -> CodeSystem:
    if sorted(order) != list(range(sys.T)):
        raise InvalidPermutationError(f"{list(order)} is not a reordering of {sys.T} constituents")
    return CodeSystem(sys.d, tuple(sys.codes[i] for i in order), name=sys.name)


def apply_step1(sys: CodeSystem, mask: int, order: Sequence[int]) -> CodeSystem:
    return reorder_constituents(negate_coords(sys, mask), order)


def _scaled_weight_table(code: Sequence[int], d: int, scale: int) -> np.ndarray:
    """scale * total weight of (code XOR mask) for every mask in [0, 2^d)."""
    size = len(code)
    ones = [sum((c >> k) & 1 for c in code) for k in range(d)]
    table = np.array([sum(ones) * scale], dtype=np.int64)
    for k in range(d):
        # toggling coordinate k turns ones_k ones into size - ones_k ones
        table = np.concatenate([table, table + (size - 2 * ones[k]) * scale])
    return table


def normalize_step1(sys: CodeSystem, max_dim: int = 24, cap: int = 1024) -> Step1Result:
    if sys.d > max_dim:
        raise GuardExceededError(1 << sys.d, 1 << max_dim, what="negation masks")

    # common denominator keeps every average weight an exact integer numerator
    denom = lcm(*sys.sizes)
    tables = [_scaled_weight_table(code, sys.d, denom // len(code)) for code in sys.codes]
    best_per_mask = np.minimum.reduce(tables)
    best = int(best_per_mask.min())
    min_average = Fraction(best, denom)
    optimal_masks = np.flatnonzero(best_per_mask == best)

    candidates = []
    truncated = False
    for mask in optimal_masks:
        mask = int(mask)
        for i, table in enumerate(tables):
            if int(table[mask]) != best:
                continue
            if len(candidates) >= cap:
                truncated = True
                break
            order = (i,) + tuple(j for j in range(sys.T) if j != i)
            candidates.append(NormalizationCandidate(apply_step1(sys, mask, order), mask, order, min_average))
        if truncated:
            break

    if truncated:
        logger.warning(
            f"Step-1 optima truncated at {cap} candidates ({len(optimal_masks)} optimal masks)",
            extra={'code_name': sys.name, 'users': sys.T},
        )
    logger.info(
        f"Step-1 normalization: min average weight {min_average}, {len(candidates)} candidate(s)",
        extra={'code_name': sys.name, 'users': sys.T},
    )
    return Step1Result(candidates, min_average, int(len(optimal_masks)), truncated)


def sum_rate_seed(sys: CodeSystem):
    """(1/d) log2 of the number of messages, as an extended-precision real."""
    from glue_construct import rate_from_sizes
    return rate_from_sizes(sys.sizes, sys.d)
