import itertools

import numpy as np
import pytest

from code_core import CodeSystem, sum_multiplicities, sum_rate_seed, verify_ud
from errors import GuardExceededError, InvalidSizesError
from seed_discovery import DiscoveryFailure, DiscoverySpec, conflict_count, tabu_search


def test_conflict_count_small_systems(lindstrom):
    assert conflict_count(lindstrom) == 0
    assert conflict_count(CodeSystem(1, ((0, 1), (0, 1)))) == 1
    # 3x3 grid of coordinate sums, multiplicities 1,2,1 / 2,4,2 / 1,2,1
    assert conflict_count(CodeSystem(2, ((0, 1, 2, 3), (0, 1, 2, 3)))) == 10


def test_conflict_count_matches_pair_definition(rng):
    for _ in range(25):
        d = int(rng.integers(1, 4))
        codes = tuple(
            tuple(int(w) for w in rng.choice(1 << d, size=int(rng.integers(1, (1 << d) + 1)), replace=False))
            for _ in range(int(rng.integers(2, 4)))
        )
        system = CodeSystem(d, codes)
        sums = [tuple(sum((w >> k) & 1 for w in words) for k in range(d))
                for words in itertools.product(*codes)]
        pairs = sum(1 for x in range(len(sums)) for y in range(x + 1, len(sums)) if sums[x] == sums[y])
        assert conflict_count(system) == pairs
        assert (conflict_count(system) == 0) == verify_ud(system).is_ud


def test_conflict_count_equals_lost_tuples_without_triples():
    system = CodeSystem(1, ((0, 1), (0, 1)))
    _, _, counts = sum_multiplicities(system)
    assert counts.max() <= 2
    assert conflict_count(system) == system.total_tuples - len(counts)


def test_spec_validation():
    with pytest.raises(InvalidSizesError):
        DiscoverySpec(2, (5, 1)).validate()
    with pytest.raises(InvalidSizesError):
        DiscoverySpec(2, ()).validate()
    with pytest.raises(InvalidSizesError):
        DiscoverySpec(0, (1,)).validate()
    with pytest.raises(GuardExceededError):
        DiscoverySpec(3, (8, 8, 8, 8), guard=100).validate()
    with pytest.raises(ValueError):
        DiscoverySpec(2, (2, 2), stagnation=0).validate()


def test_finds_lindstrom_shape():
    result = tabu_search(DiscoverySpec(2, (3, 2), budget=10_000, seed=1))
    assert isinstance(result, CodeSystem)
    assert result.sizes == [3, 2]
    assert verify_ud(result).is_ud
    assert abs(float(sum_rate_seed(result)) - np.log2(6) / 2) < 1e-12


def test_fixed_seed_is_deterministic():
    spec = DiscoverySpec(3, (4, 3), budget=300, seed=7, stagnation=50)
    first, second = tabu_search(spec), tabu_search(spec)
    assert type(first) is type(second)
    if isinstance(first, CodeSystem):
        assert first == second
    else:
        assert (first.best_conflicts, first.iterations, first.restarts) == \
            (second.best_conflicts, second.iterations, second.restarts)
        assert first.best_system == second.best_system


def test_no_moves_reports_failure():
    result = tabu_search(DiscoverySpec(1, (2, 2), budget=100))
    assert isinstance(result, DiscoveryFailure)
    assert result.best_conflicts == 1
    assert result.iterations == 0
    assert result.reason == "no replacement word available"


def test_full_cube_with_two_words_fails():
    result = tabu_search(DiscoverySpec(2, (4, 2), budget=200, stagnation=50))
    assert isinstance(result, DiscoveryFailure)
    assert result.best_conflicts > 0
    assert result.best_conflicts == conflict_count(result.best_system)
    assert result.restarts >= 1


@pytest.mark.slow
def test_finds_four_user_code():
    result = tabu_search(DiscoverySpec(4, (4, 4, 4, 2), budget=1_000_000, seed=0))
    assert isinstance(result, CodeSystem)
    assert verify_ud(result).is_ud
    assert sum_rate_seed(result) == 1.75
