import pytest

from catalog import CATALOG, catalog_get
from code_core import CodeSystem
from errors import BalancedSeedError, EmptyConstituentError
from glue_construct import GlueParams, improved_sizes
from rate_search import SearchConfig, search, search_normalizations, symmetry_groups
from utils.numeric import truncate


PUBLISHED = [name for name, entry in CATALOG.items() if entry.expected is not None]


def test_symmetry_groups_tie_equal_profiles():
    config = symmetry_groups(catalog_get("T4-KO").system, n_max=10)
    assert config.groups == ((1, 2), (3,))
    assert config.zero_fixed == frozenset({3})
    assert config.n_max == 10


def test_symmetry_groups_tie_proportional_profiles():
    # constituents 4 and 5 have spectra {2:1, 4:1} and {2:2, 4:2}
    config = symmetry_groups(catalog_get("T8-KM").system)
    assert config.groups == ((1,), (2,), (3, 4), (5, 6, 7))
    assert config.zero_fixed == frozenset({5, 6, 7})


def test_symmetry_groups_pins_constant_weight_codes():
    config = symmetry_groups(catalog_get("T7-KM").system)
    assert config.zero_fixed == frozenset({3, 4, 5, 6})
    assert (1,) in config.groups and (2,) in config.groups


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(5, ((1,),)).validate(3)
    with pytest.raises(ValueError):
        SearchConfig(0, ((1,),)).validate(2)
    with pytest.raises(ValueError):
        SearchConfig(5, ((1, 2),), zero_fixed=frozenset({1})).validate(3)
    with pytest.raises(ValueError):
        SearchConfig(5, ((1,),), g_max={1: -1}).validate(2)
    SearchConfig(5, ((1,), (2,)), zero_fixed=frozenset({2})).validate(3)


def test_t2_with_fixed_cap():
    system = catalog_get("T2-MO").system
    config = SearchConfig(150, ((1,),), g_max={1: 60})
    outcome = search(system, config)
    assert outcome.best.params == GlueParams(142, (24,))
    assert truncate(outcome.best.rate, 9) == "1.318446971"
    assert outcome.ties == []
    assert outcome.cap_hits == []
    assert outcome.evaluated == 150 * 61


def test_t6_with_fixed_caps():
    system = catalog_get("T6-KM").system
    base = symmetry_groups(system, 30)
    config = SearchConfig(30, base.groups, base.zero_fixed, {i: 20 for i in range(1, 6)})
    outcome = search(system, config)
    assert outcome.best.params == GlueParams(26, (8, 12, 0, 0, 0))
    assert truncate(outcome.best.rate, 9) == "2.005264438"


def test_single_point_search():
    system = catalog_get("T4-KO").system
    base = symmetry_groups(system, 1)
    config = SearchConfig(1, base.groups, base.zero_fixed, {1: 0, 2: 0, 3: 0})
    outcome = search(system, config)
    assert outcome.evaluated == 1
    assert outcome.best.params == GlueParams(1, (0, 0, 0))
    assert outcome.best.sizes == (4, 2, 2, 2)
    assert outcome.best.rate == 1.25


def test_infeasible_space_raises(lindstrom_normalized):
    # at n=1 the second code has no word of weight exactly 1
    config = SearchConfig(1, ((1,),), g_max={1: 0})
    with pytest.raises(EmptyConstituentError):
        search(lindstrom_normalized, config)


def test_balanced_seed_rejected():
    system = CodeSystem(2, ((0, 3), (1, 2)))
    with pytest.raises(BalancedSeedError):
        search(system, symmetry_groups(system, 5))


def test_small_cap_is_reported():
    system = catalog_get("T2-MO").system
    outcome = search(system, SearchConfig(150, ((1,),), g_max={1: 10}))
    assert outcome.best.params.g[0] <= 10
    assert truncate(outcome.best.rate, 9) < "1.318446971"
    assert outcome.cap_hits
    assert all(index == 1 for _, index in outcome.cap_hits)


def test_constraints_never_help():
    system = catalog_get("T4-KO").system
    caps = {1: 6, 2: 6, 3: 6}
    constrained = search(system, SearchConfig(6, ((1, 2), (3,)), frozenset({3}), caps))
    free = search(system, SearchConfig(6, ((1,), (2,), (3,)), g_max=caps))
    assert constrained.best.rate <= free.best.rate
    assert free.evaluated == 6 * 7 ** 3


def test_best_dominates_random_points(lindstrom_normalized, rng):
    outcome = search(lindstrom_normalized, SearchConfig(12, ((1,),), g_max={1: 4}))
    checked = 0
    for _ in range(40):
        params = GlueParams(int(rng.integers(1, 13)), (int(rng.integers(0, 5)),))
        try:
            result = improved_sizes(lindstrom_normalized, params)
        except EmptyConstituentError:
            continue
        checked += 1
        assert result.rate <= outcome.best.rate
    assert checked > 0


def test_progress_reports_every_n(lindstrom_normalized):
    seen = []
    search(lindstrom_normalized, symmetry_groups(lindstrom_normalized, 8),
           progress=lambda n, rate: seen.append(n))
    assert seen == list(range(1, 9))


def test_search_over_normalizations(lindstrom, lindstrom_normalized):
    result = search_normalizations(lindstrom, n_max=12)
    assert result.candidates_tried == 1
    assert result.candidate.mask == 3
    assert result.candidate.system.same_sets(lindstrom_normalized)
    direct = search(lindstrom_normalized, symmetry_groups(lindstrom_normalized, 12))
    assert result.outcome.best.rate == direct.best.rate
    assert result.outcome.best.params == direct.best.params


@pytest.mark.slow
@pytest.mark.parametrize("name", PUBLISHED)
def test_reproduces_published_optimum(name):
    entry = catalog_get(name)
    outcome = search(entry.system, symmetry_groups(entry.system, entry.search_n_max))
    assert outcome.best.params == entry.expected.params
    assert truncate(outcome.best.rate, 9) == entry.expected.rate
    assert outcome.ties == []
