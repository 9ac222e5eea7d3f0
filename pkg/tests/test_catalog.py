import pytest

from catalog import CATALOG, catalog_for_users, catalog_get, catalog_names, run_table1
from code_core import verify_ud
from errors import UnknownCatalogEntryError


def test_catalog_lookup():
    assert catalog_names()[0] == "lindstrom"
    assert catalog_get("T4-KO").system.sizes == [4, 4, 4, 2]
    assert catalog_for_users(6).name == "T6-KM"
    assert catalog_get("T8-KM").expected.params.g == (17, 39, 17, 17, 0, 0, 0)


def test_unknown_entry_lists_valid_names():
    with pytest.raises(UnknownCatalogEntryError) as excinfo:
        catalog_get("T9")
    assert "T2-MO" in str(excinfo.value)
    with pytest.raises(UnknownCatalogEntryError):
        catalog_for_users(9)


def test_published_dimension_is_d_times_n():
    for entry in CATALOG.values():
        if entry.table is not None:
            assert entry.table.d_new == entry.system.d * entry.expected.n
            assert entry.search_n_max > entry.expected.n


def test_catalog_codes_are_uniquely_decodable():
    for entry in CATALOG.values():
        assert verify_ud(entry.system).is_ud, entry.name


def test_table1_reproduces_published_rows():
    report = run_table1()
    assert report.ok, report.mismatches
    frame = report.frame
    assert list(frame.index) == [2, 3, 4, 5, 6, 7, 8]
    assert frame.loc[2, "R_new"] == "1.3184"
    assert frame.loc[2, "R_upper"] == "1.5000"
    assert frame.loc[6, "R_old"] == "2.0000"
    assert frame.loc[6, "R_new_9"] == "2.005264438"
    assert frame.loc[8, "d_new"] == 414
    assert "384" in frame.loc[8, "note"]
    assert frame["match"].all()


def test_table1_full_precision_columns():
    frame = run_table1(precision=15).frame
    assert frame.loc[2, "R_upper_full"] == "1.500000000000000"
    assert frame.loc[6, "R_old_full"] == "2.000000000000000"
    assert frame.loc[3, "R_new_full"].startswith("1.539572454")
