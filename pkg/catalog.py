## adder-ud
## catalog.py

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import pandas as pd

from bounds import upper_bound
from code_core import CodeSystem, sum_rate_seed
from errors import UnknownCatalogEntryError
from glue_construct import GlueParams, improved_sizes
from utils.logger import logger
from utils.numeric import round_up, truncate

#########################################################################################

@dataclass(frozen=True)
class ExpectedRecord:
    """Published best (n, g) for a seed code and the resulting 9-decimal rate."""
    n: int
    g: Tuple[int, ...]
    rate: str

    @property
    def params(self) -> GlueParams:
        return GlueParams(self.n, self.g)


@dataclass(frozen=True)
class TableRow:
    """Published bounds row: old rate, new rate and entropy bound at 4 decimals."""
    d_old: int
    r_old: str
    d_new: int
    r_new: str
    r_upper: str
    printed_d_new: Optional[int] = None     # value as printed when it disagrees with d * n


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    system: CodeSystem
    expected: Optional[ExpectedRecord] = None
    table: Optional[TableRow] = None
    search_n_max: Optional[int] = None      # n range that contains the published argmax

    @property
    def T(self) -> int:
        return self.system.T


@dataclass
class Table1Report:
    frame: pd.DataFrame
    mismatches: List[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches

#########################################################################################

def _entry(name, d, codes, expected=None, table=None, search_n_max=None) -> CatalogEntry:
    return CatalogEntry(name, CodeSystem(d, tuple(tuple(c) for c in codes), name=name),
                        expected, table, search_n_max)

_ENTRIES = [
    _entry("lindstrom", 2, [[1, 2, 3], [0, 3]]),
    _entry(
        "T2-MO", 6,
        [[3, 4, 7, 10, 14, 17, 21, 27, 32, 36, 42, 49, 56, 59, 60],
         [8, 9, 16, 18, 24, 29, 30, 31, 32, 33, 34, 39, 45, 47, 54, 55]],
        ExpectedRecord(142, (24,), "1.318446971"),
        TableRow(6, "1.3178", 852, "1.3184", "1.5000"),
        150,
    ),
    _entry(
        "T3", 6,
        [[3, 4, 7, 24, 27, 28, 32, 35, 36, 56],
         [0, 2, 12, 14, 16, 18, 30, 33, 45, 47, 49, 51, 56, 61, 63],
         [9, 21, 42, 54]],
        ExpectedRecord(72, (21, 11), "1.539572454"),
        TableRow(6, "1.5381", 432, "1.5395", "1.8113"),
        80,
    ),
    _entry(
        "T4-KO", 4,
        [[0, 7, 8, 14], [4, 5, 10, 11], [2, 6, 9, 13], [3, 12]],
        ExpectedRecord(245, (20, 20, 0), "1.750590009"),
        TableRow(4, "1.7500", 980, "1.7505", "2.0307"),
        250,
    ),
    _entry(
        "T5", 4,
        [[0, 4, 11], [0, 3, 5, 6, 9, 10, 12, 15], [1, 14], [2, 13], [7, 8]],
        ExpectedRecord(224, (30, 30, 30, 30), "1.897008675"),
        TableRow(4, "1.8962", 896, "1.8970", "2.1982"),
        230,
    ),
    _entry(
        "T6-KM", 4,
        [[0, 2, 8, 10], [1, 2, 13, 14], [0, 15], [5, 10], [3, 12], [6, 9]],
        ExpectedRecord(26, (8, 12, 0, 0, 0), "2.005264438"),
        TableRow(4, "2.0000", 104, "2.0052", "2.3334"),
        30,
    ),
    _entry(
        "T7-KM", 8,
        [[0, 2, 8, 10, 32, 34, 40, 42, 128, 130, 136, 138, 160, 162, 168, 170],
         [17, 18, 29, 30, 33, 34, 45, 46, 209, 210, 221, 222, 225, 226, 237, 238],
         [0, 240, 255], [15, 240], [85, 90, 165, 170], [51, 60, 195, 204],
         [102, 105, 150, 153]],
        ExpectedRecord(16, (10, 16, 0, 0, 0, 0), "2.077479836"),
        TableRow(8, "2.0731", 128, "2.0774", "2.4467"),
        20,
    ),
    _entry(
        "T8-KM", 6,
        [[0, 8, 16, 24, 32, 40, 48, 56], [2, 16, 38, 52], [0, 63], [9, 54],
         [18, 27, 36, 45], [21, 28, 35, 42], [7, 56], [14, 49]],
        ExpectedRecord(69, (17, 39, 17, 17, 0, 0, 0), "2.168328140"),
        TableRow(6, "2.1666", 414, "2.1683", "2.5442", printed_d_new=384),
        75,
    ),
]

CATALOG: Dict[str, CatalogEntry] = {entry.name: entry for entry in _ENTRIES}


def catalog_names() -> List[str]:
    return list(CATALOG)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCatalogEntryError(name, catalog_names()) from None


def catalog_for_users(T: int) -> CatalogEntry:
    for entry in _ENTRIES:
        if entry.table is not None and entry.T == T:
            return entry
    raise UnknownCatalogEntryError(f"T={T}", catalog_names())

#########################################################################################

def run_table1(precision: Optional[int] = None) -> Table1Report:
    """Recompute the bounds table for T = 2..8 and compare it with the published rows.

    Old rates are recomputed from the seed sizes and new rates from the exact
    constituent sizes at the published (n, g); both are truncated. The entropy
    bound is rounded up. With precision set, the same values are also reported
    at that many decimals.
    """
    rows = []
    mismatches = []
    for entry in _ENTRIES:
        if entry.table is None:
            continue
        sys = entry.system
        published = entry.table
        result = improved_sizes(sys, entry.expected.params)
        old_rate, bound = sum_rate_seed(sys), upper_bound(sys.T)
        row = {
            "T": sys.T,
            "code": entry.name,
            "d_old": sys.d,
            "R_old": truncate(old_rate, 4),
            "d_new": result.dim,
            "R_new": truncate(result.rate, 4),
            "R_upper": round_up(bound, 4),
            "R_new_9": truncate(result.rate, 9),
        }
        checks = [
            ("d_old", published.d_old), ("R_old", published.r_old), ("d_new", published.d_new),
            ("R_new", published.r_new), ("R_upper", published.r_upper), ("R_new_9", entry.expected.rate),
        ]
        bad = [f"T={sys.T} {col}: got {row[col]}, expected {want}" for col, want in checks if row[col] != want]
        if precision is not None:
            row["R_old_full"] = truncate(old_rate, precision)
            row["R_new_full"] = truncate(result.rate, precision)
            row["R_upper_full"] = round_up(bound, precision)
        row["match"] = not bad
        row["note"] = (f"printed d_new {published.printed_d_new} disagrees with d*n"
                       if published.printed_d_new else "")
        mismatches.extend(bad)
        rows.append(row)

    frame = pd.DataFrame(rows).set_index("T")
    for message in mismatches:
        logger.warning(f"bounds table mismatch: {message}", extra={'command': 'table1'})
    logger.info(f"bounds table recomputed, {len(mismatches)} mismatch(es)", extra={'command': 'table1'})
    return Table1Report(frame, mismatches)
