"""Shared exhaustive-enumeration fixtures.

The big sweeps are session-scoped: one pass over the overpartitions of weight
up to 40 feeds both the counting theorems and the bivariate identity checks,
and one bucketed pass feeds every profile-class comparison.
"""

import pytest

from ggkit.partitions import (
    overpartition_ofh_tables,
    overpartition_p_counts,
    partition_family_tables,
)
from ggkit.verify import collect_class_buckets, collect_partition_buckets

PAIRS4 = [(k, i) for k in range(1, 5) for i in range(1, k + 1)]
PAIRS3 = [(k, i) for k in range(2, 4) for i in range(1, k + 1)]


@pytest.fixture(scope="session")
def ofh_tables_40():
    return overpartition_ofh_tables(40, PAIRS4)


@pytest.fixture(scope="session")
def p_counts_25():
    return overpartition_p_counts(25, PAIRS4)


@pytest.fixture(scope="session")
def partition_tables_40():
    return partition_family_tables(40, PAIRS4)


@pytest.fixture(scope="session")
def class_buckets():
    # weight reach 39 = 30 + 3^2 so the shifted comparisons stay exact at T=30
    return collect_class_buckets(3, 3, 39)


@pytest.fixture(scope="session")
def partition_class_buckets():
    return collect_partition_buckets(3, 3, 30)
