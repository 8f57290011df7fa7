import random

import pytest

from strgraph.index import ReadSet, build_index
from strgraph.seqlist import MemoryStore

# Worked example: reads APPLE, LEMON, APRICOT.
FRUITS = ("APPLE", "LEMON", "APRICOT")

TABLE1_SA = [
    (0, 1), (0, 3), (0, 2), (5, 1), (7, 3), (3, 3), (1, 1), (4, 2), (4, 3), (2, 1),
    (5, 2), (3, 2), (1, 2), (2, 2), (2, 3), (3, 1), (4, 1), (6, 3), (5, 3), (1, 3),
]
TABLE1_LCP = [-1, 0, 0, 0, 2, 0, 0, 1, 0, 0, 2, 0, 0, 0, 1, 0, 1, 1, 0, 0]
TABLE1_BWT = "ETN$$ILLRP$EOMCPAAPO"

FIG1_READS = ("ATATCATCGATCTACTATTAC", "GATCTACTATTACTTCATATC")
FIG2_READS = (
    "ATATCATCGATCTACTATTA",
    "ATCGATCTACTATTACTACTATTAC",
    "CTATTACTACTATTACTTCAT",
)


@pytest.fixture
def fruits():
    return ReadSet.from_strings(FRUITS)


@pytest.fixture
def fruits_index(fruits):
    store = MemoryStore()
    return build_index(fruits, store), store


def build_in_memory(reads):
    store = MemoryStore()
    return build_index(reads, store), store


def rng_for(seed):
    return random.Random(seed)
