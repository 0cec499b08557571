import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conrep import chain, direct_product, downset_lattice, make_poset, validate_lattice  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def example_poset():
    return make_poset(list("abcd"), [("a", "b"), ("b", "c"), ("d", "c")])


@pytest.fixture
def example_D(example_poset):
    return downset_lattice(example_poset)


@pytest.fixture
def square():
    return validate_lattice(list("0ab1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def m3():
    return validate_lattice(list("0pqr1"), [("0", "p"), ("0", "q"), ("0", "r"),
                                            ("p", "1"), ("q", "1"), ("r", "1")])


@pytest.fixture
def n5():
    return validate_lattice(list("0abc1"), [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


@pytest.fixture
def c4():
    return validate_lattice(list("0ab1"), [("0", "a"), ("a", "b"), ("b", "1")])


@pytest.fixture
def b3():
    return direct_product(direct_product(chain(2), chain(2)), chain(2))
