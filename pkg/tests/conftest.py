import pytest

from qrgroups.groups import build_alt, build_sl, conjugacy_classes
from qrgroups.reptheory import character_table


@pytest.fixture(scope="session")
def sl2f3():
    table = build_sl(2, 3)
    classes = conjugacy_classes(table)
    chars = character_table(table, classes, seed=42)
    return table, classes, chars


@pytest.fixture(scope="session")
def sl2f5():
    table = build_sl(2, 5)
    classes = conjugacy_classes(table)
    chars = character_table(table, classes, seed=42)
    return table, classes, chars


@pytest.fixture(scope="session")
def sl2f7():
    table = build_sl(2, 7)
    classes = conjugacy_classes(table)
    chars = character_table(table, classes, seed=42)
    return table, classes, chars


@pytest.fixture(scope="session")
def sl2z9():
    table = build_sl(2, 3, 2)
    classes = conjugacy_classes(table)
    chars = character_table(table, classes, seed=42)
    return table, classes, chars


@pytest.fixture(scope="session")
def alt5():
    table = build_alt(5)
    classes = conjugacy_classes(table)
    chars = character_table(table, classes, seed=42)
    return table, classes, chars
