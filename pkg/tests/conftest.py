import pytest

from preassoc.catalog import length_table, max_table, mod_sum
from preassoc.core import EPS, Carrier, Codomain, TabulatedVariadic


@pytest.fixture
def ab():
    return Carrier(("a", "b"))


@pytest.fixture
def abc():
    return Carrier(("a", "b", "c"))


@pytest.fixture
def two_row(ab):
    """``F(a) = F(b)`` but ``F(aa) != F(ab)``, ``F(aa) != F(ba)``; not preassociative."""
    cod = Codomain.operations(ab)
    table = {(): EPS, (0,): "a", (1,): "a",
             (0, 0): "a", (0, 1): "b", (1, 0): "b", (1, 1): "b"}
    return TabulatedVariadic(ab, cod, 2, table)


@pytest.fixture
def xor4():
    return mod_sum(2, 4)


@pytest.fixture
def max3():
    return max_table(3, 4)


@pytest.fixture
def length_ab(ab):
    return length_table(ab, 3)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
