from __future__ import annotations

import functools

import pytest

from hallforge import Category, DoubleAlgebra, HallAlgebra, Quiver

QUIVERS = {
    "point": Quiver(1, ()),
    "a2": Quiver(2, ((0, 1),)),
    "a2op": Quiver(2, ((1, 0),)),
    "a3": Quiver(3, ((0, 1), (1, 2))),
    "kronecker": Quiver(2, ((0, 1), (0, 1))),
}

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@functools.lru_cache(maxsize=None)
def category(name: str, q: int) -> Category:
    return Category(QUIVERS[name], q)


@functools.lru_cache(maxsize=None)
def hall(name: str, q: int) -> HallAlgebra:
    return HallAlgebra(category(name, q))


@functools.lru_cache(maxsize=None)
def double(name: str, q: int) -> DoubleAlgebra:
    return DoubleAlgebra(hall(name, q))


@pytest.fixture
def a2():
    return hall("a2", 2)


@pytest.fixture
def point3():
    return hall("point", 3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
