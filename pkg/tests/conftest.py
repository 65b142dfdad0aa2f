"""Shared random generators for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from floerkit.graded import GeneratorTable, GradedPoly

TABLE = GeneratorTable(1, 2)


def random_monomial(table: GeneratorTable, rng: random.Random, max_exp: int = 2) -> tuple[int, ...]:
    odd = set(table.odd_positions)
    mono = []
    for i in range(table.nvars):
        if i in odd or i == table.eps_index:
            mono.append(rng.randint(0, 1))
        else:
            mono.append(rng.randint(0, max_exp))
    return tuple(mono)


def random_poly(table: GeneratorTable, rng: random.Random, terms: int = 3, parity: int | None = None) -> GradedPoly:
    """Random polynomial; with ``parity`` set, only monomials of that parity are used."""
    out = {}
    while len(out) < terms:
        mono = random_monomial(table, rng)
        if parity is not None and sum(mono[p] for p in table.odd_positions) % 2 != parity:
            continue
        out[mono] = Fraction(rng.randint(-9, 9), rng.randint(1, 4)) or Fraction(1)
    return GradedPoly(table, out)


def polys(table: GeneratorTable = TABLE, parity: int | None = None, max_terms: int = 4):
    """Hypothesis strategy: seed an rng and draw a random polynomial."""
    return st.builds(
        lambda seed, n: random_poly(table, random.Random(seed), n, parity),
        st.integers(0, 2**32 - 1),
        st.integers(0, max_terms),
    )


@pytest.fixture
def rng():
    return random.Random(20241016)


# Acceptance-criterion verdicts, printed at the end of the session.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
