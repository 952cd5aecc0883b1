import itertools
import random

import pytest
from hypothesis import settings

from jkss.laurent import LaurentPoly, PolyMatrix, ZERO

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def leibniz_det(m: PolyMatrix) -> LaurentPoly:
    """Sum over permutations; an oracle that shares nothing with elimination."""
    n = m.size
    total = ZERO
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = LaurentPoly.constant(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * m[i, j]
            if not term:
                break
        total = total + term
    return total


def random_matrix(rng: random.Random, n: int, density: float = 0.6) -> PolyMatrix:
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            if rng.random() > density:
                row.append(ZERO)
                continue
            terms = {}
            for _ in range(rng.randint(1, 3)):
                terms[(rng.randint(-2, 2), rng.randint(-2, 2))] = rng.randint(-5, 5)
            row.append(LaurentPoly(terms))
        rows.append(row)
    return PolyMatrix(rows)


@pytest.fixture
def record_acceptance():
    def record(number: int, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
