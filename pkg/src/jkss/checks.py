"""Randomized property checks behind ``jkss selftest``."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from typing import Callable

from .covering import double_cover, prop2_witness
from .diagram import (
    is_virtual,
    mirror,
    parse_diagram,
    random_diagram,
    render_diagram,
    validate,
    writhe,
)
from .invariant import FreeLoopWarning, jkss, twisted_jkss
from .laurent import LaurentPoly, PolyMatrix, ZERO, determinant
from .moves import KINDS, apply, enumerate_sites, random_walk


def cofactor_determinant(m: PolyMatrix) -> LaurentPoly:
    """Laplace expansion along the first row; exponential, for small checks."""
    rows = [list(r) for r in m.rows()]

    def expand(rows: list[list[LaurentPoly]]) -> LaurentPoly:
        n = len(rows)
        if n == 0:
            return LaurentPoly.constant(1)
        total = ZERO
        for j, entry in enumerate(rows[0]):
            if not entry:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = entry * expand(minor)
            total = total - term if j % 2 else total + term
        return total

    return expand(rows)


def random_poly_matrix(rng: random.Random, n: int, density: float = 0.7) -> PolyMatrix:
    def entry() -> LaurentPoly:
        if rng.random() > density:
            return ZERO
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(-3, 3), rng.randint(-3, 3))] = rng.randint(-9, 9)
        return LaurentPoly(terms)

    return PolyMatrix([[entry() for _ in range(n)] for _ in range(n)])


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_determinant(rng: random.Random, count: int) -> CheckResult:
    failures = []
    for t in range(count):
        m = random_poly_matrix(rng, rng.randint(0, 5))
        if determinant(m) != cofactor_determinant(m):
            failures.append(f"trial {t}: size {m.size}")
    return CheckResult("determinant = cofactor expansion", count, failures)


def check_covering(rng: random.Random, count: int) -> CheckResult:
    failures = []
    for t in range(count):
        d = random_diagram(rng.randint(1, 6), rng.randint(0, 6), rng.randrange(2**32))
        cover = double_cover(d)
        if validate(cover) or not is_virtual(cover, strict=True):
            failures.append(f"trial {t}: cover invalid or barred")
        elif len(cover) != 2 * len(d) or writhe(cover) != 2 * writhe(d):
            failures.append(f"trial {t}: cover size or writhe mismatch")
        elif twisted_jkss(d).raw != jkss(cover).raw:
            failures.append(f"trial {t}: twisted invariant differs from cover invariant")
    return CheckResult("twisted_jkss(D) = jkss(cover(D))", count, failures)


def check_diagram_basics(rng: random.Random, count: int) -> CheckResult:
    failures = []
    for t in range(count):
        d = random_diagram(rng.randint(0, 8), 0, rng.randrange(2**32))
        if rng.random() < 0.5 and len(d):
            d = random_diagram(len(d), rng.randint(0, 5), rng.randrange(2**32))
        if validate(d):
            failures.append(f"trial {t}: generator produced invalid diagram")
        if mirror(mirror(d)) != d or writhe(mirror(d)) != writhe(d):
            failures.append(f"trial {t}: mirror is not a writhe-preserving involution")
        if parse_diagram(render_diagram(d)) != d:
            failures.append(f"trial {t}: text round trip failed")
    return CheckResult("diagram generator / mirror / text format", count, failures)


def check_invariance(rng: random.Random, count: int, steps: int = 10) -> CheckResult:
    failures = []
    for t in range(count):
        d = random_diagram(rng.randint(1, 5), rng.randint(0, 4), rng.randrange(2**32))
        ref = twisted_jkss(d).canonical
        ref_v = jkss(d).canonical if is_virtual(d) else None
        cur = d
        cap = len(d) + 6
        for step in range(steps):
            cur = random_walk(cur, 1, rng.randrange(2**32), max_crossings=cap)
            if twisted_jkss(cur).canonical != ref:
                failures.append(f"trial {t} step {step}: twisted invariant changed")
                break
            if ref_v is not None and jkss(cur).canonical != ref_v:
                failures.append(f"trial {t} step {step}: virtual invariant changed")
                break
    return CheckResult("move invariance along random walks", count, failures)


def check_sites(rng: random.Random, count: int) -> CheckResult:
    failures = []
    for t in range(count):
        d = random_walk(
            random_diagram(rng.randint(1, 5), rng.randint(0, 4), rng.randrange(2**32)),
            4,
            rng.randrange(2**32),
        )
        for kind in KINDS:
            sites = enumerate_sites(d, kind)
            if kind in ("R1+", "R2+") and len(sites) > 12:
                sites = rng.sample(sites, 12)
            for site in sites:
                if validate(apply(d, site)):
                    failures.append(f"trial {t}: {site} produced an invalid diagram")
    return CheckResult("every enumerated site applies cleanly", count, failures)


def check_cover_connected_sum(rng: random.Random, count: int) -> CheckResult:
    failures = []
    for t in range(count):
        d0 = random_diagram(rng.randint(1, 6), 0, rng.randrange(2**32))
        e = rng.choice(d0.edges)
        cover, csum = prop2_witness(d0, e.ref)
        if jkss(cover).canonical != jkss(csum).canonical:
            failures.append(f"trial {t}: cover and connected sum differ")
    return CheckResult("cover of one-bar diagram = D0 # s(D0)", count, failures)


CHECKS: tuple[Callable[[random.Random, int], CheckResult], ...] = (
    check_determinant,
    check_diagram_basics,
    check_covering,
    check_sites,
    check_invariance,
    check_cover_connected_sum,
)


def run_all(seed: int, count: int) -> list[CheckResult]:
    results = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FreeLoopWarning)
        for i, check in enumerate(CHECKS):
            rng = random.Random(f"{seed}:{i}")
            results.append(check(rng, count))
    return results

