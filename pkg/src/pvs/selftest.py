"""Quick invariant suites behind ``pvs selftest``.

Each suite is seeded, so the report is byte-identical across runs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DecodingFailure
from .field import Poly, interpolate, prime_field
from .product import build_c_poly, build_masking_polys
from .protocol import ElectionConfig, run_election
from .ballot import VoteVector
from .rs import decode_points


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def interpolation_suite(trials: int = 200, seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    field = prime_field(2 ** 31 - 1)
    bad = 0
    for _ in range(trials):
        t = rng.randint(0, 6)
        poly = Poly(field, [rng.randrange(field.modulus) for _ in range(t + 1)])
        xs = rng.sample(range(1, field.modulus), t + 1)
        if interpolate([(x, poly.evaluate(x)) for x in xs], t, field) != poly:
            bad += 1
    return SuiteResult("interpolation round-trip", bad == 0, f"{trials - bad}/{trials}")


def rs_suite(trials: int = 100, seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    field = prime_field(2 ** 31 - 1)
    p = field.modulus
    ok = total = 0
    for n, t in ((4, 1), (7, 2), (10, 3)):
        for _ in range(trials):
            total += 1
            poly = Poly(field, [rng.randrange(p) for _ in range(t + 1)])
            pts = [(a, poly.evaluate(a)) for a in range(1, n + 1)]
            bad = set(rng.sample(range(n), t))
            for i in bad:
                a, y = pts[i]
                pts[i] = (a, (y + rng.randrange(1, p)) % p)
            try:
                res = decode_points(field, pts, t)
            except DecodingFailure:
                continue
            ok += res.poly == poly and res.error_indices == bad
    return SuiteResult("reed-solomon decoding", ok == total, f"{ok}/{total}")


def product_suite(trials: int = 100, seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    field = prime_field(2 ** 31 - 1)
    p = field.modulus
    ok = total = 0
    for t in (1, 2, 3):
        for _ in range(trials):
            total += 1
            a = Poly(field, [rng.randrange(p) for _ in range(t + 1)])
            b = Poly(field, [rng.randrange(p) for _ in range(t + 1)])
            c = build_c_poly(a, b, build_masking_polys(a, b, t, rng), t)
            ok += c.degree <= t and c.coeff(0) == a.coeff(0) * b.coeff(0) % p
    return SuiteResult("masked product", ok == total, f"{ok}/{total}")


def phase_soundness_suite(seed: int = 0) -> SuiteResult:
    """Every vote vector in {0,1,2}^3 over GF(5): accepted iff one-hot."""
    accepted = []
    for vec in itertools.product(range(3), repeat=3):
        cfg = ElectionConfig.make(4, 1, 2, modulus=5, seed=seed)
        vote = VoteVector(vec, tuple((1 - x) % 5 for x in vec))
        result = run_election(cfg, [vote, 1, 2, "abstain"])
        if 1 not in result.disqualified(2):
            accepted.append(vec)
    want = [v for v in itertools.product(range(3), repeat=3) if sorted(v) == [0, 0, 1]]
    return SuiteResult("phase soundness", accepted == want, f"accepted {accepted}")


SUITES = (interpolation_suite, rs_suite, product_suite, phase_soundness_suite)


def selftest(seed: int = 0) -> list[SuiteResult]:
    return [suite(seed=seed) for suite in SUITES]
