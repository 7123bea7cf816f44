"""Unique decoding of Reed-Solomon codewords (Berlekamp-Welch).

A codeword is a list of evaluations ``(alpha_i, y_i)`` of a polynomial of
degree at most ``t``.  With ``n`` points the decoder corrects up to
``(n - t - 1) // 2`` wrong values; with ``n >= 3t + 1`` that is at least
``t``.  Absent points are simply left out of the list.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .errors import DecodingFailure, DuplicateAbscissa
from .field import (
    FieldElement,
    Poly,
    PrimeField,
    _interpolate_ints,
    _trim,
    prime_field,
    solve_linear,
)


@dataclass(frozen=True)
class NoisyCodeword:
    field: PrimeField
    points: tuple[tuple[int, int], ...]
    degree: int

    def __init__(self, field: PrimeField, points: Sequence[tuple], degree: int):
        pts = tuple((field.coerce(a), field.coerce(y)) for a, y in points)
        xs = [a for a, _ in pts]
        if len(set(xs)) != len(xs):
            raise DuplicateAbscissa("codeword abscissas must be distinct")
        if any(a == 0 for a in xs):
            raise ValueError("codeword abscissas must be nonzero")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "degree", degree)


@dataclass(frozen=True)
class DecodeResult:
    poly: Poly
    error_indices: frozenset[int] = dc_field(default_factory=frozenset)

    def value_at_zero(self) -> FieldElement:
        return self.poly(0)


def rs_capacity(n_points: int, degree: int) -> int:
    """Largest number of wrong values that still decodes uniquely: ``n >= degree + 1 + 2e``."""
    if n_points < degree + 1:
        raise ValueError(f"{n_points} points cannot determine a degree-{degree} polynomial")
    return (n_points - degree - 1) // 2


def rs_decode(cw: NoisyCodeword) -> DecodeResult:
    """Recover the degree-``cw.degree`` polynomial and the positions that disagree with it.

    Raises :class:`DecodingFailure` if no polynomial agrees with all but at
    most ``rs_capacity`` of the points.
    """
    if len(cw.points) < cw.degree + 1:
        raise ValueError(f"need at least {cw.degree + 1} points, got {len(cw.points)}")
    coeffs, errors = _decode(cw.points, cw.degree, cw.field.modulus)
    return DecodeResult(Poly._raw(cw.field, coeffs), errors)


def decode_points(field: PrimeField, points: Sequence[tuple[int, int]], degree: int) -> DecodeResult:
    """Shorthand for ``rs_decode(NoisyCodeword(field, points, degree))``."""
    return rs_decode(NoisyCodeword(field, points, degree))


def decode_trusted(field: PrimeField, points: tuple[tuple[int, int], ...], degree: int) -> DecodeResult:
    """Like :func:`decode_points` but skips validation.

    ``points`` must already hold canonical integers with distinct nonzero
    abscissas; the protocol engine uses this on its hot path.
    """
    if len(points) < degree + 1:
        raise DecodingFailure(f"only {len(points)} points for a degree-{degree} polynomial")
    coeffs, errors = _decode(points, degree, field.modulus)
    return DecodeResult(Poly._raw(field, coeffs), errors)


def _horner(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _disagreements(coeffs, points, p) -> frozenset[int]:
    return frozenset(i for i, (a, y) in enumerate(points) if _horner(coeffs, a, p) != y)


# Decoding is a pure function of the received word; every honest voter decodes
# the same broadcast codewords, so results are shared through this cache.
@lru_cache(maxsize=65536)
def _decode(points: tuple[tuple[int, int], ...], t: int, p: int):
    n = len(points)
    e = rs_capacity(n, t)

    # Fast path: the first t+1 points fit a polynomial within capacity.
    head = points[:t + 1]
    coeffs = _interpolate_ints(tuple(a for a, _ in head), [y for _, y in head], p)
    errors = _disagreements(coeffs, points, p)
    if len(errors) <= e:
        return coeffs, errors
    if e == 0:
        raise DecodingFailure(f"{n} points of a degree-{t} polynomial leave no room for errors")

    # Berlekamp-Welch: Q(a_i) = y_i E(a_i) with E monic of degree e, deg Q <= t + e.
    nq = t + e + 1
    rows, rhs = [], []
    for a, y in points:
        powers = [1] * nq
        for j in range(1, nq):
            powers[j] = powers[j - 1] * a % p
        row = powers + [(-y * powers[j]) % p for j in range(e)]
        rows.append(row)
        a_e = pow(a, e, p)
        rhs.append(y * a_e % p)
    sol = solve_linear(rows, rhs, p)
    if sol is None:
        raise DecodingFailure("more errors than the decoding capacity")
    field = prime_field(p)
    q_poly = Poly._raw(field, _trim(sol[:nq]))
    e_poly = Poly._raw(field, _trim(sol[nq:] + [1]))
    quot, rem = divmod(q_poly, e_poly)
    if not rem.is_zero() or quot.degree > t:
        raise DecodingFailure("more errors than the decoding capacity")
    errors = _disagreements(quot.coeffs, points, p)
    if len(errors) > e:
        raise DecodingFailure("more errors than the decoding capacity")
    return quot.coeffs, errors

