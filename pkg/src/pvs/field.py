"""Prime-field arithmetic and scalar/vector polynomials over GF(p).

Field elements are handled internally as canonical integers in ``[0, p)``;
:class:`FieldElement` wraps such an integer together with its field for
user-facing arithmetic.  Polynomials store their coefficients constant
term first with trailing zeros trimmed, so equal polynomials compare equal.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from sympy import isprime

from .errors import (
    DegreeViolation,
    DivisionByZero,
    DuplicateAbscissa,
    InconsistentPoints,
    MixedFields,
)

DEFAULT_MODULUS = 2**31 - 1

NEG_INF = -math.inf


class PrimeField:
    """The finite field GF(p) for a prime ``p < 2**64``."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int = DEFAULT_MODULUS):
        if isinstance(modulus, bool) or not isinstance(modulus, int):
            raise TypeError("modulus must be an int")
        if modulus >= 2**64:
            raise ValueError("moduli of 64 bits or more are not supported")
        if not isprime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.modulus = modulus

    def __call__(self, value: int | FieldElement) -> FieldElement:
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        return FieldElement(value % self.modulus, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})"

    def check(self, elem: FieldElement) -> None:
        if elem.field != self:
            raise MixedFields(f"{elem!r} is not an element of {self!r}")

    def coerce(self, value: int | FieldElement) -> int:
        """Return the canonical integer representative of ``value``."""
        if isinstance(value, FieldElement):
            self.check(value)
            return value.value
        return value % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return pow(a, self.modulus - 2, self.modulus)

    def random_int(self, rng) -> int:
        return rng.randrange(self.modulus)

    def random(self, rng) -> FieldElement:
        return FieldElement(rng.randrange(self.modulus), self)


class FieldElement:
    """An element of a :class:`PrimeField`, immutable."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        if not 0 <= value < field.modulus:
            raise ValueError(f"{value} is not a canonical representative mod {field.modulus}")
        self.value = value
        self.field = field

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return other % self.field.modulus
        return NotImplemented

    def _new(self, value: int) -> FieldElement:
        return FieldElement(value % self.field.modulus, self.field)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._new(self.value + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._new(self.value - b)

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._new(b - self.value)

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._new(self.value * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return self._new(self.value * self.field.inv(b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return self._new(b * self.field.inv(self.value))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self._new(pow(self.field.inv(self.value), -exponent, self.field.modulus))
        return self._new(pow(self.value, exponent, self.field.modulus))

    def inverse(self) -> FieldElement:
        return self._new(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.modulus))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"{self.value} (mod {self.field.modulus})"


@lru_cache(maxsize=None)
def prime_field(modulus: int) -> PrimeField:
    """Cached :class:`PrimeField` constructor (primality is checked once per modulus)."""
    return PrimeField(modulus)


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` (one of ``add``, ``sub``, ``mul``, ``div``) to two field elements."""
    if a.field != b.field:
        raise MixedFields(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class EvalPoints(tuple):
    """Distinct nonzero evaluation points, one per voter (voter n owns index n-1)."""

    def __new__(cls, field: PrimeField, alphas: Iterable[int | FieldElement]):
        values = tuple(field.coerce(a) for a in alphas)
        if any(v == 0 for v in values):
            raise ValueError("evaluation points must be nonzero")
        if len(set(values)) != len(values):
            raise DuplicateAbscissa("evaluation points must be distinct")
        self = super().__new__(cls, values)
        self.field = field
        return self

    @classmethod
    def default(cls, field: PrimeField, n: int) -> EvalPoints:
        """alpha_n = n for n = 1..N."""
        if n >= field.modulus:
            raise ValueError(f"GF({field.modulus}) has fewer than {n} nonzero elements")
        return cls(field, range(1, n + 1))

    @classmethod
    def random(cls, field: PrimeField, n: int, rng) -> EvalPoints:
        if n >= field.modulus:
            raise ValueError(f"GF({field.modulus}) has fewer than {n} nonzero elements")
        return cls(field, rng.sample(range(1, field.modulus), n))

    def alpha(self, voter: int) -> int:
        return self[voter - 1]


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class Poly:
    """Univariate polynomial over GF(p); ``coeffs[i]`` multiplies ``x**i``.

    ``degree_bound``, when given, is checked at construction and kept as
    metadata; arithmetic results carry no bound.
    """

    __slots__ = ("field", "coeffs", "degree_bound")

    def __init__(self, field: PrimeField, coeffs: Iterable[int | FieldElement] = (),
                 degree_bound: int | None = None):
        self.field = field
        self.coeffs = _trim([field.coerce(c) for c in coeffs])
        self.degree_bound = degree_bound
        if degree_bound is not None and self.degree > degree_bound:
            raise DegreeViolation(f"degree {self.degree} exceeds bound {degree_bound}")

    @classmethod
    def _raw(cls, field: PrimeField, coeffs: tuple[int, ...]) -> Poly:
        # coefficients already canonical and trimmed
        self = object.__new__(cls)
        self.field = field
        self.coeffs = coeffs
        self.degree_bound = None
        return self

    @classmethod
    def constant(cls, field: PrimeField, c: int | FieldElement) -> Poly:
        return cls(field, [c])

    @classmethod
    def zero(cls, field: PrimeField) -> Poly:
        return cls._raw(field, ())

    @property
    def degree(self) -> int | float:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def constant_term(self) -> int:
        return self.coeff(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x: int) -> int:
        """Horner evaluation at an integer representative ``x``."""
        p = self.field.modulus
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def __call__(self, x: int | FieldElement) -> FieldElement:
        return FieldElement(self.evaluate(self.field.coerce(x)), self.field)

    def _check(self, other: Poly) -> None:
        if other.field != self.field:
            raise MixedFields(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        p = self.field.modulus
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return Poly._raw(self.field, _trim(out))

    def __neg__(self) -> Poly:
        p = self.field.modulus
        return Poly._raw(self.field, tuple((-c) % p for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, k: int | FieldElement) -> Poly:
        k = self.field.coerce(k)
        p = self.field.modulus
        return Poly._raw(self.field, _trim([c * k % p for c in self.coeffs]))

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.field)
        p = self.field.modulus
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly._raw(self.field, _trim([c % p for c in out]))

    def __rmul__(self, other) -> Poly:
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def shift(self, k: int) -> Poly:
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        p = self.field.modulus
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        lead_inv = self.field.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - d - 1, -1, -1):
            q = rem[k + d] * lead_inv % p
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = (rem[k + j] - q * b) % p
        return Poly._raw(self.field, _trim(quot)), Poly._raw(self.field, _trim(rem[:d]))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return f"Poly(0 over {self.field!r})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}x" if i == 1 else f"{c}x^{i}")
        return f"Poly({' + '.join(terms)} over {self.field!r})"


class VecPoly:
    """A vector of polynomials evaluated coordinate-wise.

    ``*`` between two VecPolys is the coordinate-wise (element-wise) product.
    """

    __slots__ = ("field", "components", "_evals")

    def __init__(self, components: Sequence[Poly]):
        components = tuple(components)
        if not components:
            raise ValueError("a VecPoly needs at least one component")
        field = components[0].field
        for c in components:
            if c.field != field:
                raise MixedFields("components over different fields")
        self.field = field
        self.components = components
        self._evals: dict[int, tuple[int, ...]] = {}

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Iterable[Iterable[int]]) -> VecPoly:
        return cls([Poly(field, r) for r in rows])

    @classmethod
    def constant(cls, field: PrimeField, values: Sequence[int]) -> VecPoly:
        return cls([Poly(field, [v]) for v in values])

    @property
    def width(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int | float:
        return max(c.degree for c in self.components)

    def constant_term(self) -> tuple[int, ...]:
        return tuple(c.coeff(0) for c in self.components)

    def evaluate(self, x: int) -> tuple[int, ...]:
        # shares are evaluated at the same few points many times; memoise
        hit = self._evals.get(x)
        if hit is not None:
            return hit
        p = self.field.modulus
        comps = [c.coeffs for c in self.components]
        powers = [1]
        for _ in range(max(map(len, comps)) - 1):
            powers.append(powers[-1] * x % p)
        out = tuple(sum(map(int.__mul__, cs, powers)) % p for cs in comps)
        self._evals[x] = out
        return out

    def evaluate_many(self, xs: Sequence[int]) -> list[tuple[int, ...]]:
        """Evaluate at several points with one matrix product (results are memoised)."""
        p = self.field.modulus
        todo = [x for x in xs if x not in self._evals]
        if todo:
            length = max(1, max(len(c.coeffs) for c in self.components))
            coeffs = [list(c.coeffs) + [0] * (length - len(c.coeffs)) for c in self.components]
            values = matmul_mod(coeffs, vandermonde(tuple(todo), length, p), p).T.tolist()
            for x, row in zip(todo, values):
                self._evals[x] = tuple(row)
        return [self._evals[x] for x in xs]

    def __call__(self, x: int | FieldElement) -> tuple[FieldElement, ...]:
        x = self.field.coerce(x)
        return tuple(FieldElement(c.evaluate(x), self.field) for c in self.components)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return VecPoly(self.components[item])
        return self.components[item]

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def _zip(self, other: VecPoly):
        if not isinstance(other, VecPoly):
            raise TypeError("expected a VecPoly")
        if other.width != self.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return zip(self.components, other.components)

    def __add__(self, other: VecPoly) -> VecPoly:
        return VecPoly([a + b for a, b in self._zip(other)])

    def __sub__(self, other: VecPoly) -> VecPoly:
        return VecPoly([a - b for a, b in self._zip(other)])

    def __neg__(self) -> VecPoly:
        return VecPoly([-a for a in self.components])

    def __mul__(self, other) -> VecPoly:
        if isinstance(other, (int, FieldElement)):
            return VecPoly([a.scale(other) for a in self.components])
        return VecPoly([a * b for a, b in self._zip(other)])

    def __rmul__(self, other) -> VecPoly:
        if isinstance(other, (int, FieldElement)):
            return self * other
        return NotImplemented

    def shift(self, k: int) -> VecPoly:
        return VecPoly([a.shift(k) for a in self.components])

    def concat(self, other: VecPoly) -> VecPoly:
        return VecPoly(self.components + other.components)

    def coeff_rows(self) -> list[tuple[int, ...]]:
        return [c.coeffs for c in self.components]

    def __eq__(self, other):
        if not isinstance(other, VecPoly):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"VecPoly({list(self.components)!r})"


def poly_eval(poly: Poly | VecPoly, x: int | FieldElement):
    """Evaluate a scalar or vector polynomial; vector results are tuples."""
    return poly(x)


@lru_cache(maxsize=4096)
def lagrange_basis(xs: tuple[int, ...], p: int) -> tuple[tuple[int, ...], ...]:
    """Coefficient tuples of the Lagrange basis polynomials for abscissas ``xs``.

    All basis vectors are padded to ``len(xs)`` coefficients.
    """
    k = len(xs)
    # full product prod_j (x - x_j), constant term first
    full = [1]
    for xj in xs:
        nxt = [0] * (len(full) + 1)
        for i, c in enumerate(full):
            nxt[i] = (nxt[i] - c * xj) % p
            nxt[i + 1] = (nxt[i + 1] + c) % p
        full = nxt
    basis = []
    for i, xi in enumerate(xs):
        # synthetic division of the full product by (x - xi)
        quot = [0] * k
        carry = 0
        for d in range(k, 0, -1):
            carry = (full[d] + carry * xi) % p
            quot[d - 1] = carry
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                denom = denom * (xi - xj) % p
        scale = pow(denom, p - 2, p)
        basis.append(tuple(c * scale % p for c in quot))
    return tuple(basis)


def _interpolate_ints(xs: tuple[int, ...], ys: Sequence[int], p: int) -> tuple[int, ...]:
    basis = lagrange_basis(xs, p)
    k = len(xs)
    out = [0] * k
    for y, b in zip(ys, basis):
        if y:
            for d in range(k):
                out[d] += y * b[d]
    return _trim([c % p for c in out])


def interpolate(points: Sequence[tuple[int | FieldElement, int | FieldElement]],
                degree_bound: int, field: PrimeField | None = None) -> Poly:
    """The unique polynomial of degree at most ``degree_bound`` through ``points``.

    The first ``degree_bound + 1`` points determine the polynomial; any further
    points must lie on it.
    """
    if field is None:
        for x, y in points:
            for v in (x, y):
                if isinstance(v, FieldElement):
                    field = v.field
                    break
            if field is not None:
                break
        if field is None:
            raise TypeError("pass field= when points are plain integers")
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    if len(points) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} points, got {len(points)}")
    pts = [(field.coerce(x), field.coerce(y)) for x, y in points]
    xs_all = [x for x, _ in pts]
    if len(set(xs_all)) != len(xs_all):
        raise DuplicateAbscissa("interpolation abscissas must be distinct")
    head = pts[:degree_bound + 1]
    xs = tuple(x for x, _ in head)
    poly = Poly._raw(field, _interpolate_ints(xs, [y for _, y in head], field.modulus))
    for x, y in pts[degree_bound + 1:]:
        if poly.evaluate(x) != y:
            raise InconsistentPoints(f"point ({x}, {y}) is off the degree-{degree_bound} fit")
    return poly


def poly_random(field: PrimeField, degree: int, constant, rng) -> Poly | VecPoly:
    """Random polynomial of the given degree bound with a prescribed constant term.

    ``constant`` may be a scalar (returns :class:`Poly`) or a sequence
    (returns :class:`VecPoly`, one independent polynomial per coordinate).
    Coefficients ``1..degree`` are drawn from ``rng.randrange(p)`` in order.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    p = field.modulus
    if isinstance(constant, (int, FieldElement)):
        c0 = field.coerce(constant)
        return Poly._raw(field, _trim([c0] + [rng.randrange(p) for _ in range(degree)]))
    return VecPoly([poly_random(field, degree, c, rng) for c in constant])


@lru_cache(maxsize=4096)
def vandermonde(xs: tuple[int, ...], length: int, p: int) -> np.ndarray:
    """``V[j][i] = xs[i] ** j mod p`` for ``j < length`` (read-only, cached)."""
    out = np.array([[pow(x, j, p) for x in xs] for j in range(length)],
                   dtype=np.int64 if p < 2 ** 31 else object)
    out.setflags(write=False)
    return out


def matmul_mod(a, b, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for integer matrices.

    For ``p < 2**31`` the right operand is split into 16-bit halves so that
    every partial sum fits in int64; larger moduli use Python integers.
    """
    if p < 2 ** 31:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] >= 2 ** 15:
            raise ValueError("inner dimension too large for the int64 path")
        lo, hi = b & 0xFFFF, b >> 16
        return ((a @ hi) % p * 65536 + a @ lo) % p
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return (a @ b) % p


def solve_linear(rows: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """One solution of ``rows @ x = rhs`` over GF(p), free variables set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        row = [v * inv % p for v in m[r]]
        m[r] = row
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if m[i][n_cols]:
            return None
    x = [0] * n_cols
    for i, c in enumerate(pivots):
        x[c] = m[i][n_cols]
    return x
