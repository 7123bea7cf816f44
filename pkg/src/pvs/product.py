"""Sharing a product of shares: masking polynomials and the C-polynomial.

For degree-``t`` polynomials ``a`` and ``b`` the masks ``O_1..O_t`` (each of
degree ``t``) cancel the high half of ``a*b``, so that

    C(x) = a(x) b(x) - sum_i x**i O_i(x)

has degree at most ``t`` and ``C(0) = a(0) b(0)``.  Vector inputs are
handled coordinate-wise with the element-wise product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeViolation
from .field import FieldElement, Poly, VecPoly


@dataclass(frozen=True)
class MaskingPolys:
    o_polys: tuple[Poly | VecPoly, ...]

    def __len__(self):
        return len(self.o_polys)

    def __iter__(self):
        return iter(self.o_polys)

    def __getitem__(self, i):
        return self.o_polys[i]


def _masks_scalar(a: Poly, b: Poly, t: int, rng) -> list[Poly]:
    field = a.field
    p = field.modulus
    residual = list((a * b).coeffs) + [0] * (2 * t + 1)
    masks: list[Poly | None] = [None] * t
    for i in range(t, 0, -1):
        low = [rng.randrange(p) for _ in range(t)]
        top = residual[t + i]
        o = low + [top]
        for k, c in enumerate(o):
            residual[i + k] = (residual[i + k] - c) % p
        masks[i - 1] = Poly(field, o)
    return masks


def build_masking_polys(a: Poly | VecPoly, b: Poly | VecPoly, t: int, rng) -> MaskingPolys:
    """Masks for ``a*b``: for ``i = t..1`` draw the ``t`` low coefficients of ``O_i``
    uniformly, then fix its top coefficient to cancel ``x**(t+i)``."""
    if a.degree > t or b.degree > t:
        raise DegreeViolation(f"inputs must have degree <= {t}")
    if t == 0:
        return MaskingPolys(())
    if isinstance(a, Poly):
        return MaskingPolys(tuple(_masks_scalar(a, b, t, rng)))
    per_coord = [_masks_scalar(ac, bc, t, rng) for ac, bc in zip(a.components, b.components)]
    return MaskingPolys(tuple(VecPoly([coord[i] for coord in per_coord]) for i in range(t)))


def build_c_poly(a: Poly | VecPoly, b: Poly | VecPoly, masks: MaskingPolys,
                 t: int | None = None) -> Poly | VecPoly:
    """``C = a*b - sum_i x**i O_i``; raises :class:`DegreeViolation` if ``deg C > t``."""
    if t is None:
        t = len(masks)
    c = a * b
    for i, o in enumerate(masks, start=1):
        c = c - o.shift(i)
    if c.degree > t:
        raise DegreeViolation(f"masks do not cancel: C has degree {c.degree} > {t}")
    return c


def check_relation_at(alpha: int | FieldElement, f_val, g_val, c_val, o_vals: Sequence, p: int) -> bool:
    """Check ``c = f*g - sum_i alpha**i o_i`` at one point, coordinate-wise for vectors."""
    alpha = int(alpha) % p
    if isinstance(c_val, (int, FieldElement)):
        f_val, g_val, c_val = (f_val,), (g_val,), (c_val,)
        o_vals = [(o,) for o in o_vals]
    for k in range(len(c_val)):
        acc = int(f_val[k]) * int(g_val[k])
        power = 1
        for o in o_vals:
            power = power * alpha % p
            acc -= power * int(o[k])
        if acc % p != int(c_val[k]) % p:
            return False
    return True
