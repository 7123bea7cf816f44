"""Exhaustive privacy audit on tiny instances.

The audit enumerates every random coefficient of every honest dealer and
computes the exact multiset of views of a colluding set of voters.  Two vote
assignments with the same tally are private with respect to each other iff
the multisets coincide.

Model.  The yes/no scheme with univariate Shamir dealing: dealer ``n`` with
vote ``v`` picks ``F`` (constant ``1 - v``) and ``G`` (constant ``v``) of
degree ``t``, masks ``O_1..O_t`` and ``C = F G - sum x**i O_i``.  The
coalition sees, for every honest dealer,

* its own points of ``F``, ``G``, ``O_i`` and ``C``,
* the broadcasts ``F + G`` and ``C`` at every honest voter's point,
* the selector (always ``G`` for honest voters),

and, jointly over all dealers, the counting broadcasts ``sum_n G_n`` at
every honest point.  The bivariate layer is audited separately by
:func:`vss_share_distribution`, since its extra coefficients would make the
joint enumeration intractable.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .ballot import ABSTAIN
from .errors import ConfigError, ThresholdExceeded, UnequalTallies
from .field import EvalPoints, Poly, PrimeField
from .product import build_c_poly, build_masking_polys
from .protocol import ElectionConfig
from .vss import BivarPoly

INDISTINGUISHABLE = "Indistinguishable"
DISTINGUISHABLE = "Distinguishable"

# largest joint enumeration the audit will attempt
MAX_JOINT = 50_000_000


class _Scripted:
    """Stands in for ``random.Random`` and replays fixed draws."""

    def __init__(self, values):
        self._values = iter(values)

    def randrange(self, _stop):
        return next(self._values)


@dataclass
class PrivacyAuditReport:
    description: str
    adversary: tuple[int, ...]
    view_distributions: dict[str, str]
    verdict: str
    witness: tuple[str, str] | None = None
    views_per_assignment: int = 0
    distinct_views: dict[str, int] = dc_field(default_factory=dict)

    @property
    def indistinguishable(self) -> bool:
        return self.verdict == INDISTINGUISHABLE

    def to_text(self) -> str:
        lines = [self.description, f"adversary: {list(self.adversary)}",
                 f"joint views per assignment: {self.views_per_assignment}"]
        for label, digest in self.view_distributions.items():
            lines.append(f"  {label}: {digest[:16]}  ({self.distinct_views[label]} distinct views)")
        verdict = self.verdict
        if self.witness:
            verdict += f" (witness: {self.witness[0]} vs {self.witness[1]})"
        lines.append(f"verdict: {verdict}")
        return "\n".join(lines)


def _bit(choice) -> int:
    if choice == 1:
        return 1
    if choice in (ABSTAIN, 0):
        return 0
    raise ConfigError(f"yes/no audit needs choices 1 or 'abstain', got {choice!r}")


def _label(assignment) -> str:
    return "".join("Y" if _bit(c) else "N" for c in assignment)


def _dealer_views(field: PrimeField, t: int, v: int, adversary, honest, pts: EvalPoints,
                  zero_masking: bool):
    """All views of one honest dealer's messages: list of (view tuple, G at honest points)."""
    p = field.modulus
    n_free = 2 * t + t * t
    out = []
    for r in itertools.product(range(p), repeat=n_free):
        f = Poly(field, [1 - v] + list(r[:t]))
        g = Poly(field, [v] + list(r[t:2 * t]))
        draws = [0] * (t * t) if zero_masking else r[2 * t:]
        masks = build_masking_polys(f, g, t, _Scripted(draws))
        c = build_c_poly(f, g, masks, t)
        private = []
        for a in adversary:
            x = pts.alpha(a)
            private.append((f.evaluate(x), g.evaluate(x), tuple(o.evaluate(x) for o in masks), c.evaluate(x)))
        broadcast = tuple((f.evaluate(pts.alpha(m)) + g.evaluate(pts.alpha(m))) % p for m in honest)
        c_broadcast = tuple(c.evaluate(pts.alpha(m)) for m in honest)
        view = (tuple(private), broadcast, c_broadcast, "G")
        out.append((view, tuple(g.evaluate(pts.alpha(m)) for m in honest)))
    return out


def _joint_multiset(per_dealer, p: int, n_honest_points: int, n_ids: int):
    """Exact multiset of joint views as sorted unique rows and their counts."""
    ids = [np.array([vid for vid, _ in views], dtype=np.int64) for views in per_dealer]
    contribs = [np.array([w for _, w in views], dtype=np.int64).reshape(len(views), n_honest_points)
                for views in per_dealer]
    cols = []
    total = 1
    for d_ids in ids:
        total *= len(d_ids)
    shape = [len(d) for d in ids]
    for k, d_ids in enumerate(ids):
        idx = [1] * len(ids)
        idx[k] = shape[k]
        cols.append(np.broadcast_to(d_ids.reshape(idx), shape).reshape(total))
    w = np.zeros(shape + [n_honest_points], dtype=np.int64)
    for k, d_w in enumerate(contribs):
        idx = [1] * len(ids) + [n_honest_points]
        idx[k] = shape[k]
        w = (w + d_w.reshape(idx)) % p
    w = w.reshape(total, n_honest_points)
    columns = cols + [w[:, j] for j in range(n_honest_points)]
    radices = [n_ids] * len(cols) + [p] * n_honest_points
    if np.prod([float(r) for r in radices]) < 2.0 ** 62:
        # pack each row into one integer; ordering and equality are preserved
        key = np.zeros(total, dtype=np.int64)
        for col, radix in zip(columns, radices):
            key = key * radix + col
        return np.unique(key, return_counts=True)
    return np.unique(np.column_stack(columns), axis=0, return_counts=True)


def audit_privacy(config: ElectionConfig, adversary_set: Sequence[int], assignments: Sequence[Sequence],
                  *, zero_masking: bool = False) -> PrivacyAuditReport:
    """Compare coalition view multisets across equal-tally vote assignments.

    Each assignment lists all ``N`` yes/no choices (``1`` or ``"abstain"``);
    the coalition's own ballots must agree across assignments and its own
    randomness is held fixed, so only honest randomness is enumerated.
    ``zero_masking`` replaces the mask coefficients by zeros, which must
    make the audit fail.
    """
    n, t, p = config.n_voters, config.threshold, config.field.modulus
    adversary = tuple(sorted(set(adversary_set)))
    if config.n_candidates != 1:
        raise ConfigError("the exhaustive audit covers the yes/no scheme (one candidate)")
    if len(adversary) > t:
        raise ThresholdExceeded(f"{len(adversary)} colluding voters exceed t={t}")
    if not all(1 <= a <= n for a in adversary):
        raise ConfigError("adversary ids out of range")
    if len(assignments) < 2:
        raise ConfigError("need at least two assignments to compare")
    for a in assignments:
        if len(a) != n:
            raise ConfigError(f"assignment {a!r} does not have {n} entries")
    bits = [[_bit(c) for c in a] for a in assignments]
    if len({sum(b) for b in bits}) != 1:
        raise UnequalTallies("assignments have different tallies")
    if len({tuple(b[i - 1] for i in adversary) for b in bits}) != 1:
        raise ConfigError("the coalition's own ballots must be the same in every assignment")

    honest = [m for m in range(1, n + 1) if m not in adversary]
    per_dealer_size = p ** (2 * t + t * t)
    joint = per_dealer_size ** len(honest)
    if joint > MAX_JOINT:
        raise ConfigError(f"{joint} joint views is too many to enumerate")

    pts = config.eval_points
    cache = {}
    view_ids: dict = {}
    results = {}
    for a, b in zip(assignments, bits):
        per_dealer = []
        for m in honest:
            key = (m, b[m - 1])
            if key not in cache:
                cache[key] = _dealer_views(config.field, t, b[m - 1], adversary, honest, pts, zero_masking)
            per_dealer.append([(view_ids.setdefault((m, view), len(view_ids)), w) for view, w in cache[key]])
        results[_label(a)] = per_dealer
    # ids are global across assignments, so every packing uses the same radix
    results = {label: _joint_multiset(per_dealer, p, len(honest), len(view_ids) + 1)
               for label, per_dealer in results.items()}

    digests = {label: hashlib.sha256(rows.tobytes() + counts.tobytes()).hexdigest()
               for label, (rows, counts) in results.items()}
    labels = list(results)
    witness = None
    first_rows, first_counts = results[labels[0]]
    for label in labels[1:]:
        rows, counts = results[label]
        if not (np.array_equal(rows, first_rows) and np.array_equal(counts, first_counts)):
            witness = (labels[0], label)
            break
    desc = (f"privacy audit: GF({p}), N={n}, t={t}, yes/no scheme"
            + (", masks forced to zero" if zero_masking else "")
            + "\nreductions: scalar F and G dealt by univariate Shamir sharing;"
            " bivariate secrecy is checked separately by vss_share_distribution")
    return PrivacyAuditReport(
        description=desc,
        adversary=adversary,
        view_distributions=digests,
        verdict=DISTINGUISHABLE if witness else INDISTINGUISHABLE,
        witness=witness,
        views_per_assignment=joint,
        distinct_views={label: len(r[1]) for label, r in results.items()},
    )


def equal_tally_groups(n_voters: int, adversary: Sequence[int], adversary_votes=None) -> list[list[list]]:
    """All honest yes/no assignments grouped by tally (groups of size >= 2 only)."""
    adversary = sorted(adversary)
    adversary_votes = adversary_votes or [1] * len(adversary)
    honest = [m for m in range(1, n_voters + 1) if m not in adversary]
    groups: dict[int, list[list]] = {}
    for combo in itertools.product((1, ABSTAIN), repeat=len(honest)):
        full = [None] * n_voters
        for a, v in zip(adversary, adversary_votes):
            full[a - 1] = v
        for m, c in zip(honest, combo):
            full[m - 1] = c
        groups.setdefault(sum(_bit(c) for c in full), []).append(full)
    return [g for _, g in sorted(groups.items()) if len(g) >= 2]


def tiny_config() -> ElectionConfig:
    """The reference audit instance: GF(5), four voters, one tolerated adversary, yes/no."""
    return ElectionConfig.make(4, 1, 1, modulus=5)


def audit_tiny(zero_masking: bool = False, adversary=(1,)) -> list[PrivacyAuditReport]:
    cfg = tiny_config()
    return [audit_privacy(cfg, adversary, group, zero_masking=zero_masking)
            for group in equal_tally_groups(cfg.n_voters, adversary)]


def vss_share_distribution(field: PrimeField, t: int, secret: int, voters: Sequence[int],
                           pts: EvalPoints) -> Counter:
    """Multiset of restrictions ``(f_n, g_n)`` seen by ``voters`` over every dealing of ``secret``.

    Enumerates all ``p**((t+1)**2 - 1)`` bivariate polynomials with
    ``S(0, 0) = secret``.
    """
    p = field.modulus
    size = (t + 1) ** 2 - 1
    if p ** size > MAX_JOINT:
        raise ConfigError("too many bivariate polynomials to enumerate")
    out: Counter = Counter()
    for free in itertools.product(range(p), repeat=size):
        flat = [secret % p] + list(free)
        coeffs = [flat[i * (t + 1):(i + 1) * (t + 1)] for i in range(t + 1)]
        s = BivarPoly(field, coeffs)
        out[tuple((s.row(pts.alpha(v)).coeffs, s.col(pts.alpha(v)).coeffs) for v in voters)] += 1
    return out
