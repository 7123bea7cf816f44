"""Bivariate verifiable secret sharing with public complaint resolution.

A dealer hides each coordinate of a secret in a random bivariate polynomial
``S(x, y)`` of degree ``t`` in each variable and hands voter ``n`` the two
restrictions ``f_n(x) = S(x, alpha_n)`` and ``g_n(y) = S(alpha_n, y)``.
Voter ``n``'s Shamir share of the univariate polynomial ``S(x, 0)`` is
``g_n(0)``.

Resolution runs over broadcast data only, so every honest voter reaches the
same verdict:

1. pairwise echoes; mismatches become broadcast :class:`Complaint` s,
2. the dealer reveals the shares of voters whose complaint values are wrong
   (or who report a missing share),
3. repeated accept/reject votes by voters whose share was not revealed; each
   set of rejecting voters must be answered by revealing their shares.

A dealer is rejected when ``t + 1`` voters reject in one vote round, when an
obligation to reveal goes unanswered, or when its revealed shares are
malformed or mutually inconsistent.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .errors import BadThreshold, DegreeViolation
from .field import EvalPoints, Poly, PrimeField, VecPoly, _trim, matmul_mod, vandermonde


class BivarPoly:
    """``S(x, y) = sum coeffs[i][j] x**i y**j`` with ``i, j <= t``."""

    __slots__ = ("field", "t", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Sequence[Sequence[int]]):
        t = len(coeffs) - 1
        if t < 0 or any(len(row) != t + 1 for row in coeffs):
            raise ValueError("bivariate coefficients must form a (t+1)x(t+1) matrix")
        self.field = field
        self.t = t
        self.coeffs = tuple(tuple(field.coerce(c) for c in row) for row in coeffs)

    @classmethod
    def random(cls, field: PrimeField, t: int, rng, secret: int = 0,
               base: Poly | None = None) -> BivarPoly:
        """Uniform degree-(t,t) polynomial with ``S(0,0) = secret``.

        With ``base`` the whole restriction ``S(x, 0)`` is prescribed instead.
        Free coefficients are drawn row by row in ``(i, j)`` order.
        """
        p = field.modulus
        if base is not None:
            if base.degree > t:
                raise DegreeViolation(f"base polynomial has degree {base.degree} > {t}")
            fixed = [base.coeff(i) for i in range(t + 1)]
        else:
            fixed = [field.coerce(secret)]
        rows = []
        for i in range(t + 1):
            row = []
            for j in range(t + 1):
                if j == 0 and i < len(fixed):
                    row.append(fixed[i])
                else:
                    row.append(rng.randrange(p))
            rows.append(row)
        self = object.__new__(cls)
        self.field, self.t, self.coeffs = field, t, tuple(tuple(r) for r in rows)
        return self

    @property
    def secret(self) -> int:
        return self.coeffs[0][0]

    def evaluate(self, x: int, y: int) -> int:
        p = self.field.modulus
        acc = 0
        for row in reversed(self.coeffs):
            inner = 0
            for c in reversed(row):
                inner = (inner * y + c) % p
            acc = (acc * x + inner) % p
        return acc

    def row(self, alpha: int) -> Poly:
        """``f(x) = S(x, alpha)``."""
        p = self.field.modulus
        powers = _powers(alpha, self.t, p)
        return Poly(self.field, [sum(c * w for c, w in zip(r, powers)) for r in self.coeffs])

    def col(self, alpha: int) -> Poly:
        """``g(y) = S(alpha, y)``."""
        p = self.field.modulus
        powers = _powers(alpha, self.t, p)
        n = self.t + 1
        return Poly(self.field, [sum(self.coeffs[i][j] * powers[i] for i in range(n))
                                 for j in range(n)])

    def x_restriction(self) -> Poly:
        """``S(x, 0)``, the univariate polynomial whose shares are the ``g_n(0)``."""
        return Poly(self.field, [r[0] for r in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and (self.field, self.coeffs) == (other.field, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BivarPoly(t={self.t}, {self.coeffs!r} over {self.field!r})"


def _powers(x: int, t: int, p: int) -> list[int]:
    out = [1] * (t + 1)
    for k in range(1, t + 1):
        out[k] = out[k - 1] * x % p
    return out


@dataclass(frozen=True)
class VssShare:
    """Voter ``holder``'s restrictions, one component per secret coordinate."""

    holder: int
    f: VecPoly
    g: VecPoly

    def value(self) -> tuple[int, ...]:
        """Shamir share ``S(alpha_holder, 0)`` of every coordinate."""
        return self.g.constant_term()

    def echo(self, peer_alpha: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """What the holder sends a peer: ``(f(alpha_peer), g(alpha_peer))``."""
        return self.f.evaluate(peer_alpha), self.g.evaluate(peer_alpha)

    def is_well_formed(self, t: int, width: int, own_alpha: int) -> bool:
        """Degree and width bounds, plus the diagonal identity ``f(a) = g(a)``."""
        if self.f.width != width or self.g.width != width:
            return False
        if self.f.degree > t or self.g.degree > t:
            return False
        return self.f.evaluate(own_alpha) == self.g.evaluate(own_alpha)

    def to_json(self) -> dict:
        return {"holder": self.holder,
                "f": [[str(c) for c in row] for row in self.f.coeff_rows()],
                "g": [[str(c) for c in row] for row in self.g.coeff_rows()]}


@dataclass(frozen=True)
class Complaint:
    """Broadcast by ``accuser`` against ``accused_dealer``.

    It carries the accuser's own values ``f(alpha_peer)`` and ``g(alpha_peer)``.
    A complaint with ``peer=None`` reports a missing or malformed share.
    """

    accuser: int
    accused_dealer: int
    peer: int | None
    claimed_f_at_peer: tuple[int, ...] | None = None
    claimed_g_at_peer: tuple[int, ...] | None = None

    @property
    def missing(self) -> bool:
        return self.peer is None

    def to_json(self) -> dict:
        out = {"accuser": self.accuser, "dealer": self.accused_dealer, "peer": self.peer}
        if not self.missing:
            out["f"] = [str(v) for v in self.claimed_f_at_peer]
            out["g"] = [str(v) for v in self.claimed_g_at_peer]
        return out


class VerdictStatus(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    PENDING = "pending"


@dataclass(frozen=True)
class DealerVerdict:
    dealer: int
    status: VerdictStatus
    forced_shares: Mapping[int, VssShare] = dc_field(default_factory=dict)
    reason: str = ""

    @property
    def settled(self) -> bool:
        return self.status is not VerdictStatus.PENDING

    def to_json(self) -> dict:
        return {"dealer": self.dealer, "status": self.status.value, "reason": self.reason,
                "forced_shares": [self.forced_shares[v].to_json() for v in sorted(self.forced_shares)]}

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()


@dataclass
class VssRecord:
    """Everything broadcast about one dealing, in round order.

    ``reveals[0]`` answers the complaints; ``votes[k]`` is followed by
    ``reveals[k + 1]``, which must reveal every voter rejecting in ``votes[k]``.
    """

    dealer: int
    complaints: list[Complaint] = dc_field(default_factory=list)
    reveals: list[dict[int, VssShare]] = dc_field(default_factory=list)
    votes: list[dict[int, bool]] = dc_field(default_factory=list)

    def revealed(self, through: int | None = None) -> dict[int, VssShare]:
        """Revealed shares from reveal rounds ``0..through`` (all by default); first reveal wins."""
        out: dict[int, VssShare] = {}
        rounds = self.reveals if through is None else self.reveals[:through + 1]
        for rnd in rounds:
            for voter, share in rnd.items():
                out.setdefault(voter, share)
        return out


def vss_deal(secret, t: int, pts: EvalPoints, rng, field: PrimeField | None = None,
             enforce_threshold: bool = True) -> tuple[list[VssShare], list[BivarPoly]]:
    """Deal a vector secret; one independent bivariate polynomial per coordinate.

    ``secret`` is either a sequence of constants (``S(0,0)`` per coordinate) or a
    :class:`VecPoly` prescribing ``S(x, 0)`` per coordinate.  Shares are
    returned in voter order ``1..N``.
    """
    field = field or pts.field
    n = len(pts)
    if t < 0:
        raise BadThreshold("threshold must be non-negative")
    if enforce_threshold and n < 3 * t + 1:
        raise BadThreshold(f"{n} voters cannot tolerate t={t} (need at least {3 * t + 1})")
    if isinstance(secret, VecPoly):
        bivars = [BivarPoly.random(field, t, rng, base=comp) for comp in secret.components]
    else:
        bivars = [BivarPoly.random(field, t, rng, secret=s) for s in secret]
    return _all_shares(bivars, pts, field), bivars


def _all_shares(bivars: Sequence[BivarPoly], pts: EvalPoints, field: PrimeField) -> list[VssShare]:
    """Every voter's restrictions, via two stacked matrix products."""
    p = field.modulus
    t = bivars[0].t
    vander = vandermonde(tuple(pts), t + 1, p)
    stacked_rows = [row for b in bivars for row in b.coeffs]
    stacked_cols = [col for b in bivars for col in zip(*b.coeffs)]
    f_all = matmul_mod(stacked_rows, vander, p).T.tolist()   # f_n coefficients
    g_all = matmul_mod(stacked_cols, vander, p).T.tolist()   # g_n coefficients
    k = t + 1
    shares = []
    for n in range(len(pts)):
        fr, gr = f_all[n], g_all[n]
        f = VecPoly([Poly._raw(field, _trim(fr[i:i + k])) for i in range(0, len(fr), k)])
        g = VecPoly([Poly._raw(field, _trim(gr[i:i + k])) for i in range(0, len(gr), k)])
        shares.append(VssShare(n + 1, f, g))
    return shares


def share_for(bivars: Sequence[BivarPoly], voter: int, pts: EvalPoints) -> VssShare:
    a = pts.alpha(voter)
    return VssShare(voter, VecPoly([b.row(a) for b in bivars]), VecPoly([b.col(a) for b in bivars]))


def vss_pairwise_check(my_share: VssShare, peer_echo, my_alpha: int, peer_alpha: int,
                       *, dealer: int, peer: int) -> Complaint | None:
    """Compare a peer's echo ``(f_peer(my_alpha), g_peer(my_alpha))`` with my own share.

    Consistent sharing satisfies ``f_peer(a_me) = g_me(a_peer)`` and
    ``g_peer(a_me) = f_me(a_peer)``.  Returns ``None`` when consistent.
    """
    mine_f, mine_g = my_share.echo(peer_alpha)
    if peer_echo is not None:
        peer_f, peer_g = peer_echo
        if tuple(peer_f) == mine_g and tuple(peer_g) == mine_f:
            return None
    return Complaint(my_share.holder, dealer, peer, mine_f, mine_g)


def claims_consistent(a: Complaint, b: Complaint) -> bool:
    """Whether two mutual complaints could both come from a consistent sharing."""
    return a.claimed_f_at_peer == b.claimed_g_at_peer and a.claimed_g_at_peer == b.claimed_f_at_peer


def claims_correct(complaint: Complaint, bivars: Sequence[BivarPoly], pts: EvalPoints) -> bool:
    """Dealer-side check of the values carried by a complaint."""
    if complaint.missing:
        return False
    a_acc = pts.alpha(complaint.accuser)
    a_peer = pts.alpha(complaint.peer)
    want_f = tuple(b.evaluate(a_peer, a_acc) for b in bivars)
    want_g = tuple(b.evaluate(a_acc, a_peer) for b in bivars)
    return complaint.claimed_f_at_peer == want_f and complaint.claimed_g_at_peer == want_g


def dealer_response(bivars: Sequence[BivarPoly], record: VssRecord, pts: EvalPoints) -> dict[int, VssShare]:
    """The shares an honest dealer broadcasts in the next reveal round."""
    k = len(record.reveals)
    if k == 0:
        targets = {c.accuser for c in record.complaints if not claims_correct(c, bivars, pts)}
    else:
        targets = {v for v, ok in record.votes[k - 1].items() if not ok}
    return {v: share_for(bivars, v, pts) for v in sorted(targets)}


def consistency_vote(share: VssShare | None, revealed: Mapping[int, VssShare], pts: EvalPoints) -> bool:
    """A voter accepts iff its share agrees with every revealed share."""
    if share is None:
        return False
    me = share.holder
    a_me = pts.alpha(me)
    for voter, other in revealed.items():
        if voter == me:
            continue
        a_other = pts.alpha(voter)
        if other.f.evaluate(a_me) != share.g.evaluate(a_other):
            return False
        if other.g.evaluate(a_me) != share.f.evaluate(a_other):
            return False
    return True


def _revealed_problem(revealed: Mapping[int, VssShare], t: int, width: int, pts: EvalPoints) -> str | None:
    for voter, share in revealed.items():
        if share.holder != voter or not 1 <= voter <= len(pts):
            return f"revealed share for voter {voter} is mislabelled"
        if not share.is_well_formed(t, width, pts.alpha(voter)):
            return f"revealed share for voter {voter} is malformed"
    voters = sorted(revealed)
    for i, a in enumerate(voters):
        for b in voters[i + 1:]:
            sa, sb = revealed[a], revealed[b]
            aa, ab = pts.alpha(a), pts.alpha(b)
            if sa.f.evaluate(ab) != sb.g.evaluate(aa) or sa.g.evaluate(ab) != sb.f.evaluate(aa):
                return f"revealed shares of voters {a} and {b} disagree"
    return None


def vss_resolve(record: VssRecord, t: int, width: int, pts: EvalPoints) -> DealerVerdict:
    """Verdict on a dealing, computed from broadcast data alone."""
    dealer = record.dealer

    def verdict(status, reason=""):
        forced = record.revealed() if status is VerdictStatus.ACCEPTED else {}
        return DealerVerdict(dealer, status, forced, reason)

    for rnd in record.reveals[1:]:
        for voter, share in rnd.items():
            first = record.revealed().get(voter)
            if first is not None and first != share:
                return verdict(VerdictStatus.REJECTED, f"voter {voter} revealed twice with different shares")
    problem = _revealed_problem(record.revealed(), t, width, pts)
    if problem:
        return verdict(VerdictStatus.REJECTED, problem)

    if not record.reveals:
        return verdict(VerdictStatus.PENDING)
    answered = record.reveals[0]
    by_pair = {(c.accuser, c.peer): c for c in record.complaints if not c.missing}
    for c in record.complaints:
        if c.missing and c.accuser not in answered:
            return verdict(VerdictStatus.REJECTED, f"missing share of voter {c.accuser} not revealed")
    for (a, b), c in sorted(by_pair.items()):
        back = by_pair.get((b, a))
        if a < b and back is not None and not claims_consistent(c, back):
            if a not in answered and b not in answered:
                return verdict(VerdictStatus.REJECTED, f"conflict between voters {a} and {b} left unresolved")

    for k, votes in enumerate(record.votes):
        earlier = record.revealed(through=k)
        rejects = {v for v, ok in votes.items() if not ok and v not in earlier}
        if len(rejects) >= t + 1:
            return verdict(VerdictStatus.REJECTED, f"{len(rejects)} voters rejected in vote round {k}")
        if not rejects:
            return verdict(VerdictStatus.ACCEPTED)
        if len(record.reveals) <= k + 1:
            return verdict(VerdictStatus.PENDING)
        unanswered = rejects - set(record.reveals[k + 1])
        if unanswered:
            return verdict(VerdictStatus.REJECTED, f"shares of rejecting voters {sorted(unanswered)} not revealed")
    return verdict(VerdictStatus.PENDING)
