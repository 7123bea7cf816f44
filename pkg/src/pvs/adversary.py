"""Catalog of corrupt-voter behaviours.

A strategy sees each honest action a corrupt voter is about to take (its
encoded ballot, its product dealing, or the batch of messages for the
current round) and returns a replacement.  Adversaries are not rushing:
batches are fixed before any message of the round is delivered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .ballot import VoteVector
from .errors import ConfigError
from .field import Poly, VecPoly, poly_random
from .transcript import Message
from .vss import Complaint, VssShare

HONEST = "Honest"

# kind -> (argument names, defaults)
CATALOG: dict[str, tuple[tuple[str, ...], tuple]] = {
    HONEST: ((), ()),
    "InconsistentDealer": ((), ()),
    "SilentDealer": ((), ()),
    "DoubleVote": (("first", "second"), (1, 2)),
    "NonBinaryVote": (("value",), (2,)),
    "WrongComplement": ((), ()),
    "BadSumBroadcast": (("offset",), (1,)),
    "BadMaskPolys": ((), ()),
    "FalseComplaint": (("target",), (1,)),
    "WrongCountBroadcast": (("offset",), (1,)),
    "CollusionObserver": ((), ()),
}

# phase in which honest voters disqualify a voter running the strategy
# (None: the deviation is corrected and the voter stays counted)
EXPECTED_PHASE = {
    HONEST: None,
    "InconsistentDealer": "sharing",
    "SilentDealer": "sharing",
    "DoubleVote": "verify_entities",
    "NonBinaryVote": "verify_product",
    "WrongComplement": "verify_sum",
    "BadSumBroadcast": None,
    "BadMaskPolys": "verify_product",
    "FalseComplaint": "verify_product",
    "WrongCountBroadcast": None,
    "CollusionObserver": None,
}


@dataclass(frozen=True)
class Strategy:
    kind: str = HONEST
    args: tuple = ()

    def __post_init__(self):
        if self.kind not in CATALOG:
            raise ConfigError(f"unknown strategy {self.kind!r}")
        names, defaults = CATALOG[self.kind]
        if len(self.args) > len(names):
            raise ConfigError(f"{self.kind} takes at most {len(names)} arguments")
        if not all(isinstance(a, int) and not isinstance(a, bool) for a in self.args):
            raise ConfigError(f"{self.kind} arguments must be integers")
        object.__setattr__(self, "args", tuple(self.args) + defaults[len(self.args):])

    @property
    def honest(self) -> bool:
        return self.kind in (HONEST, "CollusionObserver")

    @property
    def records_view(self) -> bool:
        return self.kind == "CollusionObserver"

    def arg(self, name: str):
        return self.args[CATALOG[self.kind][0].index(name)]

    def __str__(self):
        return f"{self.kind}({','.join(map(str, self.args))})" if self.args else self.kind


_SPEC_RE = re.compile(r"^\s*([A-Za-z]+)\s*(?:\((.*)\))?\s*$")


def parse_strategy(text: str) -> Strategy:
    """Parse ``"DoubleVote(1,2)"``, ``"SilentDealer"`` and the like."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ConfigError(f"cannot parse strategy {text!r}")
    kind, arglist = m.group(1), m.group(2)
    args = ()
    if arglist and arglist.strip():
        try:
            args = tuple(int(a) for a in arglist.split(","))
        except ValueError:
            raise ConfigError(f"strategy arguments must be integers: {text!r}") from None
    return Strategy(kind, args)


@dataclass(frozen=True)
class ProductDealing:
    """A dealer's masking polynomials and C-polynomial, before sharing."""

    o_polys: tuple[VecPoly, ...]
    c: VecPoly

    def secret(self) -> VecPoly:
        out = self.c
        for o in reversed(self.o_polys):
            out = o.concat(out)
        return out


def apply_strategy(strategy: Strategy, honest_action, local_state):
    """Replace ``honest_action`` according to ``strategy``.

    ``local_state`` is the corrupt voter itself (a :class:`pvs.protocol.Voter`);
    strategies read its id, configuration, randomness and received shares.
    """
    if strategy.honest:
        return honest_action
    if isinstance(honest_action, VoteVector):
        return _ballot(strategy, honest_action)
    if isinstance(honest_action, ProductDealing):
        return _product(strategy, honest_action, local_state)
    return _messages(strategy, list(honest_action), local_state)


def _ballot(s: Strategy, vote: VoteVector) -> VoteVector:
    k1 = vote.width
    if s.kind == "DoubleVote":
        hot = {s.arg("first") - 1, s.arg("second") - 1}
        if not all(0 <= h < k1 for h in hot):
            raise ConfigError("DoubleVote coordinates out of range")
        v = tuple(1 if i in hot else 0 for i in range(k1))
    elif s.kind == "NonBinaryVote":
        hot = vote.v.index(1)
        v = tuple(s.arg("value") if i == hot else 0 for i in range(k1))
    elif s.kind == "WrongComplement":
        return VoteVector(vote.v, vote.v)
    else:
        return vote
    return VoteVector(v, tuple(1 - x for x in v))


def _product(s: Strategy, deal: ProductDealing, voter) -> ProductDealing:
    if s.kind != "BadMaskPolys" or not deal.o_polys:
        return deal
    cfg = voter.config
    t = cfg.threshold
    while True:
        delta = poly_random(cfg.field, t, [cfg.field.random_int(voter.rng) for _ in range(cfg.width)],
                            voter.rng)
        if any(not c.is_zero() for c in delta.components):
            break
    return ProductDealing((deal.o_polys[0] + delta,) + deal.o_polys[1:], deal.c)


def _messages(s: Strategy, batch: list[Message], voter) -> list[Message]:
    me = voter.id
    kind = s.kind
    if kind == "SilentDealer":
        return [m for m in batch if m.kind not in ("share", "reveal")]
    if kind == "InconsistentDealer":
        return [_spoil_share(m, voter) for m in batch if m.kind != "reveal"]
    if kind == "BadSumBroadcast" and voter.round_kind == "sum":
        return [_offset(m, "values", "s", s.arg("offset"), voter) for m in batch]
    if kind == "WrongCountBroadcast" and voter.round_kind == "count":
        out = []
        for m in batch:
            v = list(m.body["v"])
            v[0] = (v[0] + s.arg("offset")) % voter.config.field.modulus
            out.append(replace(m, body={**m.body, "v": tuple(v)}))
        return out
    if kind == "FalseComplaint":
        target = s.arg("target")
        if voter.round_kind == "complaint":
            return _false_vss_complaint(batch, voter, target)
        if voter.round_kind == "relation":
            dealers = sorted(set(batch[0].body["dealers"] if batch else ()) | {target}) if target != me else []
            if not dealers:
                return batch
            return [voter.message("relation", None, {"dealers": dealers})]
    return batch


def _spoil_share(m: Message, voter) -> Message:
    """Inconsistent rows: add ``x**(t+1)`` to ``f`` for the first ``t+1`` other voters."""
    cfg = voter.config
    if m.kind != "share" or m.body["tag"] != "vote":
        return m
    victims = sorted(v for v in range(1, cfg.n_voters + 1) if v != voter.id)[:cfg.threshold + 1]
    if m.to not in victims:
        return m
    share: VssShare = m.body["share"]
    bump = Poly(cfg.field, [0] * (cfg.threshold + 1) + [1])
    f = VecPoly([share.f.components[0] + bump] + list(share.f.components[1:]))
    return replace(m, body={**m.body, "share": VssShare(share.holder, f, share.g)})


def _offset(m: Message, list_key: str, value_key: str, offset: int, voter) -> Message:
    p = voter.config.field.modulus
    items = []
    for item in m.body[list_key]:
        vals = list(item[value_key])
        vals[0] = (vals[0] + offset) % p
        items.append({**item, value_key: tuple(vals)})
    return replace(m, body={**m.body, list_key: items})


def _false_vss_complaint(batch: list[Message], voter, target: int) -> list[Message]:
    """Complain about ``target``'s vote dealing with deliberately wrong values."""
    share = voter.shares.get((target, "vote"))
    if target == voter.id or share is None:
        return batch
    peer = min(v for v in range(1, voter.config.n_voters + 1) if v not in (voter.id, target))
    f, g = share.echo(voter.config.eval_points.alpha(peer))
    p = voter.config.field.modulus
    bogus = Complaint(voter.id, target, peer, ((f[0] + 1) % p,) + f[1:], g)
    out, placed = [], False
    for m in batch:
        if m.body.get("tag") == "vote" and not placed:
            m = replace(m, body={**m.body, "complaints": list(m.body["complaints"]) + [bogus]})
            placed = True
        out.append(m)
    if not placed:
        out.append(voter.message("complaint", None, {"tag": "vote", "complaints": [bogus]}))
    return out
