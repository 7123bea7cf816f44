"""Voter state machine and round scheduler for a full election.

Phases: ``sharing`` (two dealings per voter, the vote and its complement),
``verify_sum``, ``verify_product`` (masking polynomials shared by a second
dealing, then the C-polynomial), ``verify_entities`` and ``counting``.

Every round collects all outgoing batches before delivering any of them.
Channels are authenticated: a message is always attributed to the voter
that produced it.  Broadcasts are delivered to every voter, sender included.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping, Sequence

from .adversary import ProductDealing, Strategy, apply_strategy, parse_strategy
from .ballot import ABSTAIN, VoteVector, encode_vote
from .errors import ConfigError, DecodingFailure
from .field import DEFAULT_MODULUS, EvalPoints, PrimeField, VecPoly, prime_field
from .product import build_c_poly, build_masking_polys, check_relation_at
from .rs import DecodeResult, decode_trusted
from .transcript import Message, Transcript
from .vss import (
    Complaint,
    DealerVerdict,
    VerdictStatus,
    VssRecord,
    VssShare,
    consistency_vote,
    dealer_response,
    vss_deal,
    vss_pairwise_check,
    vss_resolve,
)

from sympy import isprime

PHASES = ("sharing", "verify_sum", "verify_product", "verify_entities", "counting")
VOTE, PRODUCT = "vote", "product"


@dataclass(frozen=True)
class ElectionConfig:
    n_voters: int
    threshold: int
    n_candidates: int
    field: PrimeField = dc_field(default_factory=lambda: prime_field(DEFAULT_MODULUS))
    eval_points: EvalPoints | None = None
    seed: int = 0
    enforce_threshold: bool = True

    def __post_init__(self):
        n, t, k, p = self.n_voters, self.threshold, self.n_candidates, self.field.modulus
        if not isinstance(n, int) or not isinstance(t, int) or not isinstance(k, int):
            raise ConfigError("n_voters, threshold and n_candidates must be integers")
        if t < 0:
            raise ConfigError("threshold must be non-negative")
        if self.enforce_threshold and n < 3 * t + 1:
            raise ConfigError(f"{n} voters cannot tolerate t={t} malicious voters (need N >= 3t+1)")
        if n < t + 1:
            raise ConfigError("need more voters than the threshold")
        if k < 1:
            raise ConfigError("need at least one candidate")
        if p <= n:
            raise ConfigError(f"GF({p}) has too few nonzero points for {n} voters")
        if self.eval_points is None:
            object.__setattr__(self, "eval_points", EvalPoints.default(self.field, n))
        elif len(self.eval_points) != n or self.eval_points.field != self.field:
            raise ConfigError("evaluation points do not match the field and voter count")

    @classmethod
    def make(cls, n_voters: int, threshold: int, n_candidates: int, modulus: int = DEFAULT_MODULUS,
             seed: int = 0, random_points: bool = False, enforce_threshold: bool = True) -> ElectionConfig:
        if not isinstance(modulus, int) or not isprime(modulus):
            raise ConfigError(f"field modulus {modulus!r} is not prime")
        try:
            field = prime_field(modulus)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        pts = None
        if random_points:
            if modulus <= n_voters:
                raise ConfigError(f"GF({modulus}) has too few nonzero points for {n_voters} voters")
            pts = EvalPoints.random(field, n_voters, random.Random(f"pvs-points/{seed}"))
        return cls(n_voters, threshold, n_candidates, field, pts, seed, enforce_threshold)

    @property
    def width(self) -> int:
        """Length of a vote vector: ``K`` candidates plus abstain."""
        return self.n_candidates + 1


@dataclass(frozen=True)
class Tally:
    counts: tuple[int, ...]

    @property
    def abstentions(self) -> int:
        return self.counts[-1]

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    def as_list(self) -> list[int]:
        return list(self.counts)


class Voter:
    """One voter's private state; corrupt voters run the same code through a strategy."""

    def __init__(self, vid: int, config: ElectionConfig, vote: VoteVector, strategy: Strategy):
        self.id = vid
        self.config = config
        self.strategy = strategy
        self.rng = random.Random(f"pvs/{config.seed}/{vid}")
        self.phase = "setup"
        self.round_kind = ""
        self.round_no = 0
        self.honest_vote = vote
        self.vote: VoteVector = apply_strategy(strategy, vote, self)
        self.shares: dict[tuple[int, str], VssShare | None] = {}
        self.echoes: dict[tuple[int, str], dict[int, tuple]] = {}
        self.records: dict[tuple[int, str], VssRecord] = {}
        self.expected: dict[str, list[int]] = {}
        self.bivars: dict[str, list] = {}
        self.verdicts: dict[tuple[int, str], DealerVerdict] = {}
        self.disqualified: dict[int, str] = {}
        self.snapshots: dict[str, frozenset[int]] = {}
        self.selectors: dict[int, str] = {}
        self.accusations: list[tuple[int, int]] = []
        self.view: list[Message] = []
        self.tally: Tally | None = None
        self.count_errors: frozenset[int] = frozenset()

    # -- helpers --------------------------------------------------------
    @property
    def t(self) -> int:
        return self.config.threshold

    @property
    def p(self) -> int:
        return self.config.field.modulus

    def alpha(self, voter: int) -> int:
        return self.config.eval_points.alpha(voter)

    def active(self, voter: int) -> bool:
        return voter not in self.disqualified

    def peers(self) -> list[int]:
        return [v for v in range(1, self.config.n_voters + 1) if v != self.id and self.active(v)]

    def surviving(self) -> list[int]:
        return [v for v in range(1, self.config.n_voters + 1) if self.active(v)]

    def message(self, kind: str, to: int | None, body: dict) -> Message:
        return Message(self.round_no, self.phase, kind, self.id, to, body)

    def disqualify(self, voter: int, reason: str = "") -> None:
        self.disqualified.setdefault(voter, self.phase)

    def width_of(self, tag: str) -> int:
        w = self.config.width
        return 2 * w if tag == VOTE else (self.t + 1) * w

    def value(self, dealer: int, tag: str) -> tuple[int, ...]:
        return self.shares[(dealer, tag)].value()

    def vote_parts(self, dealer: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``(F(alpha_me), G(alpha_me))`` of a dealer's vote dealing."""
        val = self.value(dealer, VOTE)
        w = self.config.width
        return val[:w], val[w:]

    def decode(self, points: Sequence[tuple[int, int]]) -> DecodeResult:
        # abscissas are the configured points; values may come from anyone
        p = self.p
        return decode_trusted(self.config.field, tuple((a, int(y) % p) for a, y in points), self.t)

    def decode_vector(self, points: Sequence[tuple[int, Sequence[int]]]) -> list[DecodeResult]:
        """Decode each coordinate of vector-valued points ``(alpha, (y_1, ..))``."""
        if not points:
            raise DecodingFailure("no points received")
        width = len(points[0][1])
        return [self.decode([(a, ys[k]) for a, ys in points]) for k in range(width)]

    def _senders(self, inbox, kind) -> list[Message]:
        """Messages of one kind from voters not in ``I``, first per sender."""
        seen, out = set(), []
        for m in inbox:
            if m.kind == kind and self.active(m.sender) and m.sender not in seen:
                seen.add(m.sender)
                out.append(m)
        return out

    # -- sharing --------------------------------------------------------
    def secret_for(self, tag: str):
        if tag == VOTE:
            return list(self.vote.v_prime) + list(self.vote.v)
        w = self.config.width
        bivars = self.bivars[VOTE]
        f = VecPoly([b.x_restriction() for b in bivars[:w]])
        g = VecPoly([b.x_restriction() for b in bivars[w:]])
        masks = build_masking_polys(f, g, self.t, self.rng)
        deal = ProductDealing(tuple(masks), build_c_poly(f, g, masks, self.t))
        deal = apply_strategy(self.strategy, deal, self)
        return deal.secret()

    def deal(self, tag: str) -> list[Message]:
        if not self.active(self.id):
            return []
        cfg = self.config
        shares, bivars = vss_deal(self.secret_for(tag), self.t, cfg.eval_points, self.rng,
                                  cfg.field, enforce_threshold=cfg.enforce_threshold)
        self.bivars[tag] = bivars
        self.shares[(self.id, tag)] = shares[self.id - 1]
        return [self.message("share", v, {"tag": tag, "share": shares[v - 1]}) for v in self.peers()]

    def receive_shares(self, tag: str, inbox: list[Message]) -> None:
        dealers = self.surviving()
        self.expected[tag] = dealers
        width, me = self.width_of(tag), self.alpha(self.id)
        for m in self._senders(inbox, "share"):
            share = m.body.get("share")
            ok = (m.body.get("tag") == tag and isinstance(share, VssShare) and share.holder == self.id
                  and share.is_well_formed(self.t, width, me))
            if m.sender != self.id:
                self.shares[(m.sender, tag)] = share if ok else None
        for d in dealers:
            self.shares.setdefault((d, tag), None)
            self.records[(d, tag)] = VssRecord(d)
            self.echoes[(d, tag)] = {}

    def echo(self, tag: str) -> list[Message]:
        by_peer = defaultdict(list)
        peers = self.peers()
        alphas = [self.alpha(w) for w in peers]
        for d in self.expected[tag]:
            share = self.shares[(d, tag)]
            if share is None:
                continue
            share.f.evaluate_many(alphas)
            share.g.evaluate_many(alphas)
            for w in peers:
                f, g = share.echo(self.alpha(w))
                by_peer[w].append({"dealer": d, "f": f, "g": g})
        return [self.message("echo", w, {"tag": tag, "echoes": items}) for w, items in sorted(by_peer.items())]

    def receive_echoes(self, tag: str, inbox: list[Message]) -> None:
        for m in self._senders(inbox, "echo"):
            for item in m.body["echoes"]:
                slot = self.echoes.get((item["dealer"], tag))
                if slot is not None:
                    slot.setdefault(m.sender, (tuple(item["f"]), tuple(item["g"])))

    def complain(self, tag: str) -> list[Message]:
        out = []
        me = self.alpha(self.id)
        peers = self.peers()
        for d in self.expected[tag]:
            share = self.shares[(d, tag)]
            if share is None:
                out.append(_missing(self.id, d))
                continue
            echoes = self.echoes[(d, tag)]
            for w in peers:
                c = vss_pairwise_check(share, echoes.get(w), me, self.alpha(w), dealer=d, peer=w)
                if c is not None:
                    out.append(c)
        return [self.message("complaint", None, {"tag": tag, "complaints": out})] if out else []

    def receive_complaints(self, tag: str, inbox: list[Message]) -> None:
        for m in self._senders(inbox, "complaint"):
            if m.body.get("tag") != tag:
                continue
            for c in m.body["complaints"]:
                rec = self.records.get((c.accused_dealer, tag))
                if c.accuser == m.sender and rec is not None:
                    rec.complaints.append(c)

    def pending(self, tag: str) -> list[VssRecord]:
        width = self.width_of(tag)
        return [rec for (d, tg), rec in sorted(self.records.items()) if tg == tag and
                vss_resolve(rec, self.t, width, self.config.eval_points).status is VerdictStatus.PENDING]

    def reveal(self, tag: str) -> list[Message]:
        rec = self.records.get((self.id, tag))
        if rec is None or tag not in self.bivars or rec not in self.pending(tag):
            return []
        shown = dealer_response(self.bivars[tag], rec, self.config.eval_points)
        if not shown:
            return []
        return [self.message("reveal", None, {"tag": tag, "shares": [shown[v] for v in sorted(shown)]})]

    def receive_reveals(self, tag: str, inbox: list[Message], pending: list[VssRecord]) -> None:
        shown = {m.sender: m for m in self._senders(inbox, "reveal") if m.body.get("tag") == tag}
        for rec in pending:
            rnd: dict[int, VssShare] = {}
            m = shown.get(rec.dealer)
            if m is not None:
                for share in m.body["shares"]:
                    if isinstance(share, VssShare):
                        rnd.setdefault(share.holder, share)
            rec.reveals.append(rnd)

    def cast_votes(self, tag: str) -> list[Message]:
        items = []
        for rec in self.pending(tag):
            revealed = rec.revealed()
            if self.id in revealed:
                continue
            ok = consistency_vote(self.shares[(rec.dealer, tag)], revealed, self.config.eval_points)
            items.append({"dealer": rec.dealer, "ok": ok})
        return [self.message("vote", None, {"tag": tag, "votes": items})] if items else []

    def receive_votes(self, tag: str, inbox: list[Message], pending: list[VssRecord]) -> None:
        votes: dict[int, dict[int, bool]] = {rec.dealer: {} for rec in pending}
        for m in self._senders(inbox, "vote"):
            if m.body.get("tag") != tag:
                continue
            for item in m.body["votes"]:
                slot = votes.get(item["dealer"])
                if slot is not None:
                    slot.setdefault(m.sender, bool(item["ok"]))
        for rec in pending:
            rec.votes.append(votes[rec.dealer])

    def settle(self, tag: str) -> None:
        width = self.width_of(tag)
        for (d, tg), rec in sorted(self.records.items()):
            if tg != tag:
                continue
            verdict = vss_resolve(rec, self.t, width, self.config.eval_points)
            if verdict.status is VerdictStatus.PENDING:
                verdict = DealerVerdict(d, VerdictStatus.REJECTED, {}, "resolution did not settle")
            self.verdicts[(d, tag)] = verdict
            if verdict.status is VerdictStatus.ACCEPTED:
                if self.id in verdict.forced_shares:
                    self.shares[(d, tag)] = verdict.forced_shares[self.id]
            else:
                self.disqualify(d)

    # -- verification: sum -----------------------------------------------
    def sum_values(self) -> list[Message]:
        items = []
        for d in self.surviving():
            f, g = self.vote_parts(d)
            items.append({"dealer": d, "s": tuple((a + b) % self.p for a, b in zip(f, g))})
        return [self.message("sum", None, {"values": items})]

    def check_sums(self, inbox: list[Message]) -> None:
        self._check_constants(inbox, "sum", "values", "s", lambda c: all(x == 1 for x in c))

    def _check_constants(self, inbox, kind, list_key, value_key, accept: Callable) -> None:
        points = defaultdict(list)
        for m in self._senders(inbox, kind):
            a = self.alpha(m.sender)
            for item in m.body[list_key]:
                points[item["dealer"]].append((a, item[value_key]))
        for d in self.surviving():
            results = self.decode_vector(points[d]) if points[d] else None
            if results is None or not accept(tuple(r.poly.constant_term() for r in results)):
                self.disqualify(d)

    # -- verification: product --------------------------------------------
    def _relation_holds(self, alpha, vote_val, prod_val) -> bool:
        w, t = self.config.width, self.t
        f, g = vote_val[:w], vote_val[w:]
        o = [prod_val[i * w:(i + 1) * w] for i in range(t)]
        return check_relation_at(alpha, f, g, prod_val[t * w:], o, self.p)

    def check_relation(self) -> list[Message]:
        bad = [d for d in self.surviving()
               if not self._relation_holds(self.alpha(self.id), self.value(d, VOTE), self.value(d, PRODUCT))]
        return [self.message("relation", None, {"dealers": bad})] if bad else []

    def receive_relation(self, inbox: list[Message]) -> None:
        pairs = set()
        for m in self._senders(inbox, "relation"):
            for d in m.body["dealers"]:
                if isinstance(d, int) and self.active(d):
                    pairs.add((d, m.sender))
        self.accusations = sorted(pairs)

    def reconstruct(self) -> list[Message]:
        items = []
        for d, a in self.accusations:
            aa = self.alpha(a)
            items.append({"dealer": d, "accuser": a,
                          "vote": self.shares[(d, VOTE)].f.evaluate(aa),
                          "product": self.shares[(d, PRODUCT)].f.evaluate(aa)})
        return [self.message("reconstruct", None, {"pairs": items})] if items else []

    def adjudicate(self, inbox: list[Message]) -> None:
        points = defaultdict(list)
        for m in self._senders(inbox, "reconstruct"):
            a = self.alpha(m.sender)
            for item in m.body["pairs"]:
                points[(item["dealer"], item["accuser"])].append((a, tuple(item["vote"]) + tuple(item["product"])))
        w2 = self.width_of(VOTE)
        for d, acc in self.accusations:
            public = tuple(r.poly.constant_term() for r in self.decode_vector(points[(d, acc)]))
            if self._relation_holds(self.alpha(acc), public[:w2], public[w2:]):
                self.disqualify(acc, f"false accusation against {d}")
            else:
                self.disqualify(d, f"relation fails at voter {acc}")

    def c_values(self) -> list[Message]:
        tw = self.t * self.config.width
        items = [{"dealer": d, "c": self.value(d, PRODUCT)[tw:]} for d in self.surviving()]
        return [self.message("c_value", None, {"values": items})]

    def check_c(self, inbox: list[Message]) -> None:
        self._check_constants(inbox, "c_value", "values", "c", lambda c: all(x == 0 for x in c))

    # -- verification: entities -------------------------------------------
    def selector(self) -> list[Message]:
        if not self.active(self.id):
            return []
        return [self.message("selector", None, {"selector": "G"})]

    def receive_selectors(self, inbox: list[Message]) -> None:
        self.selectors = {m.sender: m.body.get("selector") for m in self._senders(inbox, "selector")}
        for d in self.surviving():
            if self.selectors.get(d) not in ("F", "G"):
                self.disqualify(d, "missing selector")

    def selected(self, dealer: int) -> tuple[int, ...]:
        f, g = self.vote_parts(dealer)
        return g if self.selectors[dealer] == "G" else f

    def entity_sums(self) -> list[Message]:
        items = [{"dealer": d, "sum": (sum(self.selected(d)) % self.p,)} for d in self.surviving()]
        return [self.message("entities", None, {"values": items})]

    def check_entities(self, inbox: list[Message]) -> None:
        self._check_constants(inbox, "entities", "values", "sum", lambda c: c == (1,))

    # -- counting -----------------------------------------------------------
    def count_share(self) -> list[Message]:
        total = [0] * self.config.width
        for d in self.surviving():
            for k, x in enumerate(self.selected(d)):
                total[k] = (total[k] + x) % self.p
        return [self.message("count", None, {"v": tuple(total)})]

    def count(self, inbox: list[Message]) -> None:
        msgs = self._senders(inbox, "count")
        points = [(self.alpha(m.sender), m.body["v"]) for m in msgs]
        results = self.decode_vector(points)
        self.tally = Tally(tuple(r.poly.constant_term() for r in results))
        self.count_errors = frozenset(msgs[i].sender for r in results for i in r.error_indices)


def _missing(accuser: int, dealer: int) -> Complaint:
    return Complaint(accuser, dealer, None)


@dataclass
class ElectionResult:
    config: ElectionConfig
    voters: list[Voter]
    transcript: Transcript

    @property
    def honest_ids(self) -> list[int]:
        return [v.id for v in self.voters if v.strategy.honest]

    @property
    def tallies(self) -> dict[int, Tally]:
        return {v.id: v.tally for v in self.voters}

    def honest_tallies(self) -> dict[int, Tally]:
        return {v.id: v.tally for v in self.voters if v.strategy.honest}

    def agreed_tally(self) -> Tally | None:
        """The common honest tally, or ``None`` if honest voters disagree."""
        tallies = set(self.honest_tallies().values())
        return tallies.pop() if len(tallies) == 1 else None

    def disqualified(self, voter: int | None = None) -> frozenset[int]:
        """``I`` as seen by ``voter`` (default: the first honest voter)."""
        v = self.voter(voter if voter is not None else self.honest_ids[0])
        return frozenset(v.disqualified)

    def disqualified_at(self, voter: int | None = None) -> dict[int, str]:
        v = self.voter(voter if voter is not None else self.honest_ids[0])
        return dict(v.disqualified)

    def voter(self, vid: int) -> Voter:
        return self.voters[vid - 1]

    def views(self) -> dict[int, list[Message]]:
        return {v.id: v.view for v in self.voters if v.strategy.records_view}

    def expected_tally(self) -> Tally:
        """Plaintext count of the ballots actually dealt by voters outside ``I``."""
        out = [0] * self.config.width
        bad = self.disqualified()
        for v in self.voters:
            if v.id not in bad:
                for k, x in enumerate(v.vote.v):
                    out[k] += x
        return Tally(tuple(out))


class Election:
    """Runs every voter in lockstep and records the transcript."""

    def __init__(self, config: ElectionConfig, votes: Sequence, strategies: Sequence | Mapping | None = None):
        n = config.n_voters
        if len(votes) != n:
            raise ConfigError(f"expected {n} votes, got {len(votes)}")
        strategies = _normalise_strategies(strategies, n)
        corrupt = sum(not s.honest for s in strategies)
        if config.enforce_threshold and corrupt > config.threshold:
            raise ConfigError(f"{corrupt} corrupt voters exceed the threshold t={config.threshold}")
        self.config = config
        self.voters = []
        for vid in range(1, n + 1):
            choice = votes[vid - 1]
            vote = choice if isinstance(choice, VoteVector) else encode_vote(choice, config.n_candidates)
            if len(vote.v) != config.width or len(vote.v_prime) != config.width:
                raise ConfigError(f"vote of voter {vid} has the wrong length")
            vote = VoteVector(tuple(x % config.field.modulus for x in vote.v),
                              tuple(x % config.field.modulus for x in vote.v_prime))
            self.voters.append(Voter(vid, config, vote, strategies[vid - 1]))
        self.transcript = Transcript()
        self.round_no = 0

    def _round(self, phase: str, kind: str, produce: Callable[[Voter], list[Message]]) -> dict[int, list[Message]]:
        self.round_no += 1
        batches = []
        for v in self.voters:
            v.phase, v.round_kind, v.round_no = phase, kind, self.round_no
            if not v.active(v.id):
                # every honest voter ignores a disqualified voter from now on
                batches.append([])
                continue
            batch = apply_strategy(v.strategy, produce(v), v)
            # authenticated channels: nobody can speak for someone else
            batches.append([m for m in batch if m.sender == v.id])
        inbox = {v.id: [] for v in self.voters}
        for batch in batches:
            for m in batch:
                self.transcript.append(m)
                if m.to is None:
                    for lst in inbox.values():
                        lst.append(m)
                elif m.to in inbox:
                    inbox[m.to].append(m)
        for v in self.voters:
            if v.strategy.records_view:
                v.view.extend(inbox[v.id])
        return inbox

    def _step(self, phase, kind, produce, consume) -> None:
        inbox = self._round(phase, kind, produce)
        for v in self.voters:
            consume(v, inbox[v.id])

    def _vss(self, phase: str, tag: str) -> None:
        self._step(phase, "share", lambda v: v.deal(tag), lambda v, box: v.receive_shares(tag, box))
        self._step(phase, "echo", lambda v: v.echo(tag), lambda v, box: v.receive_echoes(tag, box))
        self._step(phase, "complaint", lambda v: v.complain(tag), lambda v, box: v.receive_complaints(tag, box))
        self._reveal_round(phase, tag)
        for _ in range(self.config.n_voters + 1):
            if not any(v.pending(tag) for v in self.voters):
                break
            pend = {v.id: v.pending(tag) for v in self.voters}
            self._step(phase, "vote", lambda v: v.cast_votes(tag),
                       lambda v, box: v.receive_votes(tag, box, pend[v.id]))
            if not any(v.pending(tag) for v in self.voters):
                break
            self._reveal_round(phase, tag)
        for v in self.voters:
            v.phase = phase
            v.settle(tag)

    def _reveal_round(self, phase: str, tag: str) -> None:
        pend = {v.id: v.pending(tag) for v in self.voters}
        self._step(phase, "reveal", lambda v: v.reveal(tag),
                   lambda v, box: v.receive_reveals(tag, box, pend[v.id]))

    def _snapshot(self, phase: str) -> None:
        for v in self.voters:
            v.snapshots[phase] = frozenset(v.disqualified)

    def sharing(self) -> None:
        self._vss("sharing", VOTE)
        self._snapshot("sharing")

    def verify_sum(self) -> None:
        self._step("verify_sum", "sum", lambda v: v.sum_values(), lambda v, box: v.check_sums(box))
        self._snapshot("verify_sum")

    def verify_product(self) -> None:
        ph = "verify_product"
        self._vss(ph, PRODUCT)
        self._step(ph, "relation", lambda v: v.check_relation(), lambda v, box: v.receive_relation(box))
        if any(v.accusations for v in self.voters):
            self._step(ph, "reconstruct", lambda v: v.reconstruct(), lambda v, box: v.adjudicate(box))
        self._step(ph, "c_value", lambda v: v.c_values(), lambda v, box: v.check_c(box))
        self._snapshot(ph)

    def verify_entities(self) -> None:
        ph = "verify_entities"
        self._step(ph, "selector", lambda v: v.selector(), lambda v, box: v.receive_selectors(box))
        self._step(ph, "entities", lambda v: v.entity_sums(), lambda v, box: v.check_entities(box))
        self._snapshot(ph)

    def counting(self) -> None:
        self._step("counting", "count", lambda v: v.count_share(), lambda v, box: v.count(box))
        self._snapshot("counting")

    def run(self) -> ElectionResult:
        self.sharing()
        self.verify_sum()
        self.verify_product()
        self.verify_entities()
        self.counting()
        return ElectionResult(self.config, self.voters, self.transcript)


def _normalise_strategies(strategies, n: int) -> list[Strategy]:
    out = [Strategy() for _ in range(n)]
    if strategies is None:
        return out
    items = strategies.items() if isinstance(strategies, Mapping) else enumerate(strategies, start=1)
    for vid, s in items:
        if not 1 <= vid <= n:
            raise ConfigError(f"strategy for unknown voter {vid}")
        out[vid - 1] = parse_strategy(s) if isinstance(s, str) else s
    return out


def run_election(config: ElectionConfig, votes: Sequence, strategies=None) -> ElectionResult:
    """Simulate a complete election and return every voter's outcome."""
    return Election(config, votes, strategies).run()
