import random

import pytest

from pvs.adversary import CATALOG, EXPECTED_PHASE, HONEST, Strategy, apply_strategy, parse_strategy
from pvs.ballot import ABSTAIN, encode_vote
from pvs.errors import ConfigError
from pvs.protocol import ElectionConfig, Election, run_election

STRATEGIES = [k for k in CATALOG if k != HONEST]


def test_parse():
    assert parse_strategy("DoubleVote(1,3)") == Strategy("DoubleVote", (1, 3))
    assert parse_strategy("SilentDealer") == Strategy("SilentDealer")
    assert parse_strategy("BadSumBroadcast").args == (1,)
    assert str(parse_strategy(" FalseComplaint( 2 ) ")) == "FalseComplaint(2)"
    for bad in ("Nope", "DoubleVote(x)", "SilentDealer(1)", "((("):
        with pytest.raises(ConfigError):
            parse_strategy(bad)


def test_honest_is_identity():
    batch = [object(), object()]
    assert apply_strategy(Strategy(), batch, None) is batch
    vote = encode_vote(1, 2)
    assert apply_strategy(Strategy(), vote, None) is vote


def test_double_vote_ballot():
    vote = apply_strategy(parse_strategy("DoubleVote(1,2)"), encode_vote(3, 3), None)
    assert vote.v == (1, 1, 0, 0) and vote.v_prime == (0, 0, 1, 1)


def test_bad_sum_broadcast_offsets_first_coordinate():
    e = Election(ElectionConfig.make(4, 1, 2), [1, 2, 1, 2], {1: "BadSumBroadcast(1)"})
    e.sharing()
    liar = e.voters[0]
    liar.phase, liar.round_kind = "verify_sum", "sum"
    honest = liar.sum_values()
    mutated = apply_strategy(liar.strategy, honest, liar)
    for h, m in zip(honest[0].body["values"], mutated[0].body["values"]):
        assert m["s"][0] == (h["s"][0] + 1) % liar.p and m["s"][1:] == h["s"][1:]


@pytest.mark.parametrize("kind", STRATEGIES)
def test_each_strategy_caught_in_its_phase(kind):
    for n, t, k in ((4, 1, 1), (7, 2, 3)):
        strat = f"{kind}(2)" if kind == "FalseComplaint" else kind
        r = run_election(ElectionConfig.make(n, t, k, seed=3), [1] * n, {1: strat})
        want = EXPECTED_PHASE[kind]
        got = r.disqualified_at()
        assert got == ({} if want is None else {1: want})
        assert r.agreed_tally() == r.expected_tally()


@pytest.mark.parametrize("kind", STRATEGIES)
def test_no_false_positives(kind):
    rng = random.Random(kind)
    for seed in range(200):
        bad = rng.randint(1, 4)
        target = rng.choice([v for v in range(1, 5) if v != bad])
        strat = f"{kind}({target})" if kind == "FalseComplaint" else kind
        votes = [rng.choice([1, ABSTAIN]) for _ in range(4)]
        r = run_election(ElectionConfig.make(4, 1, 1, seed=seed), votes, {bad: strat})
        assert not (r.disqualified() - {bad})
        assert r.agreed_tally() == r.expected_tally()


def test_collusion_observer_records_view():
    r = run_election(ElectionConfig.make(4, 1, 1), [1, 1, 1, 1], {3: "CollusionObserver"})
    view = r.views()[3]
    assert view and all(m.to in (None, 3) for m in view)
    assert {m.kind for m in view} >= {"share", "echo", "sum", "c_value", "count"}
