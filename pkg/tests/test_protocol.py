import itertools
import json
import random

import pytest

from pvs.ballot import ABSTAIN, VoteVector, encode_vote, plaintext_tally
from pvs.errors import BadChoice, ConfigError
from pvs.protocol import ElectionConfig, Election, Tally, run_election
from pvs.transcript import Message


def cfg(n=4, t=1, k=1, seed=0, **kw):
    return ElectionConfig.make(n, t, k, seed=seed, **kw)


def test_encode_vote():
    v = encode_vote(1, 2)
    assert v.v == (1, 0, 0) and v.v_prime == (0, 1, 1) and v.is_valid()
    assert encode_vote(ABSTAIN, 2).v == (0, 0, 1)
    with pytest.raises(BadChoice):
        encode_vote(5, 2)
    with pytest.raises(BadChoice):
        encode_vote(0, 2)
    assert not VoteVector((1, 1, 0), (0, 0, 1)).is_valid()


@pytest.mark.parametrize("n,t", [(3, 1), (6, 2), (9, 3)])
def test_config_rejects_3t(n, t):
    with pytest.raises(ConfigError):
        ElectionConfig.make(n, t, 1)


def test_config_validation():
    with pytest.raises(ConfigError):
        ElectionConfig.make(4, 1, 0)
    with pytest.raises(ConfigError):
        ElectionConfig.make(4, 1, 1, modulus=15)
    with pytest.raises(ConfigError):
        ElectionConfig.make(4, 1, 1, modulus=3)
    assert ElectionConfig.make(4, 1, 1, modulus=5).field.modulus == 5
    pts = ElectionConfig.make(4, 1, 1, seed=3, random_points=True).eval_points
    assert len(set(pts)) == 4 and 0 not in pts


def test_yes_no_count():
    r = run_election(cfg(), [1, 1, ABSTAIN, ABSTAIN])
    assert r.agreed_tally() == Tally((2, 2))
    assert r.disqualified() == frozenset()


def test_all_honest_nobody_disqualified_after_sharing():
    r = run_election(cfg(7, 2, 3), [1, 2, 3, ABSTAIN, 1, 1, 2])
    assert all(v.snapshots["sharing"] == frozenset() for v in r.voters)
    assert r.agreed_tally() == Tally((3, 2, 1, 1))


def test_inconsistent_dealer_removed_in_sharing():
    r = run_election(cfg(k=2), [3 if False else 1, 1, 1, 2], {1: "InconsistentDealer"})
    for vid in r.honest_ids:
        assert r.voter(vid).snapshots["sharing"] == {1}
    assert r.agreed_tally() == Tally((2, 1, 0))


def test_lying_complainer_share_replaced():
    r = run_election(cfg(), [1, 1, ABSTAIN, 1], {1: "FalseComplaint(2)"})
    honest = r.voter(3)
    assert honest.snapshots["sharing"] == frozenset()
    verdict = honest.verdicts[(2, "vote")]
    assert set(verdict.forced_shares) == {1}
    assert r.voter(1).shares[(2, "vote")] == verdict.forced_shares[1]


def test_wrong_sum_broadcasts_corrected():
    r = run_election(cfg(7, 2, 2), [1] * 7, {1: "BadSumBroadcast(1)", 5: "BadSumBroadcast(3)"})
    assert r.disqualified() == frozenset()
    assert r.agreed_tally() == Tally((7, 0, 0))


@pytest.mark.parametrize("v,v_prime,phase", [
    ((1, 1, 0), (0, 1, 1), "verify_sum"),
    ((1, 1, 0), (0, 0, 1), "verify_entities"),
    ((2, 0, 0), (4, 1, 1), "verify_product"),
    ((0, 0, 0), (1, 1, 1), "verify_entities"),
])
def test_invalid_ballots_caught(v, v_prime, phase):
    r = run_election(cfg(k=2, modulus=5), [VoteVector(v, v_prime), 1, 2, ABSTAIN])
    assert r.disqualified_at(2) == {1: phase}
    assert r.agreed_tally() == Tally((1, 1, 1))


def _force_selector(election, voter, choice):
    target = election.voters[voter - 1]
    target.selector = lambda: [target.message("selector", None, {"selector": choice})]


def test_selecting_complement_caught_for_k2():
    e = Election(cfg(k=2), [1, 2, ABSTAIN, 1])
    _force_selector(e, 1, "F")
    r = e.run()
    assert r.disqualified_at(2) == {1: "verify_entities"}


def test_selecting_complement_allowed_for_k1():
    e = Election(cfg(k=1), [1, 1, ABSTAIN, 1])
    _force_selector(e, 1, "F")
    r = e.run()
    assert r.disqualified() == frozenset()
    # voter 1's complement is a "no"
    assert r.agreed_tally() == Tally((2, 2))


def test_silent_selector_disqualifies():
    e = Election(cfg(), [1, 1, ABSTAIN, 1])
    e.voters[0].selector = lambda: []
    r = e.run()
    assert r.disqualified_at(3) == {1: "verify_entities"}


def test_counting_with_disqualified_voter():
    r = run_election(cfg(k=2), [2, 1, 1, 2], {1: "SilentDealer"})
    assert r.agreed_tally() == Tally((2, 1, 0))


def test_wrong_count_value_flagged():
    r = run_election(cfg(), [1, ABSTAIN, 1, 1], {1: "WrongCountBroadcast(4)"})
    assert r.agreed_tally() == Tally((3, 1))
    assert all(r.voter(v).count_errors == {1} for v in r.honest_ids)


def test_correct_for_every_yes_no_assignment():
    for votes in itertools.product([1, ABSTAIN], repeat=4):
        r = run_election(cfg(seed=len(votes)), list(votes))
        assert r.agreed_tally() == Tally(plaintext_tally(votes, 1))


def test_correct_on_random_assignments():
    rng = random.Random(77)
    for i in range(500):
        votes = [rng.choice([1, 2, 3, ABSTAIN]) for _ in range(7)]
        r = run_election(cfg(7, 2, 3, seed=i), votes)
        tallies = set(r.tallies.values())
        assert tallies == {Tally(plaintext_tally(votes, 3))}


def test_disqualified_sets_identical_at_phase_boundaries():
    r = run_election(cfg(7, 2, 2), [1, 2, 1, 2, 1, ABSTAIN, 2],
                     {2: "NonBinaryVote(3)", 6: "FalseComplaint(3)"})
    snaps = {json.dumps({ph: sorted(s) for ph, s in r.voter(v).snapshots.items()}) for v in r.honest_ids}
    assert len(snaps) == 1
    assert r.disqualified() == {2, 6}


def test_transcript_complete_for_observer():
    r = run_election(cfg(), [1, 1, ABSTAIN, 1], {2: "CollusionObserver"})
    view = r.views()[2]
    expected = [m for m in r.transcript if m.to in (None, 2)]
    assert view == expected
    assert len({id(m) for m in r.transcript}) == len(r.transcript)


def test_transcript_rounds_and_channels():
    r = run_election(cfg(), [1, 1, ABSTAIN, 1], {1: "FalseComplaint(3)"})
    rounds = [m.round for m in r.transcript]
    assert rounds == sorted(rounds)
    for m in r.transcript:
        if m.kind in ("share", "echo"):
            assert m.to is not None and m.to != m.sender
        else:
            assert m.is_broadcast
    phases = [m.phase for m in r.transcript]
    order = ["sharing", "verify_sum", "verify_product", "verify_entities", "counting"]
    assert [order.index(p) for p in phases] == sorted(order.index(p) for p in phases)


def test_deterministic_transcripts():
    a = run_election(cfg(seed=5), [1, ABSTAIN, 1, 1], {4: "BadMaskPolys"}).transcript.to_jsonl()
    b = run_election(cfg(seed=5), [1, ABSTAIN, 1, 1], {4: "BadMaskPolys"}).transcript.to_jsonl()
    c = run_election(cfg(seed=6), [1, ABSTAIN, 1, 1], {4: "BadMaskPolys"}).transcript.to_jsonl()
    assert a == b and a != c


def test_too_many_adversaries_rejected():
    with pytest.raises(ConfigError):
        Election(cfg(), [1] * 4, {1: "SilentDealer", 2: "SilentDealer"})


def test_vote_count_mismatch():
    with pytest.raises(ConfigError):
        Election(cfg(), [1, 1, 1])
