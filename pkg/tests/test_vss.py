import itertools
import random

import pytest

from pvs.errors import BadThreshold
from pvs.field import EvalPoints, Poly, VecPoly, interpolate, prime_field
from pvs.privacy import vss_share_distribution
from pvs.vss import (
    BivarPoly, Complaint, VerdictStatus, VssRecord, VssShare, claims_correct, consistency_vote,
    dealer_response, share_for, vss_deal, vss_pairwise_check, vss_resolve,
)


def honest_deal(field, n, t, secret, seed=0):
    pts = EvalPoints.default(field, n)
    shares, bivars = vss_deal(secret, t, pts, random.Random(seed))
    return pts, shares, bivars


def all_echoes(shares, pts):
    """Complaints from every ordered pair of voters."""
    out = []
    for me, peer in itertools.permutations(range(len(shares)), 2):
        echo = shares[peer].echo(pts[me])
        c = vss_pairwise_check(shares[me], echo, pts[me], pts[peer], dealer=1, peer=peer + 1)
        if c:
            out.append(c)
    return out


def test_bivariate_example(gf7):
    s = BivarPoly(gf7, [[1, 3], [2, 4]])  # 1 + 2x + 3y + 4xy
    assert s.row(2).evaluate(1) == 3 == s.col(1).evaluate(2)
    assert s.evaluate(1, 2) == (1 + 2 + 6 + 8) % 7


def test_degenerate_threshold(gf7):
    pts, shares, _ = honest_deal(gf7, 4, 0, [5, 2])
    for sh in shares:
        assert sh.f.coeff_rows() == [(5,), (2,)] and sh.g.coeff_rows() == [(5,), (2,)]


def test_shares_reconstruct_secret(big):
    pts, shares, bivars = honest_deal(big, 7, 2, [11, 0, 1])
    for subset in itertools.combinations(range(7), 3):
        for k in range(3):
            pts_k = [(pts[i], shares[i].value()[k]) for i in subset]
            assert interpolate(pts_k, 2, big).evaluate(0) == [11, 0, 1][k]


def test_dealt_restrictions_match_bivariate(big):
    pts, shares, bivars = honest_deal(big, 4, 1, [3])
    for n in range(1, 5):
        assert shares[n - 1] == share_for(bivars, n, pts)


def test_base_prescribes_x_restriction(big):
    rng = random.Random(2)
    base = VecPoly([Poly(big, [4, 7]), Poly(big, [1])])
    pts = EvalPoints.default(big, 4)
    shares, bivars = vss_deal(base, 1, pts, rng)
    assert [b.x_restriction() for b in bivars] == list(base.components)
    # voter shares g_n(0) lie on S(x, 0)
    for sh in shares:
        assert sh.value() == base.evaluate(pts.alpha(sh.holder))


def test_threshold_checked(gf7):
    with pytest.raises(BadThreshold):
        vss_deal([1], 1, EvalPoints.default(gf7, 3), random.Random(0))
    vss_deal([1], 1, EvalPoints.default(gf7, 3), random.Random(0), enforce_threshold=False)


def test_honest_pairs_consistent(gf7):
    pts, shares, _ = honest_deal(gf7, 4, 1, [2])
    assert all_echoes(shares, pts) == []


def test_tampered_point_blames_only_its_pairs(gf7):
    pts, shares, _ = honest_deal(gf7, 4, 1, [2], seed=3)
    bad = shares[1]
    # change f_2 at alpha_3 only: add (x-1)(x-2)(x-4) scaled so degree stays visible
    f0 = bad.f.components[0]
    bump = Poly(gf7, [0, 1]) - Poly.constant(gf7, 1)
    for r in (2, 4):
        bump = bump * (Poly(gf7, [0, 1]) - Poly.constant(gf7, r))
    shares[1] = VssShare(2, VecPoly([f0 + bump]), bad.g)
    complaints = all_echoes(shares, pts)
    pairs = {(c.accuser, c.peer) for c in complaints}
    assert pairs == {(2, 3), (3, 2)}


def test_garbage_echo_vindicates_dealer(gf7):
    pts, shares, bivars = honest_deal(gf7, 4, 1, [1], seed=4)
    # voter 4 echoes garbage to voter 1; voter 1 complains with correct values
    c = vss_pairwise_check(shares[0], ((0,), (0,)), pts[0], pts[3], dealer=9, peer=4)
    if c is None:
        pytest.skip("garbage happened to match")
    assert claims_correct(c, bivars, pts)
    rec = VssRecord(9, [c])
    rec.reveals.append(dealer_response(bivars, rec, pts))
    assert rec.reveals[0] == {}
    rec.votes.append({v: True for v in range(1, 5)})
    assert vss_resolve(rec, 1, 1, pts).status is VerdictStatus.ACCEPTED


def test_no_complaints_accepted(gf7):
    pts = EvalPoints.default(gf7, 4)
    rec = VssRecord(1, [], [{}], [{v: True for v in range(1, 5)}])
    verdict = vss_resolve(rec, 1, 1, pts)
    assert verdict.status is VerdictStatus.ACCEPTED and verdict.forced_shares == {}


def test_lying_accuser_gets_share_reset(big):
    pts, shares, bivars = honest_deal(big, 4, 1, [1], seed=6)
    f, g = shares[1].echo(pts.alpha(3))
    liar = Complaint(2, 1, 3, ((f[0] + 1) % big.modulus,), g)
    rec = VssRecord(1, [liar])
    rec.reveals.append(dealer_response(bivars, rec, pts))
    assert set(rec.reveals[0]) == {2}
    rec.votes.append({1: True, 3: True, 4: True})
    verdict = vss_resolve(rec, 1, 1, pts)
    assert verdict.status is VerdictStatus.ACCEPTED
    assert verdict.forced_shares[2] == shares[1]


def test_missing_share_must_be_revealed(gf7):
    pts, shares, bivars = honest_deal(gf7, 4, 1, [1])
    rec = VssRecord(1, [Complaint(2, 1, None)], [{}])
    assert vss_resolve(rec, 1, 1, pts).status is VerdictStatus.REJECTED
    rec = VssRecord(1, [Complaint(2, 1, None)])
    rec.reveals.append(dealer_response(bivars, rec, pts))
    rec.votes.append({v: True for v in (1, 3, 4)})
    assert vss_resolve(rec, 1, 1, pts).status is VerdictStatus.ACCEPTED


def test_bad_rows_to_two_voters_rejected(gf7):
    """High-degree rows for voters 1 and 2: both reject, t+1 = 2 rejects."""
    pts, shares, bivars = honest_deal(gf7, 4, 1, [3], seed=8)
    bump = Poly(gf7, [0, 0, 1])
    for i in (0, 1):
        shares[i] = VssShare(i + 1, VecPoly([shares[i].f.components[0] + bump]), shares[i].g)
    assert not shares[0].is_well_formed(1, 1, pts[0])
    rec = VssRecord(1, [Complaint(1, 1, None), Complaint(2, 1, None)], [{}])
    assert vss_resolve(rec, 1, 1, pts).status is VerdictStatus.REJECTED
    # voting variant: the dealer answers nothing, voters 1 and 2 reject
    rec = VssRecord(1, [], [{}], [{1: False, 2: False, 3: True, 4: True}])
    assert vss_resolve(rec, 1, 1, pts).status is VerdictStatus.REJECTED


def test_inconsistent_reveal_rejected(big):
    pts, shares, bivars = honest_deal(big, 4, 1, [3], seed=2)
    _, other, _ = honest_deal(big, 4, 1, [3], seed=99)
    rec = VssRecord(1, [], [{1: shares[0], 2: other[1]}])
    verdict = vss_resolve(rec, 1, 1, pts)
    assert verdict.status is VerdictStatus.REJECTED


def test_consistency_vote(big):
    pts, shares, _ = honest_deal(big, 4, 1, [3], seed=2)
    _, other, _ = honest_deal(big, 4, 1, [3], seed=99)
    assert consistency_vote(shares[0], {2: shares[1]}, pts)
    assert not consistency_vote(shares[0], {2: other[1]}, pts)
    assert not consistency_vote(None, {}, pts)


def test_single_voter_view_independent_of_secret(gf5):
    pts = EvalPoints.default(gf5, 4)
    for voter in range(1, 5):
        d0 = vss_share_distribution(gf5, 1, 0, [voter], pts)
        d1 = vss_share_distribution(gf5, 1, 1, [voter], pts)
        assert sum(d0.values()) == 125 and d0 == d1


def test_two_voters_do_learn_secret(gf5):
    """Sanity check of the enumeration: t+1 voters see different distributions."""
    pts = EvalPoints.default(gf5, 4)
    assert vss_share_distribution(gf5, 1, 0, [1, 2], pts) != vss_share_distribution(gf5, 1, 1, [1, 2], pts)
