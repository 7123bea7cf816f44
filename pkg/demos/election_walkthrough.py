"""A seven-voter, three-candidate election with two misbehaving voters.

Voter 2 casts a ballot with two ones, voter 5 broadcasts wrong sums.  The
double vote is caught and voter 2 is excluded; the wrong sums are simply
corrected away.  Run with ``python demos/election_walkthrough.py``.
"""

from collections import Counter

from pvs import ElectionConfig, run_election

config = ElectionConfig.make(7, 2, 3, seed=11)
votes = [1, 2, 3, "abstain", 2, 2, 1]
strategies = {2: "DoubleVote(1,2)", 5: "BadSumBroadcast(5)"}

result = run_election(config, votes, strategies)

print(f"N={config.n_voters}, t={config.threshold}, K={config.n_candidates}, GF({config.field.modulus})")
print("messages per phase:", dict(Counter(m.phase for m in result.transcript)))
for voter, phase in sorted(result.disqualified_at().items()):
    print(f"voter {voter} removed during {phase}")
for vid in result.honest_ids:
    print(f"voter {vid} outputs {result.tallies[vid].as_list()}")
print("plaintext count over kept ballots:", result.expected_tally().as_list())
