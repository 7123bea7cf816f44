"""Why four voters are needed to tolerate one cheater.

With N=4, t=1 a voter broadcasting a wrong count share is outvoted by
error correction.  With N=3 (validation switched off) the same lie
leaves three points on a line with no redundancy, and decoding fails.
"""

from pvs import ElectionConfig, run_election
from pvs.errors import ConfigError, DecodingFailure

try:
    ElectionConfig.make(3, 1, 1)
except ConfigError as exc:
    print("rejected:", exc)

ok = run_election(ElectionConfig.make(4, 1, 1, seed=1), [1, 1, "abstain", 1], {1: "WrongCountBroadcast(1)"})
print("N=4: tally", ok.agreed_tally().as_list(), "bad count shares from", sorted(ok.voter(2).count_errors))

try:
    run_election(ElectionConfig.make(3, 1, 1, seed=1, enforce_threshold=False),
                 [1, 1, "abstain"], {1: "WrongCountBroadcast(1)"})
except DecodingFailure as exc:
    print("N=3:", exc)
