"""Information-theoretically private voting by secret sharing.

Voters share one-hot ballots among themselves, prove in zero knowledge
(through public checks on shares) that each ballot is valid, and jointly
open only the final tally.  Up to ``t`` of ``N >= 3t + 1`` voters may
behave arbitrarily.
"""

from .ballot import ABSTAIN, VoteVector, encode_vote
from .errors import *  # noqa: F401,F403
from .field import EvalPoints, FieldElement, Poly, PrimeField, VecPoly, interpolate, prime_field
from .protocol import Election, ElectionConfig, ElectionResult, Tally, run_election
from .rs import DecodeResult, NoisyCodeword, rs_decode

__version__ = "0.1.0"
