"""One-hot vote vectors and their complements."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadChoice

ABSTAIN = "abstain"


@dataclass(frozen=True)
class VoteVector:
    """A dealt vote ``v`` (slot ``K+1`` is abstain) and the complement ``v_prime``.

    The constructor does not validate, so cheating ballots can be represented;
    :meth:`is_valid` tells whether the pair is a legal one-hot ballot.
    """

    v: tuple[int, ...]
    v_prime: tuple[int, ...]

    def is_valid(self) -> bool:
        one_hot = sorted(self.v) == [0] * (len(self.v) - 1) + [1]
        return one_hot and all(a + b == 1 for a, b in zip(self.v, self.v_prime))

    @property
    def width(self) -> int:
        return len(self.v)


def encode_vote(choice, n_candidates: int) -> VoteVector:
    """``choice`` is a 1-based candidate index or ``"abstain"``."""
    k = n_candidates
    if choice == ABSTAIN:
        slot = k
    elif isinstance(choice, int) and not isinstance(choice, bool) and 1 <= choice <= k:
        slot = choice - 1
    else:
        raise BadChoice(f"invalid choice {choice!r} for {k} candidates")
    v = tuple(1 if i == slot else 0 for i in range(k + 1))
    return VoteVector(v, tuple(1 - x for x in v))


def plaintext_tally(votes, n_candidates: int) -> tuple[int, ...]:
    """Direct count of a list of choices, for checking election results."""
    counts = [0] * (n_candidates + 1)
    for choice in votes:
        vec = choice.v if isinstance(choice, VoteVector) else encode_vote(choice, n_candidates).v
        for i, x in enumerate(vec):
            counts[i] += x
    return tuple(counts)
