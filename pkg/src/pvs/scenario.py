"""JSON scenario files and the batch runner behind ``pvs run``.

A scenario looks like::

    {"field_modulus": 2147483647, "n_voters": 4, "threshold": 1,
     "n_candidates": 1, "seed": 7,
     "votes": [1, 1, "abstain", "abstain"],
     "strategies": ["Honest", "Honest", "Honest", "Honest"],
     "expect": {"tally": 2, "disqualified": []}}

``expect.tally`` is either the full count vector or, as a shorthand, the
count of candidate 1.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .adversary import Strategy, parse_strategy
from .ballot import encode_vote
from .errors import ConfigError, DecodingFailure, PVSError
from .field import DEFAULT_MODULUS
from .protocol import ElectionConfig, ElectionResult, Tally, run_election

EXIT_OK, EXIT_CONFIG, EXIT_MISMATCH = 0, 1, 2

KNOWN_KEYS = {"field_modulus", "n_voters", "threshold", "n_candidates", "seed", "votes",
              "strategies", "expect"}


@dataclass
class Scenario:
    config: ElectionConfig
    votes: list
    strategies: list[Strategy]
    expect_tally: list[int] | int | None = None
    expect_disqualified: frozenset[int] | None = None


def _need_int(data: dict, key: str, default=None) -> int:
    value = data.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{key!r} must be an integer")
    return value


def resolve_seed(cli_seed: int | None, file_seed: int | None) -> int:
    """``--seed`` beats the file's ``seed``, which beats ``PVS_SEED``; default 0."""
    if cli_seed is not None:
        return cli_seed
    if file_seed is not None:
        return file_seed
    env = os.environ.get("PVS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"PVS_SEED={env!r} is not an integer") from None
    return 0


def parse_scenario(data: dict, seed: int | None = None) -> Scenario:
    if not isinstance(data, dict):
        raise ConfigError("scenario must be a JSON object")
    unknown = set(data) - KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    for key in ("n_voters", "threshold", "n_candidates", "votes"):
        if key not in data:
            raise ConfigError(f"missing key {key!r}")
    n = _need_int(data, "n_voters")
    file_seed = data.get("seed")
    if file_seed is not None:
        file_seed = _need_int(data, "seed")
    seed = resolve_seed(seed, file_seed)
    if not 0 <= seed < 2 ** 64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    config = ElectionConfig.make(n, _need_int(data, "threshold"), _need_int(data, "n_candidates"),
                                 modulus=_need_int(data, "field_modulus", DEFAULT_MODULUS), seed=seed)
    votes = data["votes"]
    if not isinstance(votes, list) or len(votes) != n:
        raise ConfigError(f"'votes' must list {n} choices")
    for v in votes:
        encode_vote(v, config.n_candidates)
    names = data.get("strategies", ["Honest"] * n)
    if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
        raise ConfigError(f"'strategies' must list {n} strategy names")
    strategies = [parse_strategy(s) for s in names]
    corrupt = sum(not s.honest for s in strategies)
    if corrupt > config.threshold:
        raise ConfigError(f"{corrupt} corrupt voters exceed the threshold t={config.threshold}")
    expect = data.get("expect") or {}
    if not isinstance(expect, dict) or set(expect) - {"tally", "disqualified"}:
        raise ConfigError("'expect' may only hold 'tally' and 'disqualified'")
    tally = expect.get("tally")
    if tally is not None and not (isinstance(tally, int) or
                                  (isinstance(tally, list) and all(isinstance(x, int) for x in tally))):
        raise ConfigError("'expect.tally' must be an integer or a list of integers")
    disq = expect.get("disqualified")
    if disq is not None:
        if not isinstance(disq, list) or not all(isinstance(x, int) for x in disq):
            raise ConfigError("'expect.disqualified' must be a list of voter ids")
        disq = frozenset(disq)
    return Scenario(config, votes, strategies, tally, disq)


def load_scenario(path: str | Path, seed: int | None = None) -> Scenario:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read scenario {path}: {exc}") from None
    return parse_scenario(data, seed)


@dataclass
class ScenarioOutcome:
    status: int
    result: ElectionResult | None
    tally: Tally | None
    messages: list[str]
    transcript_path: Path | None = None


def check_expectations(scenario: Scenario, result: ElectionResult) -> list[str]:
    """Human-readable mismatches between the run and the scenario's expectations."""
    problems = []
    tally = result.agreed_tally()
    if tally is None:
        problems.append("honest voters disagree on the tally")
    elif scenario.expect_tally is not None:
        want = scenario.expect_tally
        got = tally.counts[0] if isinstance(want, int) else tally.as_list()
        if got != want:
            problems.append(f"tally {got} != expected {want}")
    if scenario.expect_disqualified is not None:
        got = result.disqualified()
        if got != scenario.expect_disqualified:
            problems.append(f"disqualified {sorted(got)} != expected {sorted(scenario.expect_disqualified)}")
    return problems


def run_scenario(path: str | Path, transcript: str | Path | None = None,
                 seed: int | None = None) -> ScenarioOutcome:
    """Load, run and check a scenario; the transcript goes next to it by default."""
    try:
        scenario = load_scenario(path, seed)
    except PVSError as exc:
        return ScenarioOutcome(EXIT_CONFIG, None, None, [f"error: {exc}"])
    try:
        result = run_election(scenario.config, scenario.votes, scenario.strategies)
    except DecodingFailure as exc:
        return ScenarioOutcome(EXIT_MISMATCH, None, None, [f"decoding failed: {exc}"])
    out = Path(transcript) if transcript else Path(path).with_suffix(".transcript.jsonl")
    result.transcript.write(out)
    tally = result.agreed_tally()
    lines = [f"tally: {tally.as_list() if tally else 'honest voters disagree'}",
             f"disqualified: {sorted(result.disqualified())}",
             f"transcript: {out} ({len(result.transcript)} messages)"]
    problems = check_expectations(scenario, result)
    lines += [f"mismatch: {p}" for p in problems]
    return ScenarioOutcome(EXIT_MISMATCH if problems else EXIT_OK, result, tally, lines, out)
