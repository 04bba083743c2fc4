"""Shared generators for randomized tests.

All randomness is seeded from the MCHUFF_SEED environment variable
(default 0) so test vectors are reproducible.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from mchuff import ChannelProfile, Distribution, replay_sequence

SEED = os.environ.get("MCHUFF_SEED", "0")

PROFILES = [(2, 3), (2, 4), (3, 4), (2, 2, 3)]


def make_rng(tag: str) -> random.Random:
    return random.Random(f"{SEED}:{tag}")


def random_distribution(rng: random.Random, m: int) -> Distribution:
    weights = [rng.randint(1, 100) for _ in range(m)]
    total = sum(weights)
    return Distribution.from_masses([Fraction(w, total) for w in weights])


def feasible_counts(profile: ChannelProfile, limit: int) -> set[int]:
    """Mass counts from which later-round merges can still reach a single mass."""
    inner = sorted(set(profile.sizes))
    ok = {1}
    for c in range(2, limit + 1):
        if any(k <= c and (c - k + 1) in ok for k in inner):
            ok.add(c)
    return ok


def random_sequence(rng: random.Random, m: int, profile: ChannelProfile) -> tuple[int, ...]:
    ok = feasible_counts(profile, m)
    inner = sorted(set(profile.sizes))
    first = [k for k in range(2, min(profile.sizes[-1], m) + 1) if (m - k + 1) in ok]
    seq = [rng.choice(first)]
    count = m - seq[0] + 1
    while count > 1:
        options = [k for k in inner if k <= count and (count - k + 1) in ok]
        k = rng.choice(options)
        seq.append(k)
        count -= k - 1
    return tuple(seq)


def random_tree(rng: random.Random, dist: Distribution, profile: ChannelProfile):
    """A valid decoding tree built from a random admissible merge sequence."""
    return replay_sequence(dist, profile, random_sequence(rng, dist.m, profile))
