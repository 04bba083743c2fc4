"""Exact-arithmetic domain types and information measures.

Probability masses are exact rationals end to end; floating point enters
only through logarithms. This keeps Kraft sums exactly comparable against
1 and makes multiset memo keys deterministic.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

#: Expected lengths and entropies (in nats) closer than this count as ties.
NATS_EPS = 1e-12

#: Mass totals may miss 1 by at most this before the input is rejected.
SUM_TOLERANCE = Fraction(1, 10**9)


def as_sizes(profile_or_sizes) -> tuple[int, ...]:
    """Accept either a ChannelProfile or a plain sequence of alphabet sizes."""
    return tuple(getattr(profile_or_sizes, "sizes", profile_or_sizes))


@dataclass(frozen=True)
class Distribution:
    """Multiset of positive probability masses, sorted nondecreasing.

    ``input_order[j]`` is the position mass ``j`` held in the sequence the
    distribution was built from, letting callers report results under their
    own symbol numbering. ``rescaled`` is set when the input total missed 1
    by a tiny residue and the last input mass absorbed it.
    """

    masses: tuple[Fraction, ...]
    input_order: tuple[int, ...]
    rescaled: bool = False

    def __post_init__(self) -> None:
        if not self.masses:
            raise ValueError("a distribution needs at least one mass")
        if any(p <= 0 for p in self.masses):
            raise ValueError("all masses must be positive")
        if any(a > b for a, b in zip(self.masses, self.masses[1:])):
            raise ValueError("masses must be nondecreasing")
        if sum(self.masses) != 1:
            raise ValueError("masses must sum to exactly 1")
        if sorted(self.input_order) != list(range(len(self.masses))):
            raise ValueError("input_order must be a permutation of the mass indices")

    @property
    def m(self) -> int:
        return len(self.masses)

    @classmethod
    def from_masses(cls, values: Iterable[Fraction | str | int | float]) -> "Distribution":
        """Build a distribution from masses given in any order.

        Accepts exact rationals or strings such as ``"0.199"`` or ``"1/6"``;
        decimals are read exactly (0.199 becomes 199/1000). A total within
        SUM_TOLERANCE of 1 is repaired by adjusting the last input mass.
        """
        raw: list[Fraction] = []
        for idx, v in enumerate(values):
            try:
                f = Fraction(str(v)) if isinstance(v, float) else Fraction(v)
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise ValueError(f"masses[{idx}]: cannot parse {v!r} as a rational") from exc
            if f <= 0:
                raise ValueError(f"masses[{idx}]: mass must be positive, got {f}")
            raw.append(f)
        if not raw:
            raise ValueError("a distribution needs at least one mass")
        total = sum(raw)
        rescaled = False
        if total != 1:
            if abs(total - 1) > SUM_TOLERANCE:
                raise ValueError(
                    f"masses sum to {total} ~ {float(total)}, too far from 1 to rescale"
                )
            raw[-1] += 1 - total
            if raw[-1] <= 0:
                raise ValueError("rescaling the total to 1 made the last mass non-positive")
            rescaled = True
        order = sorted(range(len(raw)), key=lambda j: (raw[j], j))
        return cls(tuple(raw[j] for j in order), tuple(order), rescaled)


@dataclass(frozen=True)
class ChannelProfile:
    """Channel alphabet sizes q_1 <= ... <= q_n.

    All computation runs against this canonical order; ``user_order[i]``
    remembers where channel ``i`` sat in the caller's ordering so reports
    can translate back.
    """

    sizes: tuple[int, ...]
    user_order: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("a profile needs at least one channel")
        if any(q < 2 for q in self.sizes):
            raise ValueError("every channel alphabet size must be at least 2")
        if any(a > b for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be nondecreasing")
        if sorted(self.user_order) != list(range(len(self.sizes))):
            raise ValueError("user_order must be a permutation of the channel indices")

    @property
    def n(self) -> int:
        return len(self.sizes)

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "ChannelProfile":
        raw = list(sizes)
        if not raw:
            raise ValueError("a profile needs at least one channel")
        for idx, q in enumerate(raw):
            if not isinstance(q, int) or isinstance(q, bool) or q < 2:
                raise ValueError(f"channels[{idx}]: alphabet size must be an integer >= 2, got {q!r}")
        order = sorted(range(len(raw)), key=lambda i: (raw[i], i))
        return cls(tuple(raw[i] for i in order), tuple(order))


def entropy(dist: Distribution) -> float:
    """Entropy of the source in nats."""
    # + 0.0 normalizes the -0.0 a deterministic single-mass source produces
    return -sum(float(p) * math.log(p) for p in dist.masses) + 0.0


def description_length(lengths: Sequence[int], profile) -> float:
    """Size in nats of a codeword with the given per-channel symbol counts."""
    sizes = as_sizes(profile)
    if len(lengths) != len(sizes):
        raise ValueError(f"length tuple has {len(lengths)} components for {len(sizes)} channels")
    if any(l < 0 for l in lengths):
        raise ValueError("codeword lengths cannot be negative")
    return sum(l * math.log(q) for l, q in zip(lengths, sizes))


def kraft_sum(length_tuples: Iterable[Sequence[int]], profile) -> Fraction:
    """Exact value of sum over codewords of prod_i q_i^(-l_i)."""
    sizes = as_sizes(profile)
    total = Fraction(0)
    for j, lt in enumerate(length_tuples):
        if len(lt) != len(sizes):
            raise ValueError(f"length tuple {j} has {len(lt)} components for {len(sizes)} channels")
        term = Fraction(1)
        for l, q in zip(lt, sizes):
            if l < 0:
                raise ValueError(f"length tuple {j} has a negative component")
            term /= Fraction(q) ** l
        total += term
    return total


def dummy_bound(profile) -> int:
    """Strict upper bound on the padding leaves any optimal decoding tree needs.

    The bound is the largest jump between consecutive alphabet sizes, with
    an implicit size-1 channel in front; a bound of 1 forces zero padding.
    """
    sizes = as_sizes(profile)
    prev = 1
    best = 0
    for q in sizes:
        best = max(best, q - prev)
        prev = q
    return best


def tight_example(q1: int, k: int) -> Distribution:
    """A q1-mass source whose optimal code approaches the H + ln(q1) bound as k grows."""
    if q1 < 2:
        raise ValueError("q1 must be at least 2")
    if k < q1:
        raise ValueError("k must be at least q1")
    small = Fraction(1, k)
    big = 1 - (q1 - 1) * small
    return Distribution.from_masses([big] + [small] * (q1 - 1))
