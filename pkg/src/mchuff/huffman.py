"""Single-channel q-ary Huffman codes and their multi-channel embedding."""

from __future__ import annotations

import heapq
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import digits
from .core import ChannelProfile, Distribution
from .tree import Codebook


def dummy_count(m: int, q: int) -> int:
    """Zero-probability symbols padded in so full q-way merges reach one mass.

    Smallest w >= 0 with m + w congruent to 1 modulo q - 1; always 0 for
    binary alphabets.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if q < 2:
        raise ValueError("q must be at least 2")
    return (q - 1 - ((m - 1) % (q - 1))) % (q - 1)


def huffman_merge_sequence(m: int, q: int) -> tuple[int, ...]:
    """Per-iteration counts of real masses merged by the q-ary procedure."""
    if m == 1:
        return ()
    first = q - dummy_count(m, q)
    seq = [first]
    count = m - first + 1
    while count > 1:
        seq.append(q)
        count -= q - 1
    return tuple(seq)


@dataclass(frozen=True)
class SingleChannelCode:
    """An optimal q-ary prefix code.

    ``lengths`` and ``codewords`` follow the distribution's canonical
    (mass-ascending) symbol order. ``dummy_lengths`` are the depths of the
    padding leaves; together with the real codewords they complete the
    Kraft sum to exactly 1.
    """

    q: int
    lengths: tuple[int, ...]
    codewords: tuple[str, ...]
    expected_length: float
    dummy_lengths: tuple[int, ...]
    merge_ks: tuple[int, ...]


def build_single_huffman(dist: Distribution, q: int) -> SingleChannelCode:
    """Classic Huffman construction, deterministic under mass ties.

    The priority queue orders items by (mass, creation number): original
    symbols in canonical order first, merged nodes in production order.
    Children take digits 0..q-1 in the order they were drawn.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    m = dist.m
    if m == 1:
        return SingleChannelCode(q, (0,), ("",), 0.0, (), ())
    w = dummy_count(m, q)
    heap: list[tuple[Fraction, int, tuple]] = [
        (p, j, ("leaf", j)) for j, p in enumerate(dist.masses)
    ]
    heap.extend((Fraction(0), m + d, ("dummy",)) for d in range(w))
    heapq.heapify(heap)
    merge_ks: list[int] = []
    counter = m + w
    while len(heap) > 1:
        picked = [heapq.heappop(heap) for _ in range(q)]
        merge_ks.append(sum(1 for _, _, node in picked if node[0] != "dummy"))
        mass = sum((p for p, _, _ in picked), Fraction(0))
        heapq.heappush(heap, (mass, counter, ("node", tuple(n for _, _, n in picked))))
        counter += 1
    root = heap[0][2]

    lengths = [0] * m
    codewords = [""] * m
    dummy_lengths: list[int] = []

    def walk(node: tuple, depth: int, path: tuple[int, ...]) -> None:
        kind = node[0]
        if kind == "leaf":
            lengths[node[1]] = depth
            codewords[node[1]] = digits.render(path, q)
        elif kind == "dummy":
            dummy_lengths.append(depth)
        else:
            for digit, child in enumerate(node[1]):
                walk(child, depth + 1, path + (digit,))

    walk(root, 0, ())
    expected = sum(float(p) * l for p, l in zip(dist.masses, lengths)) * math.log(q)
    return SingleChannelCode(
        q, tuple(lengths), tuple(codewords), expected, tuple(dummy_lengths), tuple(merge_ks)
    )


def huffman_expected_length(masses: Sequence[Fraction], q: int) -> float:
    """Expected length in nats of an optimal q-ary code, without building it."""
    m = len(masses)
    if m == 1:
        return 0.0
    heap = [Fraction(0)] * dummy_count(m, q) + sorted(masses)
    heapq.heapify(heap)
    total = Fraction(0)
    while len(heap) > 1:
        s = sum((heapq.heappop(heap) for _ in range(q)), Fraction(0))
        total += s
        heapq.heappush(heap, s)
    return float(total) * math.log(q)


def trivial_extension(code: SingleChannelCode, channel_index: int, profile: ChannelProfile) -> Codebook:
    """Embed a single-channel code: its words keep their digits on one channel, all other components empty.

    Description lengths are conserved, so the embedded code is exactly as
    good as the single-channel one.
    """
    if not 0 <= channel_index < profile.n:
        raise ValueError(f"channel index {channel_index} out of range for {profile.n} channels")
    if profile.sizes[channel_index] != code.q:
        raise ValueError(
            f"code alphabet size {code.q} does not match channel {channel_index} "
            f"(q={profile.sizes[channel_index]})"
        )
    words = tuple(
        tuple(cw if i == channel_index else "" for i in range(profile.n))
        for cw in code.codewords
    )
    return Codebook(words=words, sizes=profile.sizes)
