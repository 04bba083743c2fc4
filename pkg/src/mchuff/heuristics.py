"""Pruning strategies over merge sequences and the guaranteed suboptimal build.

Exhaustive merge-sequence search is exponential, so these searches keep,
whenever two partial constructions leave reduced multisets of the same
size, only the one scoring best under a chosen metric. Four natural
metrics (redundancy so far, expected length so far, entropy of the
remaining masses, and the sum of the last two) can each discard the true
optimum. Scoring instead by accumulated length plus the best
single-channel completion of the remaining masses yields a code that is
never longer than any single-channel Huffman code, because every such
code's merge pattern is dominated by one of the candidate sequences from
the very first round.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ChannelProfile, Distribution, NATS_EPS
from .huffman import huffman_expected_length
from .search import SearchResult, enumerate_merge_sequences, replay_sequence, step_class
from .tree import Leaf

METRICS = (
    "redundancy",
    "expected_length",
    "entropy",
    "expected_plus_entropy",
    "huffman_completion",
)


@dataclass(frozen=True)
class MergeState:
    """Partial construction: merges applied so far and the reduced multiset."""

    masses: tuple[Fraction, ...]
    sequence: tuple[int, ...]
    accumulated_length: float
    accumulated_redundancy: float


def initial_state(dist: Distribution) -> MergeState:
    return MergeState(dist.masses, (), 0.0, 0.0)


def apply_merge(state: MergeState, k: int, profile: ChannelProfile) -> MergeState:
    """Merge the k smallest masses under the channel the search rules assign."""
    if not 2 <= k <= len(state.masses):
        raise ValueError(f"cannot merge {k} of {len(state.masses)} masses")
    ci, _ = step_class(profile, k, first=not state.sequence)
    q = profile.sizes[ci]
    picked = state.masses[:k]
    merged = sum(picked, Fraction(0))
    s = float(merged)
    added_length = s * math.log(q)
    # r = s*(ln q - h) with s*h = s*ln s - sum(c*ln c) over the merged children
    added_red = added_length - s * math.log(merged) + sum(float(c) * math.log(c) for c in picked)
    rest = list(state.masses[k:])
    bisect.insort(rest, merged)
    return MergeState(
        tuple(rest),
        state.sequence + (k,),
        state.accumulated_length + added_length,
        state.accumulated_redundancy + added_red,
    )


def _multiset_entropy(masses) -> float:
    # + 0.0 normalizes the -0.0 a fully merged multiset produces
    return -sum(float(p) * math.log(p) for p in masses) + 0.0


def metric_value(state: MergeState, metric: str, profile: ChannelProfile) -> float:
    """Score a partial construction; lower is better for every metric."""
    if metric == "redundancy":
        return state.accumulated_redundancy
    if metric == "expected_length":
        return state.accumulated_length
    if metric == "entropy":
        return _multiset_entropy(state.masses)
    if metric == "expected_plus_entropy":
        return state.accumulated_length + _multiset_entropy(state.masses)
    if metric == "huffman_completion":
        best = min(huffman_expected_length(state.masses, q) for q in set(profile.sizes))
        return state.accumulated_length + best
    raise ValueError(f"unknown metric {metric!r}; choose one of {METRICS}")


@dataclass
class TraceTable:
    """Column-by-column record of a pruned search, one row per merge sequence.

    ``values[(seq, count)]`` holds the metric after the prefix of ``seq``
    that left ``count`` masses. Rows are filled past their pruning point
    too, so the table shows what discarded alternatives would have scored;
    ``cell`` flags those entries. Sequences skipping a count simply have no
    cell there.
    """

    metric: str
    sequences: tuple[tuple[int, ...], ...]
    counts: tuple[int, ...]
    values: dict[tuple[tuple[int, ...], int], float]
    pruned_at: dict[tuple[int, ...], int | None]
    survivors: tuple[tuple[int, ...], ...]
    winner: tuple[int, ...]

    def cell(self, sequence, count: int) -> tuple[float, bool] | None:
        """(value, pruned flag) for a populated cell, else None."""
        seq = tuple(sequence)
        v = self.values.get((seq, count))
        if v is None:
            return None
        col = self.pruned_at.get(seq)
        return v, col is not None and count <= col

    def to_tsv(self) -> str:
        lines = ["merge sequence\t" + "\t".join(str(c) for c in self.counts)]
        for seq in self.sequences:
            cells = []
            for c in self.counts:
                got = self.cell(seq, c)
                if got is None:
                    cells.append("")
                else:
                    v, pruned = got
                    cells.append(f"{v:.10f}" + ("*" if pruned else ""))
            lines.append("(" + ",".join(str(k) for k in seq) + ")\t" + "\t".join(cells))
        return "\n".join(lines) + "\n"


def pruned_search(
    dist: Distribution, profile: ChannelProfile, metric: str
) -> tuple[SearchResult, TraceTable]:
    """Column-wise pruning over merge sequences, keeping metric minimizers.

    Remaining-mass counts are processed in decreasing order; at each count
    every live state landing there is compared and only those within
    NATS_EPS of the minimum survive (ties are all retained). Final
    survivors are settled by realized expected length, then lexicographic
    sequence order.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose one of {METRICS}")
    if dist.m < 2:
        raise ValueError("pruned search needs at least two masses")
    seqs = enumerate_merge_sequences(dist.m, profile)

    states: dict[tuple[int, ...], MergeState] = {(): initial_state(dist)}
    counts: dict[tuple[int, ...], int] = {(): dist.m}
    vals: dict[tuple[int, ...], float] = {}
    for seq in seqs:
        for t in range(1, len(seq) + 1):
            prefix = seq[:t]
            if prefix not in states:
                states[prefix] = apply_merge(states[prefix[:-1]], prefix[-1], profile)
                counts[prefix] = counts[prefix[:-1]] - (prefix[-1] - 1)
                vals[prefix] = metric_value(states[prefix], metric, profile)

    by_count: dict[int, list[tuple[int, ...]]] = {}
    for prefix, c in counts.items():
        if prefix:
            by_count.setdefault(c, []).append(prefix)

    alive: dict[tuple[int, ...], bool] = {(): True}
    died_at: dict[tuple[int, ...], int] = {}
    for c in range(dist.m - 1, 0, -1):
        cands = [p for p in by_count.get(c, ()) if alive.get(p[:-1], False)]
        if not cands:
            continue
        floor = min(vals[p] for p in cands)
        for p in cands:
            if vals[p] <= floor + NATS_EPS:
                alive[p] = True
            else:
                died_at[p] = c

    pruned_at: dict[tuple[int, ...], int | None] = {}
    for seq in seqs:
        col = None
        for t in range(1, len(seq) + 1):
            if seq[:t] in died_at:
                col = died_at[seq[:t]]
                break
        pruned_at[seq] = col
    survivors = tuple(s for s in seqs if pruned_at[s] is None)
    if not survivors:
        raise RuntimeError("pruning eliminated every sequence")

    winner = survivors[0]
    best = states[winner].accumulated_length
    for s in survivors[1:]:
        realized = states[s].accumulated_length
        if realized < best - NATS_EPS:
            winner, best = s, realized

    cellvals = {
        (seq, counts[seq[:t]]): vals[seq[:t]]
        for seq in seqs
        for t in range(1, len(seq) + 1)
    }
    trace = TraceTable(
        metric=metric,
        sequences=tuple(seqs),
        counts=tuple(range(dist.m - 1, 0, -1)),
        values=cellvals,
        pruned_at=pruned_at,
        survivors=survivors,
        winner=winner,
    )
    root, steps = replay_sequence(dist, profile, winner)
    result = SearchResult(
        tree=root, steps=steps, expected_length=best, subproblem_count=len(states) - 1
    )
    return result, trace


def suboptimal_build(dist: Distribution, profile: ChannelProfile) -> SearchResult:
    """Construction guaranteed no longer than any single-channel Huffman code."""
    if dist.m == 1:
        return SearchResult(tree=Leaf(0), steps=(), expected_length=0.0, subproblem_count=0)
    result, _ = pruned_search(dist, profile, "huffman_completion")
    return result
