"""Optimal tree-decodable codes via merge-sequence search.

Every candidate construction repeatedly merges the smallest current
masses; the only freedom is how many to merge per round. The first round
may pad a channel's slots with dummy (zero-probability) masses; later
rounds must fill a channel exactly, which confines all dummies to the
deepest node. Memoizing subproblems on the exact reduced multiset makes
the exponentially many sequences collapse onto shared work.

The search is pure and single-threaded; the memo table is an ordinary
dict whose values are idempotent, so concurrent evaluation would only
need an insert-if-absent map to produce identical results.
"""

from __future__ import annotations

import bisect
import itertools
import heapq
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .core import ChannelProfile, Distribution, NATS_EPS, dummy_bound
from .tree import DummyLeaf, Internal, Leaf, Node


@dataclass(frozen=True)
class MergeStep:
    """One round: ``k`` real masses merged under channel ``class_index``.

    ``dummies`` is the number of padding slots used (possible only in the
    first round); ``merged_mass`` is the exact sum of the merged masses.
    """

    k: int
    class_index: int
    dummies: int
    merged_mass: Fraction


@dataclass(frozen=True)
class SearchResult:
    tree: Node
    steps: tuple[MergeStep, ...]
    expected_length: float
    subproblem_count: int

    @property
    def sequence(self) -> tuple[int, ...]:
        return tuple(step.k for step in self.steps)

    @property
    def dummy_leaves(self) -> int:
        return sum(step.dummies for step in self.steps)


def step_class(profile: ChannelProfile, k: int, first: bool) -> tuple[int, int]:
    """Channel for a merge of k real masses: the smallest alphabet that fits.

    Returns (class index, padding slots). Later rounds must match a
    channel's alphabet size exactly.
    """
    if first:
        for i, q in enumerate(profile.sizes):
            if q >= k:
                return i, q - k
        raise ValueError(f"cannot merge {k} masses: largest alphabet is {profile.sizes[-1]}")
    for i, q in enumerate(profile.sizes):
        if q == k:
            return i, 0
    raise ValueError(f"no channel of alphabet size {k} for a later-round merge")


def enumerate_merge_sequences(m: int, profile: ChannelProfile) -> list[tuple[int, ...]]:
    """All merge sequences that reduce m masses to one, in lexicographic order.

    The first round may merge any 2..q_n masses (padding the rest of the
    chosen channel's slots); later rounds merge exactly some channel's
    alphabet size. Prefixes that cannot reach a single mass are dropped.
    For two channels of sizes 2 and 3 the count grows like the Fibonacci
    numbers.
    """
    if m < 2:
        raise ValueError("need at least two masses to merge")
    inner_ks = sorted(set(profile.sizes))
    out: list[tuple[int, ...]] = []

    def extend(count: int, prefix: tuple[int, ...]) -> None:
        if count == 1:
            out.append(prefix)
            return
        for k in inner_ks:
            if k <= count:
                extend(count - k + 1, prefix + (k,))

    for k in range(2, min(profile.sizes[-1], m) + 1):
        extend(m - k + 1, (k,))
    return out


def _reduce(masses: tuple[Fraction, ...], k: int, merged: Fraction) -> tuple[Fraction, ...]:
    rest = list(masses[k:])
    bisect.insort(rest, merged)
    return tuple(rest)


def optimal_search(dist: Distribution, profile: ChannelProfile) -> SearchResult:
    """Globally optimal tree-decodable code over all admissible merge sequences.

    Subproblems are memoized on the exact sorted multiset of remaining
    masses; below the first round no dummies are needed, so one table
    suffices. Ties within NATS_EPS resolve to the lexicographically
    smallest sequence (smaller merge count first). With a single channel
    this reproduces the classic Huffman code.
    """
    if dist.m == 1:
        return SearchResult(tree=Leaf(0), steps=(), expected_length=0.0, subproblem_count=0)

    inner_ks = sorted(set(profile.sizes))
    logs = {k: math.log(k) for k in inner_ks}
    memo: dict[tuple[Fraction, ...], tuple[float, tuple[int, ...] | None]] = {}

    def inner(masses: tuple[Fraction, ...]) -> tuple[float, tuple[int, ...] | None]:
        if len(masses) == 1:
            return 0.0, ()
        hit = memo.get(masses)
        if hit is not None:
            return hit
        best = math.inf
        best_seq: tuple[int, ...] | None = None
        for k in inner_ks:
            if k > len(masses):
                break
            merged = sum(masses[:k], Fraction(0))
            sub, seq = inner(_reduce(masses, k, merged))
            if seq is None:
                continue
            cand = sub + float(merged) * logs[k]
            if cand < best - NATS_EPS:
                best, best_seq = cand, (k,) + seq
        memo[masses] = (best, best_seq)
        return best, best_seq

    best = math.inf
    best_seq: tuple[int, ...] | None = None
    for k in range(2, min(profile.sizes[-1], dist.m) + 1):
        ci, _ = step_class(profile, k, first=True)
        merged = sum(dist.masses[:k], Fraction(0))
        sub, seq = inner(_reduce(dist.masses, k, merged))
        if seq is None:
            continue
        cand = sub + float(merged) * math.log(profile.sizes[ci])
        if cand < best - NATS_EPS:
            best, best_seq = cand, (k,) + seq
    if best_seq is None:
        raise RuntimeError("no feasible merge sequence found")
    root, steps = replay_sequence(dist, profile, best_seq)
    return SearchResult(tree=root, steps=steps, expected_length=best, subproblem_count=len(memo))


def replay_sequence(
    dist: Distribution,
    profile: ChannelProfile,
    sequence: Sequence[int],
    classes: Sequence[int] | None = None,
) -> tuple[Node, tuple[MergeStep, ...]]:
    """Rebuild the decoding tree a merge sequence describes.

    ``classes`` optionally forces the channel per step (used to realize a
    single-channel code on a channel other than the smallest fitting one).
    Merged children keep their draw order, dummies fill the trailing slots.
    """
    if not sequence:
        if dist.m != 1:
            raise ValueError("an empty merge sequence only fits a single-mass distribution")
        return Leaf(0), ()
    heap: list[tuple[Fraction, int, Node]] = [(p, j, Leaf(j)) for j, p in enumerate(dist.masses)]
    heapq.heapify(heap)
    counter = dist.m
    steps: list[MergeStep] = []
    for t, k in enumerate(sequence):
        if k < 2 or k > len(heap):
            raise ValueError(f"step {t}: cannot merge {k} of {len(heap)} masses")
        if classes is None:
            ci, w = step_class(profile, k, first=(t == 0))
        else:
            ci = classes[t]
            w = profile.sizes[ci] - k
            if w < 0:
                raise ValueError(
                    f"step {t}: channel {ci} (q={profile.sizes[ci]}) cannot merge {k} masses"
                )
            if t > 0 and w:
                raise ValueError(f"step {t}: only the first round may use dummy slots")
        picked = [heapq.heappop(heap) for _ in range(k)]
        merged = sum((p for p, _, _ in picked), Fraction(0))
        children = tuple(node for _, _, node in picked) + tuple(DummyLeaf() for _ in range(w))
        heapq.heappush(heap, (merged, counter, Internal(ci, children)))
        counter += 1
        steps.append(MergeStep(k=k, class_index=ci, dummies=w, merged_mass=merged))
    if len(heap) != 1:
        raise ValueError("merge sequence does not reduce the masses to one")
    return heap[0][2], tuple(steps)


def brute_force_oracle(dist: Distribution, profile: ChannelProfile, max_m: int = 5) -> float:
    """Minimum expected length over exhaustively enumerated decoding trees.

    Independent check for the merge-sequence search: enumerates every tree
    shape with ``m`` real leaves, fewer padding leaves than dummy_bound and
    at most ``2 m`` internal nodes, then tries every assignment of masses
    to leaves. Cost is exponential in m times m!, hence the ``max_m``
    guard.
    """
    if dist.m > max_m:
        raise ValueError(f"oracle limited to m <= {max_m}, got {dist.m}")
    if dist.m == 1:
        return 0.0
    qs = sorted(set(profile.sizes))
    budget = dummy_bound(profile) - 1
    cap = 2 * dist.m
    memo: dict[tuple[int, int], frozenset] = {}

    def shapes(r: int, dummies: int) -> frozenset:
        """(sorted leaf depths in nats, dummies used, internal nodes) over r-leaf subtrees."""
        key = (r, dummies)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc: set[tuple[tuple[float, ...], int, int]] = set()
        if r == 1:
            acc.add(((0.0,), 0, 0))
        for q in qs:
            lnq = math.log(q)
            for parts in _compositions(r, q):
                zeros = parts.count(0)
                if zeros > dummies:
                    continue
                combos: list[tuple[tuple[float, ...], int, int]] = [((), zeros, 1)]
                for part in parts:
                    if part == 0:
                        continue
                    nxt = []
                    for depths, used, nodes in combos:
                        for cd, cu, cn in shapes(part, dummies - used):
                            if used + cu <= dummies and nodes + cn <= cap:
                                nxt.append((depths + cd, used + cu, nodes + cn))
                    combos = nxt
                    if not combos:
                        break
                for depths, used, nodes in combos:
                    acc.add((tuple(sorted(d + lnq for d in depths)), used, nodes))
        result = frozenset(acc)
        memo[key] = result
        return result

    depth_sets = {depths for depths, _, _ in shapes(dist.m, budget)}
    masses = [float(p) for p in dist.masses]
    best = math.inf
    for depths in depth_sets:
        for perm in itertools.permutations(masses):
            value = sum(p * d for p, d in zip(perm, depths))
            if value < best:
                best = value
    return best


def _compositions(total: int, parts: int):
    """Ordered splits of ``total`` into ``parts`` nonnegative integers."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest
