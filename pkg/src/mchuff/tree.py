"""Decoding trees for multi-channel codes and their analysis.

An internal node of class ``i`` reads one symbol from channel ``i`` and
has exactly ``q_i`` child slots; unused slots hold explicit dummy leaves
so Kraft accounting stays visible. Nodes are frozen dataclasses, so trees
are immutable and safe to share.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import digits
from .core import Distribution, as_sizes, entropy


@dataclass(frozen=True)
class Leaf:
    symbol: int


@dataclass(frozen=True)
class DummyLeaf:
    pass


@dataclass(frozen=True)
class Internal:
    class_index: int
    children: tuple["Node", ...]


Node = Internal | Leaf | DummyLeaf


@dataclass(frozen=True)
class Codebook:
    """Per-symbol codewords; ``words[j][i]`` is symbol j's digits on channel i."""

    words: tuple[tuple[str, ...], ...]
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        for j, word in enumerate(self.words):
            if len(word) != len(self.sizes):
                raise ValueError(f"word {j} has {len(word)} components for {len(self.sizes)} channels")
            for comp, q in zip(word, self.sizes):
                digits.parse(comp, q)
        if any(q < 2 for q in self.sizes):
            raise ValueError("every channel alphabet size must be at least 2")

    @property
    def m(self) -> int:
        return len(self.words)

    @property
    def n(self) -> int:
        return len(self.sizes)

    def length_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(digits.length(comp, q) for comp, q in zip(word, self.sizes))
            for word in self.words
        )


def _has_real(node: Node) -> bool:
    if isinstance(node, Leaf):
        return True
    if isinstance(node, Internal):
        return any(_has_real(c) for c in node.children)
    return False


def _leaf_symbols(node: Node) -> list[int]:
    if isinstance(node, Leaf):
        return [node.symbol]
    if isinstance(node, Internal):
        out: list[int] = []
        for c in node.children:
            out.extend(_leaf_symbols(c))
        return out
    return []


def _check_symbols(root: Node, m: int) -> None:
    if sorted(_leaf_symbols(root)) != list(range(m)):
        raise ValueError("tree leaves do not match the distribution's symbols")


def validate_tree(root: Node, profile, m: int) -> list[str]:
    """Check structural invariants; returns violations with node paths (empty list = valid)."""
    sizes = as_sizes(profile)
    violations: list[str] = []
    seen: dict[int, str] = {}

    def walk(node: Node, path: str) -> None:
        if isinstance(node, Leaf):
            if not 0 <= node.symbol < m:
                violations.append(f"{path}: symbol {node.symbol} out of range 0..{m - 1}")
            elif node.symbol in seen:
                violations.append(f"{path}: symbol {node.symbol} already placed at {seen[node.symbol]}")
            else:
                seen[node.symbol] = path
        elif isinstance(node, DummyLeaf):
            pass
        elif isinstance(node, Internal):
            if not 0 <= node.class_index < len(sizes):
                violations.append(f"{path}: class {node.class_index} out of range for {len(sizes)} channels")
                return
            q = sizes[node.class_index]
            if len(node.children) != q:
                violations.append(
                    f"{path}: class {node.class_index} needs exactly {q} child slots, has {len(node.children)}"
                )
            if not any(_has_real(c) for c in node.children):
                violations.append(f"{path}: internal node has no non-dummy descendant")
            for slot, child in enumerate(node.children):
                walk(child, f"{path}.children[{slot}]")
        else:
            violations.append(f"{path}: unknown node type {type(node).__name__}")

    walk(root, "root")
    if not violations:
        missing = sorted(set(range(m)) - set(seen))
        if missing:
            violations.append(f"symbols missing from tree: {missing}")
    return violations


def count_leaves(root: Node) -> int:
    return len(_leaf_symbols(root))


def count_dummies(root: Node) -> int:
    if isinstance(root, DummyLeaf):
        return 1
    if isinstance(root, Internal):
        return sum(count_dummies(c) for c in root.children)
    return 0


def codebook_from_tree(root: Node, profile) -> Codebook:
    """Concatenate branch digits per channel along each root-to-leaf path.

    Dummy leaves produce no codeword; the extracted code is always a prefix
    code because any two leaves diverge at their lowest common ancestor.
    """
    sizes = as_sizes(profile)
    m = count_leaves(root)
    problems = validate_tree(root, sizes, m)
    if problems:
        raise ValueError("invalid decoding tree: " + problems[0])
    words: dict[int, tuple[str, ...]] = {}

    def walk(node: Node, acc: tuple[tuple[int, ...], ...]) -> None:
        if isinstance(node, Leaf):
            words[node.symbol] = tuple(digits.render(acc[i], sizes[i]) for i in range(len(sizes)))
        elif isinstance(node, Internal):
            for digit, child in enumerate(node.children):
                nxt = list(acc)
                nxt[node.class_index] = acc[node.class_index] + (digit,)
                walk(child, tuple(nxt))

    walk(root, tuple(() for _ in sizes))
    return Codebook(words=tuple(words[j] for j in range(m)), sizes=sizes)


def expected_length(root: Node, dist: Distribution) -> float:
    """Expected codeword length in nats.

    Sums, over internal nodes, the probability of reaching the node times
    the log of its branch count; bookkeeping-wise this equals the direct
    mass-weighted sum of codeword description lengths.
    """
    _check_symbols(root, dist.m)
    total = 0.0

    def mass(node: Node) -> Fraction:
        nonlocal total
        if isinstance(node, Leaf):
            return dist.masses[node.symbol]
        if isinstance(node, DummyLeaf):
            return Fraction(0)
        s = sum((mass(c) for c in node.children), Fraction(0))
        total += float(s) * math.log(len(node.children))
        return s

    mass(root)
    return total


@dataclass(frozen=True)
class NodeRedundancy:
    path: str
    reaching_probability: float
    branching_entropy: float
    alphabet_size: int
    local_redundancy: float


@dataclass(frozen=True)
class RedundancyReport:
    nodes: tuple[NodeRedundancy, ...]
    expected_length: float
    entropy: float
    total_redundancy: float


def local_redundancy(root: Node, dist: Distribution) -> RedundancyReport:
    """Per-node waste ``r = s (ln alpha - h)`` and the totals it decomposes.

    ``s`` is the probability of reaching the node and ``h`` the entropy of
    its conditional branching distribution, so the redundancies sum to the
    gap between expected length and source entropy. The conditional
    entropies are cross-checked against the source entropy and the call
    refuses to return inconsistent numbers.
    """
    _check_symbols(root, dist.m)
    records: list[NodeRedundancy] = []
    length_total = 0.0
    entropy_total = 0.0

    def mass(node: Node, path: str) -> Fraction:
        nonlocal length_total, entropy_total
        if isinstance(node, Leaf):
            return dist.masses[node.symbol]
        if isinstance(node, DummyLeaf):
            return Fraction(0)
        child_masses = [mass(c, f"{path}.children[{i}]") for i, c in enumerate(node.children)]
        s = sum(child_masses, Fraction(0))
        sf = float(s)
        alpha = len(node.children)
        h = 0.0
        for cm in child_masses:
            if cm > 0:
                ratio = cm / s
                h -= float(ratio) * math.log(ratio)
        r = sf * (math.log(alpha) - h)
        records.append(NodeRedundancy(path, sf, h, alpha, r))
        length_total += sf * math.log(alpha)
        entropy_total += sf * h
        return s

    mass(root, "root")
    h_source = entropy(dist)
    if abs(entropy_total - h_source) > 1e-9:
        raise ArithmeticError(
            f"conditional branching entropies sum to {entropy_total}, "
            f"but the source entropy is {h_source}"
        )
    total_r = sum(rec.local_redundancy for rec in records)
    return RedundancyReport(tuple(records), length_total, h_source, total_r)


def necessary_tree_check(cb: Codebook) -> set[int]:
    """Channels that are non-empty in every codeword.

    A decoding tree reads its root's channel for every codeword, so an
    empty result for a code with two or more words proves no decoding tree
    exists. (A one-word code is trivially tree-decodable regardless.)
    """
    return {i for i in range(cb.n) if all(word[i] for word in cb.words)}


class PrefixFreeViolation(ValueError):
    """A claimed prefix code contains a pair that is not prefix-free."""

    def __init__(self, first: int, second: int):
        super().__init__(f"codewords {first} and {second} are not prefix-free")
        self.pair = (first, second)


def tree_from_two_channel_prefix(cb: Codebook) -> Node:
    """Build a decoding tree for any 2-channel prefix code.

    The root reads an always-non-empty channel (the lower-numbered one if
    both qualify), codewords are partitioned by their first digit there,
    that digit is stripped, and the construction recurses; a one-word group
    becomes a single leaf and empty partitions become dummy leaves. A
    non-prefix-free input inevitably produces a stuck partition, which is
    reported with a violating pair of codeword indices.
    """
    if cb.n != 2:
        raise ValueError(f"tree construction needs exactly 2 channels, got {cb.n}")
    if cb.m == 0:
        raise ValueError("empty codebook")
    items = [
        (j, (digits.parse(word[0], cb.sizes[0]), digits.parse(word[1], cb.sizes[1])))
        for j, word in enumerate(cb.words)
    ]

    def stuck_pair(group) -> tuple[int, int]:
        fully_empty = [j for j, comps in group if not comps[0] and not comps[1]]
        if fully_empty:
            a = fully_empty[0]
            b = next(j for j, _ in group if j != a)
        else:
            a = next(j for j, comps in group if not comps[0])
            b = next(j for j, comps in group if not comps[1])
        lo, hi = sorted((a, b))
        return lo, hi

    def build(group) -> Node:
        if len(group) == 1:
            return Leaf(group[0][0])
        channels = [i for i in (0, 1) if all(comps[i] for _, comps in group)]
        if not channels:
            raise PrefixFreeViolation(*stuck_pair(group))
        i = channels[0]
        chunks: list[list] = [[] for _ in range(cb.sizes[i])]
        for j, comps in group:
            stripped = (comps[0][1:], comps[1]) if i == 0 else (comps[0], comps[1][1:])
            chunks[comps[i][0]].append((j, stripped))
        return Internal(i, tuple(build(c) if c else DummyLeaf() for c in chunks))

    return build(items)


def tree_to_obj(root: Node) -> dict:
    """Tree as JSON-ready nested objects."""
    if isinstance(root, Leaf):
        return {"symbol": root.symbol}
    if isinstance(root, DummyLeaf):
        return {"dummy": True}
    return {"class": root.class_index, "children": [tree_to_obj(c) for c in root.children]}


def tree_from_obj(obj) -> Node:
    """Parse the nested-object form back into a tree."""
    if not isinstance(obj, dict):
        raise ValueError(f"tree node must be an object, got {type(obj).__name__}")
    if "symbol" in obj:
        sym = obj["symbol"]
        if not isinstance(sym, int) or isinstance(sym, bool):
            raise ValueError("leaf symbol must be an integer")
        return Leaf(sym)
    if obj.get("dummy"):
        return DummyLeaf()
    if "class" in obj and "children" in obj:
        ci = obj["class"]
        if not isinstance(ci, int) or isinstance(ci, bool):
            raise ValueError("node class must be an integer")
        children = obj["children"]
        if not isinstance(children, list) or not children:
            raise ValueError("children must be a non-empty list")
        return Internal(ci, tuple(tree_from_obj(c) for c in children))
    raise ValueError(f"unrecognized tree node object with keys {sorted(obj)}")


def map_classes(root: Node, mapping: Sequence[int]) -> Node:
    """Relabel internal-node channels, e.g. canonical order back to a caller's order."""
    if isinstance(root, Internal):
        return Internal(mapping[root.class_index], tuple(map_classes(c, mapping) for c in root.children))
    return root
