"""Scikit-learn style front door: fit a code on symbol data, transform to streams.

The class follows sklearn conventions (constructor parameters mirrored by
``get_params``/``set_params``, fitted attributes with a trailing
underscore) so it slots into sklearn pipelines, without requiring
scikit-learn itself.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from fractions import Fraction

from .codec import decode, encode
from .core import ChannelProfile, Distribution, entropy
from .heuristics import METRICS, pruned_search, suboptimal_build
from .huffman import huffman_merge_sequence
from .search import SearchResult, optimal_search, replay_sequence
from .tree import codebook_from_tree
from .tree import expected_length as tree_expected_length

_METHODS = ("optimal", "suboptimal", "prune", "single")


class NotFittedError(ValueError):
    """transform/inverse_transform called before fit."""


class MultiChannelHuffmanCoder:
    """Build a tree-decodable code from symbol data and encode it channel-wise.

    Parameters
    ----------
    channels:
        Alphabet size per channel, e.g. ``(2, 3)`` for one binary and one
        ternary stream.
    method:
        ``"optimal"`` (exhaustive merge-sequence search), ``"suboptimal"``
        (never worse than any single-channel Huffman code), ``"prune"``
        (heuristic search under ``metric``) or ``"single"`` (single-channel
        Huffman on ``channel``; the other streams stay empty).
    metric:
        Pruning metric for ``method="prune"``; one of METRICS.
    channel:
        Index into ``channels`` for ``method="single"``.

    Attributes set by fit: ``classes_`` (symbols, least frequent first),
    ``distribution_``, ``profile_``, ``tree_``, ``codebook_``,
    ``merge_sequence_``, ``expected_length_``, ``entropy_``.
    """

    def __init__(self, channels=(2, 3), *, method="optimal", metric="huffman_completion", channel=0):
        self.channels = channels
        self.method = method
        self.metric = metric
        self.channel = channel

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(channels={tuple(self.channels)!r}, method={self.method!r}, "
            f"metric={self.metric!r}, channel={self.channel!r})"
        )

    # sklearn-compatible parameter plumbing
    def get_params(self, deep: bool = True) -> dict:
        return {
            "channels": self.channels,
            "method": self.method,
            "metric": self.metric,
            "channel": self.channel,
        }

    def set_params(self, **params) -> "MultiChannelHuffmanCoder":
        valid = self.get_params()
        for key, value in params.items():
            if key not in valid:
                raise ValueError(f"invalid parameter {key!r} for {type(self).__name__}")
            setattr(self, key, value)
        return self

    def fit(self, X, y=None) -> "MultiChannelHuffmanCoder":
        """Learn a code from a symbol sequence or a symbol -> weight mapping."""
        symbols, weights = self._tally(X)
        profile = ChannelProfile.from_sizes(tuple(self.channels))
        total = sum(weights, Fraction(0))
        dist = Distribution.from_masses([w / total for w in weights])
        result = self._construct(dist, profile)

        self.profile_ = profile
        self.distribution_ = dist
        self.classes_ = tuple(symbols[dist.input_order[j]] for j in range(dist.m))
        self._index = {sym: j for j, sym in enumerate(self.classes_)}
        self.tree_ = result.tree
        self.codebook_ = codebook_from_tree(result.tree, profile)
        self.merge_sequence_ = result.sequence
        self.expected_length_ = result.expected_length
        self.entropy_ = entropy(dist)
        return self

    def transform(self, X) -> tuple[str, ...]:
        """Encode symbols into one digit string per channel, in the caller's channel order."""
        self._check_fitted()
        indices = []
        for pos, sym in enumerate(X):
            j = self._index.get(sym)
            if j is None:
                raise ValueError(f"symbol {sym!r} at position {pos} was not seen during fit")
            indices.append(j)
        canonical = encode(self.codebook_, indices)
        inv = self._canonical_of_user()
        return tuple(canonical[inv[u]] for u in range(self.profile_.n))

    def inverse_transform(self, streams) -> list:
        """Decode channel streams (caller's channel order) back into symbols."""
        self._check_fitted()
        streams = tuple(streams)
        if len(streams) != self.profile_.n:
            raise ValueError(f"expected {self.profile_.n} streams, got {len(streams)}")
        canonical = tuple(streams[self.profile_.user_order[c]] for c in range(self.profile_.n))
        return [self.classes_[j] for j in decode(self.tree_, canonical)]

    def fit_transform(self, X, y=None) -> tuple[str, ...]:
        return self.fit(X, y).transform(X)

    def _construct(self, dist: Distribution, profile: ChannelProfile) -> SearchResult:
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.method == "optimal":
            return optimal_search(dist, profile)
        if self.method == "suboptimal":
            return suboptimal_build(dist, profile)
        if self.method == "prune":
            if self.metric not in METRICS:
                raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
            result, _ = pruned_search(dist, profile, self.metric)
            return result
        if not 0 <= self.channel < profile.n:
            raise ValueError(f"channel must index into channels, got {self.channel!r}")
        canon = profile.user_order.index(self.channel)
        seq = huffman_merge_sequence(dist.m, profile.sizes[canon])
        root, steps = replay_sequence(dist, profile, seq, classes=(canon,) * len(seq))
        return SearchResult(
            tree=root,
            steps=steps,
            expected_length=tree_expected_length(root, dist),
            subproblem_count=0,
        )

    @staticmethod
    def _tally(X) -> tuple[list, list[Fraction]]:
        if isinstance(X, Mapping):
            pairs = [(sym, Fraction(w)) for sym, w in X.items()]
            if any(w <= 0 for _, w in pairs):
                raise ValueError("symbol weights must be positive")
        else:
            counter: Counter = Counter()
            for sym in X:
                counter[sym] += 1
            pairs = [(sym, Fraction(c)) for sym, c in counter.items()]
        if not pairs:
            raise ValueError("cannot fit on an empty symbol sequence")
        if len(pairs) < 2:
            raise ValueError("need at least two distinct symbols to build a streamable code")
        symbols = [sym for sym, _ in pairs]
        weights = [w for _, w in pairs]
        return symbols, weights

    def _canonical_of_user(self) -> list[int]:
        inv = [0] * self.profile_.n
        for canon, user in enumerate(self.profile_.user_order):
            inv[user] = canon
        return inv

    def _check_fitted(self) -> None:
        if not hasattr(self, "tree_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")
