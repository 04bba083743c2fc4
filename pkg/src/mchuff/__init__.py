"""Multi-channel Huffman codes for channels with unequal alphabet sizes.

Construct optimal (or guaranteed-suboptimal) tree-decodable codes that
split each codeword across several channels, analyze them (entropy,
Kraft sums, local redundancy), and encode/decode symbol streams.
"""

from .codec import (
    CodecError,
    CorruptionError,
    DegenerateCodeError,
    TrailingDataError,
    TruncationError,
    decode,
    encode,
    prefix_free,
)
from .core import (
    NATS_EPS,
    ChannelProfile,
    Distribution,
    description_length,
    dummy_bound,
    entropy,
    kraft_sum,
    tight_example,
)
from .estimator import MultiChannelHuffmanCoder, NotFittedError
from .heuristics import (
    METRICS,
    MergeState,
    TraceTable,
    apply_merge,
    initial_state,
    metric_value,
    pruned_search,
    suboptimal_build,
)
from .huffman import (
    SingleChannelCode,
    build_single_huffman,
    dummy_count,
    huffman_expected_length,
    huffman_merge_sequence,
    trivial_extension,
)
from .search import (
    MergeStep,
    SearchResult,
    brute_force_oracle,
    enumerate_merge_sequences,
    optimal_search,
    replay_sequence,
)
from .tree import (
    Codebook,
    DummyLeaf,
    Internal,
    Leaf,
    PrefixFreeViolation,
    RedundancyReport,
    codebook_from_tree,
    expected_length,
    local_redundancy,
    map_classes,
    necessary_tree_check,
    tree_from_obj,
    tree_from_two_channel_prefix,
    tree_to_obj,
    validate_tree,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelProfile",
    "Codebook",
    "CodecError",
    "CorruptionError",
    "DegenerateCodeError",
    "Distribution",
    "DummyLeaf",
    "Internal",
    "Leaf",
    "METRICS",
    "MergeState",
    "MergeStep",
    "MultiChannelHuffmanCoder",
    "NATS_EPS",
    "NotFittedError",
    "PrefixFreeViolation",
    "RedundancyReport",
    "SearchResult",
    "SingleChannelCode",
    "TraceTable",
    "TrailingDataError",
    "TruncationError",
    "apply_merge",
    "brute_force_oracle",
    "build_single_huffman",
    "codebook_from_tree",
    "decode",
    "description_length",
    "dummy_bound",
    "dummy_count",
    "encode",
    "entropy",
    "enumerate_merge_sequences",
    "expected_length",
    "huffman_expected_length",
    "huffman_merge_sequence",
    "initial_state",
    "kraft_sum",
    "local_redundancy",
    "map_classes",
    "metric_value",
    "necessary_tree_check",
    "optimal_search",
    "prefix_free",
    "pruned_search",
    "replay_sequence",
    "suboptimal_build",
    "tight_example",
    "tree_from_obj",
    "tree_from_two_channel_prefix",
    "tree_to_obj",
    "trivial_extension",
    "validate_tree",
]
