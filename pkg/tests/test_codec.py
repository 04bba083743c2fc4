import pytest

from mchuff import (
    ChannelProfile,
    Codebook,
    CorruptionError,
    DegenerateCodeError,
    Distribution,
    Leaf,
    TrailingDataError,
    TruncationError,
    codebook_from_tree,
    decode,
    encode,
    optimal_search,
    prefix_free,
    replay_sequence,
)

from helpers import PROFILES, make_rng, random_distribution, random_tree

PROFILE_23 = ChannelProfile.from_sizes((2, 3))
DIST_A = Distribution.from_masses(["1/6", "1/6", "1/3", "1/3"])
A_TREE, _ = replay_sequence(DIST_A, PROFILE_23, (2, 3))
A_BOOK = codebook_from_tree(A_TREE, PROFILE_23)

DIST_B = Distribution.from_masses(["1/6", "1/6", "1/6", "1/2"])
B_TREE, _ = replay_sequence(DIST_B, PROFILE_23, (3, 2))


class TestPrefixFree:
    def test_three_channel_example_is_prefix_free(self):
        cb = Codebook(words=(("0", "0", ""), ("1", "", "0"), ("", "1", "1")), sizes=(2, 2, 2))
        assert prefix_free(cb) is None

    def test_empty_components_collide(self):
        cb = Codebook(words=(("0", ""), ("", "0")), sizes=(2, 2))
        assert prefix_free(cb) == (0, 1)

    def test_same_channel_prefixes_collide(self):
        cb = Codebook(words=(("0", "0"), ("01", "01")), sizes=(2, 2))
        assert prefix_free(cb) == (0, 1)

    def test_tree_codebooks_pass(self):
        assert prefix_free(A_BOOK) is None


class TestEncode:
    def test_single_symbol(self):
        assert encode(A_BOOK, [2]) == ("", "0")

    def test_empty_sequence(self):
        assert encode(A_BOOK, []) == ("", "")

    def test_stream_lengths_add_up(self):
        streams = encode(A_BOOK, [0, 2])
        assert (len(streams[0]), len(streams[1])) == (1, 2)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match=r"symbols\[1\]"):
            encode(A_BOOK, [0, 9])

    def test_rejects_degenerate_code(self):
        cb = Codebook(words=(("", ""),), sizes=(2, 3))
        with pytest.raises(DegenerateCodeError):
            encode(cb, [0])

    def test_lengths_exact_on_random_codes(self):
        rng = make_rng("codec-lengths")
        for _ in range(40):
            profile = ChannelProfile.from_sizes(rng.choice(PROFILES))
            dist = random_distribution(rng, rng.randint(2, 9))
            root, _ = random_tree(rng, dist, profile)
            cb = codebook_from_tree(root, profile)
            seq = [rng.randrange(dist.m) for _ in range(rng.randint(0, 40))]
            streams = encode(cb, seq)
            lts = cb.length_tuples()
            for i in range(profile.n):
                assert len(streams[i]) == sum(lts[s][i] for s in seq)


class TestDecode:
    def test_roundtrip_reference_code(self):
        rng = make_rng("codec-rt")
        seq = [rng.randrange(4) for _ in range(1000)]
        assert decode(A_TREE, encode(A_BOOK, seq)) == seq

    def test_codeword_with_empty_second_component(self):
        assert decode(B_TREE, ("0", "")) == [3]

    def test_truncation(self):
        with pytest.raises(TruncationError):
            decode(A_TREE, ("0", ""))

    def test_corruption_via_dummy_slot(self):
        dist = Distribution.from_masses(["1/2", "1/2"])
        profile = ChannelProfile.from_sizes((3, 4))
        root, steps = replay_sequence(dist, profile, (2,))
        assert steps[0].dummies == 1
        with pytest.raises(CorruptionError):
            decode(root, ("2", ""))

    def test_corruption_via_bad_digit(self):
        with pytest.raises(CorruptionError):
            decode(A_TREE, ("0", "9"))

    def test_count_and_trailing_data(self):
        streams = encode(A_BOOK, [0, 2, 3])
        assert decode(A_TREE, streams, count=3) == [0, 2, 3]
        with pytest.raises(TrailingDataError):
            decode(A_TREE, streams, count=2)

    def test_rejects_single_leaf_tree(self):
        with pytest.raises(DegenerateCodeError):
            decode(Leaf(0), ("", ""))

    def test_roundtrip_random_optimal_codes(self):
        rng = make_rng("codec-random")
        for _ in range(50):
            profile = ChannelProfile.from_sizes(rng.choice(PROFILES))
            dist = random_distribution(rng, rng.randint(2, 10))
            result = optimal_search(dist, profile)
            cb = codebook_from_tree(result.tree, profile)
            for _ in range(10):
                seq = [rng.randrange(dist.m) for _ in range(rng.randint(0, 60))]
                assert decode(result.tree, encode(cb, seq)) == seq
