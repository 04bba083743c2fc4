import json
from pathlib import Path

import pytest

from mchuff.cli import main

from helpers import make_rng

GOLDEN = Path(__file__).parent / "golden" / "tables.tsv"

BENCHMARK = {"masses": ["0.13", "0.199", "0.212", "0.217", "0.242"], "channels": [2, 3]}
ENTROPY_ROW = {"masses": ["1/6", "1/6", "1/3", "1/3"], "channels": [2, 3]}
EXAMPLE_THREE = {"channels": [2, 2, 2], "words": [["0", "0", ""], ["1", "", "0"], ["", "1", "1"]]}


def write_json(path: Path, obj) -> Path:
    path.write_text(json.dumps(obj))
    return path


class TestAnalyze:
    def test_reference_values(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", ENTROPY_ROW)
        assert main(["analyze", str(dist)]) == 0
        out = capsys.readouterr().out
        assert "entropy: 1.3296613489 nats" in out
        assert "huffman length 1.3862943611" in out
        assert "huffman length 1.4648163849" in out

    def test_single_mass(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", {"masses": ["1"], "channels": [2]})
        assert main(["analyze", str(dist)]) == 0
        assert "entropy: 0.0000000000 nats" in capsys.readouterr().out

    def test_benchmark_entropy(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", BENCHMARK)
        assert main(["analyze", str(dist)]) == 0
        out = capsys.readouterr().out
        assert "entropy: 1.5902511946 nats" in out

    def test_rescale_warning(self, tmp_path, capsys):
        dist = write_json(
            tmp_path / "d.json",
            {"masses": ["0.3333333333", "0.3333333333", "0.3333333333"], "channels": [2, 3]},
        )
        assert main(["analyze", str(dist)]) == 0
        assert "rescaled" in capsys.readouterr().out

    def test_parse_error_exits_2(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", {"masses": ["0.5", "oops"], "channels": [2, 3]})
        assert main(["analyze", str(dist)]) == 2
        assert "masses[1]" in capsys.readouterr().err


class TestBuild:
    def test_optimal_benchmark(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", BENCHMARK)
        assert main(["build", str(dist), "--method", "optimal", "--out-dir", str(tmp_path)]) == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["merge_sequence"] == [3, 2, 2]
        assert abs(stats["expected_length_nats"] - 1.6056509846) < 1e-9
        assert stats["kraft_sum"] == "1"

    def test_prune_method(self, tmp_path):
        dist = write_json(tmp_path / "d.json", BENCHMARK)
        assert main(
            ["build", str(dist), "--method", "prune=expected_length", "--out-dir", str(tmp_path)]
        ) == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["merge_sequence"] == [2, 2, 2, 2]
        assert abs(stats["expected_length_nats"] - 1.6143397835) < 1e-9

    def test_optimal_entropy_row2(self, tmp_path):
        dist = write_json(
            tmp_path / "d.json", {"masses": ["1/6", "1/6", "1/6", "1/2"], "channels": [2, 3]}
        )
        assert main(["build", str(dist), "--method", "optimal", "--out-dir", str(tmp_path)]) == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert abs(stats["expected_length_nats"] - 1.24245332489) < 1e-9

    def test_single_channel_method(self, tmp_path):
        dist = write_json(tmp_path / "d.json", BENCHMARK)
        assert main(["build", str(dist), "--method", "single=2", "--out-dir", str(tmp_path)]) == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert abs(stats["expected_length_nats"] - 1.6929615368) < 1e-9
        tree = json.loads((tmp_path / "tree.json").read_text())
        assert tree["root"]["class"] == 1  # the ternary channel as the user listed it

    def test_deterministic_bytes(self, tmp_path):
        dist = write_json(tmp_path / "d.json", BENCHMARK)
        first = tmp_path / "a"
        second = tmp_path / "b"
        for out in (first, second):
            assert main(["build", str(dist), "--method", "optimal", "--out-dir", str(out)]) == 0
        for name in ("tree.json", "codebook.json", "stats.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_unknown_method_exits_2(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", BENCHMARK)
        assert main(["build", str(dist), "--method", "magic", "--out-dir", str(tmp_path)]) == 2
        assert "unknown method" in capsys.readouterr().err

    def test_unsorted_channels_reported_in_user_order(self, tmp_path):
        dist = write_json(
            tmp_path / "d.json", {"masses": ["1/6", "1/6", "1/3", "1/3"], "channels": [3, 2]}
        )
        assert main(["build", str(dist), "--method", "optimal", "--out-dir", str(tmp_path)]) == 0
        tree = json.loads((tmp_path / "tree.json").read_text())
        assert tree["channels"] == [3, 2]
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert abs(stats["expected_length_nats"] - 1.32966134885) < 1e-9


class TestTables:
    def test_matches_golden(self, capsys):
        assert main(["tables"]) == 0
        assert capsys.readouterr().out == GOLDEN.read_text()


class TestEnumerate:
    def test_five_masses(self, capsys):
        assert main(["enumerate", "--m", "5", "--channels", "2,3"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["2,2,2,2", "2,2,3", "2,3,2", "3,2,2", "3,3"]

    def test_bad_m_exits_2(self, capsys):
        assert main(["enumerate", "--m", "1", "--channels", "2,3"]) == 2


class TestCodecCommands:
    def build(self, tmp_path) -> Path:
        dist = write_json(tmp_path / "d.json", ENTROPY_ROW)
        assert main(["build", str(dist), "--method", "optimal", "--out-dir", str(tmp_path)]) == 0
        return tmp_path

    def test_roundtrip_via_files(self, tmp_path, capsys):
        out = self.build(tmp_path)
        rng = make_rng("cli-roundtrip")
        symbols = " ".join(str(rng.randrange(4)) for _ in range(1000))
        (tmp_path / "syms.txt").write_text(symbols + "\n")
        assert main(
            ["encode", str(out / "codebook.json"), str(tmp_path / "syms.txt"),
             "--out", str(tmp_path / "streams.json")]
        ) == 0
        assert main(
            ["decode", str(out / "tree.json"), str(tmp_path / "streams.json"),
             "--out", str(tmp_path / "decoded.txt")]
        ) == 0
        assert (tmp_path / "decoded.txt").read_text().strip() == symbols

    def test_truncated_stream_exits_4(self, tmp_path, capsys):
        out = self.build(tmp_path)
        (tmp_path / "syms.txt").write_text("0 1\n")
        assert main(
            ["encode", str(out / "codebook.json"), str(tmp_path / "syms.txt"),
             "--out", str(tmp_path / "streams.json")]
        ) == 0
        streams = json.loads((tmp_path / "streams.json").read_text())["streams"]
        chopped = [streams[0], streams[1][:-1]]
        write_json(tmp_path / "bad.json", {"streams": chopped})
        assert main(["decode", str(out / "tree.json"), str(tmp_path / "bad.json")]) == 4

    def test_corrupt_stream_exits_3(self, tmp_path, capsys):
        dist = write_json(tmp_path / "d.json", {"masses": ["1/2", "1/2"], "channels": [3, 4]})
        assert main(["build", str(dist), "--method", "optimal", "--out-dir", str(tmp_path)]) == 0
        write_json(tmp_path / "bad.json", {"streams": ["2", ""]})
        assert main(["decode", str(tmp_path / "tree.json"), str(tmp_path / "bad.json")]) == 3

    def test_decode_from_two_channel_codebook(self, tmp_path):
        out = self.build(tmp_path)
        (tmp_path / "syms.txt").write_text("3 0 2\n")
        assert main(
            ["encode", str(out / "codebook.json"), str(tmp_path / "syms.txt"),
             "--out", str(tmp_path / "streams.json")]
        ) == 0
        assert main(
            ["decode", str(out / "codebook.json"), str(tmp_path / "streams.json"),
             "--out", str(tmp_path / "decoded.txt")]
        ) == 0
        assert (tmp_path / "decoded.txt").read_text().strip() == "3 0 2"

    def test_three_channel_codebook_encodes_but_wont_decode(self, tmp_path, capsys):
        book = write_json(tmp_path / "cb.json", EXAMPLE_THREE)
        (tmp_path / "syms.txt").write_text("0 1 2\n")
        assert main(
            ["encode", str(book), str(tmp_path / "syms.txt"),
             "--out", str(tmp_path / "streams.json")]
        ) == 0
        assert main(["decode", str(book), str(tmp_path / "streams.json")]) == 2
        assert "not tree-decodable" in capsys.readouterr().err

    def test_count_mismatch_exits_3(self, tmp_path):
        out = self.build(tmp_path)
        (tmp_path / "syms.txt").write_text("0 1 2\n")
        assert main(
            ["encode", str(out / "codebook.json"), str(tmp_path / "syms.txt"),
             "--out", str(tmp_path / "streams.json")]
        ) == 0
        assert main(
            ["decode", str(out / "tree.json"), str(tmp_path / "streams.json"), "--count", "2"]
        ) == 3
