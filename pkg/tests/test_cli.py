"""Report building/rendering and the four CLI subcommands end to end."""

from __future__ import annotations

import json
import math

import pytest

from patinfo import cli as cli_module
from patinfo.core import Pattern
from patinfo.estimators import max_info, min_info
from patinfo.properties import CheckClass, PropertyId, PropertyReport
from patinfo.report import (
    DEFAULT_ESTIMATORS,
    ESTIMATOR_IDS,
    build_report,
    render_comparison_svg,
    render_json,
    render_reports_csv,
    render_reports_table,
)

FIXTURE_DIR = "src/patinfo/data"


class TestTokenize:
    def test_byte_mode(self):
        p = cli_module.tokenize(b"\x00\x01\x00", "byte")
        assert p.symbols == (0, 1, 0)

    def test_char_mode(self):
        assert cli_module.tokenize("héllo".encode(), "char").symbols == tuple("héllo")

    def test_line_mode(self):
        assert cli_module.tokenize(b"a\nbb\nc\n", "line").symbols == ("a", "bb", "c")

    def test_token_mode(self):
        assert cli_module.tokenize(b" a  b\tc \n", "token").symbols == ("a", "b", "c")

    def test_unknown_mode(self):
        with pytest.raises(Exception):
            cli_module.tokenize(b"x", "hex")


class TestBuildReport:
    def test_estimates_follow_canonical_order(self):
        report = build_report("x", Pattern.of("aab"), "char", ("mshannon", "min"))
        assert list(report.estimates) == ["min", "mshannon"]

    def test_entropy_is_clamped_per_element(self):
        report = build_report("x", Pattern.of("aab"), "char", ("min", "mshannon"))
        for est in ("min", "mshannon"):
            assert report.entropy[est] == report.clamped(est) / 4

    def test_no_backend_fields_without_compressor_estimators(self):
        report = build_report("x", Pattern.of("aab"), "char", DEFAULT_ESTIMATORS)
        assert report.compressor_id is None
        assert report.calibration_key is None

    def test_knorm_sets_backend_but_not_calibration(self):
        report = build_report("x", Pattern.of("aab"), "char", ("knorm",))
        assert report.compressor_id is not None
        assert report.calibration_key is None

    def test_gzip_records_calibration_key(self):
        report = build_report("x", Pattern.of("aab"), "char", ("gzip",))
        assert report.calibration_key == "3:2:utf8:gzip9:1"
        assert report.compressor_id.startswith("gzip9")

    def test_ensemble_is_min_of_clamped_members(self):
        ids = ("mshannon", "gzip", "knorm", "ensemble")
        report = build_report("x", Pattern.of("abcabcab" * 8), "char", ids)
        members = [report.clamped(e) for e in ("mshannon", "gzip", "knorm")]
        assert report.raw("ensemble") == min(members)

    def test_declared_alphabet_raises_the_ceiling(self):
        small = build_report("x", Pattern.of("ab"), "char", ("max",))
        wide = build_report("x", Pattern.of("ab"), "char", ("max",), declared_k=26)
        assert wide.raw("max") == max_info(2, 26) > small.raw("max")
        assert (wide.k_inferred, wide.k_declared) == (2, 26)

    def test_unknown_estimator(self):
        with pytest.raises(ValueError):
            build_report("x", Pattern.of("ab"), "char", ("min", "nope"))

    def test_empty_pattern_reports_zeros(self):
        report = build_report("x", Pattern.of(()), "byte", ESTIMATOR_IDS)
        for est in ESTIMATOR_IDS:
            assert report.estimates[est] == (0.0, 0.0)
            assert report.entropy[est] == 0.0


class TestRenderers:
    def test_table_and_csv_share_header(self):
        report = build_report("x", Pattern.of("aab"), "char", ("min",))
        table = render_reports_table([report])
        csv_text = render_reports_csv([report])
        assert table.splitlines()[0].split() == csv_text.splitlines()[0].split(",")
        assert "1.000000" in csv_text or "2.000000" in csv_text

    def test_json_document_shape(self):
        report = build_report("x", Pattern.of("aab"), "char", ("min",))
        doc = json.loads(render_json(reports=[report]))
        assert set(doc) == {"reports", "property_reports"}
        entry = doc["reports"][0]
        assert set(entry) == {
            "name",
            "mode",
            "n",
            "k_inferred",
            "k_declared",
            "estimates",
            "entropy",
            "compressor_id",
            "calibration_key",
        }
        assert set(entry["estimates"]["min"]) == {"raw_bits", "clamped_bits"}

    def test_property_reports_serialize(self):
        pr = PropertyReport(PropertyId.REDUNDANCY, "min", 3, 0, 0.0, 1.0, 1)
        doc = json.loads(render_json(property_reports=[pr]))
        assert doc["property_reports"][0]["property_id"] == "redundancy"

    def test_svg_contains_groups(self):
        rows = [("demo", {"M": 10.0, "S": 8.0, "T": 6.0, "K": 9.0})]
        svg = render_comparison_svg(rows)
        assert svg.startswith("<svg")
        assert "demo" in svg
        assert svg.count("<rect") >= 4


class TestAnalyzeCommand:
    def test_constant_file(self, cli, tmp_path):
        path = tmp_path / "const.txt"
        path.write_text("a" * 1000)
        res = cli("analyze", "--mode", "char", "--format", "json", str(path))
        assert res.returncode == 0
        entry = json.loads(res.stdout)["reports"][0]
        expected = math.log2(1001)
        assert entry["estimates"]["min"]["clamped_bits"] == pytest.approx(expected, abs=1e-12)
        assert entry["estimates"]["mshannon"]["clamped_bits"] == pytest.approx(expected, abs=1e-12)
        assert (entry["n"], entry["k_inferred"]) == (1000, 1)

    def test_stdin_dash(self, cli):
        res = cli("analyze", "--mode", "char", "--format", "csv", "-", stdin=b"abab")
        assert res.returncode == 0
        assert res.stdout.splitlines()[1].startswith("<stdin>,char,4,2")

    def test_default_reads_stdin(self, cli):
        res = cli("analyze", "--mode", "char", stdin=b"abab")
        assert res.returncode == 0
        assert res.stdout.splitlines()[0].split()[:3] == ["name", "mode", "n"]

    def test_alphabet_size_below_occurring_symbols(self, cli):
        res = cli("analyze", "--mode", "char", "--alphabet-size", "1", "-", stdin=b"ab")
        assert res.returncode == 2
        assert res.stderr.startswith("patinfo: ")

    def test_declared_alphabet_raises_max(self, cli):
        res = cli(
            "analyze", "--mode", "char", "--alphabet-size", "26",
            "--estimators", "max", "--format", "json", "-", stdin=b"ab",
        )
        entry = json.loads(res.stdout)["reports"][0]
        assert entry["estimates"]["max"]["raw_bits"] == pytest.approx(max_info(2, 26))
        assert entry["k_declared"] == 26

    def test_unknown_estimator(self, cli):
        res = cli("analyze", "--estimators", "min,huffman", "-", stdin=b"ab")
        assert res.returncode == 2
        assert "unknown estimator" in res.stderr

    def test_missing_file(self, cli):
        res = cli("analyze", "/nonexistent/input.bin")
        assert res.returncode == 2

    def test_line_and_token_modes(self, cli):
        res = cli("analyze", "--mode", "line", "--format", "csv", "-", stdin=b"x\ny\nx\n")
        assert res.stdout.splitlines()[1].split(",")[2] == "3"
        res = cli("analyze", "--mode", "token", "--format", "csv", "-", stdin=b"x y  x")
        assert res.stdout.splitlines()[1].split(",")[2] == "3"

    def test_empty_input_reports_zeros(self, cli):
        res = cli(
            "analyze", "--estimators", ",".join(ESTIMATOR_IDS), "--format", "json",
            "-", stdin=b"",
        )
        assert res.returncode == 0
        entry = json.loads(res.stdout)["reports"][0]
        for est in ESTIMATOR_IDS:
            assert entry["estimates"][est] == {"raw_bits": 0.0, "clamped_bits": 0.0}

    def test_multiple_files_one_row_group_each(self, cli, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("aaaa")
        b.write_text("abab")
        res = cli("analyze", "--mode", "char", "--format", "json", str(a), str(b))
        doc = json.loads(res.stdout)
        assert [r["name"] for r in doc["reports"]] == [str(a), str(b)]


class TestGenerateCommand:
    def test_constant(self, cli):
        res = cli("generate", "--kind", "constant", "--length", "5", "--symbol", "x")
        assert (res.returncode, res.stdout) == (0, "xxxxx")

    def test_fib_digits(self, cli):
        res = cli("generate", "--kind", "fib", "--length", "16")
        assert res.stdout == "0112358132134558"

    def test_circles_raster(self, cli):
        res = cli("generate", "--kind", "circles")
        assert res.returncode == 0
        assert len(res.stdout) == 1000
        assert set(res.stdout) == {"0", "1"}
        assert res.stdout.count("1") == 334

    def test_repeat(self, cli):
        res = cli("generate", "--kind", "repeat", "--base", "ab", "--repeats", "3")
        assert res.stdout == "ababab"

    def test_repeat_requires_base(self, cli):
        res = cli("generate", "--kind", "repeat", "--repeats", "3")
        assert res.returncode == 2

    def test_out_writes_file(self, cli, tmp_path):
        out = tmp_path / "gen.txt"
        res = cli("generate", "--kind", "constant", "--length", "4", "--out", str(out))
        assert (res.returncode, res.stdout) == (0, "")
        assert out.read_text() == "aaaa"

    def test_markov_with_transition(self, cli):
        res = cli(
            "generate", "--kind", "markov", "--length", "20",
            "--transition", "[[0.9,0.1],[0.5,0.5]]", "--seed", "3",
        )
        assert res.returncode == 0
        assert len(res.stdout) == 20
        assert set(res.stdout) <= {"0", "1"}

    def test_markov_bad_json(self, cli):
        res = cli("generate", "--kind", "markov", "--length", "5", "--transition", "nope")
        assert res.returncode == 2
        assert "JSON" in res.stderr

    def test_random_deterministic(self, cli):
        args = ("generate", "--kind", "random", "--length", "32",
                "--alphabet-size", "4", "--seed", "9")
        assert cli(*args).stdout == cli(*args).stdout

    def test_unknown_kind_usage_error(self, cli):
        res = cli("generate", "--kind", "sierpinski")
        assert res.returncode == 2


class TestCompareCommand:
    def test_table_passes_all_named_checks(self, cli):
        res = cli("compare")
        assert res.returncode == 0
        lines = res.stdout.splitlines()
        assert lines[0].split() == ["corpus", "n", "k", "M", "S", "T", "K"]
        verdicts = [l for l in lines if l.startswith(("PASS", "FAIL"))]
        assert len(verdicts) == 4
        assert all(v.startswith("PASS") for v in verdicts)

    def test_explicit_corpus_dir_matches_bundled(self, cli):
        default = cli("compare")
        explicit = cli("compare", "--corpus", FIXTURE_DIR)
        assert default.stdout == explicit.stdout

    def test_missing_corpus_dir(self, cli):
        res = cli("compare", "--corpus", "/nonexistent")
        assert res.returncode == 2
        assert "missing corpus fixture" in res.stderr

    def test_json_values_and_checks(self, cli):
        res = cli("compare", "--format", "json")
        doc = json.loads(res.stdout)
        assert {c["check"]: c["passed"] for c in doc["checks"]} == {
            "structured_compression_below_mshannon": True,
            "english_compression_tracks_mshannon": True,
            "all_estimates_within_max": True,
            "fibonacci_compression_at_most_mshannon": True,
        }
        rows = {r["name"]: r for r in doc["reports"]}
        assert set(rows) == {"fibonacci", "english", "random", "structured"}
        assert rows["random"]["estimates"]["max"]["clamped_bits"] == 1001.0
        assert rows["random"]["n"] == 1000

    def test_svg_output(self, cli, tmp_path):
        out = tmp_path / "chart.svg"
        res = cli("compare", "--svg", str(out))
        assert res.returncode == 0
        text = out.read_text()
        assert text.startswith("<svg")
        assert "fibonacci" in text and "structured" in text

    def test_csv_deterministic(self, cli):
        first = cli("compare", "--format", "csv")
        second = cli("compare", "--format", "csv")
        assert first.stdout == second.stdout
        assert first.stdout.splitlines()[0] == "corpus,n,k,M,S,T,K"


class TestCheckCommand:
    def test_guaranteed_estimator_passes(self, cli):
        res = cli("check", "--estimators", "min", "--trials", "50")
        assert res.returncode == 0
        assert res.stdout.splitlines()[0].split()[:2] == ["property_id", "estimator_id"]

    def test_compressor_subadditivity_is_observational(self, cli):
        res = cli(
            "check", "--estimators", "gzip", "--properties", "subadditivity",
            "--trials", "30", "--format", "json",
        )
        assert res.returncode == 0
        entry = json.loads(res.stdout)["property_reports"][0]
        assert entry["check_class"] == "observe"
        assert entry["estimator_id"] == "gzip"

    def test_unknown_property(self, cli):
        res = cli("check", "--properties", "telepathy", "--trials", "5")
        assert res.returncode == 2
        assert "unknown property" in res.stderr

    def test_unknown_estimator(self, cli):
        res = cli("check", "--estimators", "lzma", "--trials", "5")
        assert res.returncode == 2

    def test_csv_deterministic(self, cli):
        args = ("check", "--estimators", "min,mshannon", "--trials", "40", "--format", "csv")
        assert cli(*args).stdout == cli(*args).stdout

    def test_assert_failure_maps_to_exit_one(self, monkeypatch, capsys):
        failing = PropertyReport(PropertyId.NORMALIZATION, "min", 5, 2, 1.0, 1e-9, 1)
        monkeypatch.setattr(cli_module, "run_suite", lambda *a, **kw: [failing])
        code = cli_module.main(["check", "--estimators", "min", "--trials", "5"])
        capsys.readouterr()
        assert code == 1

    def test_observe_only_failure_keeps_exit_zero(self, monkeypatch, capsys):
        noisy = PropertyReport(
            PropertyId.SUBADDITIVITY, "gzip", 5, 5, 9.0, 1e-9, 1, CheckClass.OBSERVE
        )
        monkeypatch.setattr(cli_module, "run_suite", lambda *a, **kw: [noisy])
        code = cli_module.main(["check", "--estimators", "gzip", "--trials", "5"])
        capsys.readouterr()
        assert code == 0


class TestTopLevel:
    def test_no_arguments_is_usage_error(self, cli):
        res = cli()
        assert res.returncode == 2

    def test_unknown_subcommand(self, cli):
        res = cli("frobnicate")
        assert res.returncode == 2

    def test_help_exits_zero(self, cli):
        res = cli("--help")
        assert res.returncode == 0
        for sub in ("analyze", "generate", "compare", "check"):
            assert sub in res.stdout
