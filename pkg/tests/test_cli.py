import json

from ietlab.cache import ResultCache, checksum
from ietlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    def test_plain(self, capsys):
        code, out, _ = run(capsys, "count", "--length", "6")
        assert code == 0 and out.strip() == "199"

    def test_by_b(self, capsys):
        code, out, _ = run(capsys, "count", "--length", "2", "--by-b")
        assert code == 0
        assert out.splitlines() == ["b=0 count=4", "b=1 count=4", "b=2 count=1", "total=9"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "count", "--length", "3", "--json")
        assert code == 0 and json.loads(out) == {"length": 3, "count": 25}


class TestEnumerate:
    def test_json_sorted(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--length", "3", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["length"] == 3 and doc["count"] == 25
        assert doc["words"] == sorted(doc["words"]) and len(doc["words"]) == 25

    def test_plain_lines(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--length", "1")
        assert code == 0 and out.splitlines() == ["A", "B", "C"]

    def test_resource_limit_exit_code(self, capsys):
        code, _, err = run(capsys, "enumerate", "--length", "3", "--max-words", "5")
        assert code == 3
        assert "resource limit" in err


class TestSturmian:
    def test_count(self, capsys):
        code, out, _ = run(capsys, "sturmian", "--length", "4")
        assert code == 0 and out.strip() == "14"

    def test_json_words(self, capsys):
        code, out, _ = run(capsys, "sturmian", "--length", "2", "--json")
        doc = json.loads(out)
        assert doc == {"length": 2, "count": 4, "words": ["00", "01", "10", "11"]}

    def test_min_ones(self, capsys):
        code, out, _ = run(capsys, "sturmian", "--length", "2", "--b", "1")
        assert code == 0 and out.strip() == "3"

    def test_classes(self, capsys):
        code, out, _ = run(capsys, "sturmian", "--length", "2", "--classes", "--json")
        doc = json.loads(out)
        assert [c["left"] for c in doc["classes"]] == ["0", "1/2"]
        assert doc["classes"][0]["factors"] == ["01", "10", "11"]


class TestAmicable:
    def test_single_count(self, capsys):
        code, out, _ = run(capsys, "amicable", "--length", "2", "--b", "1")
        assert code == 0 and out.strip() == "1"

    def test_by_b_table(self, capsys):
        code, out, _ = run(capsys, "amicable", "--length", "1", "--json")
        assert json.loads(out) == {"length": 1, "pairs_by_b": {"0": 2}}

    def test_per_class(self, capsys):
        code, out, _ = run(
            capsys, "amicable", "--length", "2", "--b", "1", "--per-class", "--json"
        )
        doc = json.loads(out)
        assert doc["z_count"] == 2
        assert [c["pairs"] for c in doc["classes"]] == [1, 1]

    def test_per_class_requires_b(self, capsys):
        code, _, err = run(capsys, "amicable", "--length", "2", "--per-class")
        assert code == 2 and "--per-class" in err


class TestOrbit:
    def test_golden(self, capsys):
        code, out, _ = run(
            capsys,
            "orbit",
            "--epsilon", "(-1+1*sqrt(5))/2",
            "--ell", "9/10",
            "--x0", "0",
            "--n", "4",
        )
        assert code == 0 and out.strip() == "AACA"

    def test_json_round_trip(self, capsys):
        code, out, _ = run(
            capsys,
            "orbit",
            "--epsilon", "(-1+1*sqrt(5))/2",
            "--ell", "9/10",
            "--x0", "0",
            "--n", "6",
            "--json",
        )
        doc = json.loads(out)
        assert doc["epsilon"] == "(-1+1*sqrt(5))/2"
        assert doc["word"].startswith("AACA")

    def test_bad_epsilon(self, capsys):
        code, _, err = run(
            capsys, "orbit", "--epsilon", "nonsense", "--ell", "9/10", "--x0", "0", "--n", "2"
        )
        assert code == 2 and "error:" in err

    def test_rational_epsilon_rejected(self, capsys):
        code, _, err = run(
            capsys, "orbit", "--epsilon", "1/3", "--ell", "9/10", "--x0", "0", "--n", "2"
        )
        assert code == 2 and "irrational" in err


class TestAtlas:
    def test_summary(self, capsys):
        code, out, _ = run(capsys, "atlas", "--length", "2")
        assert code == 0 and out.strip() == "regions=4 lines=3"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "atlas", "--length", "2", "--json")
        doc = json.loads(out)
        assert doc["length"] == 2 and len(doc["regions"]) == 4

    def test_files(self, capsys, tmp_path):
        svg = tmp_path / "atlas.svg"
        fig = tmp_path / "atlas.png"
        code, _, err = run(
            capsys, "atlas", "--length", "2", "--svg", str(svg), "--fig", str(fig)
        )
        assert code == 0
        assert svg.read_text().startswith("<?xml")
        assert fig.stat().st_size > 0


class TestBounds:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "bounds", "--max-n", "3", "--csv")
        lines = out.strip().splitlines()
        assert lines[0].startswith("n,count,pi2_count_over_n4,lower_const,upper_const")
        assert len(lines) == 4
        assert lines[1].split(",")[1] == "3"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "bounds", "--max-n", "2", "--json")
        doc = json.loads(out)
        assert doc["lower_const"] == "17/48" and doc["upper_const"] == "2"
        assert [r["count"] for r in doc["rows"]] == [3, 9]
        assert doc["prop_lower"][1] == {"n": 2, "lhs": 9, "rhs": 10, "holds": False}

    def test_figure_alongside_csv(self, capsys, tmp_path):
        fig = tmp_path / "bounds.png"
        code, out, _ = run(capsys, "bounds", "--max-n", "2", "--csv", "--fig", str(fig))
        assert code == 0
        assert out.startswith("n,count")
        assert fig.stat().st_size > 0


class TestVerify:
    def test_sets_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "sets")
        assert code == 0
        assert "PASS set of length 2" in out

    def test_paper_table_capped(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "paper-table", "--max-n", "4")
        assert code == 0
        assert "PASS count length 4" in out

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "bogus")
        assert code == 2 and "unknown suite" in err

    def test_mismatch_exit_code(self, capsys, monkeypatch):
        from ietlab import verify

        monkeypatch.setitem(
            verify.SUITES, "sets", lambda max_n: [verify.CheckResult("forced", False, "boom")]
        )
        code, out, _ = run(capsys, "verify", "--suite", "sets")
        assert code == 1
        assert "FAIL forced: boom" in out


class TestCache:
    def test_cold_then_warm_identical(self, capsys, tmp_path):
        args = ("enumerate", "--length", "3", "--json", "--cache", str(tmp_path))
        code1, out1, _ = run(capsys, *args)
        assert list(tmp_path.glob("enumerate-*.json"))
        code2, out2, _ = run(capsys, *args)
        assert (code1, code2) == (0, 0) and out1 == out2

    def test_corrupt_entry_is_ignored(self, capsys, tmp_path):
        args = ("count", "--length", "2", "--cache", str(tmp_path))
        run(capsys, *args)
        for path in tmp_path.glob("*.json"):
            path.write_text('{"schema": 999}')
        code, out, _ = run(capsys, *args)
        assert code == 0 and out.strip() == "9"

    def test_checksum_guard(self, tmp_path):
        cache = ResultCache(tmp_path)
        cache.store("enumerate", {"length": 1, "count": 3, "words": ["A", "B", "C"]}, length=1)
        assert cache.load("enumerate", length=1)["count"] == 3
        path = next(tmp_path.glob("enumerate-*.json"))
        doc = json.loads(path.read_text())
        doc["payload"]["count"] = 4
        path.write_text(json.dumps(doc))
        assert cache.load("enumerate", length=1) is None

    def test_checksum_is_canonical(self):
        assert checksum({"a": 1, "b": 2}) == checksum({"b": 2, "a": 1})

    def test_env_var_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("IETLAB_CACHE", str(tmp_path))
        code, out, _ = run(capsys, "count", "--length", "2")
        assert code == 0 and out.strip() == "9"
        assert list(tmp_path.glob("enumerate-*.json"))


class TestUsage:
    def test_missing_subcommand(self, capsys):
        assert run(capsys, )[0] == 2

    def test_bad_flag(self, capsys):
        assert run(capsys, "count", "--bogus")[0] == 2

    def test_byte_identical_invocations(self, capsys):
        _, out1, _ = run(capsys, "enumerate", "--length", "4")
        _, out2, _ = run(capsys, "enumerate", "--length", "4")
        assert out1 == out2
