import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def run_cli(*args, cache=None, env_cache=None, expect=0):
    cmd = [sys.executable, "-m", "overrank.cli"]
    if cache is not None:
        cmd += ["--cache", str(cache)]
    cmd += [str(a) for a in args]
    env = dict(os.environ)
    if env_cache is not None:
        env["OVERRANK_CACHE"] = str(env_cache)
    proc = subprocess.run(cmd, capture_output=True, text=True, env=env)
    assert proc.returncode == expect, (proc.returncode, proc.stdout, proc.stderr)
    return proc


def validate(doc, schema_name):
    schema = json.loads((SCHEMA_DIR / f"{schema_name}.v1.schema.json").read_text())
    jsonschema.validate(doc, schema)


class TestPbar:
    def test_exact_values(self):
        assert run_cli("pbar", "--n", 4).stdout.strip() == "1,2,4,8,14"
        assert run_cli("pbar", "--n", 0).stdout.strip() == "1"

    def test_zuckerman_matches_exact(self):
        out = run_cli("--format", "json", "pbar", "--n", 100, "--zuckerman").stdout
        doc = json.loads(out)
        validate(doc, "pbar")
        exact = run_cli("pbar", "--n", 100).stdout.strip().split(",")[-1]
        assert doc["rounded"] == exact

    def test_json_schema(self):
        doc = json.loads(run_cli("--format", "json", "pbar", "--n", 6).stdout)
        validate(doc, "pbar")


class TestTables:
    def test_classes_row(self, tmp_path):
        out = run_cli("classes", "--c", 3, "--nmax", 1, cache=tmp_path).stdout
        assert out.splitlines()[1] == "n=1: 2 0 0"
        doc = json.loads(
            run_cli("--format", "json", "classes", "--c", 3, "--nmax", 1, cache=tmp_path).stdout
        )
        validate(doc, "classes")
        assert doc["rows"][1] == ["2", "0", "0"]

    def test_ranks_csv_roundtrips_through_loader(self, tmp_path):
        from overrank.cache import load_table
        from overrank.qseries import rank_table

        out = run_cli("--format", "csv", "ranks", "--nmax", 30, cache=tmp_path).stdout
        csv_path = tmp_path / "t.csv"
        csv_path.write_text(out)
        loaded = load_table(str(csv_path))
        assert loaded.rows == rank_table(30).rows

    def test_ranks_json_schema(self, tmp_path):
        doc = json.loads(run_cli("--format", "json", "ranks", "--nmax", 8, cache=tmp_path).stdout)
        validate(doc, "ranks")

    def test_cache_reused_and_write_once(self, tmp_path):
        run_cli("classes", "--c", 3, "--nmax", 20, cache=tmp_path)
        files = sorted(os.listdir(tmp_path))
        assert files == ["ranktable-v1-20.bin"]
        mtime = (tmp_path / files[0]).stat().st_mtime_ns
        run_cli("classes", "--c", 6, "--nmax", 12, cache=tmp_path)
        assert sorted(os.listdir(tmp_path)) == files
        assert (tmp_path / files[0]).stat().st_mtime_ns == mtime

    def test_env_var_cache(self, tmp_path):
        run_cli("classes", "--c", 3, "--nmax", 10, env_cache=tmp_path)
        assert os.listdir(tmp_path) == ["ranktable-v1-10.bin"]


class TestEvalZeta:
    def test_examples(self, tmp_path):
        doc = json.loads(
            run_cli("--format", "json", "eval-zeta", "--a", 1, "--c", 3, "--n", 0, cache=tmp_path).stdout
        )
        validate(doc, "eval-zeta")
        assert doc["value"].startswith("1.0")
        doc = json.loads(
            run_cli("--format", "json", "eval-zeta", "--a", 1, "--c", 3, "--n", 3, cache=tmp_path).stdout
        )
        assert doc["group_ring"] == ["4", "2", "2"]
        assert doc["value"].startswith("2.0")

    def test_non_coprime_is_usage_error(self, tmp_path):
        run_cli("eval-zeta", "--a", 2, "--c", 6, "--n", 4, cache=tmp_path, expect=2)

    def test_consistency_failure_is_exit_three(self, tmp_path, monkeypatch, capsys):
        import overrank.cli as cli
        from overrank.errors import InternalConsistencyError

        def boom(*args, **kwargs):
            raise InternalConsistencyError("forced failure", witness=9)

        monkeypatch.setattr(cli.qseries, "orthogonality_decompose", boom)
        code = cli.main(["--cache", str(tmp_path), "eval-zeta", "--a", "1", "--c", "3", "--n", "9"])
        assert code == 3
        assert "internal consistency failure" in capsys.readouterr().err


class TestAsymCompare:
    def test_breakdown_leading_row(self):
        doc = json.loads(
            run_cli("--format", "json", "asym", "--a", 1, "--c", 10, "--n", 10000, "--breakdown").stdout
        )
        validate(doc, "asym")
        assert doc["terms"][0] == {
            "kind": "D",
            "k": 1,
            "r": 0,
            "re": doc["terms"][0]["re"],
            "im": doc["terms"][0]["im"],
        }
        best = max(doc["terms"], key=lambda t: abs(float(t["re"])))
        assert (best["kind"], best["k"], best["r"]) == ("D", 1, 0)

    def test_empty_estimate(self):
        doc = json.loads(run_cli("--format", "json", "asym", "--a", 1, "--c", 3, "--n", 4).stdout)
        assert doc["re"] == "0.0" and doc["k_max"] == 2

    def test_compare_small(self, tmp_path):
        doc = json.loads(
            run_cli("--format", "json", "compare", "--a", 1, "--c", 6, "--n", 400, cache=tmp_path).stdout
        )
        validate(doc, "compare")
        assert float(doc["relative_error"]) < 0.05

    def test_c_too_small_usage_error(self):
        run_cli("asym", "--a", 1, "--c", 2, "--n", 50, expect=2)


class TestVerify:
    def test_pass_and_exit_zero(self, tmp_path):
        proc = run_cli("verify", "--id", "eq:1234", "--from", 0, "--to", 120, cache=tmp_path)
        assert "PASS" in proc.stdout

    def test_json_schema(self, tmp_path):
        doc = json.loads(
            run_cli(
                "--format", "json", "verify", "--id", "eq:0123", "--from", 0, "--to", 100, cache=tmp_path
            ).stdout
        )
        validate(doc, "verify-report")
        assert doc["passed"] is True

    def test_identity_ids(self, tmp_path):
        doc = json.loads(
            run_cli(
                "--format", "json", "verify", "--id", "lemma:zeta6", "--from", 0, "--to", 60, cache=tmp_path
            ).stdout
        )
        assert doc["passed"] is True and doc["id"] == "lemma:zeta6"

    def test_unknown_id_usage_error(self, tmp_path):
        run_cli("verify", "--id", "eq:bogus", "--to", 10, cache=tmp_path, expect=2)

    def test_threads_agree_with_serial(self, tmp_path):
        serial = run_cli(
            "--format", "json", "verify", "--id", "SolvedWei3", "--from", 0, "--to", 150, cache=tmp_path
        ).stdout
        threaded = run_cli(
            "--threads", 4, "--format", "json", "verify", "--id", "SolvedWei3", "--from", 0, "--to", 150,
            cache=tmp_path,
        ).stdout
        assert json.loads(serial)["violations"] == json.loads(threaded)["violations"]
        assert json.loads(serial)["checked"] == json.loads(threaded)["checked"]


class TestBoundsCommands:
    def test_bounds_json(self):
        doc = json.loads(run_cli("--format", "json", "bounds", "--n", 100).stdout)
        validate(doc, "bound-report")
        assert doc["dominated"] is False

    def test_dedekind(self):
        doc = json.loads(run_cli("--format", "json", "dedekind", "--h", 1, "--k", 3).stdout)
        validate(doc, "dedekind")
        assert (doc["numerator"], doc["denominator"]) == ("1", "18")

    def test_kloosterman_examples(self):
        doc = json.loads(
            run_cli(
                "--format", "json", "kloosterman", "--kind", "D",
                "--a", 1, "--c", 10, "--k", 1, "--n", -5, "--m", 0,
            ).stdout
        )
        validate(doc, "kloosterman")
        assert doc["re"].startswith("0.2297529")
        doc = json.loads(
            run_cli(
                "--format", "json", "kloosterman", "--kind", "D",
                "--a", 3, "--c", 10, "--k", 3, "--n", -1, "--m", "-1/2",
            ).stdout
        )
        assert float(doc["re"]) != 0.0

    def test_kloosterman_b133(self):
        # the defining sum with omega = exp(pi*i*S) gives -sqrt(2)*i here
        doc = json.loads(
            run_cli(
                "--format", "json", "kloosterman", "--kind", "B",
                "--a", 1, "--c", 3, "--k", 3, "--n", -1, "--m", 0,
            ).stdout
        )
        assert doc["im"].startswith("-1.414213562")

    def test_half_integral_m_rejected_for_B(self):
        run_cli(
            "kloosterman", "--kind", "B", "--a", 1, "--c", 3, "--k", 3, "--n", 0, "--m", "1/2",
            expect=2,
        )


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path):
        args = ("--format", "json", "asym", "--a", 3, "--c", 10, "--n", 2000, "--breakdown")
        assert run_cli(*args).stdout == run_cli(*args).stdout
