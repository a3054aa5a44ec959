import json
import os
import subprocess
import sys

import pytest

from bergeramsey.cli import run


@pytest.fixture
def cli(tmp_path, capsys):
    cache = tmp_path / "cache"

    def call(*argv, cached=True):
        extra = ["--cache-dir", str(cache)] if cached else ["--no-cache"]
        code = run([*argv, *extra])
        out = capsys.readouterr()
        return code, out.out, out.err

    call.cache = cache
    return call


def report(out):
    return json.loads(out)


class TestCommands:
    def test_turan_text(self, cli):
        code, out, _ = cli("turan", "--n", "5", "--r", "3", "--pattern", "k4")
        assert code == 0 and "= 5" in out

    def test_turan_cache_hit(self, cli):
        c1, o1, _ = cli("turan", "--n", "5", "--r", "3", "--pattern", "k4", "--json")
        c2, o2, _ = cli("turan", "--n", "5", "--r", "3", "--pattern", "k4", "--json")
        r1, r2 = report(o1), report(o2)
        assert c1 == c2 == 0
        assert r1["result"]["provenance"] == "search" and r2["result"]["provenance"] == "cached"
        strip = lambda r: {k: v for k, v in r["result"].items() if k != "provenance"}
        assert strip(r1) == strip(r2)
        assert r1["schema"] == 1 and r1["command"] == "turan" and "elapsed" in r1

    def test_corrupted_record(self, cli, caplog):
        cli("turan", "--n", "4", "--r", "3", "--pattern", "k3", "--json")
        files = list(cli.cache.glob("turan-*.json"))
        assert len(files) == 1
        files[0].write_text("{not json")
        code, out, _ = cli("turan", "--n", "4", "--r", "3", "--pattern", "k3", "--json")
        assert code == 0 and report(out)["result"]["provenance"] == "search"
        assert report(out)["result"]["value"] == 2
        assert any("corrupted" in r.message for r in caplog.records)

    def test_no_cache(self, cli):
        cli("turan", "--n", "4", "--r", "3", "--pattern", "k3")
        code, out, _ = cli("turan", "--n", "4", "--r", "3", "--pattern", "k3", "--json", cached=False)
        assert report(out)["result"]["provenance"] == "search"

    def test_unwritable_cache_dir(self, tmp_path, capsys, caplog):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        code = run(["turan", "--n", "4", "--r", "3", "--pattern", "k3", "--cache-dir", str(blocker / "sub")])
        assert code == 0 and "= 2" in capsys.readouterr().out
        assert any("cache disabled" in r.message for r in caplog.records)

    def test_env_var_cache(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("BERGERAMSEY_CACHE_DIR", str(tmp_path / "envcache"))
        run(["turan", "--n", "4", "--r", "3", "--pattern", "k3"])
        assert list((tmp_path / "envcache").glob("turan-*.json"))

    def test_ramsey_unsat(self, cli):
        code, out, _ = cli("ramsey", "--r", "3", "--k", "2", "--pattern", "k3", "--n", "5")
        assert code == 0 and "UNSAT" in out

    def test_ramsey_sat_json(self, cli):
        code, out, _ = cli("ramsey", "--r", "3", "--k", "2", "--pattern", "k3", "--n", "4", "--json")
        rep = report(out)
        assert code == 0 and rep["result"]["status"] == "SAT" and len(rep["result"]["colors"]) == 4
        assert rep["nodes"] == rep["result"]["nodes"]

    def test_ramsey_scan(self, cli):
        code, out, _ = cli("ramsey", "--r", "3", "--k", "2", "--pattern", "k4", "--json")
        assert code == 0 and report(out)["result"]["ramsey"] == 6

    def test_budget_exit_code(self, cli):
        code, out, _ = cli("ramsey", "--r", "3", "--k", "2", "--pattern", "k4", "--n", "6", "--budget", "5")
        assert code == 2 and "UNKNOWN" in out
        code, _, _ = cli("turan", "--n", "7", "--r", "3", "--pattern", "k4", "--budget", "20")
        assert code == 2

    def test_construct_and_verify(self, cli, tmp_path):
        code, out, _ = cli("construct", "K5_3_4COL")
        assert code == 0
        path = tmp_path / "k5.txt"
        path.write_text(out)
        code, out, _ = cli("verify", "--coloring", str(path), "--pattern", "k3")
        assert code == 0 and "no monochromatic Berge-k3" in out
        code, out, _ = cli("verify", "--coloring", str(path), "--pattern", "p3")
        assert code == 1

    def test_construct_json_large(self, cli):
        code, out, _ = cli("construct", "recursive_triangle", "--n", "1024", "--json")
        res = report(out)["result"]
        assert code == 0 and res["declared_colors"] <= 2058 and not res["materialized"]
        assert res["family_tag"] == "recursive_triangle"

    def test_detect_and_witness_verify(self, cli, tmp_path):
        host = tmp_path / "h.txt"
        host.write_text("n=4 r=3\n0 1 2\n0 1 3\n0 2 3\n")
        code, out, _ = cli("detect", "--host", str(host), "--pattern", "k3", "--json")
        rep = report(out)
        assert code == 0 and rep["result"]["found"] and rep["verified"]
        wit = tmp_path / "w.json"
        wit.write_text(json.dumps(rep["result"]["witness"]))
        code, out, _ = cli("verify", "--witness", str(wit), "--host", str(host), "--pattern", "k3")
        assert code == 0
        wit.write_text(json.dumps({"phi": [0, 1, 2], "assignment": [0, 0, 1]}))
        code, out, _ = cli("verify", "--witness", str(wit), "--host", str(host), "--pattern", "k3", "--json")
        assert code == 1 and report(out)["result"]["reason"] == "assignment not injective"

    def test_parse_error_names_line(self, cli, tmp_path):
        host = tmp_path / "bad.txt"
        host.write_text("n=4 r=3\n0 1 2\n0 0 1\n")
        code, _, err = cli("detect", "--host", str(host), "--pattern", "k3")
        assert code == 1 and "line 3" in err

    def test_pattern_file(self, cli, tmp_path):
        g = tmp_path / "tri.txt"
        g.write_text("n=3\n0 1\n1 2\n0 2\n")
        code, out, _ = cli("turan", "--n", "4", "--r", "3", "--pattern", str(g))
        assert code == 0 and "= 2" in out

    def test_unknown_pattern(self, cli):
        code, _, err = cli("turan", "--n", "4", "--r", "3", "--pattern", "nope")
        assert code == 1 and "unknown pattern" in err

    def test_gstar(self, cli):
        code, out, _ = cli("gstar", "--graph", "k4", "--json")
        assert code == 0 and report(out)["result"]["count"] == 3
        code, out, _ = cli("gstar", "--graph", "k4e", "--vertex", "0")
        assert code == 0 and "# 5 graphs" in out

    def test_bounds(self, cli):
        code, out, _ = cli("bounds", "--pattern", "k3", "--r", "3", "--k", "6", "--json")
        res = report(out)["result"]
        assert res["exact"] == 8 and "construction" in res["provenance"]
        code, out, _ = cli("bounds", "--pattern", "k3", "--dual-n", "7", "--json")
        assert report(out)["result"]["exact"] == 32

    def test_determinism(self, cli):
        a = report(cli("bounds", "--pattern", "k4", "--r", "3", "--k", "2", "--json", cached=False)[1])
        b = report(cli("bounds", "--pattern", "k4", "--r", "3", "--k", "2", "--json", cached=False)[1])
        a.pop("elapsed"), b.pop("elapsed")
        assert a == b


def test_console_entry_point_and_python_fallback(tmp_path):
    env = dict(os.environ, BERGERAMSEY_DISABLE_JIT="1")
    code = (
        "from bergeramsey import _kernels;"
        "from bergeramsey.ramsey import exists_good_coloring;"
        "from bergeramsey.core import complete_graph;"
        "assert _kernels.backend() == 'python';"
        "print(exists_good_coloring(5, 3, 2, complete_graph(3)).status.value)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "UNSAT"
    out = subprocess.run(
        [sys.executable, "-m", "bergeramsey", "turan", "--n", "5", "--r", "3", "--pattern", "k4", "--no-cache"],
        env=env, capture_output=True, text=True,
    )
    assert out.returncode == 0 and "= 5" in out.stdout
