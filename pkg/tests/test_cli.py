import json
import shutil
import subprocess
import sys

import pytest

from hallforge.cli import main, parse, tokenize
from hallforge.errors import ParseError

A2 = {"vertices": 2, "arrows": [[0, 1]], "q": 2, "caps": {"vertex": 4, "total": 6}}
A3 = {"vertices": 3, "arrows": [[0, 1], [1, 2]], "q": 2}
POINT = {"vertices": 1, "arrows": [], "q": 2}
KRONECKER3 = {"vertices": 2, "arrows": [[0, 1], [0, 1]], "q": 3}


@pytest.fixture
def config(tmp_path):
    def write(obj, name="cfg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def lines(out):
    return [json.loads(line) for line in out.splitlines()]


def test_objects_counts(config, capsys):
    code, out, _ = run(capsys, "objects", "--config", config(A2), "--dim", "1,1")
    assert code == 0
    (rec,) = lines(out)
    assert rec["count"] == 2
    assert sorted(c["indecomposable"] for c in rec["classes"]) == [False, True]
    code, out, _ = run(capsys, "objects", "--config", config(A2), "--dim", "0,0")
    assert lines(out)[0]["count"] == 1
    code, out, _ = run(capsys, "objects", "--config", config(KRONECKER3), "--dim", "1,1")
    assert lines(out)[0]["count"] == 5


def test_compute_examples(config, capsys):
    code, out, _ = run(capsys, "compute", "(pair (cls S) (cls S))", "--config", config(POINT))
    assert code == 0 and lines(out) == [{"a": "2", "b": "0"}]
    code, out, _ = run(capsys, "compute", "(hmul (cls S2) (cls S1))", "--config", config(A2))
    (term,) = lines(out)[0]["terms"]
    assert term["coeff"] == {"a": "0", "b": "1"}
    assert term["left"] == {"dim": [1, 1], "index": 0} and term["right"] is None
    code, out, _ = run(capsys, "compute", "(counit (k (1 0)))", "--config", config(A2))
    assert lines(out) == [{"a": "1", "b": "0"}]


def test_compute_double_and_fstar(config, capsys):
    code, out, _ = run(capsys, "compute", "(dmul (inj1 (cls 1 0)) (inj2 (cls 0 1)))", "--config", config(A2))
    assert code == 0
    (term,) = lines(out)[0]["terms"]
    assert term["left"]["dim"] == [1, 0] and term["right"]["dim"] == [0, 1]
    code, out, _ = run(capsys, "compute", "(fstar (inj2 (cls S1)))", "--config", config(A2), "--reflect-vertex", "0")
    assert code == 0
    (term,) = lines(out)[0]["terms"]
    assert term["k"] == [1, 0] and term["coeff"] == {"a": "0", "b": "1/2"}
    code, _, err = run(capsys, "compute", "(fstar (inj2 (cls S1)))", "--config", config(A2))
    assert code == 1 and "reflect" in err


def test_verify_suites_pass(config, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "k0", "--config", config(A3))
    assert code == 0
    recs = lines(out)
    assert recs and all(r["pass"] for r in recs)
    assert {r["relation"] for r in recs} >= {"k0-matrix", "k0-involution"}
    code, out, _ = run(capsys, "verify", "--suite", "hopf", "--total", "2", "--config", config(A2))
    assert code == 0 and all("lhs" not in r for r in lines(out))


def test_verify_failure_exit_code(config, capsys):
    bad = dict(A2, antipode_order="descending")
    code, out, _ = run(capsys, "verify", "--suite", "hopf", "--total", "2", "--config", config(bad))
    assert code == 3
    failed = [r for r in lines(out) if not r["pass"]]
    assert failed and all("lhs" in r and "rhs" in r and "diff" in r for r in failed)


@pytest.mark.parametrize("argv,code", [
    (["compute", "(hmul (cls S3) (cls S1))"], 1),
    (["compute", "(hmul (cls S1)"], 1),
    (["compute", "(frobnicate 1)"], 1),
    (["objects", "--dim", "5,0"], 2),
    (["objects", "--dim", "1"], 1),
    (["verify"], 1),
])
def test_error_exit_codes(config, capsys, argv, code):
    got, _, err = run(capsys, *argv, "--config", config(A2))
    assert got == code
    assert err


def test_bad_configs(config, capsys):
    assert run(capsys, "objects", "--dim", "1,1", "--config", config(dict(A2, q=4)))[0] == 1
    assert run(capsys, "objects", "--dim", "1,1", "--config", config({"vertices": 2}))[0] == 1
    assert run(capsys, "objects", "--dim", "1,1", "--config", "/nonexistent.json")[0] == 1
    cyclic = {"vertices": 2, "arrows": [[0, 1], [1, 0]], "q": 2}
    assert run(capsys, "objects", "--dim", "1,1", "--config", config(cyclic))[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense", "--config", config(A2)])
    assert exc.value.code == 1


def test_parser():
    assert tokenize("(a (b 1))") == ["(", "a", "(", "b", "1", ")", ")"]
    assert parse("(hmul (cls 1 0) (k (0 1)))") == ["hmul", ["cls", "1", "0"], ["k", ["0", "1"]]]
    for bad in ["(a", "a)", "", "(a) (b)"]:
        with pytest.raises(ParseError):
            parse(bad)


def test_output_is_deterministic(config, capsys):
    argv = ["verify", "--suite", "lemma3", "--total", "2", "--config", config(A2)]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first[1] == second[1]


def test_cache_is_transparent(config, capsys, tmp_path):
    cache = tmp_path / "cache"
    cfg = config(KRONECKER3)
    argv = ["objects", "--dim", "2,1", "--config", cfg]
    plain = run(capsys, *argv)[1]
    cold = run(capsys, *argv, "--cache-dir", str(cache))[1]
    assert any(cache.iterdir())
    warm = run(capsys, *argv, "--cache-dir", str(cache))[1]
    assert plain == cold == warm
    expr = ["compute", "(hmul (cls 1 0) (cls 1 1 #2))", "--config", cfg]
    assert run(capsys, *expr)[1] == run(capsys, *expr, "--cache-dir", str(cache))[1]


def test_jobs_flag_is_accepted(config, capsys, caplog):
    code, _, _ = run(capsys, "objects", "--dim", "1,0", "--jobs", "4", "--config", config(A2))
    assert code == 0 and "serially" in caplog.text


@pytest.mark.skipif(shutil.which("hallforge") is None, reason="console script not installed")
def test_console_script(config):
    proc = subprocess.run(
        ["hallforge", "objects", "--dim", "1,1", "--config", config(A2)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 2


def test_module_entry_point(config):
    proc = subprocess.run(
        [sys.executable, "-m", "hallforge.cli", "compute", "(counit (cls S1))", "--config", config(A2)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"a": "0", "b": "0"}
