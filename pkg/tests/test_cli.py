import json
import subprocess
import sys

import pytest

from qwn.cli import EXIT_OK, EXIT_USAGE, RunConfig, UsageError, cached_poly, main
from qwn.coeffs import parse_qt, Q, T
from qwn.symfunc import Partition, macdonald_poly


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("QWN_CACHE_DIR", str(tmp_path / "cache"))

    def _run(*args):
        status = main(list(args))
        out = capsys.readouterr().out
        return status, (json.loads(out) if out.strip().startswith("{") else out)

    return _run


def test_poly_two(run):
    status, rep = run("poly", "--lambda", "2", "--vars", "2")
    assert status == EXIT_OK
    terms = {tuple(t["partition"]): parse_qt(t["coeff"]) for t in rep["poly"]["terms"]}
    # reduces to m_2 at t = 1 and to the Hall-Littlewood 1 - t at q = 0
    assert terms[(1, 1)] == (1 + Q) * (1 - T) / (1 - Q * T)


def test_poly_single_term(run):
    status, rep = run("poly", "--lambda", "1,1", "--vars", "2")
    assert status == EXIT_OK and len(rep["poly"]["terms"]) == 1


@pytest.mark.parametrize("args", [
    ("poly", "--lambda", "2,1", "--vars", "1"),
    ("poly", "--lambda", "1,2"),
    ("poly", "--lambda", "a"),
    ("ct", "--r", "1", "--s", "1", "--beta", "generic"),
    ("verify", "--suite", "nope"),
    ("singular", "--rank", "3", "--r", "1", "--s", "1"),
])
def test_usage_errors(run, args):
    status, _ = run(*args)
    assert status == EXIT_USAGE


def test_determinism(run):
    _, a = run("poly", "--lambda", "2,1", "--vars", "3", "--basis", "p")
    _, b = run("poly", "--lambda", "2,1", "--vars", "3", "--basis", "p", "--no-cache")
    a.pop("cache_coherent")
    assert a == b


def test_cache_coherence_and_corruption(tmp_path):
    cfg = RunConfig("poly", cache_dir=str(tmp_path))
    first = cached_poly(Partition((2, 1)), 3, cfg)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    assert cached_poly(Partition((2, 1)), 3, cfg) == first
    files[0].write_text("{not json")
    assert cached_poly(Partition((2, 1)), 3, cfg) == macdonald_poly((2, 1), 3)


def test_eigen(run):
    status, rep = run("eigen", "--lambda", "2,1", "--vars", "3")
    assert status == EXIT_OK and rep["ok"]


def test_verify_examples(run):
    assert run("verify", "--suite", "miura", "--rank", "3", "--grade", "1")[0] == EXIT_OK
    status, rep = run("verify", "--suite", "macdonald", "--rank", "2", "--r", "1", "--s", "1")
    assert status == EXIT_OK and rep["checks"][0]["report"]["scalar"] != "0"
    assert run("verify", "--suite", "relations", "--rank", "2", "--grade", "0", "--modes", "1")[0] == EXIT_OK


def test_verify_with_seed_is_reproducible(run):
    _, a = run("verify", "--suite", "relations", "--rank", "2", "--grade", "0", "--modes", "1", "--seed", "7")
    _, b = run("verify", "--suite", "relations", "--rank", "2", "--grade", "0", "--modes", "1", "--seed", "7")
    assert a == b and a["ok"]


def test_singular(run):
    status, rep = run("singular", "--rank", "2", "--r", "1", "--s", "1")
    assert status == EXIT_OK and rep["grade"] == 1 and len(rep["vector"]["terms"]) == 1
    status, rep = run("singular", "--rank", "2", "--r", "0", "--s", "0")
    assert rep["grade"] == 0
    status, rep = run("singular", "--rank", "3", "--r", "1,1", "--s", "1,1", "--ct-check", "--beta", "1")
    assert status == EXIT_OK and rep["ct_check"]["proportional"]


def test_correlate_and_ct(run):
    status, rep = run("correlate", "--rank", "2", "--r", "1", "--s", "2")
    assert status == EXIT_OK and rep["theorem"]["match"]
    status, rep = run("ct", "--r", "2,1", "--s", "1,1", "--vars", "3", "--beta", "1")
    assert status == EXIT_OK and rep["proportional"]
    status, rep = run("ct", "--kernel", "--vars", "1", "--beta", "1", "--window", "2")
    assert status == EXIT_OK and len(rep["terms"]) == 3


def test_text_output(run):
    status, out = run("eigen", "--lambda", "1", "--format", "text")
    assert status == EXIT_OK and "eigenvalue:" in out


def test_out_file(run, tmp_path):
    target = tmp_path / "rep.json"
    assert run("poly", "--lambda", "1", "--out", str(target))[0] == EXIT_OK
    assert json.loads(target.read_text())["lambda"] == [1]


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("poly", rank=1)
    with pytest.raises(UsageError):
        RunConfig("ct", beta="x")
    with pytest.raises(UsageError):
        RunConfig("ct").int_beta


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qwn", "poly", "--lambda", "1", "--no-cache"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["command"] == "poly"
