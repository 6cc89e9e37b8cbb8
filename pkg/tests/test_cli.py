import io
import json

import numpy as np
import pytest

from hvhess.cli import format_sparse, main, parse_sparse
from hvhess.hessian_nd import hessian_objective

from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hv(capsys):
    code, out, _ = run(capsys, "hv", "--input", str(DATA / "example1.json"))
    assert code == 0 and json.loads(out)["hv"] == 210


def test_hv_from_csv(tmp_path, capsys):
    f = tmp_path / "pts.csv"
    f.write_text("# two points\n5,3,7\n2,1,10\n", encoding="utf-8")
    code, out, _ = run(capsys, "hv", "--input", str(f), "--ref", "9,10,12")
    assert code == 0 and json.loads(out)["hv"] == 210


def test_hv_from_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"points": [[0, 0]], "reference": [1, 1]})))
    code, out, _ = run(capsys, "hv", "--input", "-")
    assert json.loads(out)["hv"] == 1


def test_grad_with_check(capsys):
    code, out, _ = run(capsys, "grad", "--input", str(DATA / "example1.json"), "--fd-check")
    doc = json.loads(out)
    assert code == 0 and doc["gradient"][2] == -28 and doc["fd_deviation"] < 1e-6


@pytest.mark.parametrize("algorithm", ["sweep3d", "general"])
def test_hess_example2(capsys, algorithm):
    code, out, _ = run(capsys, "hess", "--input", str(DATA / "example2.json"), "--algorithm", algorithm, "--fd-check")
    doc = json.loads(out)
    assert code == 0 and doc["nnz"] == 30


def test_hess_output_roundtrips(capsys, example3):
    _, out, _ = run(capsys, "hess", "--input", str(DATA / "example3.json"))
    back = parse_sparse(out)
    assert np.array_equal(back.to_dense(), hessian_objective(example3).to_dense())
    assert parse_sparse(format_sparse(back)).support() == back.support()


def test_heatmap(tmp_path, capsys):
    target = tmp_path / "h.csv"
    run(capsys, "hess", "--input", str(DATA / "example1.json"), "--heatmap", str(target))
    assert np.loadtxt(target, delimiter=",").shape == (6, 6)


def test_ties_exit_three(tmp_path, capsys):
    f = tmp_path / "tie.json"
    f.write_text(json.dumps({"points": [[1, 2, 3], [1, 3, 2]], "reference": [5, 5, 5]}), encoding="utf-8")
    code, _, err = run(capsys, "hess", "--input", str(f))
    assert code == 3 and "points 0 and 1 on axis 0" in err


def test_bad_reference_exits_three(tmp_path, capsys):
    f = tmp_path / "ref.json"
    f.write_text(json.dumps({"points": [[1, 2]], "reference": [1, 5]}), encoding="utf-8")
    assert run(capsys, "hv", "--input", str(f))[0] == 3


@pytest.mark.parametrize("text", ['{"points": [[1, 2]', '{"points": [[1, 2], [3]], "reference": [4, 4]}', "1,2\n"])
def test_corrupted_input_exits_two(tmp_path, capsys, text):
    f = tmp_path / "bad.json"
    f.write_text(text, encoding="utf-8")
    assert run(capsys, "hv", "--input", str(f))[0] == 2


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--input", str(DATA / "example1.json"))
    assert code == 0 and json.loads(out)["hessian_max_abs_dev"] < 1e-6
    code, out, _ = run(capsys, "verify", "--input", str(DATA / "example3.json"))
    assert code == 0 and json.loads(out)["sweep_support_equal"]


def test_deviation_exit_four(capsys):
    code, _, _ = run(capsys, "grad", "--input", str(DATA / "example1.json"), "--fd-check", "--tol", "0")
    assert code == 4


def test_newton(capsys):
    code, out, _ = run(capsys, "newton", "--problem", "quad", "--n-points", "5", "--seed", "0")
    rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
    assert code == 0 and len(rows) == 20
    after = [float(r[2]) for r in rows]
    assert all(b >= a for a, b in zip(after, after[1:]))


def test_bench_is_deterministic(capsys):
    argv = ("bench", "--sizes", "50,100", "--seed", "1", "--repeats", "1")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    strip = lambda text: [(r.split(",")[0], r.split(",")[2]) for r in text.strip().splitlines()]
    assert strip(first) == strip(second)
    assert first.startswith("n,seconds,nonzeros")
