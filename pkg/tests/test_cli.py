import io
import subprocess
import sys

import pytest

from kwsparse.cli import run
from kwsparse.fixtures import complete, petersen
from kwsparse.graph import WeightedGraph, laplacian, parse_edge_list, serialize_edge_list
from kwsparse.linalg import spectral_approx_check


def call(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, io.StringIO(stdin_text), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def k3(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text(serialize_edge_list(complete(3)))
    return str(path)


@pytest.fixture
def pet(tmp_path):
    path = tmp_path / "petersen.txt"
    path.write_text(serialize_edge_list(petersen()))
    return str(path)


def test_verify_identical(k3):
    code, out, _ = call(["verify", k3, k3, "--eps", "0.1", "--alpha", "0.5", "--mode", "exact"])
    assert code == 0 and out == "YES\n"


def test_verify_no(k3, tmp_path):
    doubled = tmp_path / "double.txt"
    doubled.write_text(serialize_edge_list(complete(3).with_weights([2, 2, 2])))
    code, out, _ = call(["verify", k3, str(doubled), "--eps", "0.5", "--alpha", "0.5"])
    assert code == 1 and out == "NO\n"
    code, out, _ = call(["verify", k3, str(doubled), "--eps", "0.5", "--alpha", "0.5",
                         "--mode", "solver", "--noise-seed", "3"])
    assert code == 1


def test_sparsify_odd_k(k3):
    code, out, err = call(["sparsify", k3, "--k", "3", "--eps", "0.5", "--t", "4"])
    assert code == 2 and out == "" and "even" in err


def test_sparsify_seed_and_random_exclusive(k3):
    code, _, err = call(["sparsify", k3, "--k", "2", "--eps", "0.5", "--t", "4", "--seed", "1", "--random", "3"])
    assert code == 2 and "not allowed" in err


def test_sparsify_outputs_graph(pet):
    argv = ["sparsify", pet, "--k", "2", "--eps", "0.5", "--t", "6", "--rate", "4", "--seed", "11"]
    code, out, err = call(argv)
    assert code == 0
    H = parse_edge_list(out)
    assert H.n == 10 and H.m <= 15
    assert "edges=" in err and "expected=" in err and "warning" in err
    assert call(argv) == (code, out, err)
    code, out_q, err_q = call(argv + ["--quiet"])
    assert out_q == out and err_q == ""


def test_sparsify_random_prints_seed(pet):
    code, out, err = call(["sparsify", pet, "--k", "2", "--eps", "0.5", "--t", "6", "--rate", "4", "--random", "5"])
    assert code == 0 and "rng_seed=5" in err
    assert call(["sparsify", pet, "--k", "2", "--eps", "0.5", "--t", "6", "--rate", "4", "--random", "5"])[1] == out


def test_derand_k3(k3, tmp_path):
    target = tmp_path / "h.txt"
    code, out, err = call(["derand", k3, "--k", "2", "--eps", "0.9", "--output", str(target)])
    assert code == 0 and out == ""
    assert err.startswith("seed=") and "verdict=YES" in err
    H = parse_edge_list(target.read_text())
    assert spectral_approx_check(laplacian(H), laplacian(complete(3)), 0.9)
    code2, out2, err2 = call(["derand", k3, "--k", "2", "--eps", "0.9", "--jobs", "3"])
    assert out2 == target.read_text() and err2 == err


def test_derand_disconnected(tmp_path):
    path = tmp_path / "two.txt"
    path.write_text(serialize_edge_list(WeightedGraph.from_edges(4, [(0, 1), (2, 3)])))
    code, _, err = call(["derand", str(path), "--k", "2", "--eps", "0.9"])
    assert code == 3 and "Disconnected" in err


def test_resistances(k3):
    code, out, _ = call(["resistances", k3])
    lines = out.splitlines()
    assert code == 0 and [ln.split()[:2] for ln in lines] == [["0", "1"], ["0", "2"], ["1", "2"]]
    assert all(abs(float(ln.split()[2]) - 2 / 3) < 1e-12 for ln in lines)


def test_resistances_stdin():
    code, out, _ = call(["resistances", "-"], serialize_edge_list(complete(3)))
    assert code == 0 and len(out.splitlines()) == 3


def test_kwise(tmp_path):
    marg = tmp_path / "p.txt"
    marg.write_text("0.5 0.25 0.75\n")
    code, out, _ = call(["kwise", "--m", "3", "--k", "2", "--t", "2", "--marginals", str(marg), "--seed", "5"])
    assert code == 0 and len(out.strip()) == 3 and set(out.strip()) <= {"0", "1"}
    code, _, err = call(["kwise", "--m", "4", "--k", "2", "--t", "2", "--marginals", str(marg)])
    assert code == 2


def test_kwise_all_ones(tmp_path):
    marg = tmp_path / "p.txt"
    marg.write_text("1 1 1 1\n")
    code, out, _ = call(["kwise", "--m", "4", "--k", "3", "--t", "2", "--marginals", str(marg), "--seed", "9"])
    assert out == "1111\n"


def test_lowerbound():
    code, out, _ = call(["lowerbound", "--fixture", "petersen", "--dist", "partition", "--report", "independence"])
    assert code == 0 and out.startswith("order=4\nwitness=")
    code, out, _ = call(["lowerbound", "--fixture", "complete:3", "--report", "disconnect"])
    assert out == "disconnect=3/4 (0.75)\n"
    code, out, _ = call(["lowerbound", "--fixture", "complete:5", "--dist", "threewise"])
    assert out.startswith("order=3\nwitness=")
    assert call(["lowerbound", "--fixture", "petersen", "--dist", "threewise"])[0] == 2
    assert call(["lowerbound", "--fixture", "dodecahedron"])[0] == 2


def test_round(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("3 3\n0 1 0.3\n0 2 0.3\n1 2 0.3\n")
    code, out, _ = call(["round", str(path)])
    assert out == "t=11\n3 3\n0 1 614\n0 2 614\n1 2 614\n"


def test_parse_error_is_usage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 1\n0 0 1\n")
    code, _, err = call(["resistances", str(path)])
    assert code == 2 and "line 2" in err
    assert call(["resistances", str(tmp_path / "missing.txt")])[0] == 2


def test_unknown_command():
    assert call(["frobnicate"])[0] == 2
    assert call([])[0] == 2


def test_module_entry_point(k3):
    proc = subprocess.run([sys.executable, "-m", "kwsparse", "verify", k3, k3, "--eps", "0.1", "--alpha", "0.5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "YES\n"
