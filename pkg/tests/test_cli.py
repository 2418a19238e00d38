"""Command-line interface: exit codes, JSON payloads, file outputs."""

import json
import subprocess
import sys

import numpy as np
import pytest

from purity_bounds import cli, load_state_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


# ----------------------------------------------------------------- bounds

def test_bounds_bell_point(capsys):
    payload = run_json(capsys, "bounds", "--quantity", "coherent-info",
                       "--gamma-global", "1.0", "--gamma-marginal", "0.5",
                       "--dims", "2,2")
    assert payload["lower"] == pytest.approx(1.0, abs=1e-12)
    assert payload["upper"] == pytest.approx(1.0, abs=1e-12)
    assert payload["quantity"] == "coherent-info"


def test_bounds_coherence_point(capsys):
    payload = run_json(capsys, "bounds", "--quantity", "coherence",
                       "--gamma-global", "0.5", "--gamma-marginal", "0.4",
                       "--dims", "4")
    assert payload["lower"] == pytest.approx(0.010543780992, abs=1e-9)
    assert payload["upper"] == pytest.approx(0.635957075583, abs=1e-9)


def test_bounds_multi_info_point(capsys):
    payload = run_json(capsys, "bounds", "--quantity", "multi-info",
                       "--gamma-global", "0.5",
                       "--gamma-marginal", "0.5", "0.5", "--dims", "2,2")
    assert payload["lower"] == pytest.approx(0.596511901576, abs=1e-9)
    assert payload["upper"] == pytest.approx(1.0, abs=1e-12)


def test_bounds_bad_purity_exits_2(capsys):
    code, _ = run(capsys, "bounds", "--quantity", "coherent-info",
                  "--gamma-global", "1.4", "--gamma-marginal", "0.5",
                  "--dims", "2,2")
    assert code == 2


def test_bounds_marginal_count_mismatch_exits_2(capsys):
    code, _ = run(capsys, "bounds", "--quantity", "multi-info",
                  "--gamma-global", "0.5", "--gamma-marginal", "0.5",
                  "--dims", "2,2")
    assert code == 2


def test_bounds_inconsistent_coherence_exits_2(capsys):
    code, _ = run(capsys, "bounds", "--quantity", "coherence",
                  "--gamma-global", "0.4", "--gamma-marginal", "0.7",
                  "--dims", "4")
    assert code == 2


def test_usage_error_exits_2(capsys):
    assert cli.main(["bounds", "--quantity", "nonsense"]) == 2
    capsys.readouterr()


# ------------------------------------------------------------- make/analyze

def test_make_state_and_analyze_round_trip(capsys, tmp_path):
    path = tmp_path / "bell.json"
    code, _ = run(capsys, "make-state", "--kind", "bell", "--out", str(path))
    assert code == 0
    rho = load_state_json(path)
    assert rho.purity == pytest.approx(1.0, abs=1e-12)
    payload = run_json(capsys, "analyze", "--state", str(path),
                       "--quantity", "coherent-info")
    assert payload["exact"] == pytest.approx(1.0, abs=1e-10)
    assert payload["renyi"] == pytest.approx(1.0, abs=1e-10)
    assert payload["lower"] == pytest.approx(1.0, abs=1e-10)
    assert payload["gamma_marginal"] == pytest.approx(0.5, abs=1e-12)


def test_make_state_kinds(capsys, tmp_path):
    cases = [
        (["--kind", "ghz"], (2, 2, 2), 1.0),
        (["--kind", "plus", "--dims", "4"], (4,), 1.0),
        (["--kind", "maximally-mixed", "--dims", "3"], (3,), 1.0 / 3.0),
        (["--kind", "random-pure", "--dims", "2,2", "--seed", "4"],
         (2, 2), 1.0),
    ]
    for extra, dims, purity in cases:
        out = tmp_path / ("state-" + extra[1] + ".json")
        code, _ = run(capsys, "make-state", *extra, "--out", str(out))
        assert code == 0
        rho = load_state_json(out)
        assert rho.dims == dims
        assert rho.purity == pytest.approx(purity, abs=1e-10)


def test_make_state_random_mixed_seeded(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        code, _ = run(capsys, "make-state", "--kind", "random-mixed",
                      "--dims", "2,2", "--ancilla-dim", "3",
                      "--seed", "21", "--out", str(out))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    rho = load_state_json(a)
    assert rho.purity < 1.0 - 1e-6


def test_analyze_multi_info(capsys, tmp_path):
    path = tmp_path / "ghz.json"
    run(capsys, "make-state", "--kind", "ghz", "--out", str(path))
    payload = run_json(capsys, "analyze", "--state", str(path),
                       "--quantity", "multi-info")
    assert payload["exact"] == pytest.approx(3.0, abs=1e-10)
    assert payload["gamma_marginals"] == pytest.approx([0.5] * 3, abs=1e-12)
    assert payload["lower"] - 1e-9 <= payload["exact"] <= payload["upper"] + 1e-9


def test_analyze_missing_file_exits_2(capsys, tmp_path):
    code, _ = run(capsys, "analyze", "--state", str(tmp_path / "nope.json"),
                  "--quantity", "coherence")
    assert code == 2


def test_analyze_bad_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(capsys, "analyze", "--state", str(bad),
                  "--quantity", "coherence")
    assert code == 2


def test_sandwich_violation_exits_3(capsys, tmp_path, monkeypatch):
    path = tmp_path / "bell.json"
    run(capsys, "make-state", "--kind", "bell", "--out", str(path))

    import purity_bounds.cli as climod

    def broken(rho, quantity, seed, index):
        raise climod.SandwichViolation("exact value escaped its bounds")

    monkeypatch.setattr(climod, "sample_record", broken)
    code, _ = run(capsys, "analyze", "--state", str(path),
                  "--quantity", "coherent-info")
    assert code == 3


# --------------------------------------------------------------- simulate

def test_simulate_deterministic(capsys, tmp_path):
    path = tmp_path / "mixed.json"
    run(capsys, "make-state", "--kind", "random-mixed", "--dims", "2",
        "--seed", "3", "--out", str(path))
    one = run_json(capsys, "simulate", "--state", str(path),
                   "--method", "ancilla-swap", "--shots", "4000",
                   "--seed", "11")
    two = run_json(capsys, "simulate", "--state", str(path),
                   "--method", "ancilla-swap", "--shots", "4000",
                   "--seed", "11")
    assert one == two
    assert one["shots"] == 4000
    assert 0.0 <= one["estimate_clamped"] <= 1.0


def test_simulate_propagate_bell_contains_truth(capsys, tmp_path):
    path = tmp_path / "bell.json"
    run(capsys, "make-state", "--kind", "bell", "--out", str(path))
    payload = run_json(capsys, "simulate", "--state", str(path),
                       "--method", "ancilla-swap", "--shots", "100000",
                       "--seed", "2", "--propagate", "coherent-info")
    prop = payload["propagate"]
    # joint state is pure so its estimate is exact; only the marginal
    # estimate fluctuates, which narrows the interval around 1 slightly
    assert prop["interval"]["lower"] == pytest.approx(1.0, abs=0.01)
    assert prop["interval"]["upper"] == pytest.approx(1.0, abs=0.01)
    wide = prop["sensitivity_interval"]
    assert wide["lower"] <= 1.0 <= wide["upper"] + 1e-12


def test_simulate_propagate_coherence(capsys, tmp_path):
    path = tmp_path / "plus.json"
    run(capsys, "make-state", "--kind", "plus", "--dims", "4",
        "--out", str(path))
    payload = run_json(capsys, "simulate", "--state", str(path),
                       "--method", "ancilla-swap", "--shots", "200000",
                       "--seed", "6", "--propagate", "coherence")
    prop = payload["propagate"]
    # maximally coherent state: C = log2(4) = 2
    assert prop["interval"]["lower"] <= 2.0 + 1e-9
    assert prop["interval"]["upper"] >= 2.0 - 0.2
    assert prop["consistency_clamped"] in (True, False)


def test_simulate_propagate_needs_supported_method(capsys, tmp_path):
    path = tmp_path / "bell.json"
    run(capsys, "make-state", "--kind", "bell", "--out", str(path))
    code, _ = run(capsys, "simulate", "--state", str(path),
                  "--method", "shift-3", "--shots", "100",
                  "--propagate", "coherent-info")
    assert code == 2


# ----------------------------------------------------------------- figure

def test_figure_header_only_when_zero_samples(capsys, tmp_path):
    scatter = tmp_path / "f1.csv"
    code, _ = run(capsys, "figure", "--which", "1a", "--samples", "0",
                  "--out", str(scatter))
    assert code == 0
    assert scatter.read_text() == ("gamma_global,gamma_marginal,exact,renyi,"
                                   "lower,upper,seed,index\n")
    surface = tmp_path / "f2.csv"
    code, _ = run(capsys, "figure", "--which", "2", "--samples", "0",
                  "--out", str(surface))
    assert code == 0
    assert surface.read_text() == "gamma_global,gamma_marginal,lower,upper\n"


def test_figure_scatter_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        code, _ = run(capsys, "figure", "--which", "1a", "--samples", "40",
                      "--seed", "17", "--out", str(out))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert len(lines) == 41


def test_figure_1b_search_lifts_exact(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, _ = run(capsys, "figure", "--which", "1b", "--samples", "6",
                  "--seed", "23", "--search-budget", "300",
                  "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 7
    for line in lines[1:]:
        g, m, exact, renyi, lo, hi, seed, idx = line.split(",")
        assert float(lo) - 1e-9 <= float(exact) <= float(hi) + 1e-9


def test_figure_coherence_surface(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, _ = run(capsys, "figure", "--which", "3", "--samples", "5",
                  "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "gamma_global,gamma_marginal,lower,upper"
    assert len(lines) == 16


# ------------------------------------------------------------- entry point

def test_console_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "purity_bounds.cli", "bounds",
         "--quantity", "coherent-info", "--gamma-global", "1.0",
         "--gamma-marginal", "0.5", "--dims", "2,2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["upper"] == pytest.approx(1.0, abs=1e-12)
