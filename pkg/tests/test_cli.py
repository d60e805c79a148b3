import json
import subprocess
import sys

import numpy as np
import pytest

from specbounds.cli import main

RANK1_ROWS = 8


def run_cli(*args):
    return main(list(args))


def _write_fixture(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("1,0\n0,2\n-1,0\n0,-2\n")
    return str(data)


def _write_rank1(tmp_path):
    # samples along one direction scaled by the labels: the linear-kernel Gram
    # equals the label outer product, so alignment is exactly 1
    rng = np.random.default_rng(80)
    y = rng.choice([-1.0, 1.0], size=RANK1_ROWS)
    data = tmp_path / "rank1.csv"
    data.write_text("\n".join(f"{v},{0.0}" for v in y) + "\n")
    labels = tmp_path / "y.csv"
    labels.write_text("\n".join(str(int(v)) for v in y) + "\n")
    return str(data), str(labels)


def test_bounds_report_surface(tmp_path):
    data = _write_fixture(tmp_path)
    out = tmp_path / "out"
    assert run_cli("bounds", "--data", data, "--kernel", "gaussian:1.0",
                   "--stat", "eig:1", "--eps", "0.1", "--out", str(out)) == 0
    lines = (out / "report.csv").read_text().splitlines()
    assert lines[0] == "statistic,index,epsilon,theorem,kind,value,stderr,flags"
    theorems = {line.split(",")[3] for line in lines[1:]}
    assert {"diag_uniform", "theta_top", "adjacent_gap", "covgap_distance",
            "covgap_second_order"} <= theorems
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["cov_gap_1p"] == pytest.approx(1.5)
    assert meta["whitened_radius"] == pytest.approx(np.sqrt(2.0))
    assert meta["lipschitz"] == 0.5
    manifest = json.loads((out / "manifest.json").read_text())
    assert "data" in manifest["input_hashes"]
    assert "report.csv" in manifest["outputs"]


def test_bounds_deterministic_files(tmp_path):
    data = _write_fixture(tmp_path)
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    for out in (out1, out2):
        assert run_cli("bounds", "--data", data, "--stat", "eig:1,topk:2",
                       "--out", str(out)) == 0
    assert (out1 / "report.csv").read_bytes() == (out2 / "report.csv").read_bytes()
    assert (out1 / "metadata.json").read_bytes() == (out2 / "metadata.json").read_bytes()


def test_bounds_degenerate_gap_exit_4(tmp_path, capsys):
    data = tmp_path / "id3.csv"
    data.write_text("1,0,0\n0,1,0\n0,0,1\n")
    code = run_cli("bounds", "--data", str(data), "--kernel", "linear",
                   "--stat", "eig:1", "--out", str(tmp_path / "o"))
    assert code == 4
    assert "theorem assumes distinct eigenvalues" in capsys.readouterr().err
    code = run_cli("bounds", "--data", str(data), "--kernel", "linear",
                   "--stat", "eig:1", "--allow-degenerate", "--out", str(tmp_path / "o2"))
    assert code == 0


def test_bounds_eigvec_stat(tmp_path):
    rng = np.random.default_rng(82)
    rows = rng.standard_normal((12, 2))
    data = tmp_path / "g.csv"
    data.write_text("\n".join(",".join(map(str, r)) for r in rows) + "\n")
    out = tmp_path / "out"
    assert run_cli("bounds", "--data", str(data), "--kernel", "gaussian:1.0",
                   "--stat", "eigvec:1", "--eps", "0.5,1.0", "--out", str(out)) == 0
    lines = (out / "report.csv").read_text().splitlines()
    theorems = {line.split(",")[3] for line in lines[1:]}
    assert theorems == {"eigvec_pointwise", "eigvec_uniform"}
    meta = json.loads((out / "metadata.json").read_text())
    stats_meta = meta["statistics"]["eigenvector:1"]
    assert "eigvec_c" in stats_meta and "eigvec_exponent_offset" in stats_meta


def test_bounds_singular_covariance_exit_4(tmp_path, capsys):
    data = tmp_path / "rank1.csv"
    data.write_text("1,2\n2,4\n3,6\n")  # all rows collinear
    code = run_cli("bounds", "--data", str(data), "--stat", "eig:1",
                   "--out", str(tmp_path / "o"))
    assert code == 4
    assert "singular" in capsys.readouterr().err
    code = run_cli("bounds", "--data", str(data), "--stat", "eig:1,eigvec:1",
                   "--allow-degenerate", "--out", str(tmp_path / "o2"))
    assert code == 0
    meta = json.loads((tmp_path / "o2" / "metadata.json").read_text())
    assert "covariance_skipped" in meta
    assert any("eigvec" in k for k in meta["skipped_theorems"])


def test_bounds_data_errors_exit_3(tmp_path):
    missing = run_cli("bounds", "--data", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o"))
    assert missing == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,a\n2,3\n")
    assert run_cli("bounds", "--data", str(bad), "--out", str(tmp_path / "o")) == 3


def test_bounds_config_errors_exit_2(tmp_path):
    data = _write_fixture(tmp_path)
    assert run_cli("bounds", "--data", data, "--kernel", "rbf:1",
                   "--out", str(tmp_path / "o")) == 2
    assert run_cli("bounds", "--data", data, "--stat", "median:1",
                   "--out", str(tmp_path / "o")) == 2
    assert run_cli("bounds", "--data", data, "--eps", "0.2,0.1",
                   "--out", str(tmp_path / "o")) == 2


def test_simulate_preset_config_values(tmp_path):
    out = tmp_path / "sim"
    assert run_cli("simulate", "--preset", "example1-fig2-top", "--seed", "7",
                   "--trials", "5", "--out", str(out)) == 0
    config = json.loads((out / "config.json").read_text())
    cfg = config["runs"][0]["config"]
    assert (cfg["n"], cfg["p"]) == (100, 1)
    assert cfg["kernel"] == {"family": "gaussian", "sigma": 1.0}
    assert cfg["indices"] == [1, 2, 3]
    assert cfg["bounds"] == ["adjacent_gap"]
    assert cfg["seed"] == 7
    summary = json.loads((out / "summary.json").read_text())
    assert len(summary["runs"][0]["rng"]["subseeds"]) == 5


def test_simulate_svg_pure_formatting(tmp_path):
    with_svg, without = tmp_path / "a", tmp_path / "b"
    for out, flag in ((with_svg, []), (without, ["--no-svg"])):
        assert run_cli("simulate", "--preset", "example1-fig2-top", "--seed", "3",
                       "--trials", "4", "--out", str(out), *flag) == 0
    assert (with_svg / "results.csv").read_bytes() == (without / "results.csv").read_bytes()
    assert (with_svg / "summary.json").read_bytes() == (without / "summary.json").read_bytes()
    assert (with_svg / "plot.svg").exists()
    assert not (without / "plot.svg").exists()
    svg = (with_svg / "plot.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_simulate_bottom_preset_two_runs(tmp_path):
    out = tmp_path / "sb"
    assert run_cli("simulate", "--preset", "example1-fig2-bottom", "--seed", "5",
                   "--trials", "4", "--out", str(out)) == 0
    assert (out / "results_p2.csv").exists()
    assert (out / "results_p5.csv").exists()
    config = json.loads((out / "config.json").read_text())
    assert [r["config"]["p"] for r in config["runs"]] == [2, 5]


def test_simulate_fig1_preset_boxplot(tmp_path):
    out = tmp_path / "sf"
    assert run_cli("simulate", "--preset", "fig1-boxplot", "--seed", "5",
                   "--trials", "6", "--out", str(out)) == 0
    lines = (out / "results.csv").read_text().splitlines()
    kinds = {line.split(",")[4] for line in lines[1:]}
    assert {"min", "q1", "median", "q3", "max", "iqr", "mean_gap", "spearman_gap_iqr"} <= kinds
    assert (out / "boxplot.svg").exists()


def test_simulate_emitted_config_reruns_identically(tmp_path):
    first, second = tmp_path / "r1", tmp_path / "r2"
    assert run_cli("simulate", "--preset", "example1-fig2-top", "--seed", "11",
                   "--trials", "6", "--out", str(first)) == 0
    assert run_cli("simulate", "--config", str(first / "config.json"),
                   "--out", str(second)) == 0
    assert (first / "results.csv").read_bytes() == (second / "results.csv").read_bytes()
    assert (first / "summary.json").read_bytes() == (second / "summary.json").read_bytes()


def test_simulate_trials_smoke_fast(tmp_path):
    import time

    start = time.time()
    assert run_cli("simulate", "--preset", "example1-fig2-top", "--seed", "2",
                   "--trials", "2", "--no-svg", "--out", str(tmp_path / "s")) == 0
    assert time.time() - start < 1.0


def test_simulate_needs_inputs():
    assert run_cli("simulate", "--out", "/tmp/unused-simulate-out") == 2


def test_align_rank1_fixture(tmp_path):
    data, labels = _write_rank1(tmp_path)
    out = tmp_path / "al"
    assert run_cli("align", "--data", data, "--labels", labels, "--kernel", "linear",
                   "--eps", "0.5,1.0", "--out", str(out)) == 0
    payload = json.loads((out / "alignment.json").read_text())
    assert payload["a_kn"] == pytest.approx(1.0, rel=1e-12)
    lines = (out / "alignment.csv").read_text().splitlines()
    a_line = [l for l in lines if ",a_kn," in l][0]
    assert float(a_line.split(",")[5]) == pytest.approx(1.0, rel=1e-12)


def test_align_theta_mode_flag(tmp_path):
    rng = np.random.default_rng(81)
    rows = rng.standard_normal((10, 2))
    data = tmp_path / "g.csv"
    data.write_text("\n".join(",".join(map(str, r)) for r in rows) + "\n")
    labels = tmp_path / "y.csv"
    labels.write_text("\n".join("1" if i % 2 else "-1" for i in range(10)) + "\n")
    for mode in ("drop", "zero"):
        out = tmp_path / f"al_{mode}"
        assert run_cli("align", "--data", str(data), "--labels", str(labels),
                       "--kernel", "gaussian:1.0", "--theta-mode", mode,
                       "--out", str(out)) == 0
        payload = json.loads((out / "alignment.json").read_text())
        assert payload["theta_mode"] == mode
        assert 0.0 <= payload["theta"] <= 1.0


def test_align_label_col(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("x1,y,x2\n1,1,0\n-1,-1,0\n2,1,0\n-2,-1,0\n")
    out = tmp_path / "al"
    assert run_cli("align", "--data", str(data), "--label-col", "y",
                   "--kernel", "gaussian:1.0", "--out", str(out)) == 0


def test_align_missing_labels_exit_3(tmp_path):
    data = _write_fixture(tmp_path)
    assert run_cli("align", "--data", data, "--out", str(tmp_path / "o")) == 3
    bad = tmp_path / "y.csv"
    bad.write_text("1\n2\n1\n-1\n")
    assert run_cli("align", "--data", data, "--labels", str(bad),
                   "--out", str(tmp_path / "o")) == 3


def test_audit_surface_and_zero_perturbation(tmp_path):
    out = tmp_path / "aud"
    assert run_cli("audit", "--n", "20", "--p", "2", "--seed", "9",
                   "--oracle-trials", "100", "--interlacing-matrices", "100",
                   "--expansion-trials", "2", "--zero-perturbation",
                   "--out", str(out)) == 0
    lines = (out / "audit.csv").read_text().splitlines()
    assert lines[0] == "inequality,trials,violations,skipped,max_violation"
    assert len(lines) == 8  # header + 7 inequalities
    for line in lines[1:]:
        assert int(line.split(",")[2]) == 0  # zero violations everywhere
    names = [line.split(",")[0] for line in lines[1:]]
    assert names == [
        "interlacing",
        "eigenvalue_stability",
        "perturbation_norm_printed",
        "perturbation_norm_conservative",
        "second_order_eigenvalue",
        "eigvec_expansion_residual",
        "perturbation_norm_inner",
    ]


def test_audit_trial_count_scales(tmp_path):
    out = tmp_path / "aud"
    assert run_cli("audit", "--n", "15", "--p", "2", "--seed", "9",
                   "--oracle-trials", "120", "--interlacing-matrices", "100",
                   "--expansion-trials", "2", "--out", str(out)) == 0
    lines = (out / "audit.csv").read_text().splitlines()
    stability = [l for l in lines if l.startswith("eigenvalue_stability")][0]
    assert int(stability.split(",")[1]) == 120


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "specbounds", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"


def test_generated_seed_printed(tmp_path, capsys):
    out = tmp_path / "s"
    assert run_cli("simulate", "--n", "10", "--p", "1", "--trials", "2",
                   "--no-svg", "--out", str(out)) == 0
    captured = capsys.readouterr().out
    assert "generated seed:" in captured
    manifest = json.loads((out / "manifest.json").read_text())
    assert isinstance(manifest["master_seed"], int)
