import json

import pytest

from blowup_stability.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decide_exit_codes(capsys, data_dir):
    code, out, _ = run(capsys, "decide", str(data_dir / "chain3_stable.json"))
    assert code == 0 and "Stable" in out
    code, out, _ = run(capsys, "decide", str(data_dir / "chain3_semistable.json"))
    assert code == 10 and "Semistable" in out
    code, out, _ = run(capsys, "decide", str(data_dir / "chain3_unstable.json"))
    assert code == 20 and "Unstable" in out


def test_decide_semistable_witness(capsys, data_dir):
    code, out, _ = run(
        capsys, "decide", str(data_dir / "chain3_semistable.json"), "--json"
    )
    assert code == 10
    report = json.loads(out)
    assert report["witness"] == [1, 2]


def test_decide_validation_error(capsys, data_dir):
    code, _, err = run(capsys, "decide", str(data_dir / "bad_edge_order.json"))
    assert code == 2
    assert "BadEdgeOrder" in err


def test_decide_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient": {')
    code, _, err = run(capsys, "decide", str(bad))
    assert code == 2
    assert "line" in err


def test_decide_two_term_modes(capsys, data_dir):
    code, out, _ = run(
        capsys, "decide", str(data_dir / "curve_twoterm.json"), "--mode", "two-term"
    )
    assert code == 0 and "Stable" in out
    # full mode on the same file agrees (sufficiency)
    code, _, _ = run(
        capsys, "decide", str(data_dir / "curve_twoterm.json"), "--mode", "full"
    )
    assert code == 0


def test_two_term_inconclusive_exit_code(capsys, tmp_path):
    doc = {
        "ambient": {"n": 3, "m": 1},
        "components": [
            {"name": "A", "rank": 1, "deg_coeffs": [5, 0, -1], "restriction_degree": 1},
            {"name": "B", "rank": 1, "deg_coeffs": [5, 0, -4], "restriction_degree": 4},
        ],
        "quiver": [[1, 2]],
        "options": {"mode": "two-term"},
    }
    path = tmp_path / "inconclusive.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "decide", str(path))
    assert code == 30
    assert "Inconclusive" in out


def test_cone_report(capsys, data_dir):
    code, out, _ = run(capsys, "cone", str(data_dir / "chain3_stable.json"), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["position"] == "Interior"
    parts = {tuple(g["positive_part"]) for g in report["dual_generators"]}
    assert parts == {(1,), (1, 2)}
    coords = {tuple(g["coords"]) for g in report["dual_generators"]}
    assert ("1/2", "1/2", "-1") in coords


def test_cone_degenerate_exit(capsys, tmp_path):
    doc = {
        "ambient": {"n": 3, "m": 1},
        "components": [
            {"name": "A", "rank": 1, "deg_coeffs": [5, 0, -1]},
            {"name": "B", "rank": 1, "deg_coeffs": [5, 0, -2]},
            {"name": "C", "rank": 1, "deg_coeffs": [5, 0, -3]},
        ],
        "quiver": [[1, 2]],
    }
    path = tmp_path / "disconnected.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "cone", str(path))
    assert code == 2
    assert "DisconnectedQuiver" in err


def test_solve_chain3(capsys, data_dir):
    code, out, _ = run(
        capsys, "solve", str(data_dir / "chain3_stable.json"), "--eps", "1/10", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "Solved"
    assert report["t"][0] == pytest.approx(0.02, abs=1e-8)
    assert report["t"][1] == pytest.approx(0.01, abs=1e-8)
    assert report["residual"] <= 1e-10


def test_solve_divergent(capsys, data_dir):
    code, out, _ = run(
        capsys, "solve", str(data_dir / "chain3_unstable.json"), "--eps", "1/10", "--json"
    )
    assert code == 20
    report = json.loads(out)
    assert report["status"] == "Divergent"
    assert report["certificate_positive_part"] == [1]


def test_sweep_csv_and_plot(capsys, data_dir, tmp_path):
    csv_path = tmp_path / "rows.csv"
    png_path = tmp_path / "figure.png"
    code, out, _ = run(
        capsys,
        "sweep",
        str(data_dir / "one_edge.json"),
        "--eps-start",
        "1/4",
        "--steps",
        "6",
        "--csv",
        str(csv_path),
        "--plot",
        str(png_path),
        "--jobs",
        "2",
    )
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "eps,b_norm,residual,status,newton_iters"
    assert len(lines) == 7
    assert png_path.exists() and png_path.stat().st_size > 0
    assert out.splitlines()[0] == "eps,b_norm,residual,status,newton_iters"


def test_validate_command(capsys, data_dir):
    code, out, _ = run(capsys, "validate", str(data_dir / "chain3_stable.json"))
    assert code == 0 and "valid" in out
    code, _, err = run(capsys, "validate", str(data_dir / "bad_edge_order.json"))
    assert code == 2


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "decide", str(tmp_path / "missing.json"))
    assert code == 2


def test_decide_report_round_trip(capsys, data_dir):
    from blowup_stability.documents import canonical_json

    code, out, _ = run(
        capsys, "decide", str(data_dir / "chain3_semistable.json"), "--json"
    )
    assert canonical_json(json.loads(out)) == out
