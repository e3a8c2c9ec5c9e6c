"""End-to-end command-line scenarios and exit-code contract."""

import json
import math
import subprocess
import sys

from horocusp.cli import main, parse_complex_literal

SLICE_CFG = {
    "area_bound": 6.0,
    "max_d": 2,
    "max_exp": 1,
    "max_depth": 12,
    "min_box_width": 0.01,
    "word_budget_per_box": 10000,
    "root_box": [[1.0, 1.2], [0.0, 0.0], [0.0, 0.0], [4.0, 4.0], [-0.7, -0.4], [0.0, 0.0]],
}

HEX_B = "1+1.7320508075688772i"


def run_cli(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def test_parse_complex_literal():
    assert parse_complex_literal("4") == 4 + 0j
    assert parse_complex_literal("-0.5") == -0.5 + 0j
    assert parse_complex_literal("1+1.7320508075688772i") == complex(1.0, 1.7320508075688772)
    assert parse_complex_literal("1-2i") == 1 - 2j
    assert parse_complex_literal("4i") == 4j
    assert parse_complex_literal("-3.5i") == -3.5j
    for bad in ("", "i", "1+i", "4+", "abc", "1 + 2i", "2j"):
        try:
            parse_complex_literal(bad)
            assert False, bad
        except ValueError:
            pass


def test_search_slice_config_file(tmp_path) -> None:
    cfg_path = tmp_path / "slice.json"
    cfg_path.write_text(json.dumps(SLICE_CFG))
    out = tmp_path / "r.json"
    code = run_cli(["search", "--config", str(cfg_path), "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["version"] == "0.1.0"
    assert report["config"]["area_bound"] == 6.0
    assert report["config"]["root_box"] == SLICE_CFG["root_box"]
    assert [leaf["status"] for leaf in report["leaves"]] == ["eliminated_killer"]
    assert report["global_volume_bound"] == "-inf"


def test_search_flags_override_config_file(tmp_path):
    cfg_path = tmp_path / "slice.json"
    cfg_path.write_text(json.dumps(SLICE_CFG))
    out = tmp_path / "r.json"
    code = run_cli(
        ["search", "--config", str(cfg_path), "--max-d", "1", "--out", str(out)]
    )
    report = json.loads(out.read_text())
    assert report["config"]["max_d"] == 1
    assert code in (0, 2)


def test_search_deterministic_across_workers(tmp_path) -> None:
    cfg_path = tmp_path / "slice.json"
    cfg_path.write_text(json.dumps(SLICE_CFG))
    blobs = []
    for i, workers in enumerate(("1", "8", "1")):
        out = tmp_path / ("r%d.json" % i)
        code = run_cli(
            [
                "search",
                "--config",
                str(cfg_path),
                "--workers",
                workers,
                "--out",
                str(out),
            ]
        )
        assert code == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]


def test_search_partial_exit_code(tmp_path):
    cfg = dict(SLICE_CFG)
    cfg["root_box"] = [[0.5, 1.5], [0.0, 0.0], [0.0, 0.0], [4.0, 4.0], [-0.75, -0.25], [0.0, 0.0]]
    cfg_path = tmp_path / "wide.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "r.json"
    code = run_cli(
        ["search", "--config", str(cfg_path), "--max-boxes", "2", "--out", str(out)]
    )
    assert code == 2
    report = json.loads(out.read_text())
    assert report["incomplete"] is True


def test_search_usage_errors(tmp_path):
    out = str(tmp_path / "r.json")
    assert run_cli(["search", "--area-max", "0", "--out", out]) == 64
    assert run_cli(["search", "--area-max", "6"]) == 64
    assert run_cli(["search", "--out", out]) == 64
    assert run_cli(["search", "--area-max", "6", "--bogus", "--out", out]) == 64
    assert run_cli([]) == 64
    assert run_cli(["frobnicate"]) == 64


def test_cusp_reference_point(capsys):
    code = run_cli(["cusp", "--a", "4", "--b", HEX_B])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["version"] == "0.1.0"
    assert payload["config"]["b"] == HEX_B
    assert abs(payload["volume"] - 2.0 * math.sqrt(3.0)) < 1e-9
    assert abs(payload["delta_bound"] - 5.196152422706632) < 1e-9
    assert payload["max_exceptional_count"] <= 8


def test_cusp_degenerate_exit_65(capsys):
    assert run_cli(["cusp", "--a", "1", "--b", "1"]) == 65
    capsys.readouterr()


def test_cusp_slopes_match_brute_force(capsys) -> None:
    code = run_cli(["cusp", "--a", "1", "--b", "1i", "--slope-length", "6"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    got = [(row["p"], row["q"]) for row in payload["short_slopes"]]
    oracle = []
    for q in range(0, 8):
        for p in range(-8, 9):
            if math.gcd(p, q) != 1:
                continue
            if q == 0 and p != 1:
                continue
            length = abs(complex(p, q))
            if length <= 6.0:
                oracle.append((length, q, p))
    oracle.sort()
    assert got == [(p, q) for _, q, p in oracle]


def test_cusp_out_file_and_bad_flags(tmp_path, capsys):
    out = tmp_path / "audit.json"
    assert run_cli(["cusp", "--a", "4", "--b", HEX_B, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["max_exceptional_count"] == 8
    assert run_cli(["cusp", "--a", "x", "--b", "1i"]) == 64
    assert run_cli(["cusp", "--a", "1", "--b", "1i", "--slope-length", "0"]) == 64
    capsys.readouterr()


def test_horoball_artifacts(tmp_path) -> None:
    svg = tmp_path / "out.svg"
    csv_path = tmp_path / "balls.csv"
    argv = [
        "horoball",
        "--a",
        "4",
        "--b",
        HEX_B,
        "--c",
        "2",
        "--cutoff",
        "0.5",
        "--depth",
        "2",
        "--svg",
        str(svg),
        "--csv",
        str(csv_path),
    ]
    assert run_cli(argv) == 0
    svg_text = svg.read_text()
    assert svg_text.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert svg_text.count("<circle") == 2
    assert '"cutoff":0.5' in svg_text.replace(" ", "")
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "# horocusp 0.1.0"
    assert lines[3] == "center_re,center_im,diameter,word"
    assert lines[4].endswith(",z") and lines[5].endswith(",z^-1")
    first = svg.read_bytes()
    assert run_cli(argv) == 0
    assert svg.read_bytes() == first


def test_horoball_usage_and_degenerate(tmp_path, capsys):
    svg = str(tmp_path / "o.svg")
    base = ["horoball", "--a", "4", "--b", HEX_B, "--c", "2"]
    assert run_cli(base + ["--cutoff", "2", "--svg", svg]) == 64
    assert run_cli(base + ["--cutoff", "0", "--svg", svg]) == 64
    assert run_cli(base + ["--cutoff", "0.5"]) == 64
    assert run_cli(["horoball", "--a", "4", "--b", "8", "--c", "2",
                    "--cutoff", "0.5", "--svg", svg]) == 65
    capsys.readouterr()


def test_verify_round_trip(tmp_path, capsys) -> None:
    cfg_path = tmp_path / "slice.json"
    cfg_path.write_text(json.dumps(SLICE_CFG))
    out = tmp_path / "r.json"
    assert run_cli(["search", "--config", str(cfg_path), "--out", str(out)]) == 0
    assert run_cli(["verify", "--report", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert payload["leaves_audited"] == 1
    assert payload["samples_taken"] == 50

    report = json.loads(out.read_text())
    report["leaves"][0]["word"] = "z y z"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(report))
    assert run_cli(["verify", "--report", str(bad)]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is False and payload["violations"]


def test_verify_missing_report_and_bad_samples(tmp_path, capsys):
    assert run_cli(["verify", "--report", str(tmp_path / "none.json")]) == 1
    assert run_cli(["verify", "--report", "x", "--samples", "0"]) == 64
    capsys.readouterr()


def test_version_flag(capsys):
    assert run_cli(["--version"]) == 0
    assert "0.1.0" in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "horocusp.cli", "cusp", "--a", "4", "--b", HEX_B],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["max_exceptional_count"] == 8
