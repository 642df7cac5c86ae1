import json

import numpy as np
import pytest

from ksq import cli
from ksq.cli import ScanSpec, fig1_flags, fig2_flags, scan_flags, write_scan_csv, write_scan_pgm


def run(argv):
    return cli.main(argv)


# --- classify ---------------------------------------------------------------


def test_classify_table(capsys):
    assert run(["classify", "phi:0.6,0.5,0.0", "--samples", "500"]) == 0
    out = capsys.readouterr().out
    assert "kadison_schwarz" in out and "holds_exact" in out
    assert "completely_positive" in out and "fails" in out


def test_classify_json_lines(capsys):
    assert run(["classify", "tlm:0.5,0.5", "--samples", "500", "--format", "json-lines"]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.strip().splitlines()]
    assert len(lines) == 3
    by_level = {rec["level"]: rec for rec in lines}
    assert by_level["completely_positive"]["status"] == "holds_exact"
    assert by_level["kadison_schwarz"]["status"] == "holds_sufficient"
    assert all(rec["descriptor"] == "tlm:0.5,0.5" for rec in lines)


def test_classify_out_of_range_exits_2(capsys):
    assert run(["classify", "phi:2,0,0"]) == 2
    assert run(["classify", "blah:1,2,3"]) == 2
    assert run(["classify", "phi:not,a,number"]) == 2


# --- scan -------------------------------------------------------------------


def test_scan_spec_cell_centres():
    spec = ScanSpec.for_figure("fig1", 10)
    xs = spec.xs()
    assert len(xs) == 10
    assert xs[0] == pytest.approx(-0.45)
    assert xs[-1] == pytest.approx(0.45)
    # centres never touch the |b| = 1/2 boundary
    assert np.all(np.abs(spec.ys()) < 0.5)


def test_fig1_flag_fixtures():
    t_cp, phi_cp = fig1_flags(0.3, 0.0)
    assert bool(t_cp) and not bool(phi_cp)  # 0.09 <= 0.125 but 0.09 > 0.0625
    t_cp, phi_cp = fig1_flags(0.0, 0.0)
    assert bool(t_cp) and bool(phi_cp)


def test_fig2_flag_fixtures():
    cp, ks, comps = fig2_flags(0.5, 0.5)
    assert bool(cp) and bool(ks) and bool(comps)
    cp, ks, comps = fig2_flags(-0.3, 0.0)
    assert bool(ks) and not bool(comps)  # KS holds outside the component square
    cp, ks, comps = fig2_flags(1.0, 1.0)
    assert not bool(cp)


def test_scan_csv_format(tmp_path):
    out = tmp_path / "scan.csv"
    assert run(["scan", "--figure", "fig1", "--grid", "12", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,y,t_cp,phi_cp"
    assert len(lines) == 1 + 12 * 12
    cells = lines[1].split(",")
    assert float(cells[0]) == pytest.approx(-0.5 + 0.5 / 12)
    assert set(cells[2:]) <= {"0", "1"}
    # byte-identical reruns
    again = tmp_path / "scan2.csv"
    assert run(["scan", "--figure", "fig1", "--grid", "12", "--out", str(again)]) == 0
    assert out.read_bytes() == again.read_bytes()


def test_scan_csv_matches_flag_functions(tmp_path):
    out = tmp_path / "scan.csv"
    assert run(["scan", "--figure", "fig2", "--grid", "9", "--out", str(out)]) == 0
    spec = ScanSpec.for_figure("fig2", 9)
    flags = scan_flags(spec)
    rows = out.read_text().splitlines()[1:]
    k = 0
    for iy in range(9):
        for ix in range(9):
            cells = rows[k].split(",")
            assert [int(c) for c in cells[2:]] == [int(flags[c, iy, ix]) for c in range(3)]
            k += 1


def test_scan_pgm(tmp_path):
    csv = tmp_path / "scan.csv"
    pgm = tmp_path / "scan.pgm"
    assert run(
        ["scan", "--figure", "fig1", "--grid", "16", "--out", str(csv), "--pgm", str(pgm)]
    ) == 0
    blob = pgm.read_bytes()
    assert blob.startswith(b"P5\n")
    header, _, rest = blob.partition(b"255\n")
    assert b"# fig1" in header and b"bitmask" in header
    assert b"16 16" in header
    pixels = np.frombuffer(rest, dtype=np.uint8).reshape(16, 16)
    spec = ScanSpec.for_figure("fig1", 16)
    flags = scan_flags(spec)
    scale = 255 // 4
    expect = (flags[0].astype(np.uint8) + 2 * flags[1].astype(np.uint8)) * scale
    assert np.array_equal(pixels, expect)


def test_scan_verify_choi(tmp_path):
    out = tmp_path / "scan.csv"
    code = run(
        ["scan", "--figure", "fig1", "--grid", "16", "--out", str(out), "--verify-choi", "25"]
    )
    assert code == 0
    code = run(
        ["scan", "--figure", "fig2", "--grid", "16", "--out", str(out), "--verify-choi", "25"]
    )
    assert code == 0


def test_scan_unwritable_path_exits_3(tmp_path):
    missing = tmp_path / "nope" / "scan.csv"
    assert run(["scan", "--figure", "fig1", "--grid", "8", "--out", str(missing)]) == 3


# --- oracle -----------------------------------------------------------------


def test_oracle_transpose_witness(capsys):
    code = run(["oracle", "phi:1,-1,1", "--samples", "1000", "--seed", "7"])
    assert code == 1
    out = capsys.readouterr().out
    assert out.startswith("witness ")
    assert "violation=" in out


def test_oracle_identity_clean(capsys):
    assert run(["oracle", "phi:1,1,1", "--samples", "1000", "--seed", "7"]) == 0
    assert "no violation" in capsys.readouterr().out


def test_oracle_tlm_clean():
    assert run(["oracle", "tlm:0.25,0.25", "--samples", "100000", "--seed", "7"]) == 0


def test_oracle_parse_error():
    assert run(["oracle", "phi:9,9"]) == 2


# --- harness ----------------------------------------------------------------


def test_harness_families(capsys):
    assert run(["harness", "--family", "phi", "--grid", "5", "--samples", "300"]) == 0
    assert "discrepancies=0" in capsys.readouterr().out
    assert run(["harness", "--family", "tdiag", "--grid", "5", "--samples", "300"]) == 0
    assert run(["harness", "--family", "tlm", "--grid", "7", "--samples", "300"]) == 0


def test_harness_tlm_spec_scale(capsys):
    assert run(["harness", "--family", "tlm", "--grid", "21", "--samples", "1000"]) == 0
    assert "discrepancies=0" in capsys.readouterr().out


def test_harness_unknown_family():
    assert run(["harness", "--family", "nope", "--grid", "5"]) == 2


# --- seed plumbing ----------------------------------------------------------


def test_ksq_seed_env(monkeypatch):
    monkeypatch.setenv("KSQ_SEED", "12345")
    parser = cli.build_parser()
    args = parser.parse_args(["oracle", "phi:1,1,1"])
    assert args.seed == 12345
    args = parser.parse_args(["oracle", "phi:1,1,1", "--seed", "9"])
    assert args.seed == 9
    monkeypatch.setenv("KSQ_SEED", "not-an-int")
    with pytest.raises(SystemExit):
        cli.build_parser()
