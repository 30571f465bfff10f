import numpy as np

from relmass import cli


def run(argv):
    return cli.main(argv)


def test_figure1_default_columns(tmp_path, capsys):
    out = tmp_path / "figure1.csv"
    code = run(["figure1", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# relmass figure1")
    assert lines[1] == "t,c4,c5,c6,c7"
    first = lines[2].split(",")
    assert float(first[0]) == 0.0
    assert all(float(x) == 0.0 for x in first[1:])
    assert len(lines) == 2 + 601  # header, columns, grid rows


def test_figure1_reproducible(tmp_path):
    out = tmp_path / "a.csv"
    argv = ["figure1", "--d", "4,5", "--t-max", "3", "--out", str(out)]
    assert run(argv) == 0
    first = out.read_bytes()
    assert run(argv) == 0
    assert out.read_bytes() == first


def test_figure1_empty_grid_errors(tmp_path):
    out = tmp_path / "x.csv"
    assert run(["figure1", "--t-max", "-1", "--out", str(out)]) == 1


def test_witness_exit_codes(capsys):
    assert run(["witness", "--d", "5"]) == 0
    out = capsys.readouterr().out
    assert "t1=" in out
    assert run(["witness", "--d", "4"]) == 2


def test_appendix_report(tmp_path, capsys):
    out = tmp_path / "appendix_r.csv"
    code = run(["appendix", "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "0.359611" in text  # lambda2
    assert "1.561552" in text  # eigenvector apex entry
    assert "r exceeds 1 at t" in text
    lines = out.read_text().splitlines()
    assert lines[1] == "t,value"
    values = np.array([float(ln.split(",")[1]) for ln in lines[2:]])
    assert values.max() > 1.0


def test_verify_claim_csv(tmp_path):
    out = tmp_path / "claim.csv"
    code = run(["verify-claim", "--d", "2", "--eps", "0.01", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "d,epsilon,t,puu,puv,residual_uu,residual_uv,bound"
    assert len(lines) == 2 + 4


def test_mc_occupation_reproducible(tmp_path):
    args = [
        "mc",
        "occupation",
        "--d",
        "3",
        "--t",
        "2",
        "--samples",
        "20000",
        "--seed",
        "42",
        "--chunks",
        "4",
    ]
    out = tmp_path / "a.csv"
    assert run(args + ["--out", str(out)]) == 0
    first = out.read_bytes()
    assert run(args + ["--out", str(out)]) == 0
    assert out.read_bytes() == first
    lines = out.read_text().splitlines()
    assert lines[1] == "quantity,d,epsilon,t,estimate,stderr,n,n_conditioned,seed,chunks"
    row = lines[2].split(",")
    assert row[0] == "origin_time"
    assert row[8] == "42"


def test_mc_puv_runs(tmp_path):
    out = tmp_path / "puv.csv"
    code = run(
        [
            "mc",
            "puv",
            "--d",
            "2",
            "--eps",
            "0.05",
            "--t",
            "1",
            "--samples",
            "2000",
            "--seed",
            "1",
            "--chunks",
            "2",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert out.read_text().splitlines()[2].split(",")[0] == "puv"


def test_blowup_csv(tmp_path):
    out = tmp_path / "blowup.csv"
    code = run(["blowup", "--N", "8,16", "--points", "21", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "N,deg,sup_r_dev,sup_p_dev"
    rows = [ln.split(",") for ln in lines[2:]]
    assert [r[0] for r in rows] == ["8", "16"]
    assert [r[1] for r in rows] == ["13", "21"]


def test_scan_pyramid_finds(capsys):
    assert run(["scan", "--graph", "pyramid", "--u", "1", "--v", "0"]) == 0
    assert "r decreases" in capsys.readouterr().out


def test_scan_cycle_finds_nothing(capsys):
    assert (
        run(["scan", "--graph", "cycle:12", "--u", "0", "--v", "3", "--points", "400"]) == 2
    )


def test_scan_bad_spec():
    assert run(["scan", "--graph", "petersen", "--u", "0", "--v", "1"]) == 1


def test_scan_lamplighter(capsys):
    code = run(
        ["scan", "--graph", "lamplighter:2:0.001", "--u", "0", "--v", "4", "--t-max", "50", "--points", "200"]
    )
    assert code == 2  # r tracks the increasing first-order curve here
