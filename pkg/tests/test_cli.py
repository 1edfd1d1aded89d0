import json
import subprocess
import sys

from critpoints.bench import CSV_COLUMNS
from critpoints.cli import main
from critpoints.poly import load_system


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "s.txt"
    assert main(["gen", "--n", "4", "--p", "2", "--D", "2", "--seed", "1", "--out", str(out)]) == 0
    ring, polys, meta = load_system(out.read_text())
    assert ring.nvars == 4 and len(polys) == 2 + 3
    assert meta["seed"] == "1"
    assert main(["gen", "--n", "4", "--p", "2", "--D", "2", "--seed", "1", "--raw"]) == 0
    _, raw, _ = load_system(capsys.readouterr().out)
    assert raw == polys[:2]


def test_gb_on_input_file(tmp_path, capsys):
    src = tmp_path / "circle.txt"
    src.write_text("field 65521\nvars 2\nx1^2 + x2^2 - 1\n2*x2\n")
    assert main(["gb", "--input", str(src)]) == 0
    out = capsys.readouterr().out
    assert "max_step_degree=2 deg=2 zerodim=true" in out


def test_gb_and_fglm_random(capsys):
    assert main(["gb", "--n", "5", "--p", "2", "--D", "2"]) == 0
    assert "deg=16 zerodim=true" in capsys.readouterr().out
    assert main(["fglm", "--n", "5", "--p", "2", "--D", "2"]) == 0
    line = capsys.readouterr().out.strip().splitlines()[-1]
    assert line.startswith("deg=16 density=") and "shape=true" in line


def test_fglm_positive_dimensional_is_hard_failure(tmp_path):
    src = tmp_path / "line.txt"
    src.write_text("field 65521\nvars 2\nx1\n")
    assert main(["fglm", "--input", str(src)]) == 1


def test_formulas(capsys):
    assert main(["formulas", "--n", "9", "--p", "4", "--D", "2"]) == 0
    header, row = capsys.readouterr().out.strip().splitlines()
    assert header.startswith("n,p,D,dreg,deg,hs,ratio")
    fields = row.split(",")
    assert fields[:5] == ["9", "4", "2", "8", "896"]
    assert sum(int(c) for c in fields[5].split()) == 896


def test_formulas_table(capsys):
    assert main(["formulas-table"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,p,D,ratio" and "10000,4,3,1.99" in lines and len(lines) == 11


def test_bench_and_verify(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    out = tmp_path / "r.csv"
    cfg.write_text(json.dumps({"triples": [[4, 2, 2], [4, 1, 3]], "seeds": [0], "output": str(out)}))
    assert main(["bench", "--config", str(cfg)]) == 0
    assert out.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert main(["verify", "--input", str(out)]) == 0
    assert "passed=2 failed=0" in capsys.readouterr().out
    # a corrupted DEG column is a hard failure
    lines = out.read_text().splitlines()
    cols = lines[1].split(",")
    cols[CSV_COLUMNS.index("deg_obs")] = "999"
    lines[1] = ",".join(cols)
    out.write_text("\n".join(lines) + "\n")
    assert main(["verify", "--input", str(out)]) == 1


def test_usage_errors(tmp_path):
    assert main([]) == 2
    assert main(["nope"]) == 2
    assert main(["gen", "--n", "3"]) == 2
    assert main(["gen", "--n", "3", "--p", "4", "--D", "2"]) == 2
    assert main(["bench"]) == 2
    assert main(["bench", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"triples": [[3, 3, 2]]}))
    assert main(["verify", "--config", str(bad)]) == 2
    assert main(["gb", "--n", "4", "--p", "2", "--D", "2", "--field", "65523"]) == 2


def test_degree_cap_is_hard_failure():
    assert main(["bench", "--n", "5", "--p", "2", "--D", "2", "--degree-cap", "2"]) == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "critpoints", "formulas", "--n", "5", "--p", "2", "--D", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.splitlines()[1].startswith("5,2,2,4,16,")
