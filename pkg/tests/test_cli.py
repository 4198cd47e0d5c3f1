import json
import subprocess
import sys

import pytest

from spincq.cli import _join_negative_values, main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_qr_p1_rows(capsys):
    # [DERIVED]
    code, out, _ = run(["qr", "--example", "p1:4", "--box", "-10:10"], capsys)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "side,label,m,q,match"
    assert len(lines) == 22
    assert all(line.endswith(",1") for line in lines[1:])


def test_qr_json_and_table(capsys):
    # [DERIVED]
    code, out, _ = run(["qr", "--example", "product_p1", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["summary"] is True
    code, out, _ = run(["qr", "--example", "su3_flag:4,1", "--format", "table"], capsys)
    assert code == 0 and "[nonabelian]" in out


def test_bad_inputs_exit_2(capsys):
    # [TRIVIAL]
    assert run(["orbits", "--group", "g2"], capsys)[0] == 2
    assert run(["qr", "--example", "klein_bottle"], capsys)[0] == 2
    assert run(["qr"], capsys)[0] == 2
    assert run(["dh", "--example", "p1:4", "--grid", "3:1:1"], capsys)[0] == 2
    assert run(["dh", "--example", "su3_flag:4,1"], capsys)[0] == 2
    assert run([], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["qr", "--format", "xml"])
    assert exc.value.code == 2


def test_orbits_ancestors_of_rho(capsys):
    # [PAPER]
    code, out, _ = run(["orbits", "--group", "su3", "--ancestors-of", "rho"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 5


def test_orbits_torus(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(["orbits", "--group", "torus:1", "--box", "-2:2", "--format", "json",
                        "--dot", str(dot)], capsys)
    records = json.loads(out)
    # [TRIVIAL] every integral point of a circle is admissible and quantizes to itself
    assert code == 0
    assert [r["rep"] for r in records] == [["-2"], ["-1"], ["0"], ["1"], ["2"]]
    assert all(r["qspin"] == r["rep"] for r in records)
    assert dot.read_text().startswith("digraph")


def test_index_su3(capsys):
    # [PAPER]
    code, out, _ = run(["index", "--example", "su3_flag:4,1"], capsys)
    assert code == 0 and json.loads(out)["coefficient_at_rho"] == -2


def test_index_polarizations(capsys):
    # [DERIVED]
    code, out, _ = run(["index", "--example", "product_p1", "--polarizations", "5", "--seed", "3"], capsys)
    data = json.loads(out)
    assert code == 0 and data["polarization_independent"] is True
    assert set(data["components"]) == {"-1", "0", "1"}


def test_output_writes_figure(tmp_path, capsys):
    # [TRIVIAL]
    out = tmp_path / "qr.csv"
    assert main(["qr", "--example", "hirzebruch:3,6", "--output", str(out)]) == 0
    assert out.read_text().startswith("side,")
    assert (tmp_path / "qr.svg").read_text().lstrip().startswith("<?xml")


def test_outputs_are_deterministic(tmp_path):
    # [TRIVIAL]
    paths = []
    for i in range(2):
        out = tmp_path / f"run{i}" / "dh.pgm"
        out.parent.mkdir()
        assert main(["dh", "--example", "hirzebruch:3,6", "--grid", "-5:3:1/2", "--output", str(out)]) == 0
        paths.append(out)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].with_suffix(".svg").read_bytes() == paths[1].with_suffix(".svg").read_bytes()


def test_dh_pgm_header(capsys):
    # [DERIVED]
    code, out, _ = run(["dh", "--example", "hirzebruch:3,6", "--grid", "-5:3:1"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[:3] == ["P2", "8 8", "255"]
    values = {int(v) for line in lines[3:] for v in line.split()}
    assert values == {0, 127, 255}


def test_moment_json(capsys):
    # [PAPER]
    code, out, _ = run(["moment", "--example", "p1:4"], capsys)
    data = json.loads(out)
    assert code == 0 and data["image"] == [[["-1/2"], ["9/2"]]]


def test_config_file(tmp_path, capsys):
    # [TRIVIAL]
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"subcommand": "qr", "example": "p1:4", "box": "0:4"}))
    code, out, _ = run(["--config", str(cfg)], capsys)
    assert code == 0 and len(out.splitlines()) == 6
    cfg.write_text("[1, 2]")
    assert run(["--config", str(cfg), "qr"], capsys)[0] == 2


def test_threads_give_same_output(tmp_path, monkeypatch, capsys):
    # [TRIVIAL]
    args = ["index", "--example", "hirzebruch:3,6", "--box", "-6:4", "--format", "csv"]
    serial = run(args, capsys)[1]
    monkeypatch.setenv("SPINCQ_THREADS", "2")
    assert run(args, capsys)[1] == serial
    monkeypatch.setenv("SPINCQ_THREADS", "many")
    assert run(args, capsys)[0] == 2


def test_negative_values_joined():
    # [TRIVIAL]
    assert _join_negative_values(["qr", "--box", "-3:3"]) == ["qr", "--box=-3:3"]


def test_module_entry_point():
    # [TRIVIAL]
    res = subprocess.run([sys.executable, "-m", "spincq", "qr", "--example", "p1:2", "--box", "-2:4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 8
