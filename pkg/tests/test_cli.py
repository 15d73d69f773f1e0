import json
import math

import numpy as np
import pytest

from paramp import cli
from paramp import oracle as orc
from paramp import verification as vf


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def table(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    return header, rows


def headers(text):
    return dict(ln[2:].split(" = ", 1) for ln in text.splitlines()
                if ln.startswith("# ") and " = " in ln)


def test_fig1_shape_and_headers(capsys):
    code, out, _ = run(capsys, "fig1")
    assert code == 0
    header, rows = table(out)
    assert header[0] == "alpha" and rows.shape == (200, 6)
    meta = headers(out)
    assert "zero_line" in meta
    assert out.startswith("# paramp ")
    assert meta["g1"] == "0.59999999999999998" and meta["t"] == "0.5"


def test_fig1_usual_curve_crosses_zero(capsys):
    # a one-point grid sitting on the zero crossing
    code, out, _ = run(capsys, "fig1", "--points", "2", "--alpha-max", "0.89366213546638043")
    header, rows = table(out)
    assert abs(rows[1, header.index("usual")]) < 1e-6


def test_fig1_ordering_at_three(capsys):
    code, out, _ = run(capsys, "fig1", "--points", "3", "--alpha-max", "6")
    header, rows = table(out)
    r = rows[1]
    assert r[header.index("usual")] <= r[header.index("td_sigma0_0.1")] \
        <= r[header.index("ti_sigma0_0.1")]


def test_fig2_curves(capsys):
    code, out, _ = run(capsys, "fig2", "--points", "9")
    header, rows = table(out)
    assert np.all(rows[0, 1:] > 0)
    assert rows[:, header.index("usual")].min() < 0


def test_fig2_first_moment_is_flat(capsys):
    code, out, _ = run(capsys, "fig2", "--points", "5", "--k", "1")
    _, rows = table(out)
    assert np.max(np.abs(rows[:, 1:])) < 1e-13


def test_fig3_starts_at_zero(capsys):
    code, out, _ = run(capsys, "fig3", "--points", "11")
    header, rows = table(out)
    assert code == 0 and np.all(rows[0, 1:] == 0.0) and len(header) == 8


def test_fig4_and_fig5(capsys):
    _, out, _ = run(capsys, "fig4")
    header, rows = table(out)
    assert rows.shape == (21, 3)
    assert np.all(rows[1::2, 1:] == 0.0)
    _, out, _ = run(capsys, "fig5")
    header, rows = table(out)
    assert rows.shape == (121 * 121, 3)
    origin = rows[(rows[:, 0] == 0.0) & (rows[:, 1] == 0.0)]
    assert origin[0, 2] == pytest.approx(2.0 / math.pi, rel=1e-15)


def test_fig6a_poisson_reference(capsys):
    _, out, _ = run(capsys, "fig6a")
    meta = headers(out)
    assert float(meta["poisson_mean"]) == pytest.approx(5.472528707385429, rel=1e-12)
    assert float(meta["mandel_q_g0_1_amp_2.5884"]) < 0


def test_json_output(capsys):
    _, out, _ = run(capsys, "fig4", "--json")
    doc = json.loads(out)
    assert doc["command"] == "fig4" and len(doc["columns"]["msv"]) == 21


def test_output_file(tmp_path, capsys):
    path = tmp_path / "f.csv"
    assert cli.main(["fig4", "--out", str(path)]) == 0
    assert path.read_text().startswith("# paramp")


SWEEP_FIG1 = """\
# usual amplifier curve of fig1
g0 = 1
g1 = 0.6
variance_mode = none
phase1 = 1.5707963267948966   # psi = pi/2
t = 0.5
averaging = fixed
sweep.axis.param = amp
sweep.axis.min = 0
sweep.axis.max = 8
sweep.axis.count = 200
sweep.quantity = k_norm
"""


def test_sweep_reproduces_fig1_column(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text(SWEEP_FIG1)
    _, sweep_out, _ = run(capsys, "sweep", str(cfg))
    _, fig_out, _ = run(capsys, "fig1")
    s_rows = [ln.split(",")[1] for ln in sweep_out.splitlines() if not ln.startswith("#")][1:]
    f_rows = [ln.split(",")[1] for ln in fig_out.splitlines() if not ln.startswith("#")][1:]
    assert s_rows == f_rows


def test_sweep_log_axis(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("amp = 1.4\ng0 = 1e7\nsweep.axis.param = t\nsweep.axis.min = 1e-8\n"
                   "sweep.axis.max = 1e-6\nsweep.axis.count = 3\nsweep.axis.scale = log\n")
    code, out, _ = run(capsys, "sweep", str(cfg))
    assert code == 0
    _, rows = table(out)
    assert rows[:, 0].tolist() == [1e-8, 1e-7, 1e-6]


def test_sweep_single_point(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("sweep.axis.param = amp\nsweep.axis.min = 1\nsweep.axis.max = 1\n"
                   "sweep.axis.count = 1\nsweep.quantity = mandel_q\n")
    code, out, _ = run(capsys, "sweep", str(cfg))
    _, rows = table(out)
    assert code == 0 and rows.shape == (1, 2)


def test_sweep_pnd_and_reduced_moment(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("amp = 2\nphase1 = 1.5707963267948966\ng1 = 0.4\nsigma0 = 0.1\nn_max = 10\n"
                   "sweep.axis.param = t\nsweep.axis.min = 0.25\nsweep.axis.max = 0.5\n"
                   "sweep.axis.count = 2\nsweep.quantity = pnd\n")
    code, out, _ = run(capsys, "sweep", str(cfg))
    header, rows = table(out)
    assert code == 0 and header[-1] == "p10" and np.all(rows[:, 1:] >= 0)


@pytest.mark.parametrize("text", [
    "g0 = 1\ng0 = 2\n",                              # duplicate key
    "g0 1\n",                                        # missing '='
    "speed = 3\n",                                   # unknown key
    "sweep.axis.param = amp\nsweep.axis.min = 0\n",  # missing max
    "sweep.axis.param = amp\nsweep.axis.min = 0\nsweep.axis.max = 1\nsweep.axis.scale = log\n",
    "sweep.axis.param = amp\nsweep.axis.min = 0\nsweep.axis.max = 1\nsweep.quantity = speed\n",
    "g0 = fast\nsweep.axis.param = amp\nsweep.axis.min = 0\nsweep.axis.max = 1\n",
])
def test_sweep_config_errors_exit_2(tmp_path, capsys, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _, err = run(capsys, "sweep", str(cfg))
    assert code == 2 and "error" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "fig1", "--nonsense")[0] == 2
    assert run(capsys, "fig2", "--points", "0")[0] == 2
    assert run(capsys, "sweep", "/no/such/file.cfg")[0] == 2


def test_verify_json_records(monkeypatch, capsys):
    monkeypatch.setattr(vf, "SUITE", (vf.check_threshold, vf.check_wigner))
    code, out, _ = run(capsys, "verify", "--json")
    records = json.loads(out)
    assert code == 0
    assert all(set(r) == {"name", "measured", "tolerance", "pass"} for r in records)
    assert any(r["name"] == "C8_wigner_verdict" and r["measured"] == "dephased" for r in records)


def test_verify_table(monkeypatch, capsys):
    monkeypatch.setattr(vf, "SUITE", (vf.check_threshold,))
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "PASS" in out and "1/1 checks passed" in out


def test_generator_sign_flip_is_caught(monkeypatch, capsys):
    monkeypatch.setattr(orc, "_GENERATOR_SIGN", -1)
    monkeypatch.setattr(vf, "SUITE", (vf.check_bogoliubov, vf.check_threshold))
    code, out, _ = run(capsys, "verify", "--json")
    records = {r["name"]: r for r in json.loads(out)}
    assert code != 0
    assert not records["C3_bogoliubov_mean_field"]["pass"]
    assert records["C4_threshold_root_vs_formula"]["pass"]
