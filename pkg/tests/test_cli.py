import json
import shutil
import subprocess
import sys

import pytest

from hypsep import __version__
from hypsep.cli import (
    EXIT_INVARIANT,
    EXIT_MALFORMED,
    EXIT_OK,
    EXIT_REFUSED,
    MalformedInput,
    bench_rows,
    digest,
    fit_exponents,
    format_graph,
    main,
    parse_graph,
)
from hypsep.generators import binary_tiling_patch, cylinder, random_planar_triangulation, wheel


def write(tmp_path, plane, name="g.txt"):
    path = tmp_path / name
    path.write_text(format_graph(plane))
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- file format --------------------------------------------------------------


def test_round_trip():
    p = binary_tiling_patch(3)
    text = format_graph(p)
    assert parse_graph(text).plane == p
    assert format_graph(parse_graph(text).plane) == text


def test_comments_and_weights():
    text = "% a square\nplanar-rot v1 4 4\n1 3\n2 0 % inline\n3 1\n0 2\n#weights\n0 5\n"
    gf = parse_graph(text)
    assert gf.plane.n == 4 and gf.weights == {0: 5}


def test_empty_line_is_isolated_vertex():
    gf = parse_graph("planar-rot v1 3 1\n1\n0\n\n")
    assert gf.plane.n == 3 and gf.plane.rotation[2] == ()


@pytest.mark.parametrize(
    "text",
    [
        "",
        "planar-rot v2 2 1\n1\n0\n",
        "planar-rot v1 2 2\n1\n0\n",
        "planar-rot v1 2 1\n1\n",
        "planar-rot v1 2 1\n5\n0\n",
        "planar-rot v1 2 1\nx\n0\n",
        "planar-rot v1 2 1\n1\n\n",
        "planar-rot v1 2 1\n1\n0\n#colours\n",
        "planar-rot v1 2 1\n1\n0\n#weights\n9 1\n",
        "planar-rot v1 5 10\n1 2 3 4\n0 2 3 4\n0 1 3 4\n0 1 2 4\n0 1 2 3\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(MalformedInput):
        parse_graph(text)


def test_digest_depends_only_on_graph():
    assert digest(wheel(6)) == digest(parse_graph(format_graph(wheel(6))).plane)
    assert digest(wheel(6)) != digest(wheel(7))


# -- subcommands --------------------------------------------------------------


def test_gen_writes_a_parseable_graph(tmp_path, capsys):
    out = tmp_path / "c.txt"
    code, _, _ = run(capsys, "gen", "--family", "cylinder", "--delta", 3, "--rings", 4, "--out", out)
    assert code == EXIT_OK
    assert parse_graph(out.read_text()).plane == cylinder(3, 4)


def test_gen_missing_parameter(capsys):
    code, _, err = run(capsys, "gen", "--family", "cylinder", "--delta", 3)
    assert code == EXIT_MALFORMED and "rings" in err


def test_separator_report(tmp_path, capsys):
    g = write(tmp_path, cylinder(4, 10))
    code, out, _ = run(capsys, "separator", g, "--no-timing")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["operation"] == "separator" and rep["tool_version"] == __version__
    assert rep["verification"]["passed"]
    assert rep["outputs"]["kind"] == "cycle" and rep["outputs"]["balance"] == "1/2"
    assert "timing" not in rep


def test_reports_are_byte_stable(tmp_path, capsys):
    g = write(tmp_path, random_planar_triangulation(80, 5))
    outs = [run(capsys, "divide", g, "--r", 20, "--no-timing")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_verify_saved_reports(tmp_path, capsys):
    g = write(tmp_path, random_planar_triangulation(16, 1))
    for argv in (["separator"], ["divide", "--r", 10], ["mis", "--eps", "1/2"], ["tsp", "--eps", "0.5"],
                 ["hyperbolicity"]):
        rep = tmp_path / "r.json"
        code, _, _ = run(capsys, argv[0], g, *argv[1:], "--json", rep)
        assert code == EXIT_OK
        code, out, _ = run(capsys, "verify", g, "--report", rep, "--no-timing")
        assert code == EXIT_OK, out
        assert json.loads(out)["verification"]["passed"]


def test_verify_without_report(tmp_path, capsys):
    g = write(tmp_path, wheel(9))
    code, out, _ = run(capsys, "verify", g)
    assert code == EXIT_OK
    assert set(json.loads(out)["verification"]["checks"]) == {"hyperbolicity", "mis", "tsp"}


def test_verify_detects_tampering(tmp_path, capsys):
    g = write(tmp_path, cylinder(4, 6))
    rep_path = tmp_path / "r.json"
    run(capsys, "separator", g, "--json", rep_path)
    rep = json.loads(rep_path.read_text())
    rep["outputs"]["balance"] = "3/4"
    rep_path.write_text(json.dumps(rep))
    code, _, _ = run(capsys, "verify", g, "--report", rep_path)
    assert code == EXIT_INVARIANT


def test_verify_rejects_other_graph(tmp_path, capsys):
    g = write(tmp_path, cylinder(4, 6))
    other = write(tmp_path, cylinder(4, 7), "h.txt")
    rep_path = tmp_path / "r.json"
    run(capsys, "separator", g, "--json", rep_path)
    code, _, _ = run(capsys, "verify", other, "--report", rep_path)
    assert code == EXIT_MALFORMED


def test_budget_env(tmp_path, capsys, monkeypatch):
    g = write(tmp_path, wheel(9))
    monkeypatch.setenv("HYPSEP_BUDGET", "mis=4,tsp=4")
    _, out, _ = run(capsys, "verify", g)
    assert set(json.loads(out)["verification"]["checks"]) == {"hyperbolicity"}
    monkeypatch.setenv("HYPSEP_BUDGET", "mis=lots")
    code, _, _ = run(capsys, "verify", g)
    assert code == EXIT_MALFORMED


def test_fill_and_metrics(tmp_path, capsys):
    g = write(tmp_path, wheel(9))
    code, out, _ = run(capsys, "fill", g, "--cycle", "0,1,2,3,4,5,6,7", "--delta", 1)
    assert code == EXIT_OK and json.loads(out)["verification"]["passed"]
    code, out, _ = run(capsys, "hyperbolicity", g)
    assert json.loads(out)["outputs"]["delta"] == "1/2"
    code, out, _ = run(capsys, "slimness", g, "--sampled", "--seed", 3)
    assert json.loads(out)["outputs"]["source"] == "sampled"


def test_tsp_on_disconnected_graph(tmp_path, capsys):
    path = tmp_path / "d.txt"
    path.write_text("planar-rot v1 4 2\n1\n0\n3\n2\n")
    code, out, _ = run(capsys, "tsp", path, "--eps", "1/2")
    assert code == EXIT_OK
    assert json.loads(out)["outputs"]["reason"] == "disconnected"


# -- exit codes ---------------------------------------------------------------


def test_exit_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("nonsense\n")
    code, _, err = run(capsys, "separator", bad)
    assert code == EXIT_MALFORMED and json.loads(err)["error"] == "malformed_input"
    assert run(capsys, "separator", tmp_path / "missing.txt")[0] == EXIT_MALFORMED
    g = write(tmp_path, wheel(6))
    assert run(capsys, "mis", g, "--eps", "2")[0] == EXIT_MALFORMED
    assert run(capsys, "separator", g, "--delta", "lots")[0] == EXIT_MALFORMED
    assert run(capsys, "fill", g, "--cycle", "0,1,99")[0] == EXIT_MALFORMED


def test_usage_errors_exit_malformed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["separator"])
    assert exc.value.code == EXIT_MALFORMED
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_MALFORMED


def test_exit_refused(tmp_path, capsys):
    big = write(tmp_path, random_planar_triangulation(300, 1))
    code, _, err = run(capsys, "separator", big, "--delta", "auto")
    assert code == EXIT_REFUSED and json.loads(err)["error"] == "refused"
    assert run(capsys, "separator", big, "--delta", "sampled", "--no-timing")[0] == EXIT_OK
    g = write(tmp_path, wheel(6), "w.txt")
    assert run(capsys, "divide", g, "--r", 8)[0] == EXIT_REFUSED
    assert run(capsys, "hyperbolicity", write(tmp_path, random_planar_triangulation(401, 1), "h.txt"))[0] \
        == EXIT_REFUSED


# -- bench --------------------------------------------------------------------


def test_bench_rows_and_fit():
    rows = bench_rows("cylinder", [200, 800], [16, 64], 4)
    assert len(rows) == 4
    assert {r["n"] for r in rows} == {200, 800}
    fit = fit_exponents(rows)
    assert set(fit["vs_n"]) == {16, 64}
    assert all(0.5 < s < 1.5 for s in fit["vs_n"].values())


def test_bench_csv(tmp_path, capsys):
    csv = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--suite", "cylinder", "--sizes", "100", "--r", "16", "--csv", csv)
    assert code == EXIT_OK
    lines = csv.read_text().splitlines()
    assert lines[0].startswith("family,n,param,r,delta")
    assert len(lines) == 2


def test_console_script():
    exe = shutil.which("hypsep")
    cmd = [exe] if exe else [sys.executable, "-m", "hypsep"]
    out = subprocess.run(cmd + ["--version"], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == __version__
