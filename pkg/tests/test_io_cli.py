"""File formats, round-trip stability, and the command line surface."""

import json

import numpy as np
import pytest

from dkq import (
    GraphFileError,
    build,
    components,
    export_graph,
    extract_component,
    girth,
    import_graph,
)
from dkq.cli import main
from dkq.verify import CheckRecord, VerificationReport


def _same_graph(a, b):
    return (
        a.k == b.k
        and a.q == b.q
        and a.n_points == b.n_points
        and np.array_equal(a.indptr, b.indptr)
        and np.array_equal(a.indices, b.indices)
    )


# -- round trips -------------------------------------------------------------


@pytest.mark.parametrize("fmt", ["edgelist", "dimacs", "json"])
def test_round_trip_byte_identical(tmp_path, fmt):
    g = build(3, 3)
    p1 = tmp_path / f"a.{fmt}"
    p2 = tmp_path / f"b.{fmt}"
    export_graph(g, p1, fmt)
    export_graph(import_graph(p1), p2, fmt)
    assert p1.read_bytes() == p2.read_bytes()
    assert _same_graph(import_graph(p1), g)


@pytest.mark.parametrize("fmt", ["edgelist", "dimacs", "json"])
def test_round_trip_of_extracted_component(tmp_path, fmt):
    g = build(6, 3)
    sub, _ = extract_component(g, components(g))
    path = tmp_path / f"cd.{fmt}"
    export_graph(sub, path, fmt)
    back = import_graph(path)
    assert _same_graph(back, sub)
    assert girth(back).girth == girth(sub).girth == 12


def test_girth_preserved_through_files(tmp_path):
    for k, q in [(2, 2), (3, 4), (6, 2)]:
        g = build(k, q)
        path = tmp_path / f"g{k}{q}.el"
        export_graph(g, path, "edgelist")
        assert girth(import_graph(path)).girth == girth(g).girth


def test_export_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        export_graph(build(2, 2), tmp_path / "x", "graph6")


# -- import validation -------------------------------------------------------


def _exported_lines(tmp_path, fmt="edgelist"):
    path = tmp_path / "g.el"
    export_graph(build(3, 3), path, fmt)
    return path, path.read_text().splitlines()


def test_import_truncated_file(tmp_path):
    path, lines = _exported_lines(tmp_path)
    path.write_text("\n".join(lines[:-10]) + "\n")
    with pytest.raises(GraphFileError, match="promises"):
        import_graph(path)


def test_import_duplicate_edge(tmp_path):
    path, lines = _exported_lines(tmp_path)
    lines[-1] = lines[-2]
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError, match="duplicate"):
        import_graph(path)


def test_import_out_of_range_id(tmp_path):
    path, lines = _exported_lines(tmp_path)
    lines[1] = "0 54"  # line ids end at 2q^k - 1 = 53
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError, match="range"):
        import_graph(path)


def test_import_irregular_degree(tmp_path):
    path, lines = _exported_lines(tmp_path)
    # retarget one edge without compensation: some line ends up with degree 2
    assert lines[1] == "0 27"
    target = next(
        ln.split()[1]
        for ln in lines[1:]
        if not ln.startswith("0 ") and ln.split()[1] != "27"
    )
    lines[1] = "0 " + target
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError):
        import_graph(path)


def test_import_malformed_header(tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("# not json\n0 27\n")
    with pytest.raises(GraphFileError, match="JSON"):
        import_graph(path)
    path.write_text("0 27\n")
    with pytest.raises(GraphFileError):
        import_graph(path)


def test_import_missing_keys(tmp_path):
    path = tmp_path / "bad.el"
    path.write_text('# {"format": "edgelist", "version": 1}\n')
    with pytest.raises(GraphFileError, match="missing"):
        import_graph(path)


def test_import_wrong_version(tmp_path):
    path, lines = _exported_lines(tmp_path)
    meta = json.loads(lines[0][2:])
    meta["version"] = 2
    lines[0] = "# " + json.dumps(meta, sort_keys=True, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError, match="version"):
        import_graph(path)


def test_import_format_mismatch(tmp_path):
    path, lines = _exported_lines(tmp_path)
    meta = json.loads(lines[0][2:])
    meta["format"] = "dimacs"
    lines[0] = "# " + json.dumps(meta, sort_keys=True, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError, match="format"):
        import_graph(path)


def test_import_dimacs_problem_line_mismatch(tmp_path):
    path = tmp_path / "g.dimacs"
    export_graph(build(3, 3), path, "dimacs")
    lines = path.read_text().splitlines()
    lines[1] = "p edge 54 99"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError, match="problem line"):
        import_graph(path)


def test_import_bad_modulus(tmp_path):
    path, lines = _exported_lines(tmp_path)
    meta = json.loads(lines[0][2:])
    meta["modulus"] = [1, 1, 1]  # wrong degree for q = 3
    lines[0] = "# " + json.dumps(meta, sort_keys=True, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(GraphFileError, match="field"):
        import_graph(path)


def test_import_unrecognized_content(tmp_path):
    path = tmp_path / "junk"
    path.write_text("hello world\n")
    with pytest.raises(GraphFileError, match="unrecognized"):
        import_graph(path)


# -- CLI ---------------------------------------------------------------------


def test_cli_field_output(capsys):
    assert main(["field", "--q", "9"]) == 0
    out = capsys.readouterr().out
    assert "q = 9 = 3^2" in out
    assert "modulus = x^2 + 1" in out
    assert "addition table:" in out and "multiplication table:" in out


def test_cli_field_large_q_skips_tables(capsys):
    assert main(["field", "--q", "17"]) == 0
    out = capsys.readouterr().out
    assert "addition table" not in out


def test_cli_field_bad_q():
    assert main(["field", "--q", "6"]) == 2


def test_cli_build_writes_file(tmp_path, capsys):
    out = tmp_path / "d33.el"
    assert main(["build", "--k", "3", "--q", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 81  # header plus one line per edge
    assert capsys.readouterr().out.count("54 vertices") == 1


def test_cli_build_budget_exit(capsys):
    assert main(["build", "--k", "9", "--q", "9"]) == 2
    assert "budget" in capsys.readouterr().err
    assert main(["build", "--k", "3", "--q", "3", "--budget", "53"]) == 2
    assert main(["build", "--k", "3", "--q", "3", "--budget", "54"]) == 0


def test_cli_components_json(capsys):
    assert main(["components", "--k", "6", "--q", "2", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["n_components"] == 8
    assert obj["bound"] == 2
    assert obj["components"][0] == {"id": 0, "order": 16, "size": 16, "invariant": [0]}


def test_cli_cd_writes_sidecar(tmp_path, capsys):
    out = tmp_path / "cd.el"
    assert main(["cd", "--k", "6", "--q", "2", "--out", str(out), "--component", "2"]) == 0
    g = import_graph(out)
    assert g.n_vertices == 16
    pairs = [tuple(map(int, ln.split())) for ln in (tmp_path / "cd.el.map").read_text().splitlines()]
    assert [p[0] for p in pairs] == list(range(16))
    lab = components(build(6, 2))
    assert {int(lab.labels[old]) for _, old in pairs} == {2}


def test_cli_girth_modes(tmp_path, capsys):
    assert main(["girth", "--k", "3", "--q", "3", "--certificate"]) == 0
    out = capsys.readouterr().out
    assert "girth = 8 (exact)" in out
    assert "certificate: " in out

    assert main(["girth", "--k", "3", "--q", "3", "--max-depth", "2"]) == 0
    assert "girth >= 5" in capsys.readouterr().out

    assert main(["girth", "--k", "6", "--q", "3", "--cd"]) == 0
    out = capsys.readouterr().out
    assert "486 vertices" in out and "girth = 12" in out


def test_cli_girth_from_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    export_graph(build(2, 3), path, "json")
    assert main(["girth", "--in", str(path)]) == 0
    assert "girth = 6 (exact)" in capsys.readouterr().out


def test_cli_girth_flag_conflicts(capsys):
    assert main(["girth", "--in", "x", "--k", "3"]) == 2
    assert main(["girth", "--k", "3"]) == 2
    assert main(["girth"]) == 2


def test_cli_girth_missing_file(tmp_path):
    assert main(["girth", "--in", str(tmp_path / "absent.el")]) == 2


def test_cli_verify_pass_and_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["verify", "--k", "3", "--q", "5", "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert "verdict: PASS" in out
    obj = json.loads(report.read_text())
    assert obj["verdict"] == "pass"
    assert obj["params"]["q"] == 5


def test_cli_verify_failure_exit(monkeypatch, capsys):
    bad = VerificationReport(
        params={"k": 3, "q": 3},
        checks=[CheckRecord("C1", "claim", True, 1, 2, False, "")],
    )
    monkeypatch.setattr("dkq.cli.verify_all", lambda *a, **kw: bad)
    assert main(["verify", "--k", "3", "--q", "3"]) == 1
    assert "verdict: FAIL" in capsys.readouterr().out


def test_cli_table(capsys):
    assert main(["table", "--k-list", "2,3", "--q-list", "2,3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split() == ["k", "q", "t", "order", "N", "q^(t-1)", "CD", "order", "girth", "gamma", "residual"]
    assert len(out) == 5


def test_cli_usage_errors():
    assert main([]) == 2
    assert main(["nope"]) == 2
    assert main(["build", "--k", "3"]) == 2  # missing --q
    assert main(["--help"]) == 0
    assert main(["build", "--help"]) == 0
