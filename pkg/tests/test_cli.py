import io as stdio
import json
import subprocess
import sys
from pathlib import Path

import pytest

from threelie import io
from threelie import cli
from threelie.cli import run
from threelie.cochain import d0
from threelie.algebra import adjoint_rep
from threelie.fixtures import H4

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def f(name):
    return str(FIX / f"{name}.3lie.json")


def invoke(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = invoke(*argv)
    return code, json.loads(out)


# (argv, expected exit code)
COMMANDS = [
    (("check", f("abelian3")), 0),
    (("check", f("a4")), 0),
    (("check", f("non_three_lie")), 1),
    (("check-rep", f("h4"), f("h4_adjoint")), 0),
    (("check-rep", f("h4"), f("h4_coadjoint")), 0),
    (("cohomology", f("h4"), f("h4_adjoint"), "--bases"), 0),
    (("cohomology", f("abelian3"), f("abelian3_trivial_v1")), 0),
    (("deform", f("abelian4"), f("a4")), 0),
    (("deform", f("abelian4"), f("non_three_lie")), 1),
    (("deform", f("h4"), f("h4_adjoint_omega")), 0),
    (("nijenhuis", f("a4"), f("identity4")), 1),
    (("nijenhuis", f("h4"), f("h4_diag1101"), "--powers", "4", "--poly", "1,-2,1/3"), 0),
    (("nijenhuis", f("h4"), f("h4_proj_e1")), 0),
    (("compat", f("h4"), f("h4_diag1101"), f("h4_proj_e1")), 0),
    (("compat", f("a4"), f("identity4"), f("identity4")), 1),
    (("extend", f("abelian3"), f("abelian3_trivial_v1"), f("abelian3_omega")), 0),
    (("extract", f("h4_over_abelian3")), 0),
    (("extract", f("abelian3_by_omega"), "--section", f("abelian3_section")), 0),
    (("equiv", f("h4"), f("h4_adjoint"), f("h4_adjoint_omega"), f("h4_adjoint_omega_shifted")), 0),
    (("equiv", f("abelian3"), f("abelian3_trivial_v1"), f("abelian3_omega"), f("abelian3_omega")), 0),
    (("classify", f("abelian3"), f("abelian3_trivial_v1")), 0),
    (("classify", f("h4"), f("h4_adjoint")), 0),
]


@pytest.mark.parametrize("argv, expected", COMMANDS, ids=[" ".join(Path(a).name.split(".")[0] for a in c[0]) for c in COMMANDS])
def test_exit_codes_match_violations(argv, expected):
    code, rep = report(*argv)
    assert code == expected
    assert (code == 0) == (rep["violations"] == [])
    assert rep["verdict"] == ("pass" if code == 0 else "fail")
    assert rep["command"] == argv[0]
    assert rep["inputs"] == [a for a in argv if a.endswith(io.FILE_SUFFIX)]


def test_identity_on_a4_cites_image_bracket():
    code, rep = report("nijenhuis", f("a4"), f("identity4"))
    assert code == 1
    assert {"check": "image_bracket", "where": [0, 1, 2]}.items() <= next(
        v for v in rep["violations"] if v["where"] == [0, 1, 2] and v["check"] == "image_bracket"
    ).items()
    assert rep["details"]["image_bracket"] is False


def test_equiv_reports_a_witness():
    code, rep = report("equiv", f("h4"), f("h4_adjoint"), f("h4_adjoint_omega"), f("h4_adjoint_omega_shifted"))
    assert code == 0 and rep["details"]["equivalent"]
    witness = io.parse(json.dumps({"kind": "cochain", "version": "1", **rep["details"]["witness"]})).payload
    w1 = io.load(f("h4_adjoint_omega")).payload
    w2 = io.load(f("h4_adjoint_omega_shifted")).payload
    assert d0(H4(), adjoint_rep(H4()), witness.to_hom()) == w1 - w2


def test_inequivalent_cocycles_fail(tmp_path):
    w = io.load(f("abelian3_omega")).payload
    io.dump(w.scale(3), tmp_path / "w3.3lie.json")
    code, rep = report("equiv", f("abelian3"), f("abelian3_trivial_v1"), f("abelian3_omega"), tmp_path / "w3.3lie.json")
    assert code == 1 and rep["violations"][0]["check"] == "cohomologous"


def test_cohomology_dimensions():
    _, rep = report("cohomology", f("h4"), f("h4_adjoint"), "--bases")
    d = rep["details"]
    assert (d["dim_Z1"], d["dim_B1"], d["dim_H1"]) == (13, 4, 9)
    assert len(d["Z1_basis"]) == 13 and len(d["B1_basis"]) == 4


def test_classify_abelian3_gives_h4():
    _, rep = report("classify", f("abelian3"), f("abelian3_trivial_v1"))
    assert rep["details"]["dim_H1"] == 1
    (only,) = rep["details"]["representatives"]
    assert only["total"] == {"dim": 4, "entries": [{"triple": [0, 1, 2], "values": {"3": "1"}}]}


def test_extend_writes_and_extract_reads(tmp_path):
    out = tmp_path / "ext.3lie.json"
    code, rep = report("extend", f("abelian3"), f("abelian3_trivial_v1"), f("abelian3_omega"), "--out", out)
    assert code == 0 and rep["details"]["written"] == str(out)
    assert out.read_text() == Path(f("h4_over_abelian3")).read_text()
    code, rep = report("extract", out)
    assert code == 0
    assert rep["details"]["cocycle"]["entries"] == [{"args": [0, 1, 2], "value": {"0": "1"}}]


def test_extract_with_section_moves_cocycle_by_coboundary():
    # on an abelian base with zero action every coboundary vanishes
    _, plain = report("extract", f("abelian3_by_omega"))
    _, moved = report("extract", f("abelian3_by_omega"), "--section", f("abelian3_section"))
    assert plain["details"]["cocycle"] == moved["details"]["cocycle"]


def test_extend_rejects_non_cocycle(tmp_path):
    io.dump(io.load(f("h4_adjoint_omega")).payload.scale(0), tmp_path / "zero.3lie.json")
    bad = json.loads(Path(f("h4_adjoint_omega")).read_text())
    bad["entries"].append({"args": [0, 1, 3], "value": {"0": "1"}})
    (tmp_path / "bad.3lie.json").write_text(json.dumps(bad))
    code, rep = report("extend", f("h4"), f("h4_adjoint"), tmp_path / "bad.3lie.json")
    assert code == 1 and rep["violations"]
    code, rep = report("extend", f("h4"), f("h4_adjoint"), tmp_path / "zero.3lie.json")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "missing.3lie.json"),
        ("check", f("h4_adjoint")),
        ("check-rep", f("a4"), f("abelian3_trivial_v1")),
        ("nijenhuis", f("abelian3"), f("identity4")),
        ("nijenhuis", f("h4"), f("h4_diag1101"), "--poly", "1,x"),
        ("deform", f("h4"), f("abelian3_omega")),
        ("extract", f("h4_over_abelian3"), "--section", f("h4_adjoint_omega")),
        ("frobnicate",),
        ("check",),
        ("check", f("a4"), "--jobs", "0"),
        ("check", f("a4"), "--max-violations", "0"),
    ],
)
def test_input_errors_exit_2(argv):
    code, out, err = invoke(*argv)
    assert code == 2
    assert err
    if out:
        rep = json.loads(out)
        assert rep["verdict"] == "error" and rep["violations"] == []


def test_parse_diagnostics_are_reported(tmp_path):
    p = tmp_path / "bad.3lie.json"
    p.write_text('{"kind": "algebra", "version": "1", "dim": 3, "entries": [{"triple": [1, 0, 2], "values": {}}]}')
    code, out, err = invoke("check", p)
    assert code == 2
    assert "$.entries[0].triple" in err
    assert any("strictly increasing" in d for d in json.loads(out)["details"]["diagnostics"])


def test_max_violations_caps_the_list():
    _, full = report("check", f("non_three_lie"))
    _, capped = report("check", f("non_three_lie"), "--max-violations", "1")
    assert len(full["violations"]) > 1
    assert capped["violations"] == full["violations"][:1]


def test_human_rendering():
    code, out, _ = invoke("nijenhuis", f("a4"), f("identity4"), "--human")
    assert code == 1
    assert out.startswith("command: nijenhuis\n") and "verdict: fail" in out and "image_bracket" in out
    code, out, _ = invoke("cohomology", f("h4"), f("h4_adjoint"), "--human")
    assert code == 0 and "dim_H1: 9" in out


def test_large_dimension_warning(monkeypatch):
    monkeypatch.setattr(cli, "LARGE_DIM", 3)
    code, out, err = invoke("cohomology", f("h4"), f("h4_adjoint"))
    assert code == 0 and "warning" in err
    code, out, err = invoke("check", f("h4"))
    assert code == 0 and err == ""


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "threelie", "check", f("abelian3")], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "pass"
