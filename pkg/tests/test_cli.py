"""CLI adapters: golden outputs, library equivalence and the exit-status contract.

Set ARIMAT_REGEN_GOLDEN=1 to rewrite the stored outputs after an intended change.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from arimat import arithmetic, decompose, gpcheck, grassmann, matroid
from arimat.cli import COMMANDS, main, run
from arimat.exactmat import Matrix, plucker
from arimat.formats import dumps, parse_document, to_doc

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"


def doc(name):
    return parse_document((INPUTS / f"{name}.json").read_text())


def inp(*names):
    out = []
    for n in names:
        out += ["-i", str(INPUTS / f"{n}.json")]
    return out


def _gl(name):
    obj = doc(name)
    return arithmetic.GroupList.from_matrix(obj) if isinstance(obj, Matrix) else obj


def _arith(name):
    obj = doc(name)
    if isinstance(obj, arithmetic.LabelledGraph):
        gl = arithmetic.labelled_to_list(obj)
        return {"classification": arithmetic.classify(gl, arithmetic.labelled_lift(obj)),
                "table": arithmetic.full_table(gl)}
    gl = _gl(name)
    return {"classification": arithmetic.classify(gl), "table": arithmetic.full_table(gl)}


# name, argv, exit status, library value the output must serialize (None: checked by golden only)
CASES = [
    ("plucker_graphic", ["plucker"] + inp("graphic"), 0, lambda: plucker(doc("graphic"))),
    ("plucker_c4", ["plucker"] + inp("c4"), 0, lambda: plucker(doc("c4"))),
    ("plucker_rational", ["plucker"] + inp("rational"), 0, lambda: plucker(doc("rational"))),
    ("plucker_mod5", ["plucker", "--field", "Fp:5"] + inp("u24"), 0,
     lambda: plucker(Matrix(doc("u24").rows, 5))),
    ("gp_verify_u24", ["gp-verify"] + inp("u24"), 0, None),
    ("gp_verify_bad", ["gp-verify"] + inp("not_decomposable"), 2, None),
    ("regular_graphic", ["regular"] + inp("graphic"), 0, lambda: {"regular": True, "witness": None}),
    ("regular_u24", ["regular"] + inp("u24"), 2,
     lambda: {"regular": False, "witness": matroid.find_u24(doc("u24"))}),
    ("u24_u24", ["u24"] + inp("u24"), 0, lambda: {"witness": matroid.find_u24(doc("u24"))}),
    ("u24_c4", ["u24"] + inp("c4"), 0, lambda: {"witness": None}),
    ("decompose_graphic", ["decompose"] + inp("graphic"), 0, lambda: decompose.tad(doc("graphic"))),
    ("decompose_c4", ["decompose"] + inp("c4"), 0, lambda: decompose.tad(doc("c4"))),
    ("decompose_u24", ["decompose"] + inp("u24"), 2, None),
    ("power_graphic_2", ["power", "-k", "2"] + inp("graphic"), 0,
     lambda: decompose.power_matrix(doc("graphic"), 2)),
    ("power_graphic_3_odd", ["power", "-k", "3", "--mode", "odd-exact"] + inp("graphic"), 0,
     lambda: decompose.power_matrix(doc("graphic"), 3, "odd-exact")),
    ("power_c4_2_signs", ["power", "-k", "2", "--mode", "sign-preserving"] + inp("c4"), 0,
     lambda: decompose.power_matrix(doc("c4"), 2, "sign-preserving")),
    ("power_even_odd_exact", ["power", "-k", "2", "--mode", "odd-exact"] + inp("graphic"), 1, None),
    ("power2_graphic", ["power2", "-k", "1", "--k2", "1"] + inp("graphic", "graphic_unit"), 0,
     lambda: decompose.power_two(doc("graphic"), doc("graphic_unit"), 1, 1)),
    ("arith_k3", ["arith"] + inp("k3"), 0, lambda: _arith("k3")),
    ("arith_graphic", ["arith"] + inp("graphic"), 0, lambda: _arith("graphic")),
    ("arith_z2_torsion", ["arith"] + inp("z2_torsion"), 0, lambda: _arith("z2_torsion")),
    ("arith_dotted", ["arith"] + inp("dotted"), 0, lambda: _arith("dotted")),
    ("arith_power_graphic", ["arith-power", "-k", "2"] + inp("graphic"), 0,
     lambda: arithmetic.arith_power(_gl("graphic"), 2)),
    ("arith_power_u24", ["arith-power", "-k", "2"] + inp("u24"), 2, None),
    ("arith_power_k3", ["arith-power", "-k", "2"] + inp("k3"), 2, None),
    ("gp_check_u24_table", ["gp-check"] + inp("u24_table"), 0,
     lambda: gpcheck.gp_r_check(doc("u24_table"), 2)),
    ("gp_check_u24_squared", ["gp-check", "-k", "2"] + inp("u24_table"), 2,
     lambda: gpcheck.gp_r_check(doc("u24_table").power(2), 2)),
    ("gcd_check_m12", ["gcd-check"] + inp("m12"), 2,
     lambda: {"violations": arithmetic.gcd_consistency(doc("m12"))}),
    ("gcd_check_c4", ["gcd-check"] + inp("c4"), 0, lambda: {"violations": []}),
    ("axioms_m12", ["axioms"] + inp("m12"), 0, lambda: arithmetic.verify_axioms(doc("m12"))),
    ("axioms_a1", ["axioms"] + inp("a1_violation"), 2, lambda: arithmetic.verify_axioms(doc("a1_violation"))),
    ("labelled_triangle_2", ["labelled-graph", "-k", "2"] + inp("triangle"), 0,
     lambda: arithmetic.labelled_power(doc("triangle"), 2)),
    ("labelled_dotted_2", ["labelled-graph", "-k", "2"] + inp("dotted"), 0,
     lambda: arithmetic.labelled_power(doc("dotted"), 2)),
    ("counterexample_3_3", ["counterexample", "--field", "Fp:3", "-k", "3"], 0,
     lambda: {"counterexample": decompose.counterexample_fp(3, 3)}),
    ("counterexample_2_3", ["counterexample", "--field", "Fp:2", "-k", "3"], 0,
     lambda: {"counterexample": None}),
]


@pytest.mark.parametrize("name,argv,status,value", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, status, value):
    out = run(argv)
    assert out.status == status, out.text
    path = GOLDEN / f"{name}.out"
    if os.environ.get("ARIMAT_REGEN_GOLDEN"):
        path.write_text(out.text)
    assert out.text == path.read_text()
    if value is not None:
        assert out.text == dumps(value())


def test_rgr_ideal():
    out = run(["rgr-ideal", "-d", "2", "-n", "4"])
    assert out.status == 0
    assert out.text == (
        "m_{12}*m_{34} - m_{13}*m_{24} + m_{14}*m_{23}\n"
        "m_{12}*m_{13}*m_{14}*m_{23}*m_{24}*m_{34}\n"
    )
    assert out.text.splitlines() == grassmann.rgr_generators(2, 4).lines()


def test_power_example_minors():
    out = run(["power", "-k", "2"] + inp("graphic"))
    m = parse_document(out.text)
    assert [abs(v) for v in plucker(m).values()] == [9, 4, 9]


def test_arith_power_certificate():
    out = run(["arith-power", "-k", "2"] + inp("u24"))
    body = json.loads(out.text)
    assert body["error"] == "NotRegular"
    assert body["certificate"]["products"] == [1, 1, 4]
    assert body["certificate"]["I"] == "1,2,3,4"


def test_no_multiplicative_basis_document():
    body = json.loads(run(["arith-power", "-k", "2"] + inp("c4")).text)
    assert body["error"] == "NoMultiplicativeBasis"


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        ["bogus"],
        [],
        ["plucker", "--unknown-flag"],
        ["plucker", "--field", "Fp:4"],
        ["plucker", "-k", "two"],
        ["power", "--mode", "sideways"],
    ])
    def test_argument_errors(self, argv, capsys):
        assert run(argv).status == 1

    def test_zero_denominator(self):
        out = run(["plucker"] + inp("zero_denominator"))
        assert out.status == 1
        assert "zero denominator" in out.text

    def test_broken_json(self):
        out = run(["plucker"] + inp("broken"))
        assert out.status == 1
        assert "line" in out.text

    def test_missing_file(self, tmp_path):
        assert run(["plucker", "-i", str(tmp_path / "absent.json")]).status == 1

    def test_wrong_document_type(self):
        assert run(["decompose"] + inp("m12")).status == 1

    def test_power2_needs_two_inputs(self):
        assert run(["power2"] + inp("graphic")).status == 1

    def test_rgr_ideal_needs_shape(self):
        assert run(["rgr-ideal", "-d", "2"]).status == 1

    def test_counterexample_needs_prime(self):
        assert run(["counterexample", "-k", "3"]).status == 1

    def test_torsion_gcd_check(self):
        assert run(["gcd-check"] + inp("z2_torsion")).status == 1


def test_every_command_has_a_golden_or_dedicated_case():
    covered = {c[1][0] for c in CASES} | {"rgr-ideal"}
    assert covered == set(COMMANDS)


def test_main_writes_output_file(tmp_path):
    target = tmp_path / "out.json"
    assert main(["plucker", "-o", str(target)] + inp("graphic")) == 0
    assert target.read_text() == dumps(plucker(doc("graphic")))


def test_main_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", open(INPUTS / "graphic.json"))
    assert main(["plucker"]) == 0
    assert capsys.readouterr().out == dumps(plucker(doc("graphic")))


def test_main_reports_errors_on_stderr(capsys):
    assert main(["plucker"] + inp("zero_denominator")) == 1
    captured = capsys.readouterr()
    assert captured.out == "" and "zero denominator" in captured.err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arimat", "rgr-ideal", "-d", "2", "-n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.count("\n") == 2


def test_parse_round_trip():
    for name in ["graphic", "rational", "z2_torsion", "m12", "triangle", "not_decomposable"]:
        obj = doc(name)
        again = parse_document(json.dumps(to_doc(obj)))
        assert again == obj if not hasattr(obj, "coords") else again.coords == obj.coords
