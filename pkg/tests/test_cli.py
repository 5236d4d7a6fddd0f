import io
import json
from pathlib import Path

from foliatk import cli
from foliatk import foliation as fol
from foliatk import residue as res_mod
from foliatk import resonance as reso
from foliatk import distribution as dist_mod
from foliatk import forms
from foliatk.polynomials import MultiPoly

GOLDEN_DIR = Path(__file__).parent / "golden"

# name -> argv; every subcommand appears, nine invocations emit JSON
MANIFEST = [
    ("rational_component_pencil3",
     ["rational-component", "--polys", "x0;x1;x2", "--degrees", "1,1,1", "--vars", "4"]),
    ("rational_component_quadric",
     ["rational-component", "--polys", "x0^2 + x1*x2;x3^2", "--degrees", "2,2",
      "--vars", "4", "--json"]),
    ("kupka_test_degenerate",
     ["kupka-test", "--polys", "x0^2;x1^2", "--degrees", "2,2", "--vars", "4",
      "--point", "0,0,1,0", "--json"]),
    ("kupka_test_blow_up3", ["kupka-test", "--blow-up", "3", "--json"]),
    ("kupka_test_pencil_point",
     ["kupka-test", "--form", "x0*dx1 - x1*dx0", "--vars", "3", "--k", "1",
      "--point", "0,0,1"]),
    ("resonance_123", ["resonance", "--lambda", "1,2,3", "--json"]),
    ("resonance_jordan", ["resonance", "--matrix", "1,1;0,1", "--json"]),
    ("normal_form_245", ["normal-form", "--lambda", "2,4,5", "--json"]),
    ("residue_diag12", ["residue", "--lambda", "1,2", "--json"]),
    ("residue_perturbed",
     ["residue", "--field", "x0 + x1^2;x1", "--radii", "0.5",
      "--sweep", "0.8,1.0,1.2", "--json"]),
    ("kupka_degree_11_c4", ["kupka-degree", "--lambda", "1,1", "--c", "4"]),
    ("distribution_contact5",
     ["distribution-class", "--contact", "x0;x1;x2;x3", "--vars", "5",
      "--point", "0,0,0,0,1", "--json"]),
    ("fibration_23",
     ["fibration", "--degrees", "2,3", "--polys", "x0^2 + x1*x2;x3^3 - x0*x1*x2",
      "--vars", "4"]),
    ("sections_dim_322", ["sections-dim", "--n", "3", "--k", "2", "--c", "2", "--json"]),
    ("codim1_solve_6_8", ["codim1-solve", "--c", "6", "--d", "8"]),
]


def run(argv):
    out = io.StringIO()
    err = io.StringIO()
    code = cli.run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# -- registry coverage -----------------------------------------------------

def test_command_table_partitions_registry():
    registry = {
        f"{module}.{op}" for module, ops in cli.OPERATIONS.items() for op in ops
    }
    listed = [op for ops in cli.COMMAND_OPERATIONS.values() for op in ops]
    assert len(listed) == len(set(listed))  # no operation claimed twice
    assert set(listed) == registry


def test_registry_labels_denote_real_operations():
    from foliatk.forms import DiffForm

    explicit = {
        "polynomials.arithmetic": MultiPoly.__add__,
        "polynomials.evaluate": MultiPoly.evaluate,
        "polynomials.partial_derivative": MultiPoly.partial_derivative,
        "polynomials.homogeneity": MultiPoly.homogeneity,
        "polynomials.substitute": MultiPoly.substitute,
        "forms.wedge": DiffForm.wedge,
        "forms.exterior_derivative": DiffForm.exterior_derivative,
        "forms.evaluate": DiffForm.evaluate,
        "forms.interior_product": forms.interior_product,
        "forms.pullback": forms.pullback,
    }
    modules = {
        "foliation": fol, "resonance": reso, "residue": res_mod,
        "distribution": dist_mod,
    }
    for module, ops in cli.OPERATIONS.items():
        for op in ops:
            label = f"{module}.{op}"
            target = explicit.get(label) or getattr(modules[module], op)
            assert callable(target), label


def test_every_subcommand_in_manifest():
    commands = {argv[0] for _, argv in MANIFEST}
    assert commands == set(cli.COMMAND_OPERATIONS)


# -- report shape ----------------------------------------------------------

def test_json_report_shape():
    code, out, err = run(["sections-dim", "--n", "3", "--k", "2", "--c", "2", "--json"])
    assert code == 0 and err == ""
    report = json.loads(out)
    assert list(report) == ["schema", "engine", "command", "inputs", "result"]
    assert report["schema"] == 1
    assert report["engine"].startswith("foliatk ")
    assert report["command"] == "sections-dim"
    assert report["result"] == {"dimension": 6}


def test_text_report_shape():
    code, out, err = run(["sections-dim", "--n", "3", "--k", "2", "--c", "2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "schema: 1"
    assert "  dimension: 6" in lines


# -- one happy path per subcommand -----------------------------------------

def test_rational_component_result():
    code, out, _ = run(["rational-component", "--polys", "x0;x1", "--degrees", "1,1",
                        "--vars", "3", "--json"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["omega"] == "-x1*dx0 + x0*dx1"
    assert (result["n"], result["k"], result["c"]) == (2, 1, 2)


def test_kupka_test_results():
    code, out, _ = run(["kupka-test", "--form", "x0*dx1 - x1*dx0", "--vars", "3",
                        "--k", "1", "--point", "0,0,1", "--json"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["classification"] == "Kupka"
    assert result["mode"] == "exact" and result["scale_consistent"]

    code, out, _ = run(["kupka-test", "--blow-up", "2", "--json"])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["epsilon"] == 1
    assert result["strict_transform"] == "x0^3*dt1^^dt2"


def test_resonance_results():
    code, out, _ = run(["resonance", "--lambda", "1,2,3", "--json"])
    result = json.loads(out)["result"]
    assert code == 0
    assert result["non_resonant"] == [1] and result["resonant"] == [2, 3]
    assert result["G"] == "x0^6" and result["identity_verified"] is True

    code, out, _ = run(["resonance", "--lambda", "1,2,2", "--json"])
    result = json.loads(out)["result"]
    assert code == 0 and result["G"] is None and result["identity_verified"] is None

    code, out, _ = run(["resonance", "--lambda", "1,2,3", "--target", "2", "--json"])
    result = json.loads(out)["result"]
    assert result["relations"] == [[1, 1, 0], [3, 0, 0]]

    code, out, _ = run(["resonance", "--lambda", "1,2", "--target", "1",
                        "--relation", "2,0", "--json"])
    assert json.loads(out)["result"]["invariant_hypersurface"] is True

    code, out, _ = run(["resonance", "--matrix", "1,1;0,1", "--json"])
    result = json.loads(out)["result"]
    assert result["kind"] == "indecomposable"
    assert result["blocks"]["1"] == {"algebraic": 2, "geometric": 1}


def test_normal_form_result():
    code, out, _ = run(["normal-form", "--lambda", "2,4,5", "--json"])
    result = json.loads(out)["result"]
    assert code == 0
    assert result["permutation"] == [0, 2, 1]
    assert result["G"] == "x0^3*x1"
    assert result["identity_verified"] is True

    code, out, _ = run(["normal-form", "--lambda", "2,3,12", "--choice", "1:3,2", "--json"])
    result = json.loads(out)["result"]
    assert result["choices"] == {"1": [3, 2]} and result["identity_verified"] is True


def test_residue_result():
    code, out, _ = run(["residue", "--lambda", "1,2", "--c", "3", "--json"])
    result = json.loads(out)["result"]
    assert code == 0
    assert abs(result["numeric"]["re"] - 4.5) < 1e-9
    assert result["closed_form"] == "9/2"
    assert result["kupka_degree"] == "2"
    assert result["integrality"]["realizable"] is True


def test_kupka_degree_result():
    code, out, _ = run(["kupka-degree", "--lambda", "1,2", "--c", "3", "--json"])
    result = json.loads(out)["result"]
    assert code == 0
    assert result["kupka_degree"] == "2"
    assert result["product_with_residue"] == result["c_power_m"] == "9"


def test_distribution_class_result():
    code, out, _ = run(["distribution-class", "--contact", "x0;x1;x2;x3",
                        "--vars", "5", "--point", "0,0,0,0,1", "--json"])
    result = json.loads(out)["result"]
    assert code == 0
    assert result["class"] == 2 and result["frobenius_integrable"] is False
    assert result["darboux"]["d_omega_ok"] and result["darboux"]["radial_ok"]
    assert result["point_classification"]["classification"] == "Kupka"

    code, out, _ = run(["distribution-class", "--form", "x0*dx1 - x1*dx0",
                        "--vars", "3", "--json"])
    result = json.loads(out)["result"]
    assert result["class"] == 1 and result["frobenius_integrable"] is True


def test_fibration_result():
    code, out, _ = run(["fibration", "--degrees", "2,3", "--polys",
                        "x0^2 + x1*x2;x3^3 - x0*x1*x2", "--vars", "4", "--json"])
    result = json.loads(out)["result"]
    assert code == 0
    assert result["exponents"] == [3, 2] and result["common_degree"] == 6
    assert result["first_integrals_verified"] is True


def test_codim1_solve_result():
    code, out, _ = run(["codim1-solve", "--c", "6", "--d", "8", "--json"])
    result = json.loads(out)["result"]
    assert result == {"pairs": [[2, 4]], "count": 1}
    code, out, _ = run(["codim1-solve", "--c", "6", "--json"])
    result = json.loads(out)["result"]
    assert result == {"products": [5, 8, 9], "count": 3}


# -- exit codes ------------------------------------------------------------

def test_validation_failures_exit_2():
    cases = [
        ["rational-component", "--polys", "x0 +;x1", "--degrees", "1,1", "--vars", "3"],
        ["rational-component", "--polys", "x0;x9", "--degrees", "1,1", "--vars", "3"],
        ["kupka-test", "--form", "x0*dx1 - x1*dx0", "--vars", "3", "--k", "1"],
        ["kupka-test", "--form", "x0*dx1 - x1*dx0", "--vars", "3", "--k", "1",
         "--point", "0,0,bad"],
        ["resonance"],
        ["normal-form", "--lambda", "1,2,2"],
        ["residue"],
        ["kupka-degree", "--lambda", "1,2"],
        ["distribution-class", "--vars", "3"],
        ["sections-dim", "--n", "3", "--k", "3", "--c", "2"],
    ]
    for argv in cases:
        code, out, err = run(argv)
        assert code == 2, argv
        assert out == "" and err.startswith("error: "), argv


def test_numeric_faults_exit_1():
    # exact grid zero in the denominator
    code, _, err = run(["residue", "--field", "x0 + x1^2;x1", "--radii", "1.0"])
    assert code == 1 and err.startswith("error: ")
    # sweep disagreement flags the configuration
    code, _, err = run(["residue", "--field", "x0 + x1^2;x1", "--radii", "0.5",
                        "--sweep", "1.0,2.5"])
    assert code == 1 and err.startswith("error: ")


def test_argparse_failures_return_2():
    code, _, _ = run([])
    assert code == 2
    code, _, _ = run(["no-such-command"])
    assert code == 2


def test_out_writes_file(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(["sections-dim", "--n", "3", "--k", "2", "--c", "2",
                        "--json", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"] == {"dimension": 6}


# -- golden suite ----------------------------------------------------------

def test_golden_suite_byte_stable():
    for name, argv in MANIFEST:
        expected = (GOLDEN_DIR / f"{name}.txt").read_text(encoding="utf-8")
        code1, out1, err1 = run(argv)
        code2, out2, err2 = run(argv)
        assert code1 == code2 == 0, name
        assert err1 == err2 == "", name
        assert out1 == out2, name
        assert out1 == expected, name
