import io
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from slaglab import cli
from slaglab.obstruction import disk_instance


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run("--json", *argv)
    assert code != 2, err
    report = json.loads(out)
    jsonschema.validate(report, cli.load_schema("report"))
    assert report["exit_code"] == code
    return code, report


@pytest.fixture
def instance_file(tmp_path):
    def write(doc, name="inst.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


# -- cone


def test_cone_verify_su_so():
    code, report = run_json("cone", "verify", "su-so(3)", "--samples", "200", "--seed", "7")
    assert code == 0
    assert report["result"]["verdict"] == "SpecialLagrangian"
    assert report["seed"] == 7
    assert any("smoothing" in note for note in report["result"]["notes"])


def test_cone_verify_sw_lagrangian_only():
    code, report = run_json("cone", "verify", "sw(1,2)")
    assert code == 0
    assert report["result"]["verdict"] == "LagrangianOnly"


@pytest.mark.parametrize("cone", ["sw(0,2)", "sw(2,4)", "su(1)", "nonsense"])
def test_cone_verify_bad_id(cone):
    code, _, err = run("cone", "verify", cone)
    assert code == 2
    assert "error" in err


def test_cone_verify_mismatch_exit_1():
    # a tolerance below round-off cannot confirm the catalog flag
    code, report = run_json("cone", "verify", "su(3)", "--samples", "20", "--tol", "1e-20")
    assert code == 1
    assert not report["result"]["matches_catalog"]


@pytest.mark.parametrize("p,q,expected", [(1, 2, -1), (1, 1, 0), (3, 5, -2)])
def test_cone_maslov(p, q, expected):
    code, report = run_json("cone", "maslov", str(p), str(q))
    assert code == 0
    assert report["result"]["maslov_index"] == expected


def test_cone_maslov_not_coprime():
    assert run("cone", "maslov", "2", "4")[0] == 2


def test_cone_smoothing():
    code, report = run_json("cone", "smoothing", "clifford(2)", "--samples", "20")
    assert code == 0
    assert report["result"]["expected_slope"] == -1
    assert run("cone", "smoothing", "clifford(3)", "--t", "-1")[0] == 2


# -- cobordism and charclass


def test_cobordism_wu():
    code, report = run_json("cobordism", "Wu")
    assert code == 0
    assert report["result"]["cobordism"] == {"verdict": "DoesNotBound", "witness": "w2w3", "value": 1}


def test_cobordism_cp2_pair_bounds():
    code, report = run_json("cobordism", "CP(2) + -CP(2)")
    assert code == 0
    assert report["result"]["cobordism"]["verdict"] == "Bounds"


def test_cobordism_cp2():
    _, report = run_json("cobordism", "CP(2)")
    assert report["result"]["cobordism"] == {"verdict": "DoesNotBound", "witness": "p1", "value": 3}
    assert report["result"]["pontrjagin_numbers"] == {"p1": 3}


def test_cobordism_undecided_exit_4():
    code, report = run_json("cobordism", "Wu * SigmaD(3)")
    assert code == 4
    assert report["result"]["cobordism"]["verdict"] == "Undecided"


def test_cobordism_parse_error_caret():
    code, _, err = run("cobordism", "S(3) * RP(2")
    assert code == 2
    lines = err.splitlines()
    assert lines[-2] == "S(3) * RP(2"
    assert lines[-1] == " " * 11 + "^"


def test_charclass_report():
    code, report = run_json("charclass", "RP(3)")
    assert code == 0
    assert report["result"]["immersion"]["verdict"] in ("NecessaryConditionsPass", "ImmersionExists")
    assert report["result"]["euler"]["chi"] == 0


# -- pbp


def test_pbp_disk_n2_unsolvable(instance_file):
    code, report = run_json("pbp", "decide", instance_file(disk_instance(2, maslov=1).to_json()))
    assert code == 3
    assert report["result"]["failed_condition"] == "maslov"


def test_pbp_n3_solvable(instance_file):
    doc = {
        "version": 1,
        "n": 3,
        "sigma_connected": True,
        "h1_L": {"rank": 1},
        "h1_Sigma": {"rank": 2, "torsion": []},
        "i1": {"matrix": [[1], [0]]},
        "maslov_class": [1, 0],
        "h1_rel": {"rank": 1},
    }
    code, report = run_json("pbp", "decide", instance_file(doc), "--count")
    assert code == 0
    assert report["result"]["extensions"] == "Z^2"


def test_pbp_n7_undecided(instance_file):
    code, report = run_json("pbp", "decide", instance_file(disk_instance(7).to_json()))
    assert code == 4
    assert report["result"]["reason"] == "higher obstructions"


def test_pbp_schema_violation_names_field(instance_file):
    doc = disk_instance(3).to_json()
    doc["h1_L"] = {"rank": -1}
    code, _, err = run("pbp", "decide", instance_file(doc))
    assert code == 2
    assert "/h1_L/rank" in err


def test_pbp_missing_version(instance_file):
    doc = disk_instance(3).to_json()
    del doc["version"]
    code, _, err = run("pbp", "decide", instance_file(doc))
    assert code == 2
    assert "version" in err


def test_pbp_bad_element_shape(instance_file):
    doc = disk_instance(2).to_json()
    doc["maslov_class"] = [1, 2]
    assert run("pbp", "decide", instance_file(doc))[0] == 2


def test_pbp_not_json_and_missing_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("pbp", "decide", str(bad))[0] == 2
    assert run("pbp", "decide", str(tmp_path / "absent.json"))[0] == 2


def test_pbp_validate(instance_file):
    doc = {
        "version": 1,
        "n": 3,
        "sigma_connected": True,
        "h1_L": {"rank": 1},
        "h1_Sigma": {"rank": 4},
        "i1": {"matrix": [[1], [0], [0], [0]]},
        "maslov_class": [0, 0, 0, 0],
        "b1_Sigma": 4,
    }
    code, report = run_json("pbp", "validate", instance_file(doc))
    assert code == 1
    assert not report["result"]["consistent"]
    assert run_json("pbp", "validate", instance_file(disk_instance(3).to_json(), "ok.json"))[0] == 0


# -- geom


def test_geom_integral_circle():
    code, report = run_json("geom", "integral", "--circle")
    assert code == 0
    assert abs(report["result"]["value"] - 3.141592653589793) < 1e-6
    assert report["result"]["verdict"] == "NotExact"


def test_geom_integral_sw_exact():
    _, report = run_json("geom", "integral", "--sw", "1,2")
    assert report["result"]["verdict"] == "Exact"


def test_geom_maslov_sw():
    code, report = run_json("geom", "maslov", "--sw", "2,3")
    assert code == 0
    assert report["result"]["maslov_index"] == -1


def test_geom_maslov_circle_has_no_frames():
    assert run("geom", "maslov", "--circle")[0] == 2


def test_geom_moments_clifford():
    code, report = run_json("geom", "moments", "--clifford", "3")
    assert code == 0
    assert report["result"]["basis_size"] == 15
    assert max(abs(r) for r in report["result"]["residuals"]) < 1e-6


def test_geom_loop_file(instance_file):
    t = np.linspace(0, 2 * np.pi, 257)
    points = [[[float(np.cos(s)), float(np.sin(s))], [0.0, 0.0]] for s in t]
    points[-1] = points[0]
    code, report = run_json("geom", "integral", "--file", instance_file({"points": points}, "loop.json"))
    assert code == 0
    assert abs(report["result"]["value"] - np.pi) < 1e-6
    assert run("geom", "integral", "--file", instance_file({"points": [[1, 2]]}, "bad.json"))[0] == 2


# -- global behaviour


def test_argparse_errors_exit_2():
    assert run()[0] == 2
    assert run("cone")[0] == 2
    assert run("cone", "maslov", "x", "2")[0] == 2
    assert run("geom", "integral")[0] == 2


def test_global_flags_either_side():
    a = run("--json", "--seed", "3", "cone", "verify", "clifford(3)", "--samples", "20")
    b = run("cone", "verify", "clifford(3)", "--samples", "20", "--json", "--seed", "3")
    assert a == b


def test_json_deterministic():
    argv = ("--json", "cone", "verify", "su-sp(2)", "--samples", "30", "--seed", "11")
    assert run(*argv)[1] == run(*argv)[1]


def test_seed_env_fallback(monkeypatch):
    monkeypatch.setenv("SLAGLAB_SEED", "42")
    _, report = run_json("cone", "verify", "clifford(3)", "--samples", "10")
    assert report["seed"] == 42
    _, report = run_json("cone", "verify", "clifford(3)", "--samples", "10", "--seed", "5")
    assert report["seed"] == 5
    monkeypatch.setenv("SLAGLAB_SEED", "abc")
    assert run("cone", "verify", "clifford(3)")[0] == 2


def test_different_seeds_differ():
    a = run("--json", "cone", "verify", "sw(1,2)", "--samples", "20", "--seed", "1")[1]
    b = run("--json", "cone", "verify", "sw(1,2)", "--samples", "20", "--seed", "2")[1]
    assert a != b


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "slaglab.cli", "--json", "cone", "maslov", "1", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["maslov_index"] == -1
