import json
import subprocess
import sys

import numpy as np
import pytest

from cayleygap import cli
from cayleygap import serialize as ser
from cayleygap.cli import RunConfig, main, run, verify_all
from cayleygap.perms import Permutation, random_symmetric_element, reversal_element
from cayleygap.spectra import Spectrum, schreier_graph_n22
from cayleygap.young import build_orthogonal_rep, rep_matrix


def run_json(**kwargs):
    code, text = run(RunConfig(**kwargs))
    return code, json.loads(text)


def test_element_json_round_trip(tmp_path):
    w = random_symmetric_element(4, np.random.default_rng(0), terms=3)
    path = tmp_path / "w.json"
    ser.save_element(w, path)
    data = json.loads(path.read_text())
    assert data["n"] == 4 and {"perm", "weight"} <= set(data["terms"][0])
    back = ser.load_element(path)
    assert back.support == w.support
    assert all(abs(back.weight(p) - v) < 1e-11 for p, v in w.items())


@pytest.mark.parametrize("bad", [
    [], {"n": 3}, {"n": 0, "terms": []}, {"n": 3, "terms": [{"perm": [1, 1, 3], "weight": 1}]},
    {"n": 3, "terms": [{"perm": [1, 2, 3], "weight": -1}]}, {"n": 3, "terms": [{"perm": [1, 2, 3], "weight": "x"}]},
    {"n": 2, "terms": [{"perm": [1, 2, 3], "weight": 1}]}, {"n": 3, "terms": "nope"},
])
def test_element_from_json_rejects(bad):
    with pytest.raises(ValueError):
        ser.element_from_json(bad)


def test_permutation_and_partition_json():
    assert ser.permutation_to_json(Permutation((3, 1, 2))) == [3, 1, 2]
    assert ser.permutation_from_json([3, 1, 2]) == Permutation((3, 1, 2))
    assert ser.partition_to_json((3, 1)) == [3, 1]
    assert ser.partition_from_json([2, 2, 1]) == (2, 2, 1)
    with pytest.raises(ValueError):
        ser.partition_from_json([1, 2])


def test_matrix_csv_round_trip():
    m = rep_matrix(build_orthogonal_rep((3, 2)), Permutation((2, 3, 1, 5, 4)))
    text = ser.matrix_to_csv(m)
    assert text.splitlines()[0] == "dimension,5"
    assert np.allclose(ser.matrix_from_csv(text), m, atol=1e-11)


def test_spectrum_formats():
    s = Spectrum((1.0, -1e-15, 2.0), method="dense")
    assert ser.spectrum_to_json(s, 3) == {"n": 3, "method": "dense", "eigenvalues": [0.0, 1.0, 2.0]}
    assert ser.spectrum_to_csv(s).splitlines() == ["index,eigenvalue", "1,0.0", "2,1.0", "3,2.0"]


def test_schreier_edge_list():
    g = schreier_graph_n22(reversal_element(4))
    data = ser.schreier_to_json(g)
    assert data["vertices"][0] == "1,2" and len(data["vertices"]) == 6
    assert len(data["edges"]) == 6 * 4
    lines = ser.schreier_to_csv(g).splitlines()
    assert lines[0] == "source,target,generator,weight"
    assert lines[1].startswith('"1,2","1,2"')


def test_num_rounding():
    assert ser.num(1 / 3) == 0.333333333333
    assert ser.num(-0.0) == 0.0
    assert ser.num(0.9999999999999991) == 1.0


def test_gap_command():
    code, out = run_json(command="gap", n=5)
    assert code == 0 and out["gap"] == {"value": 1.0, "method": "irrep"}
    code, out = run_json(command="gap", n=2)
    assert code == 0 and out["gap"]["value"] == 2.0
    code, out = run_json(command="gap", n=5, method="dense")
    assert out["gap"] == {"value": 1.0, "method": "dense"}
    code, out = run_json(command="gap", n=10, method="defining")
    assert out["gap_upper_bound"] == {"value": 1.0, "method": "defining"}


def test_spectrum_command_schreier_n8():
    code, out = run_json(command="spectrum", n=8, schreier=True)
    assert code == 0
    assert out["method"] == "schreier" and out["integral"]
    assert out["distinct_integers"] == list(range(9))
    assert len(out["eigenvalues"]) == 28


def test_spectrum_command_methods_agree():
    _, a = run_json(command="spectrum", n=4, method="irrep")
    _, b = run_json(command="spectrum", n=4, method="dense")
    assert np.allclose(a["eigenvalues"], b["eigenvalues"], atol=1e-9)
    assert a["method"] == "irrep" and b["method"] == "dense"


def test_schreier_command():
    code, out = run_json(command="schreier", n=6)
    assert code == 0 and out["gap"]["value"] == 1.0 and out["integral"]
    code, text = run(RunConfig(command="schreier", n=4, output="csv"))
    assert text.startswith("source,target,generator,weight")


def test_bound_and_property_commands():
    code, out = run_json(command="bound", n=6)
    assert code == 0 and out["lower_bound"]["value"] == 1.0 and out["gap"]["value"] == 1.0
    assert [r["k"] for r in out["psi_hooks"]] == [2, 3, 4, 5, 6]
    code, out = run_json(command="property-a", n=5, generators="adjacent-transpositions")
    assert code == 0 and out["property_A"] and out["A2"]


def test_generator_file(tmp_path):
    path = tmp_path / "gens.json"
    ser.save_element(reversal_element(4), path)
    code, out = run_json(command="gap", generators=str(path))
    assert code == 0 and out["gap"]["value"] == 1.0 and out["n"] == 4
    code, _ = run_json(command="gap", n=5, generators=str(path))
    assert code == 1


def test_corrupt_generator_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, out = run_json(command="gap", n=3, generators=str(path))
    assert code == 1 and "error" in out
    path.write_text(json.dumps({"n": 3, "terms": [{"perm": [2, 3, 1], "weight": 1}]}))
    code, out = run_json(command="gap", generators=str(path))
    assert code == 1 and "symmetric" in out["error"]


def test_usage_errors():
    assert run(RunConfig(command="gap", n=1))[0] == 1
    assert run(RunConfig(command="gap"))[0] == 1
    assert run(RunConfig(command="nope", n=3))[0] == 1
    assert run(RunConfig(command="gap", n=3, tolerance=0))[0] == 1
    assert run(RunConfig(command="gap", n=9))[0] == 1
    assert run(RunConfig(command="gap", n=8, method="dense"))[0] == 1
    assert run(RunConfig(command="spectrum", n=2, schreier=True))[0] == 1


def test_cap_override():
    code, out = run_json(command="gap", n=9, irrep_cap=9)
    assert code == 0 and out["gap"]["value"] == 1.0


def test_output_formats():
    code, text = run(RunConfig(command="gap", n=4, output="csv"))
    assert text.splitlines() == ["n,method,gap", "4,irrep,1.0"]
    code, text = run(RunConfig(command="verify", n=4, output="table"))
    assert code == 0 and "PASS  unit-gap  n=4" in text


def test_deterministic_json():
    cfgs = [RunConfig(command=c, n=5) for c in ("gap", "bound", "property-a", "schreier")]
    cfgs.append(RunConfig(command="spectrum", n=5, method="dense"))
    cfgs.append(RunConfig(command="verify", n=4))
    for cfg in cfgs:
        assert run(cfg)[1] == run(cfg)[1]


def test_every_number_carries_method():
    _, out = run_json(command="verify", n=4)
    for report in out["reports"]:
        for key in ("gap_irrep", "gap_dense", "psi_n11", "lower_bound"):
            assert set(report[key]) == {"value", "method"}


def test_verify_all_degenerate():
    code, out = verify_all(2)
    assert code == 0
    assert [c["check"] for c in out["checks"]][0] == "base-case-s2"
    assert all(c["n"] == 2 for c in out["checks"])


def test_verify_all_reports_failures(monkeypatch):
    monkeypatch.setattr(cli, "psi_n11_via_defining", lambda w: 0.5)
    code, out = verify_all(4)
    assert code == 2
    assert out["failures"] and all(f["check"] == "defining-rep" for f in out["failures"])


def test_main_exit_codes(capsys, tmp_path):
    assert main(["gap", "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["gap"]["value"] == 1.0
    path = tmp_path / "bad.json"
    path.write_text("[]")
    assert main(["verify", "--n", "3", "--generators", str(path)]) == 0  # verify ignores generators
    assert main(["gap", "--n", "3", "--generators", str(path)]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["gap", "--bogus"])
    assert exc.value.code == 1


def test_env_caps(monkeypatch):
    monkeypatch.setenv("CAYLEYGAP_IRREP_CAP", "9")
    assert main(["gap", "--n", "9", "--output", "csv"]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cayleygap", "gap", "--n", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["gap"]["value"] == 1.0
