import json
import subprocess
import sys

import pytest

from lorentz_aut import cli, io
from lorentz_aut.halphen import HalphenModel, classieux_matrix, e

SCHEMA = "lorentz-aut/1"
DIAG3 = {"gram": [[1, 0, 0], [0, -1, 0], [0, 0, -1]]}


def run(capsys, tmp_path, argv, doc=None, raw=None):
    if doc is not None or raw is not None:
        path = tmp_path / "in.json"
        path.write_text(raw if raw is not None else json.dumps(doc))
        argv = argv + [str(path)]
    code = cli.main(argv)
    return code, capsys.readouterr().out


def as_json(out):
    return json.loads(out)


def test_classify_identity(capsys, tmp_path):
    doc = {"schema": SCHEMA, "lattice": DIAG3, "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    code, out = run(capsys, tmp_path, ["classify"], doc)
    assert code == 0
    res = as_json(out)
    assert res["tag"] == "Elliptic" and res["order"] == 1


def test_domain_error_exit_one(capsys, tmp_path):
    doc = {"schema": SCHEMA, "lattice": DIAG3, "matrix": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]}
    code, out = run(capsys, tmp_path, ["classify"], doc)
    assert code == 1
    assert as_json(out)["error"] == "not_isometry"
    doc["matrix"] = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]
    code, out = run(capsys, tmp_path, ["classify"], doc)
    assert code == 1 and as_json(out)["error"] == "cone_violation"


@pytest.mark.parametrize("raw", [
    "{not json",
    json.dumps({"lattice": DIAG3, "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}),  # no schema
    json.dumps({"schema": "other/9", "lattice": DIAG3, "matrix": [[1]]}),
    json.dumps({"schema": SCHEMA, "lattice": DIAG3, "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "x": 1}),
    json.dumps({"schema": SCHEMA, "lattice": DIAG3, "matrix": [[1.5, 0, 0], [0, 1, 0], [0, 0, 1]]}),
])
def test_malformed_input_exit_two(capsys, tmp_path, raw):
    code, out = run(capsys, tmp_path, ["classify"], raw=raw)
    assert code == 2
    assert "error" in as_json(out)


def test_missing_file_exit_two(capsys, tmp_path):
    assert cli.main(["classify", str(tmp_path / "nope.json")]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_halphen_rank_fixture(capsys):
    assert cli.main(["halphen-rank", "--fixture", "unnodal"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert (res["rkN"], res["rkG"]) == (1, 8)


def test_halphen_rank_rejects_sigma_nine(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["halphen-rank"], raw=io.fixture_text("invalid_sigma9"))
    assert code == 1 and as_json(out)["error"] == "invalid_config"


def test_generator_roundtrip_and_growth(capsys, tmp_path):
    assert cli.main(["halphen-gen", "--fixture", "unnodal"]) == 0
    gen_text = capsys.readouterr().out
    gen = json.loads(gen_text)
    assert gen["rank_g"] == 8 and len(gen["generators"]) == 8
    code, out = run(capsys, tmp_path, ["classify"], raw=gen_text)
    assert code == 0
    assert {r["tag"] for r in as_json(out)["results"]} == {"Parabolic"}
    # lambda_{e1-e2} as a single isometry document
    m = classieux_matrix(HalphenModel(1), e(1) - e(2)).matrix
    doc = {"schema": SCHEMA, "lattice": {"gram": io.str_matrix(m.lattice.gram)},
           "matrix": io.str_matrix(m.matrix)}
    code, out = run(capsys, tmp_path, ["growth", "--n-max", "64"], doc)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,norm"
    assert lines[-1].startswith("# fitted_class=quadratic")
    ns = [int(line.split(",")[0]) for line in lines[1:-1]]
    assert ns[-1] == 64
    code, out = run(capsys, tmp_path, ["growth", "--n-max", "64", "--index", "3"], raw=gen_text)
    assert code == 0 and "fitted_class=quadratic" in out


def test_growth_json_and_bad_nmax(capsys, tmp_path):
    doc = {"schema": SCHEMA, "lattice": DIAG3, "matrix": [[1, 0, 0], [0, 0, 1], [0, 1, 0]]}
    code, out = run(capsys, tmp_path, ["growth", "--format", "json", "--n-max", "16"], doc)
    assert code == 0 and as_json(out)["fitted_class"] == "bounded"
    code, _ = run(capsys, tmp_path, ["growth", "--n-max", "2"], doc)
    assert code == 2


def test_translate_and_hyperbolic_pair(capsys, tmp_path):
    frame = {"theta": [1, 1, 0], "eta": [1, -1, 0]}
    code, out = run(capsys, tmp_path, ["translate"],
                    {"schema": SCHEMA, "lattice": DIAG3, "frame": frame, "zeta": [0, 0, 2]})
    assert code == 0
    t = as_json(out)
    assert t["a"] == "1" and t["integral"] is False and t["integral_power"] == 2
    assert t["matrix"] == [["3/2", "-1/2", "1"], ["1/2", "1/2", "1"], ["1", "-1", "1"]]
    # a non-integral translation cannot be classified as a lattice isometry
    code, out = run(capsys, tmp_path, ["classify"], raw=json.dumps(t))
    assert code == 2
    swapped = {"theta": [1, -1, 0], "eta": [1, 1, 0]}
    code, out = run(capsys, tmp_path, ["wazomba"], {
        "schema": SCHEMA, "lattice": DIAG3,
        "u": {"frame": frame, "zeta": [0, 0, 2]}, "v": {"frame": swapped, "zeta": [0, 0, 2]}})
    assert code == 0
    w = as_json(out)
    assert w["tag"] == "Hyperbolic" and w["word"] in ("uv", "u^-1v")
    assert w["spectral_radius_approx"] > 1


def test_group_command(capsys, tmp_path):
    doc = {"schema": SCHEMA, "lattice": DIAG3, "generators": [[[1, 0, 0], [0, 0, 1], [0, 1, 0]]],
           "word_bound": 3}
    code, out = run(capsys, tmp_path, ["group"], doc)
    assert code == 0
    rep = as_json(out)
    assert rep["verdict"] == "finite_up_to_L" and rep["finite_part_order_lower_bound"] == 2
    doc["word_bound"] = 0
    code, _ = run(capsys, tmp_path, ["group"], doc)
    assert code == 2


def test_group_accepts_generator_objects(capsys, tmp_path):
    assert cli.main(["halphen-gen", "--fixture", "unnodal"]) == 0
    gen = json.loads(capsys.readouterr().out)
    doc = {"schema": SCHEMA, "lattice": gen["lattice"], "generators": gen["generators"][:2], "word_bound": 2}
    code, out = run(capsys, tmp_path, ["group"], doc)
    assert code == 0
    rep = as_json(out)
    assert rep["verdict"] == "moderate_up_to_L" and rep["translation_rank"] == 2


def test_component_correction_command(capsys, tmp_path):
    assert cli.main(["halphen-crucial", "--fixture", "line_conic", "--divisor", "0,1,-1,0,0,0,0,0,0,0"]) == 0
    assert json.loads(capsys.readouterr().out)["N"] == 1
    # D = e1 - e4 pairs to (1, -1) with line and conic; -2 s1 + 2 s2 = N forces N = 2
    code, out = run(capsys, tmp_path, ["halphen-crucial"],
                    {"schema": SCHEMA, "config": "line_conic", "divisor": [0, 1, 0, 0, -1, 0, 0, 0, 0, 0]})
    assert code == 0
    res = as_json(out)
    assert res["N"] == 2 and res["coefficients"] in (["-1", "0"], ["0", "1"], ["1", "2"], ["-2", "-1"])
    code, out = run(capsys, tmp_path, ["halphen-crucial"],
                    {"schema": SCHEMA, "config": "line_conic", "divisor": [1] + [0] * 9})
    assert code == 1
    assert cli.main(["halphen-crucial", "--fixture", "line_conic", "--divisor", "a,b"]) == 2


def test_validate_config(capsys, tmp_path):
    assert cli.main(["validate-config", "--fixture", "a2_a3"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["valid"] and res["sigma"] == 5
    code, out = run(capsys, tmp_path, ["validate-config"], raw=io.fixture_text("invalid_sigma9"))
    assert code == 1


@pytest.mark.parametrize("argv", [["halphen-gen", "--fixture", "a1_a2"], ["halphen-rank", "--fixture", "e8"]])
def test_output_is_byte_identical(argv):
    outs = [subprocess.run([sys.executable, "-m", "lorentz_aut.cli"] + argv, capture_output=True, check=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]


def test_console_script_stdin():
    doc = json.dumps({"schema": SCHEMA, "lattice": DIAG3, "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    p = subprocess.run([sys.executable, "-m", "lorentz_aut.cli", "classify"], input=doc.encode(),
                       capture_output=True, check=True)
    assert json.loads(p.stdout)["tag"] == "Elliptic"
