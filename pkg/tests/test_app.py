"""Unit tests for the vergen command line.

This module runs main() end to end with JSON on standard input and checks
the JSON body and the exit code of each subcommand.
"""

import io
import json
from fractions import Fraction

import pytest

from src.vergen.app import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, create_response, main
from src.vergen.config import config

SQUARE = {"dim": 2, "vertices": [["-1", "-1"], ["-1", "1"], ["1", "-1"], ["1", "1"]]}
TRIANGLE = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]]}
UNIT_SQUARE = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}


def run(monkeypatch, capsys, argv, document=None):
    """Run main with the document on stdin; return the exit code and parsed body."""
    text = json.dumps(document) if isinstance(document, dict) else (document or "")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def write(tmp_path, name, document):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_create_response():
    # Act
    response = create_response(EXIT_FAIL, {"verdict": False})

    # Assert
    assert response["exitCode"] == EXIT_FAIL
    assert json.loads(response["body"]) == {"verdict": False}
    assert "body" not in create_response(EXIT_PASS)


def test_gen(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["gen", "--shape", "cube", "--dim", "2"])

    # Assert
    assert code == EXIT_PASS
    assert body == SQUARE


def test_check_vg_pass(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["check-vg", "--lambda", "1/2"], SQUARE)
    assert code == EXIT_PASS
    assert body == {"verdict": True}


def test_check_vg_fail(monkeypatch, capsys):
    """Test that the triangle fails at 1/2 with its centroid as witness."""
    # Act
    code, body = run(monkeypatch, capsys, ["check-vg", "--lambda", "1/2"], TRIANGLE)

    # Assert
    assert code == EXIT_FAIL
    assert body["verdict"] is False
    assert body["witness"] == ["1/3", "1/3"]


@pytest.mark.parametrize("lam", ["0", "3/4", "abc"])
def test_invalid_lambda(monkeypatch, capsys, lam):
    # Act
    code, body = run(monkeypatch, capsys, ["check-vg", "--lambda", lam], SQUARE)

    # Assert
    assert code == EXIT_ERROR
    assert "error" in body


def test_invalid_json(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["check-vg", "--lambda", "1/2"], "{not json")
    assert code == EXIT_ERROR
    assert "error" in body


def test_invalid_document(monkeypatch, capsys):
    document = {"dim": 3, "vertices": [["0", "0"]]}
    code, _ = run(monkeypatch, capsys, ["faces"], document)
    assert code == EXIT_ERROR


def test_usage_errors(monkeypatch, capsys):
    assert run(monkeypatch, capsys, [])[0] == EXIT_ERROR
    assert run(monkeypatch, capsys, ["check-vg"])[0] == EXIT_ERROR
    assert run(monkeypatch, capsys, ["no-such-command"])[0] == EXIT_ERROR


def test_lambda_bracket(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["lambda"], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["bracket"]["lo"] == "1/2"
    assert body["bracket"]["hi"] == "1/2"


def test_defect_with_svg(monkeypatch, capsys, tmp_path):
    # Arrange
    svg = tmp_path / "defect.svg"

    # Act
    code, body = run(monkeypatch, capsys, ["defect", "--lambda", "1/2", "--svg", str(svg)], TRIANGLE)

    # Assert
    assert code == EXIT_PASS
    assert body["empty"] is False
    assert body["volume"] == "1/8"
    assert body["region"]["volume"] == "1/8"
    assert "<svg" in svg.read_text(encoding="utf-8")


def test_defect_of_vg_polytope_is_empty(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["defect", "--lambda", "1/2"], SQUARE)
    assert code == EXIT_PASS
    assert body["empty"] is True
    assert body["volume"] == "0"


def test_sum(monkeypatch, capsys, tmp_path):
    # Arrange
    other = write(tmp_path, "other.json", UNIT_SQUARE)

    # Act
    code, body = run(monkeypatch, capsys, ["sum", "--with", other], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["vertices"] == [["-1", "-1"], ["-1", "2"], ["2", "-1"], ["2", "2"]]


def test_add_segment(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["add-segment", "--segment", "0,0;1,1"], SQUARE)
    assert code == EXIT_PASS
    assert len(body["vertices"]) == 6


def test_zonotope(monkeypatch, capsys):
    # Arrange
    document = {"dim": 2, "center": ["0", "0"], "generators": [["1", "0"], ["0", "1"]]}

    # Act
    code, body = run(monkeypatch, capsys, ["zonotope"], document)

    # Assert
    assert code == EXIT_PASS
    assert body == SQUARE


def test_distances(monkeypatch, capsys, tmp_path):
    """Test dF and dH between [0,1]^2 and [0,2]^2."""
    # Arrange
    other = write(tmp_path, "big.json", {"dim": 2, "vertices": [["0", "0"], ["2", "0"], ["0", "2"], ["2", "2"]]})

    # Act
    dh = run(monkeypatch, capsys, ["dH", "--with", other], UNIT_SQUARE)
    df = run(monkeypatch, capsys, ["dF", "--with", other], UNIT_SQUARE)

    # Assert
    assert dh == (EXIT_PASS, {"squared_distance": "2"})
    assert df == (EXIT_PASS, {"squared_distance": "2"})


def test_pvap(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["pvap", "--matrix=-1,0;0,-1"], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["details"]["convex"] is True
    assert body["details"]["order"] == 2


def test_pvap_rejects_non_square_matrix(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["pvap", "--matrix", "1,0,0;0,1"], SQUARE)
    assert code == EXIT_ERROR
    assert "square" in body["error"]


def test_faces(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["faces"], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["dim"] == 2
    assert body["f_vector"] == [4, 4, 1]
    assert len(body["vertex_cones"]) == 4


def test_props_writes_to_out(monkeypatch, capsys, tmp_path):
    # Arrange
    out = tmp_path / "report.json"

    # Act
    code, body = run(
        monkeypatch, capsys, ["props", "--suite", "caratheodory", "--cases", "2", "--seed", "4", "--out", str(out)]
    )

    # Assert
    assert code == EXIT_PASS
    assert body is None
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["verdict"] is True
    assert report["details"]["caratheodory"]["passed"] == 2


def test_skeleton(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["skeleton", "--k", "1", "--mu", "1/2"], SQUARE)
    assert code == EXIT_PASS
    assert body["details"] == {"k": 1}


def test_critical_dim(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["critical-dim"], TRIANGLE)
    assert code == EXIT_PASS
    assert body["details"] == {"critical_dimension": 1}


def test_net(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["net", "--lambda", "1/2", "--k", "1"], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["scale"] == "1/2"
    assert len(body["centers"]) == 4
    assert body["volume_bound"] == "4"


def test_fractal(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["fractal", "--lambda", "1/2", "--depth", "1"], TRIANGLE)
    assert code == EXIT_PASS
    assert body["lambda"] == "1/2"
    assert len(body["points"]) == 9


def test_lift(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["lift"], TRIANGLE)
    assert code == EXIT_PASS
    assert body["dim"] == 3
    assert len(body["vertices"]) == 6


def test_augment_of_vg_polytope(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["augment", "--zonotope-only"], SQUARE)
    assert code == EXIT_PASS
    assert body["generators"] == []


def test_local_radius(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["local-radius", "--point", "1/2,0"], UNIT_SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["details"] == {"radius_sq": "1/16"}


def test_local_radius_interior_point(monkeypatch, capsys):
    code, body = run(monkeypatch, capsys, ["local-radius", "--point", "1/2,1/2"], UNIT_SQUARE)
    assert code == EXIT_ERROR
    assert "boundary" in body["error"]


def test_budget_error(monkeypatch, capsys):
    # Arrange
    monkeypatch.setenv("VERGEN_POINT_BUDGET", "5")
    config.reset()

    # Act
    code, body = run(monkeypatch, capsys, ["fractal", "--lambda", "1/2", "--depth", "2"], TRIANGLE)

    # Assert
    assert code == EXIT_ERROR
    assert body["budget"] == "point"
    assert body["limit"] == 5


def test_point_budget_flag(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["fractal", "--lambda", "1/2", "--depth", "2", "--point-budget", "5"], TRIANGLE)

    # Assert
    assert code == EXIT_ERROR
    assert body["budget"] == "point"
    assert body["limit"] == 5


def test_retry_budget_flag_reaches_handler(monkeypatch, capsys):
    # Arrange
    seen = {}

    def fake_densify(P, eps, retry_budget, parallelism):
        seen["retry_budget"] = retry_budget
        return P

    monkeypatch.setattr("src.vergen.app.densify2d", fake_densify)

    # Act
    code, _ = run(monkeypatch, capsys, ["densify", "--eps", "1/10", "--retry-budget", "3"], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert seen == {"retry_budget": 3}


def test_tol_flag_sets_bracket_width(monkeypatch, capsys):
    # Act
    code, body = run(monkeypatch, capsys, ["lambda", "--tol", "1/4"], TRIANGLE)

    # Assert
    assert code == EXIT_PASS
    lo, hi = Fraction(body["bracket"]["lo"]), Fraction(body["bracket"]["hi"])
    assert lo <= Fraction(1, 3) <= hi
    assert hi - lo <= Fraction(1, 4)


@pytest.mark.parametrize("flags", [["--tol", "0"], ["--point-budget", "0"], ["--retry-budget", "0"]])
def test_invalid_run_flags(monkeypatch, capsys, flags):
    # Act
    code, body = run(monkeypatch, capsys, ["lambda", *flags], SQUARE)

    # Assert
    assert code == EXIT_ERROR
    assert "error" in body


def test_generic_pair(monkeypatch, capsys, tmp_path):
    """Test that the square and the diamond form a generic pair."""
    # Arrange
    document = {"dim": 2, "vertices": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"]]}
    diamond = write(tmp_path, "diamond.json", document)

    # Act
    code, body = run(monkeypatch, capsys, ["generic-pair", "--with", diamond], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["verdict"] is True


def test_erosion(monkeypatch, capsys, tmp_path):
    # Arrange
    other = write(tmp_path, "square.json", SQUARE)

    # Act
    code, body = run(monkeypatch, capsys, ["erosion", "--with", other, "--lambda", "1/2", "--point", "0,0"], SQUARE)

    # Assert
    assert code == EXIT_PASS
    assert body["details"] == {"in_lhs": False, "in_rhs": False}
