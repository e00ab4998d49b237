import io
import json

import pytest

from sumset_cone.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write_set(tmp_path, points, name="a.json"):
    p = tmp_path / name
    dim = len(points[0]) if isinstance(points[0], list) else 1
    p.write_text(json.dumps({"dim": dim, "points": points}))
    return str(p)


def test_sumset_csv_row(tmp_path):
    path = write_set(tmp_path, [[0], [1], [7], [8]])
    code, out, _ = call("sumset", "--input", path, "--h-max", "8", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "h,cardinality,formula_value,match"
    assert "6,49,49,true" in lines


def test_sumset_singleton_and_dplus2():
    code, out, _ = call("sumset", "--points", "[[3]]", "--h-max", "5")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["cardinality"] for r in rows] == [1] * 6 and all(r["match"] for r in rows)
    code, out, _ = call("sumset", "--points", "[[0,0],[-1,1],[1,2],[4,0]]", "--h-max", "14")
    doc = json.loads(out)
    assert code == 0 and doc["formula"] == "dplus2"
    assert all(r["match"] for r in doc["rows"])


def test_khovanskii_json():
    code, out, _ = call("khovanskii", "--points", "[0,1,7,8]")
    assert code == 0
    doc = json.loads(out)
    assert doc["certified_bound"] == 12 and doc["empirical_transition"] == 6
    assert doc["polynomial"] == [{"num": 1, "den": 1}, {"num": 8, "den": 1}]
    assert doc["leading_coeff"] == {"num": 8, "den": 1}
    assert doc["numerator_degree"] == 7 and doc["numerator_degree_by_class"] >= 7


def test_khovanskii_rational_coefficients_and_normalization():
    code, out, _ = call("khovanskii", "--points", "[10,16,25]")
    assert code == 0
    doc = json.loads(out)
    # 3 * {0, 2, 5} + 10
    assert doc["normalization"] == {"shift": [10], "scale": 3}
    assert doc["polynomial"][0] == {"num": -5, "den": 1}
    # the unit triangle gives (h + 1)(h + 2) / 2
    code, out, _ = call("khovanskii", "--points", "[[0,0],[1,0],[0,1]]")
    assert code == 0
    assert json.loads(out)["polynomial"] == [
        {"num": 1, "den": 1}, {"num": 3, "den": 2}, {"num": 1, "den": 2}
    ]


def test_khovanskii_hypotheses_unmet():
    code, _, err = call("khovanskii", "--points", "[[0,0],[-1,1],[1,2],[4,0]]")
    assert code == 4
    assert json.loads(err)["reason"] == "not_simplex"


def test_brion_report():
    code, out, _ = call("brion", "--points", "[0,2,5]")
    doc = json.loads(out)
    assert code == 0 and doc["equality_from"] == 3 and doc["theorem_holds"]
    assert doc["first_failure"] is None
    code, _, _ = call("brion", "--points", "[[0,0],[1,0],[0,1]]")
    assert code == 5


def test_structure_trivial():
    code, out, _ = call("structure", "--points", "[0,1]", "--heights", "0")
    assert code == 0
    assert json.loads(out)["rows"] == [{"h": 0, "holds": True}]


def test_structure_reports_first_failure():
    # {0,1,3,4} at h = 1 is below the structure threshold
    code, out, _ = call("structure", "--points", "[0,1,3,4]", "--heights", "1", "2", "9")
    doc = json.loads(out)
    holds = {r["h"]: r["holds"] for r in doc["rows"]}
    assert holds[9]
    if not all(holds.values()):
        assert code == 1 and doc["first_failure"] == min(h for h, v in holds.items() if not v)
    else:
        assert code == 0 and doc["first_failure"] is None


def test_dplus2_command():
    code, out, _ = call("dplus2", "--points", "[[0,0],[-1,1],[1,2],[4,0]]")
    doc = json.loads(out)
    assert code == 0
    assert (doc["N"], doc["c"], doc["w"], doc["H"]) == (3, [-8, 4], [4, 8], 11)
    assert doc["disjointness_threshold"] == 11
    code, _, err = call("dplus2", "--points", "[0,1,7,8]")
    assert code == 4 and json.loads(err)["reason"] == "size"


def _claimed(tmp_path, numerator, denominator):
    p = tmp_path / "claimed.json"
    p.write_text(json.dumps({
        # the last numerator exponent is the power of t
        "numerator": [{"exponent": [*e, t], "coeff": c} for e, t, c in numerator],
        "denominator": [{"exponent": e, "t": 1} for e in denominator],
    }))
    return str(p)


def test_verify_series(tmp_path):
    quad = "[[0,0],[-1,1],[1,2],[4,0]]"
    dens = [[0, 0], [4, 0], [-1, 1], [1, 2]]
    good = _claimed(tmp_path, [([0, 0], 0, 1), ([4, 8], 11, -1)], dens)
    code, out, _ = call("verify-series", "--points", quad, "--claimed", good, "--h-max", "25")
    assert code == 0 and json.loads(out)["ok"]
    bad = _claimed(tmp_path, [([0, 0], 0, 1), ([4, 8], 12, -1)], dens)
    code, out, _ = call("verify-series", "--points", quad, "--claimed", bad, "--h-max", "25")
    assert code == 1 and json.loads(out)["first_mismatch"] == 11
    code, _, _ = call("verify-series", "--points", quad)
    assert code == 2


def test_plot_deterministic(tmp_path):
    args = ["plot", "--points", "[0,1,7,8]", "--h-max", "7", "--bold", "0", "--hollow", "4"]
    code1, svg1, _ = call(*args)
    code2, svg2, _ = call(*args)
    assert code1 == code2 == 0
    assert svg1 == svg2 and svg1.lstrip().startswith("<?xml")
    code, svg, _ = call("plot", "--points", "[[0,0],[2,0],[0,2],[1,1]]", "--h-max", "3")
    assert code == 0 and "<svg" in svg


def test_plot_rejects_three_dimensions():
    code, _, err = call("plot", "--points", "[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]")
    assert code == 5 and json.loads(err)["error"] == "unsupported_dimension"


def test_budget_refusal():
    code, _, err = call("sumset", "--points", "[0,1,7,8]", "--h-max", "1000000")
    assert code == 3 and json.loads(err)["error"] == "budget_exceeded"
    code, _, _ = call("sumset", "--points", "[0,1,7,8]", "--h-max", "50", "--budget", "100")
    assert code == 3
    code, _, _ = call("sumset", "--points", "[0,1]", "--budget", "0")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["sumset", "--points", "[[0,1],[2]]"],
    ["sumset", "--points", "not json"],
    ["sumset", "--points", "[]"],
    ["sumset", "--points", "[0,0]"],
    ["sumset", "--input", "/nonexistent/set.json"],
    ["sumset"],
    ["nonsense"],
    ["sumset", "--points", "[0,1]", "--format", "xml"],
])
def test_malformed_input(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_figure_and_output(tmp_path):
    fig = tmp_path / "sizes.svg"
    report = tmp_path / "sizes.csv"
    code, out, _ = call("sumset", "--points", "[0,1,7,8]", "--h-max", "8", "--format", "csv",
                        "--output", str(report), "--figure", str(fig))
    assert code == 0 and out == ""
    assert report.read_text().startswith("h,cardinality")
    assert "<svg" in fig.read_text()


def test_sweep_is_seeded():
    a = call("sweep", "--kind", "dplus2", "--dim", "2", "--count", "4", "--seed", "5")
    b = call("sweep", "--kind", "dplus2", "--dim", "2", "--count", "4", "--seed", "5")
    c = call("sweep", "--kind", "dplus2", "--dim", "2", "--count", "4", "--seed", "6")
    assert a == b and a[0] == 0
    assert a[1] != c[1]
    for kind in ["khovanskii", "brion"]:
        code, out, _ = call("sweep", "--kind", kind, "--count", "3", "--seed", "1", "--format", "csv")
        assert code == 0 and out.startswith("index,set,ok")
