import io
import json

import pytest

from qflag.cli import canonical_param, expand_classes, main, to_latex


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_gw_line_through_two_points():
    code, data = run_json("gw", "--dims", "1,3", "--a", "p[1]^2", "--b", "p[1]^2", "--c", "p[1]", "--degree", "1")
    assert code == 0 and data["value"] == "1"


def test_count_divisors_repeat_syntax():
    code, data = run_json("count-divisors", "--dims", "1,3", "--classes", "p[1]", "x5", "--degree", "1")
    assert code == 0 and data["value"] == "1"
    assert data["classes"] == ["p[1]"] * 5


def test_multiply_and_parse_examples():
    code, data = run_json("multiply", "--dims", "2,4", "c[0][2]*c[1][2]")
    assert code == 0 and data["product"] == "q[1]"
    code, data = run_json("multiply", "--dims", "1,3", "p[1]^3 - q[1]")
    assert code == 0 and data["product"] == "0"


def test_unknown_variable_is_usage_error():
    code, data = run_json("multiply", "--dims", "1,2", "q[2]")
    assert code == 2
    assert data["error"]["code"] == "parse" and data["error"]["position"] == 0


def test_syntax_error_position():
    code, data = run_json("multiply", "--dims", "1,2", "c[0][1] * * 2")
    assert code == 2 and data["error"]["position"] == 10


def test_bad_dims_is_usage_error(capsys):
    code, _ = run("present", "--dims", "3,1")
    assert code == 2


def test_resource_cap():
    code, data = run_json("present", "--dims", "1,2,3,4,5,6")
    assert code == 3 and data["error"]["code"] == "resource-cap"
    code, data = run_json("present", "--dims", "1,2,3,4,5,6", "--cap-n", "6")
    assert code == 0 and data["context"]["rank"] == 720


def test_generator_cap():
    code, data = run_json("present", "--dims", "1,2,3,4", "--groebner", "--max-generators", "2")
    assert code == 3


def test_present_groebner():
    code, data = run_json("present", "--dims", "1,2", "--equivariant", "--groebner")
    assert data["groebner"]["generators"] == ["c[0][1] + c[1][1] - C[1]", "c[1][1]^2 - c[1][1]*C[1] - q[1] + C[2]"]
    assert data["groebner"]["standard_basis"] == ["1", "c[1][1]"]


def test_pair_table_and_value():
    code, data = run_json("pair", "--dims", "1,2", "--table")
    assert data["pairing"]["matrix"] == [["0", "1"], ["1", "0"]]
    code, data = run_json("pair", "--dims", "1,2", "--equivariant", "--a", "c[1][1]", "--b", "c[1][1]")
    assert data["value"] == "C[1]"
    code, data = run_json("pair", "--dims", "1,2")
    assert code == 2


def test_specialize_short_names():
    code, data = run_json("specialize", "--dims", "1,2", "--set", "c1=0", "--set", "c2=0")
    assert code == 0
    assert data["relations"] == ["c[0][1] + c[1][1]", "c[0][1]*c[1][1] + q[1]"]
    code, data = run_json("specialize", "--dims", "1,2", "--set", "c1=2")
    assert code == 2
    code, data = run_json("specialize", "--dims", "1,2", "--torus", "--pairing")
    assert "t[2]" in data["variables"]


def test_product_and_induction():
    code, data = run_json("product", "--dims", "1,2", "--dims2", "1,2")
    assert code == 0 and data["context"]["rank"] == 4
    code, data = run_json("induction-check", "--dims", "1,2,3", "--zero", "q1")
    assert code == 0 and data["ok"] and data["base"] == "x + c[0][1]"
    code, data = run_json("induction-check", "--dims", "1,2,3", "--zero", "C[1]")
    assert code == 2


def test_verify_small():
    code, data = run_json("verify", "--max-n", "3", "--trials", "10")
    assert code == 0 and data["ok"]
    assert len(data["checks"]) == 11


def test_output_is_deterministic(tmp_path):
    args = ("pair", "--dims", "1,2,3", "--table", "--equivariant")
    _, plain = run(*args)
    _, cold = run(*args, "--cache-dir", str(tmp_path))
    _, warm = run(*args, "--cache-dir", str(tmp_path))
    assert plain == cold == warm
    assert list(tmp_path.glob("gb-*.json"))


def test_text_and_latex_formats():
    code, text = run("multiply", "--dims", "2,4", "c[0][2]*c[1][2]", "--format", "text")
    assert "product: q[1]" in text
    code, text = run("multiply", "--dims", "2,4", "c[0][2]*c[1][2]", "--format", "latex")
    assert "product: q_{1}" in text


def test_helpers():
    assert canonical_param("c3") == "C[3]"
    assert canonical_param("q1") == "q[1]"
    assert canonical_param("C[2]") == "C[2]"
    assert expand_classes(["p[1]", "x3", "p[2]"]) == ["p[1]"] * 3 + ["p[2]"]
    assert to_latex("c[0][2]*c[1][1]^2 + C[1]") == "c_{2}^{(0)} c_{1}^{(1)}^{2} + c_{1}"
    with pytest.raises(ValueError):
        expand_classes(["x2"])
