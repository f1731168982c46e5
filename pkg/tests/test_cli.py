import io
import json

import pytest

from curvedkoszul.cli import FIXTURES, DocumentError, load_document, load_fixture, parse_document, parse_rational, run

WEYL_DOC = {"name": "w", "mode": "associative", "generators": [["x", 0], ["y", 0]],
            "relations": [{"constant": "-1", "quadratic": {"y*x": "1", "x*y": "-1"}}]}


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_load(name):
    p = load_fixture(name)
    assert p.gens


def test_validate_weyl(tmp_path):
    out = tmp_path / "r.json"
    code, text = invoke("validate", "weyl", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert [(c["id"], c["status"]) for c in rep["checks"]] == [("minimality", "pass"), ("weak_consistency", "pass")]
    assert "wall_time" not in rep


def test_resolve_weyl(tmp_path):
    out = tmp_path / "r.json"
    code, _ = invoke("resolve", "--truncate", "6", "weyl", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0
    assert rep["tables"]["resolution"]["rows"] == [[0, 28], [1, 0], [2, 0]]


def test_ft_compare_poly1(tmp_path):
    out = tmp_path / "r.json"
    code, _ = invoke("ft-compare", "--n-max", "5", "poly1", "--out", str(out))
    rows = json.loads(out.read_text())["tables"]["ft_compare"]["rows"]
    assert code == 0
    assert len(rows) == 6
    assert all(r[1] == r[2] == r[3] for r in rows)
    assert [r[1] for r in rows] == [6, 0, 0, 0, 0, 0]


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    invoke("hc", "--kind", "minus", "--bounds", "4", "weyl", "--out", str(a))
    invoke("hc", "--kind", "minus", "--bounds", "4", "weyl", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_timing_flag(tmp_path):
    out = tmp_path / "r.json"
    invoke("validate", "weyl", "--out", str(out), "--timing")
    assert "wall_time" in json.loads(out.read_text())


def test_document_path_round_trip(tmp_path):
    code, text = invoke("dual", "--max-weight", "3", write(tmp_path, WEYL_DOC))
    assert code == 0 and "stability  pass" in text


def test_failing_check_exits_one(tmp_path):
    doc = {"name": "nk", "mode": "associative", "generators": [["x", 0], ["y", 0], ["z", 0]],
           "relations": [{"quadratic": {"x*y": 1, "y*y": -1}}, {"quadratic": {"z*y": 1, "z*x": 1}},
                         {"quadratic": {"x*x": -1, "z*x": 1}}]}
    code, text = invoke("koszul-cert", "--max-weight", "4", write(tmp_path, doc))
    assert code == 1 and "koszul_certificate  fail" in text


def test_lie_on_associative_is_usage_error(capsys):
    code, _ = invoke("lie", "weyl")
    assert code == 2
    assert "commutative" in capsys.readouterr().err


def test_unknown_command_and_fixture():
    assert invoke("frobnicate", "weyl")[0] == 2
    assert invoke("validate", "nope")[0] == 2


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d["relations"][0].__setitem__("constant", 0.5), "relations[0].constant"),
    (lambda d: d["relations"][0]["quadratic"].__setitem__("x*q", "1"), "relations[0].quadratic['x*q']"),
    (lambda d: d["relations"][0]["quadratic"].__setitem__("xy", "1"), "relations[0].quadratic['xy']"),
    (lambda d: d["generators"].append(["x", 0]), "generators"),
    (lambda d: d["generators"].__setitem__(0, ["x", -1]), "generators[0]"),
    (lambda d: d.__setitem__("mode", "lie"), "mode"),
    (lambda d: d.pop("relations"), "$"),
    (lambda d: d["relations"].append({"linear": {"x": "0"}}), "relations[1]"),
    (lambda d: d["relations"][0].__setitem__("cubic", {}), "relations[0]"),
])
def test_parse_errors_name_the_field(mutate, where):
    doc = json.loads(json.dumps(WEYL_DOC))
    mutate(doc)
    with pytest.raises(DocumentError) as exc:
        parse_document(doc)
    assert exc.value.where == where


def test_json_syntax_error_reports_line(tmp_path):
    path = write(tmp_path, '{\n  "name": "x",\n  "mode": oops\n}')
    with pytest.raises(DocumentError) as exc:
        load_document(path)
    assert exc.value.where.startswith("line 3")
    assert invoke("validate", path)[0] == 2


def test_rationals():
    assert parse_rational("3/4", "f") == parse_rational(" 3 / 4 ", "f")
    assert parse_rational(-2, "f") == -2
    for bad in (0.5, True, "1.5", "a/b", "1/0"):
        with pytest.raises(DocumentError):
            parse_rational(bad, "f")


def test_negative_flags_rejected():
    assert invoke("dual", "--max-weight", "-1", "weyl")[0] == 2
    assert invoke("lie", "--max-weight", "5", "laurent")[0] == 2
    assert invoke("hc", "--kind", "plus", "--n-min", "3", "--n-max", "1", "weyl")[0] == 2


@pytest.mark.parametrize("argv", [
    ["split", "ug-nonabelian"], ["axioms", "heisenberg-unital"], ["cobar", "--max-weight", "3", "sym2"],
    ["hh", "--truncate", "4", "--method", "bar", "weyl"], ["hc", "--kind", "dual-plus", "--bounds", "3", "weyl"],
    ["hc", "--kind", "per", "--bounds", "3", "dualnumbers"], ["lie", "laurent"], ["uc-compare", "sym2-commutative"],
])
def test_commands_pass_on_fixtures(argv):
    code, text = invoke(*argv)
    assert code == 0, text
    assert text.rstrip().splitlines()[-1].startswith("result: pass")
