import json
from fractions import Fraction

import pytest

from eulertrace import (cyclic, dinfty_graph, parse_rational, format_rational,
                        psl2z_graph, sl2z_graph, subgroup_average, symmetric,
                        GroupRingMatrix)
from eulertrace.cli import main
from eulertrace.serialize import (canonical_dumps, graph_to_json, group_to_json,
                                  matrix_to_json, parse_expr, parse_graph,
                                  parse_group, parse_matrix, expr_to_json)
from eulertrace.errors import InputError


# -- canonical rationals ------------------------------------------------------

def test_parse_rational_forms():
    assert parse_rational("3/7") == Fraction(3, 7)
    assert parse_rational("-22/5") == Fraction(-22, 5)
    assert parse_rational("4") == Fraction(4)
    assert parse_rational(5) == Fraction(5)
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(ValueError):
        parse_rational(0.5)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(8, 2)) == "4"


# -- round trips ---------------------------------------------------------------

def test_group_round_trip():
    G = symmetric(3)
    H = parse_group(group_to_json(G))
    assert H.mult == G.mult and H.labels == G.labels


def test_matrix_round_trip():
    M = GroupRingMatrix.from_element(subgroup_average(symmetric(3)))
    N = parse_matrix(matrix_to_json(M))
    assert N.size == M.size
    assert N.rows[0][0].coeffs == M.rows[0][0].coeffs


def test_graph_round_trip():
    g = sl2z_graph()
    h = parse_graph(graph_to_json(g))
    assert [v.mult for v in h.vertices] == [v.mult for v in g.vertices]
    assert h.edges[0].embeddings[0].map == (0, 2)
    assert canonical_dumps(graph_to_json(h)) == canonical_dumps(graph_to_json(g))


def test_expr_round_trip():
    from eulertrace import eval_chi2, free_product_times_cyclic

    e = free_product_times_cyclic(3, 1, 4)
    parsed = parse_expr(expr_to_json(e))
    assert eval_chi2(parsed.expr) == eval_chi2(e) == Fraction(1, 2)


def test_parse_matrix_rejects_bad_input():
    with pytest.raises(InputError):
        parse_matrix({"group": group_to_json(cyclic(2)), "size": 1, "entries": []})
    with pytest.raises(InputError):
        parse_matrix({"group": group_to_json(cyclic(2)), "size": 1,
                      "entries": [[[{"elem": 7, "coeff": "1"}]]]})


# -- command line ---------------------------------------------------------------

@pytest.fixture
def s3_file(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(canonical_dumps(group_to_json(symmetric(3))))
    return str(path)


@pytest.fixture
def averaging_file(tmp_path):
    M = GroupRingMatrix.from_element(subgroup_average(cyclic(4)))
    path = tmp_path / "avg_c4.json"
    path.write_text(canonical_dumps(matrix_to_json(M)))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cmd_group(capsys, s3_file):
    code, out, err = run_cli(capsys, "group", s3_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["class_count"] == 3
    assert payload["status"] == "pass"


def test_cmd_group_reports_twelve_singletons(capsys, tmp_path):
    path = tmp_path / "c12.json"
    path.write_text(canonical_dumps(group_to_json(cyclic(12))))
    code, out, _ = run_cli(capsys, "group", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["class_count"] == 12
    assert all(c["size"] == 1 for c in payload["results"]["classes"])


def test_cmd_group_bad_table(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "table", "table": [[0, 1], [1, 1]]}))
    code, out, err = run_cli(capsys, "group", str(path))
    assert code == 2
    assert "error:" in err


def test_cmd_hs_with_restriction(capsys, averaging_file):
    code, out, _ = run_cli(capsys, "hs", averaging_file, "--restrict", "0,2")
    assert code == 0
    payload = json.loads(out)
    names = [c["name"] for c in payload["checks"]]
    assert "sum_rule" in names
    restriction = [c for c in payload["checks"] if c["name"].startswith("restriction_class")]
    assert restriction and all(c["equal"] for c in restriction)


def test_cmd_hs_non_idempotent_fails_without_raw(capsys, tmp_path):
    C2 = cyclic(2)
    bad = {"group": group_to_json(C2), "size": 1,
           "entries": [[[{"elem": 0, "coeff": "1"}, {"elem": 1, "coeff": "1"}]]]}
    path = tmp_path / "bad_matrix.json"
    path.write_text(canonical_dumps(bad))
    code, out, _ = run_cli(capsys, "hs", str(path))
    assert code == 1  # idempotency check fails
    payload = json.loads(out)
    assert payload["status"] == "fail"
    code, out, _ = run_cli(capsys, "hs", str(path), "--raw")
    assert code == 1  # still reported, but values computed
    payload = json.loads(out)
    assert payload["results"]["trace"][0]["value"] == "1"


def test_cmd_hs_tensor(capsys, tmp_path, averaging_file):
    M = GroupRingMatrix.from_element(subgroup_average(symmetric(3)))
    other = tmp_path / "avg_s3.json"
    other.write_text(canonical_dumps(matrix_to_json(M)))
    code, out, _ = run_cli(capsys, "hs", averaging_file, "--tensor", str(other))
    assert code == 0
    payload = json.loads(out)
    tensor_checks = [c for c in payload["checks"] if c["name"].startswith("tensor_class")]
    assert len(tensor_checks) == 12 and all(c["equal"] for c in tensor_checks)


def test_cmd_graph_verify(capsys, tmp_path):
    for builder, expected_e in ((psl2z_graph, "-1/6"), (sl2z_graph, "-1/12"), (dinfty_graph, "0")):
        path = tmp_path / "g.json"
        path.write_text(canonical_dumps(graph_to_json(builder())))
        code, out, _ = run_cli(capsys, "graph", str(path), "--verify")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["e"] == expected_e
        assert payload["results"]["global_sum"] == "1"


def test_cmd_expr_with_mark(capsys, tmp_path):
    opaque = {"kind": "opaque", "name": "core", "type_fp": True}
    vertex = {"kind": "cross_z", "child": opaque}
    expr = {
        "kind": "symbolic_graph",
        "vertices": [vertex, vertex],
        "edges": [{"group": group_to_json(cyclic(2))}],
        "marks": {
            "t": {
                "path": [],
                "order": 2,
                "fixed_tree": {"vertex_terms": ["0", "0"], "edge_terms": ["1/2"]},
                "fusion": {"vertex_hits": [{"vertex": 0}, {"vertex": 1}],
                           "edge_hits": [{"edge": 0, "element": 1}]},
            }
        },
    }
    path = tmp_path / "amalgam.json"
    path.write_text(canonical_dumps(expr))
    code, out, _ = run_cli(capsys, "expr", str(path), "--mark", "t")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["chi2"] == "-1/2"
    assert payload["results"]["mark"]["complete_euler"] == "-1/2"
    assert payload["results"]["mark"]["centralizer_chi2"] == "-1/2"
    assert all(c["equal"] for c in payload["checks"])


def test_cmd_expr_product_multiplicativity(capsys, tmp_path):
    expr = {"kind": "product", "factors": [
        {"kind": "free", "rank": 3},
        {"kind": "finite", "group": group_to_json(cyclic(4))},
    ]}
    path = tmp_path / "product.json"
    path.write_text(canonical_dumps(expr))
    code, out, _ = run_cli(capsys, "expr", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["chi2"] == "-1/2"
    check = next(c for c in payload["checks"] if c["name"] == "product_multiplicativity")
    assert check["equal"]


def test_cmd_expr_unknown_mark(capsys, tmp_path):
    path = tmp_path / "free.json"
    path.write_text(canonical_dumps({"kind": "free", "rank": 3}))
    code, _, err = run_cli(capsys, "expr", str(path), "--mark", "nope")
    assert code == 2 and "nope" in err


def test_cmd_construct_rho(capsys):
    for rho in ("3/7", "0", "-22/5"):
        code, out, _ = run_cli(capsys, "construct-rho", rho)
        assert code == 0
        payload = json.loads(out)
        values = {c["name"]: (c["lhs"], c["rhs"]) for c in payload["checks"]}
        expected = format_rational(parse_rational(rho))
        assert values["complete_euler"] == (expected, expected)
        assert values["centralizer_chi2"] == (expected, expected)


def test_cmd_selftest_filter(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--filter", "model")
    assert code == 0
    payload = json.loads(out)
    names = [c["name"] for c in payload["checks"]]
    assert names == ["psl2z_model", "sl2z_model", "dinfty_model"]


def test_reports_are_byte_identical(capsys, s3_file):
    _, first, _ = run_cli(capsys, "group", s3_file)
    _, second, _ = run_cli(capsys, "group", s3_file)
    assert first == second


def test_table_mode(capsys, s3_file):
    code, out, _ = run_cli(capsys, "group", s3_file, "--table")
    assert code == 0
    assert out.startswith("command: group")
    assert "status: pass" in out
