"""End-to-end command line checks."""

from __future__ import annotations

import json

import pytest

from leavitt import graph_to_doc, validate_graph
from leavitt.cli import main
from conftest import NAMED_GRAPHS


@pytest.fixture
def write_graph(tmp_path):
    def _write(name: str) -> str:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(graph_to_doc(NAMED_GRAPHS[name])), encoding="utf-8")
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_primes_toeplitz(write_graph, capsys):
    code, out, _ = run(capsys, "primes", write_graph("toeplitz"), "--ring", "Z")
    assert code == 0
    assert out.splitlines() == ["({}, {})", "({z}, {})"]


def test_primes_json(write_graph, capsys):
    code, out, _ = run(capsys, "primes", write_graph("toeplitz"), "--ring", "Z",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"h": [], "s": []}, {"h": ["z"], "s": []}]


def test_primes_hypothesis_failure_exits_1(write_graph, capsys):
    code, out, err = run(capsys, "primes", write_graph("toeplitz"), "--ring", "Z/6")
    assert code == 1
    assert "not an integral domain" in err


def test_primitives_over_z_exits_1(write_graph, capsys):
    code, out, err = run(capsys, "primitives", write_graph("toeplitz"), "--ring", "Z")
    assert code == 1
    assert "not a field" in err


def test_primitives_over_q(write_graph, capsys):
    code, out, _ = run(capsys, "primitives", write_graph("toeplitz"), "--ring", "Q")
    assert code == 0
    assert out.splitlines() == ["({}, {})"]


def test_eval_normal_form(write_graph, capsys):
    code, out, _ = run(capsys, "eval", write_graph("a2"), "--ring", "Z", "e.e^*")
    assert code == 0
    assert out.strip() == "v1"


def test_member_true_false(write_graph, capsys):
    path = write_graph("ex_infinite")
    code, out, _ = run(capsys, "member", path, "--ring", "Q",
                       "--H", "v", "--S", "w", "w - f.f^*")
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run(capsys, "member", path, "--ring", "Q",
                       "--H", "v", "--S", "", "w - f.f^*")
    assert (code, out.strip()) == (0, "false")


def test_check_conditions(write_graph, capsys):
    code, out, _ = run(capsys, "check", write_graph("c1"), "--conditions", "L,K")
    assert code == 0
    assert out.splitlines() == ["L: false", "K: false"]
    code, out, _ = run(capsys, "check", write_graph("toeplitz"))
    assert out.splitlines() == ["L: true", "K: false", "MT3: true"]


def test_quotient_round_trips(write_graph, capsys):
    code, out, _ = run(capsys, "quotient", write_graph("ex_infinite"),
                       "--H", "v", "--S", "")
    assert code == 0
    doc = json.loads(out)
    g = validate_graph(doc)  # re-ingests cleanly
    assert set(g.vertices) == {"w", "w'"}
    assert graph_to_doc(g) == doc


def test_quotient_dot_marks_primed(write_graph, capsys):
    code, out, _ = run(capsys, "quotient", write_graph("ex_infinite"),
                       "--H", "v", "--S", "", "--format", "dot")
    assert code == 0
    assert '"w\'" [style=dashed];' in out


def test_subalgebra_output(write_graph, capsys):
    code, out, _ = run(capsys, "subalgebra", write_graph("ex_infinite"),
                       "--H", "v", "--S", "w")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == ["v", "w"]
    assert doc["edges"] == []
    assert doc["bundles"] == [{"src": "w", "dst": "v"}]


def test_ideal_graph_truncation_flag_and_banner(write_graph, capsys):
    path = write_graph("toeplitz")
    code, out, _ = run(capsys, "ideal-graph", path, "--H", "z", "--S", "", "--bound", "3")
    doc = json.loads(out)
    assert code == 0 and doc["truncated"] is True and doc["bound"] == 3
    code, out, _ = run(capsys, "ideal-graph", path, "--H", "z", "--S", "",
                       "--bound", "3", "--format", "dot")
    assert "TRUNCATED" in out


def test_ideals_lattice(write_graph, capsys):
    code, out, _ = run(capsys, "ideals", write_graph("ex_infinite"),
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["pairs"]) == 4
    assert doc["hasse"] == [[0, 1], [1, 2], [2, 3]]


def test_analyze_text_and_json(write_graph, capsys):
    path = write_graph("toeplitz")
    code, out, _ = run(capsys, "analyze", path, "--ring", "Z")
    assert code == 0
    assert "algebra prime: true" in out
    assert "algebra primitive: false" in out
    code, out2, _ = run(capsys, "analyze", path, "--ring", "Z", "--format", "json")
    doc = json.loads(out2)
    assert doc["flags"]["algebra_prime"] is True


def test_byte_identical_output(write_graph, capsys):
    path = write_graph("bundle_two_targets")
    _, out1, _ = run(capsys, "analyze", path, "--ring", "GF(5)", "--format", "json")
    _, out2, _ = run(capsys, "analyze", path, "--ring", "GF(5)", "--format", "json")
    assert out1 == out2


def test_validation_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "zz"}]}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "dangling endpoint" in err


def test_json_error_exits_2_with_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [,]}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "line 1" in err


def test_bad_ring_exits_2(write_graph, capsys):
    code, _, err = run(capsys, "primes", write_graph("a2"), "--ring", "R")
    assert code == 2
    assert "cannot parse ring" in err


def test_bad_pair_exits_2(write_graph, capsys):
    code, _, err = run(capsys, "quotient", write_graph("a2"), "--H", "v1", "--S", "")
    assert code == 2
    assert "not hereditary" in err


def test_unknown_condition_exits_2(write_graph, capsys):
    code, _, err = run(capsys, "check", write_graph("a2"), "--conditions", "Z")
    assert code == 2
    assert "unknown condition" in err
