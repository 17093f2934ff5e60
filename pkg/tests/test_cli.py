import json

import pytest

from bipmatch.cli import main
from bipmatch.io import format_graph, parse_graph, read_instance

from named_graphs import complete, cycle, star


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def write(tmp_path, name, g):
    path = tmp_path / name
    path.write_text(format_graph(g))
    return path


def test_solve_k5_is_no_with_witness(tmp_path, capsys):
    code, out = run(capsys, "solve", write(tmp_path, "k5.txt", complete(5)))
    doc = json.loads(out)
    assert code == 1
    assert doc["answer"] == "no"
    assert doc["no_witness"]["kind"] == "K5"
    assert sorted(doc["no_witness"]["vertices"]) == [1, 2, 3, 4, 5]


def test_solve_c5_then_verify(tmp_path, capsys):
    inst = write(tmp_path, "c5.txt", cycle(5))
    code, out = run(capsys, "solve", inst, "--explain")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["matching"]) == 1
    for key in ("answer", "coloring", "matching", "algorithm", "nodes_explored", "wall_time", "input_digest"):
        assert key in doc
    cert = tmp_path / "c5.json"
    cert.write_text(out)
    assert run(capsys, "verify", inst, cert)[0] == 0


def test_verify_rejects_tampered_certificate(tmp_path, capsys):
    inst = write(tmp_path, "c3.txt", cycle(3))
    _, out = run(capsys, "solve", inst)
    doc = json.loads(out)
    doc["matching"] = []
    cert = tmp_path / "bad.json"
    cert.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", inst, cert)
    assert code == 1
    assert json.loads(out)["valid"] is False


def test_brute_size_limit(tmp_path, capsys):
    code, out = run(capsys, "solve", "-a", "brute", write(tmp_path, "p30.txt", cycle(30)))
    assert code == 2
    assert json.loads(out)["error"] == "size-limit"


@pytest.mark.parametrize("algo", ["auto", "exact", "brute", "vc", "domset", "p5free", "triangle"])
def test_all_algorithms_agree_on_c6(tmp_path, capsys, algo):
    code, out = run(capsys, "solve", "-a", algo, write(tmp_path, "c6.txt", cycle(6)))
    assert code == 0 and json.loads(out)["algorithm"] == algo


def test_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("p bm 2 1\ne 1 3\n")
    assert run(capsys, "solve", path)[0] == 2
    assert run(capsys, "solve", tmp_path / "missing.txt")[0] == 2


def test_precondition_errors(tmp_path, capsys):
    path = write(tmp_path, "c5.txt", cycle(5))
    code, out = run(capsys, "solve", "-a", "vc", "--d", "2", path)
    assert code == 2 and json.loads(out)["error"] == "precondition"
    code, out = run(capsys, "solve", "-a", "p5free", "--check-class", write(tmp_path, "c7.txt", cycle(7)))
    assert code == 2 and json.loads(out)["error"] == "class-promise"


def test_kernelize_star(tmp_path, capsys):
    out_path = tmp_path / "kernel.txt"
    code, _ = run(capsys, "kernelize", write(tmp_path, "star.txt", star(10)), "-o", out_path)
    assert code == 0
    kernel = read_instance(out_path)
    assert kernel.n == 2 and kernel.forbidden == {(0, 1)}
    trace = json.loads((tmp_path / "kernel.txt.trace.json").read_text())
    assert trace["steps"][0]["rule"] == 7


def test_generate_pool_and_head(tmp_path, capsys):
    out_path = tmp_path / "pool.txt"
    assert run(capsys, "generate", "pool", "--k", 5, "-o", out_path)[0] == 0
    assert parse_graph(out_path.read_text()).n == 10
    labels = json.loads((tmp_path / "pool.txt.labels.json").read_text())
    assert labels["p1"] == 1
    assert run(capsys, "generate", "head", "-o", tmp_path / "head.txt")[0] == 0
    assert parse_graph((tmp_path / "head.txt").read_text()).n == 7


def test_generate_random_kinds_need_a_seed(tmp_path, capsys):
    code, out = run(capsys, "generate", "formula")
    assert code == 2 and json.loads(out)["error"] == "missing-seed"
    corpus = tmp_path / "corpus"
    assert run(capsys, "generate", "corpus", "--seed", 3, "--family", "chordal", "--count", 4, "-o", corpus)[0] == 0
    first = sorted(p.read_text() for p in corpus.iterdir())
    run(capsys, "generate", "corpus", "--seed", 3, "--family", "chordal", "--count", 4, "-o", corpus)
    assert sorted(p.read_text() for p in corpus.iterdir()) == first
    assert len(first) == 4


def test_generate_reduction_and_solve(tmp_path, capsys):
    formula = tmp_path / "f.x13"
    formula.write_text("p x13 1 1\n1 0\n")
    assert run(capsys, "generate", "reduction", "--formula", formula, "-o", tmp_path / "r.txt")[0] == 2
    formula.write_text("p x13 2 1\n1 -2 0\n")
    assert run(capsys, "generate", "reduction", "--formula", formula, "-o", tmp_path / "r.txt")[0] == 0
    code, _ = run(capsys, "solve", tmp_path / "r.txt")
    assert code == 0


def test_nd_and_dot(tmp_path, capsys):
    path = write(tmp_path, "star.txt", star(4))
    code, out = run(capsys, "nd", path)
    assert code == 0 and json.loads(out)["nd"] == 2
    code, out = run(capsys, "dot", path)
    assert code == 0 and out.startswith("graph G {") and "1 -- 2" in out
