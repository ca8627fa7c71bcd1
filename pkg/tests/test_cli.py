import json
import random
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freechoose.cli import main, sweep_rows
from freechoose.core import Anchor, Cycle, Instance, Path
from freechoose.documents import dumps, instance_doc, parse_coloring, parse_instance
from freechoose.generators import (
    binocular,
    random_anchor,
    random_lists,
    random_path_lists,
    random_tree_of_cycles,
)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


# --- documents ------------------------------------------------------------


def _random_instance(rng):
    kind = rng.choice(["cycle", "path", "cactus"])
    b = rng.randint(1, 3)
    a = 2 * b + rng.randint(0, 2)
    if kind == "cycle":
        shape = Cycle(rng.randint(3, 10))
    elif kind == "path":
        shape = Path(rng.randint(1, 10))
    else:
        shape = random_tree_of_cycles(rng, 20, rng.randint(3, 6))
    lists = random_lists(rng, shape.num_vertices, a)
    anchor = random_anchor(rng, lists, b) if rng.random() < 0.7 else None
    return Instance(shape, lists, b, anchor)


@given(st.integers(0, 10**9))
def test_instance_round_trip(seed):
    inst = _random_instance(random.Random(seed))
    doc = json.loads(dumps(instance_doc(inst)))
    assert parse_instance(doc) == inst


def test_lists_as_array_accepted():
    doc = {"graph": {"kind": "path", "n": 1}, "b": 1, "lists": [[1, 2], [2, 3]]}
    assert parse_instance(doc).lists == (frozenset({1, 2}), frozenset({2, 3}))


def test_coloring_from_report_document():
    doc = {"coloring": {"0": [1], "1": [2]}}
    assert parse_coloring(doc, 2) == [frozenset({1}), frozenset({2})]


# --- solve ----------------------------------------------------------------


def test_solve_random_c6_at_threshold(tmp_path, capsys):
    rng = random.Random(8)
    lists = random_lists(rng, 6, 7)
    inst = Instance(Cycle(6), lists, 3, random_anchor(rng, lists, 3))
    path = write(tmp_path, "c6.json", instance_doc(inst))
    code, out, _ = run(capsys, "solve", path, "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["outcome"] == "colored"
    assert doc["threshold"] == {"ratio": "7/3", "required": "7/3", "met": True}
    assert "elapsed_ms" not in doc
    cpath = write(tmp_path, "col.json", doc)
    assert run(capsys, "verify", path, cpath)[0] == 0


def test_solve_output_is_deterministic(tmp_path, capsys):
    rng = random.Random(4)
    shape = binocular(4, 6, 2)
    lists = random_lists(rng, shape.num_vertices, 5)
    path = write(tmp_path, "bg.json", instance_doc(Instance(shape, lists, 2, random_anchor(rng, lists, 2))))
    first = run(capsys, "solve", path, "--format", "structured")
    second = run(capsys, "solve", path, "--format", "structured")
    assert first == second and first[0] == 0


def test_solve_timing_flag(tmp_path, capsys):
    rng = random.Random(1)
    path = write(tmp_path, "p.json", instance_doc(Instance(Path(8), random_path_lists(rng, 8, 9, 4), 4)))
    code, out, _ = run(capsys, "solve", path, "--timing", "--format", "structured")
    assert code == 0 and "elapsed_ms" in json.loads(out)


def test_solve_text_output(tmp_path, capsys):
    inst = Instance(Cycle(3), (frozenset({1, 2, 3}),) * 3, 1, Anchor(0, frozenset({1})))
    code, out, _ = run(capsys, "solve", write(tmp_path, "t.json", instance_doc(inst)))
    assert code == 0
    assert out.startswith("outcome: colored")
    assert "  v0: 1" in out


@pytest.mark.parametrize("p, a, b", [(2, 4, 2), (2, 7, 3), (3, 9, 4), (3, 6, 3), (4, 8, 4)])
def test_counterexample_piped_into_solve(tmp_path, capsys, p, a, b):
    code, out, _ = run(capsys, "counterexample", p, a, b)
    assert code == 0
    path = tmp_path / "ce.json"
    path.write_text(out)
    code, out, _ = run(capsys, "solve", path, "--format", "structured")
    assert code == 2
    assert json.loads(out)["outcome"] == "infeasible"


def test_counterexample_at_threshold_rejected(capsys):
    code, _, err = run(capsys, "counterexample", 2, 5, 2)
    assert code == 1
    assert "a/b < 2 + 1/p" in err


def test_missing_list_names_vertex(tmp_path, capsys):
    doc = {"graph": {"kind": "cycle", "n": 4}, "b": 1,
           "lists": {"0": [1, 2], "1": [1, 2], "2": [1, 2]}}
    code, _, err = run(capsys, "solve", write(tmp_path, "bad.json", doc))
    assert code == 1
    assert "vertex 3" in err


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert run(capsys, "solve", path)[0] == 1


def test_bad_anchor_reported(tmp_path, capsys):
    doc = {"graph": {"kind": "cycle", "n": 3}, "b": 1,
           "lists": [[1, 2], [1, 2], [1, 2]], "anchor": {"vertex": 0, "colors": [9]}}
    code, _, err = run(capsys, "solve", write(tmp_path, "a.json", doc))
    assert code == 1 and "anchor" in err


def test_not_a_tree_of_cycles(tmp_path, capsys):
    doc = {"graph": {"kind": "tree_of_cycles", "vertices": 4,
                     "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]},
           "b": 1, "lists": [[1, 2, 3]] * 4, "anchor": {"vertex": 0, "colors": [1]}}
    code, _, err = run(capsys, "solve", write(tmp_path, "k4.json", doc))
    assert code == 1 and "chordless" in err


# --- verify ---------------------------------------------------------------


def _c6_counterexample(tmp_path, capsys):
    _, out, _ = run(capsys, "counterexample", 3, 9, 4)
    path = tmp_path / "c6.json"
    path.write_text(out)
    return path, json.loads(out)


def test_verify_rejects_claimed_c6_counterexample_coloring(tmp_path, capsys):
    path, doc = _c6_counterexample(tmp_path, capsys)
    claim = {"coloring": {"0": [1, 2, 3, 4], "1": [5, 6, 7, 8], "2": [9, 10, 11, 12],
                          "3": [14, 15, 16, 17], "4": [18, 19, 20, 21], "5": [1, 2, 3, 4]}}
    code, out, _ = run(capsys, "verify", path, write(tmp_path, "c.json", claim))
    assert code == 2
    assert out == "edge violation at edge (5, 0): shared colors [1, 2, 3, 4]\n"


def test_verify_rainbow_triangle(tmp_path, capsys):
    inst = Instance(Cycle(3), (frozenset({1, 2, 3}),) * 3, 1)
    ipath = write(tmp_path, "t.json", instance_doc(inst))
    cpath = write(tmp_path, "c.json", {"coloring": {"0": [1], "1": [2], "2": [3]}})
    code, out, _ = run(capsys, "verify", ipath, cpath)
    assert code == 0 and out == "valid\n"


def test_verify_size_violation_names_vertex(tmp_path, capsys):
    inst = Instance(Cycle(3), (frozenset({1, 2, 3, 4, 5, 6}),) * 3, 2)
    ipath = write(tmp_path, "t.json", instance_doc(inst))
    cpath = write(tmp_path, "c.json", {"coloring": {"0": [1, 2], "1": [3], "2": [5, 6]}})
    code, out, _ = run(capsys, "verify", ipath, cpath, "--format", "structured")
    assert code == 2
    doc = json.loads(out)
    assert not doc["valid"]
    assert any("vertex 1" in v for v in doc["violations"])


# --- oracle, ratio, sweep -------------------------------------------------


def test_oracle_free_vertex_on_c6_counterexample(tmp_path, capsys):
    path, _ = _c6_counterexample(tmp_path, capsys)
    code, out, _ = run(capsys, "oracle", path, "--free-vertex", 0, "--format", "structured")
    assert code == 2
    doc = json.loads(out)
    assert doc["failing_c0"] == [1, 2, 3, 4] and not doc["all_extendable"]


def test_oracle_plain_feasible(tmp_path, capsys):
    inst = Instance(Cycle(4), (frozenset(range(1, 6)),) * 4, 2)
    code, out, _ = run(capsys, "oracle", write(tmp_path, "c4.json", instance_doc(inst)))
    assert code == 0 and "feasible: true" in out


def test_oracle_budget_exhaustion_is_input_error(tmp_path, capsys):
    path, _ = _c6_counterexample(tmp_path, capsys)
    code, _, err = run(capsys, "oracle", path, "--budget", 5)
    assert code == 1 and "budget" in err


@pytest.mark.parametrize("n, expected", [(3, "3/1"), (6, "7/3"), (1000000, "1000001/500000")])
def test_ratio(capsys, n, expected):
    assert run(capsys, "ratio", n) == (0, expected + "\n", "")


def test_ratio_rejects_short(capsys):
    assert run(capsys, "ratio", 2)[0] == 1


def test_sweep_empty_range(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "9..8")
    assert code == 0
    assert out.splitlines()[0].startswith("n")


def test_sweep_row_below_threshold():
    (row,) = sweep_rows(range(6, 7), range(9, 10), range(4, 5), trials=5, seed=0)
    assert row["theory"] is False
    assert row["counterexample"] == "infeasible"
    assert row["fchr"] == "7/3"


def test_sweep_text_frontier(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "4", "--b", "1..2", "--trials", 5)
    assert code == 0
    assert "# frontier n=4: fchr 5/2, all colored from 5/2, counterexample at 2/1" in out


def test_sweep_structured_is_seeded(capsys):
    args = ("sweep", "--n", "5..6", "--b", "1", "--trials", 5, "--format", "structured")
    first = run(capsys, *args)
    assert first == run(capsys, *args)
    assert json.loads(first[1])["frontier"]["6"]["fchr"] == "7/3"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "freechoose.cli", "ratio", "5"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "5/2\n"
