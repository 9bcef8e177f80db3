import json

import pytest

from idealgames import strategies
from idealgames.cli import main, parse_element, _parse_params
from idealgames.engine import legality_check, load_transcript, replay
from idealgames.ideals import NATURALS, PAIRS, EDGE_SET, RATIONALS_01


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def test_parse_element_formats():
    from fractions import Fraction
    assert parse_element("7", NATURALS) == 7
    assert parse_element("2 5", PAIRS) == (2, 5)
    assert parse_element("1 3", EDGE_SET) == frozenset({1, 3})
    assert parse_element("2/3", RATIONALS_01) == Fraction(2, 3)
    with pytest.raises(ValueError):
        parse_element("3 1", EDGE_SET)


def test_parse_params():
    from fractions import Fraction
    assert _parse_params("m=1,epsilon=1/8") == {"m": 1,
                                                "epsilon": Fraction(1, 8)}
    assert _parse_params("") == {}


def test_ideal_eval(tmp_path, capsys):
    path = tmp_path / "f.txt"
    path.write_text("0 0\n1 1\n2 0\n")
    code, out, _ = run(capsys, "ideal", "eval", "--ideal", "ed",
                       "--set", str(path))
    assert code == 0 and out == "1"


def test_tree_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "tree", "separation", "--a", "0", "--b", "20")
    assert code == 0 and out == "3"
    path = tmp_path / "s.txt"
    path.write_text("0\n2\n5\n")
    code, out, _ = run(capsys, "tree", "trace", "--set", str(path),
                       "--depth", "2")
    assert code == 0 and out.splitlines()[0] == "."


def test_clopen_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "clopen", "measure", "--set", "0")
    assert code == 0 and out == "1/2"
    code, out, _ = run(capsys, "clopen", "yu", "--set", "01,10")
    assert code == 0 and out == "3/8"
    fam = tmp_path / "fam.txt"
    fam.write_text("0\n1\n")
    code, out, _ = run(capsys, "clopen", "phisn", "--n", "0",
                       "--family", str(fam))
    assert code == 0 and out == "2"


def test_game_play_persists_replayable_transcript(tmp_path, capsys):
    out_path = tmp_path / "t.jsonl"
    code, out, _ = run(capsys, "game", "play", "--game", "g1",
                       "--ideal", "pc", "--i", "bisect-cutter",
                       "--ii", "pc-chooser", "--rounds", "9",
                       "--seed", "1", "--out", str(out_path))
    assert code == 0
    summary = json.loads(out)
    assert summary["result"]["completed"]
    assert len(summary["trajectory"]) == 9
    t = load_transcript(out_path)
    assert legality_check(t) is None
    assert replay(t, strategies.REGISTRY).moves == t.moves


def test_game_batch(tmp_path, capsys):
    manifest = {"experiment": "exp", "output_dir": str(tmp_path),
                "cells": [
                    {"game": "g1", "ideal": "rado", "i": "random-cutter",
                     "ii": "random-chooser", "rounds": 4,
                     "seed_i": 1, "seed_ii": 2},
                    {"game": "g1", "ideal": "rado", "i": "missing-strategy",
                     "ii": "random-chooser", "rounds": 4,
                     "seed_i": 1, "seed_ii": 2}]}
    mpath = tmp_path / "m.json"
    mpath.write_text(json.dumps(manifest))
    code, out, _ = run(capsys, "game", "batch", "--manifest", str(mpath))
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert "transcript" in lines[0] and "error" in lines[1]
    assert lines[-1] == {"experiment": "exp", "cells": 2, "errors": 1}
    t = load_transcript(tmp_path / "exp-0.jsonl")
    assert legality_check(t) is None


def test_game_batch_empty(tmp_path, capsys):
    mpath = tmp_path / "m.json"
    mpath.write_text(json.dumps({"cells": []}))
    code, out, _ = run(capsys, "game", "batch", "--manifest", str(mpath))
    assert code == 0
    assert json.loads(out)["cells"] == 0


def test_rado_build_check_embed(tmp_path, capsys):
    table = tmp_path / "t.rado"
    code, out, _ = run(capsys, "rado", "build", "--n", "2", "--k", "2",
                       "--stages", "2", "--out", str(table))
    assert code == 0 and table.exists()
    code, out, _ = run(capsys, "rado", "check", "--table", str(table),
                       "--cap", "2")
    assert code == 0 and out == "0 missing witnesses"
    coloring = tmp_path / "c.txt"
    coloring.write_text("2 2 3\n0 1 0\n0 2 1\n1 2 0\n")
    code, out, _ = run(capsys, "rado", "embed", "--table", str(table),
                       "--coloring", str(coloring))
    assert code == 0 and json.loads(out)["verified"]


def test_ramsey_search(tmp_path, capsys):
    coloring = tmp_path / "c.txt"
    coloring.write_text("2 2 3\n0 1 0\n0 2 1\n1 2 0\n")
    code, out, _ = run(capsys, "ramsey", "search", "--coloring",
                       str(coloring), "--size", "2", "--l", "1")
    assert code == 0 and out == "0 1"


def test_katetov_check(capsys):
    code, out, _ = run(capsys, "katetov", "check", "--from", "rado",
                       "--to", "rado", "--map", "identity",
                       "--windows", "64,256,512", "--seed", "0")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert all(r["verdict"] == "bounded" for r in records[:-1])
    assert records[-1]["windows"] == [64, 256, 512]


def test_usage_and_domain_errors(tmp_path, capsys):
    assert main(["nonsense"]) == 2
    capsys.readouterr()
    path = tmp_path / "f.txt"
    path.write_text("0\n")
    code, _, err = run(capsys, "ideal", "eval", "--ideal", "nope",
                       "--set", str(path))
    assert code == 1 and "unknown ideal" in err
    code, _, err = run(capsys, "ideal", "eval", "--ideal", "ed",
                       "--set", str(tmp_path / "missing.txt"))
    assert code == 1
    code, _, err = run(capsys, "katetov", "check", "--from", "ed",
                       "--to", "rado", "--map", "identity")
    assert code == 1
