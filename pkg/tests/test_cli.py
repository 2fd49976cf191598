import json
import logging

import pytest

from main import main
from src.logger import set_level
from src.services.interface import parse_map, serialize_map
from src.services.plmap import inverse

F1_TEXT = '{"breakpoints":[["0","0"],["1/4","1/2"],["1","1"]]}'
F3_TEXT = '{"breakpoints":[["0","0"],["1/4","1/2"],["3/8","5/8"],["1","1"]]}'
F4_TEXT = '{"breakpoints":[["0","0"],["1/4","1/2"],["1/2","5/8"],["1","1"]]}'
G3_TEXT = '{"breakpoints":[["0","0"],["1/4","1/2"],["1/3","3/5"],["1","1"]]}'
G4_TEXT = '{"breakpoints":[["0","0"],["1/5","2/5"],["1","1"]]}'


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [("f1", F1_TEXT), ("f3", F3_TEXT), ("f4", F4_TEXT), ("g3", G3_TEXT), ("g4", G4_TEXT)]:
        path = tmp_path / f"{name}.json"
        path.write_text(text)
        paths[name] = str(path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate(files, capsys):
    assert run(capsys, "validate", files["f1"]) == (0, F1_TEXT + "\n")


def test_eval(files, capsys):
    assert run(capsys, "eval", files["f1"], "1/2") == (0, "2/3\n")


def test_eval_out_of_range(files, capsys):
    assert run(capsys, "eval", files["f1"], "3/2")[0] == 2


def test_pow_and_invert(files, capsys):
    code, out = run(capsys, "pow", files["f1"], "2")
    assert code == 0
    assert out.strip() == '{"breakpoints":[["0","0"],["1/8","1/2"],["1/4","2/3"],["1","1"]]}'
    code, out = run(capsys, "invert", files["f1"])
    assert out.strip() == '{"breakpoints":[["0","0"],["1/2","1/4"],["1","1"]]}'


def test_compose(files, capsys):
    code, out = run(capsys, "compose", files["f1"], files["f1"])
    assert parse_map(out.strip()) == parse_map(
        '{"breakpoints":[["0","0"],["1/8","1/2"],["1/4","2/3"],["1","1"]]}')


def test_nodes_and_invariants(files, capsys):
    code, out = run(capsys, "nodes", files["f3"])
    assert json.loads(out) == [{"node": "1/4", "star": "1/2"}, {"node": "3/8", "star": "3/5"}]
    code, out = run(capsys, "invariants", files["f1"])
    assert out.strip() == '{"alpha":"2","beta":{"marked":[{"value":"1/3","gap":"2"}]}}'


def test_invariants_rejects_identity(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text('{"breakpoints":[["0","0"],["1","1"]]}')
    assert run(capsys, "invariants", str(path))[0] == 2


def test_corner_with_witness(files, tmp_path, capsys):
    out_path = tmp_path / "w.json"
    code, out = run(capsys, "corner", files["f4"], "--witness", str(out_path))
    assert code == 0
    assert out.strip() == G4_TEXT
    assert out_path.read_text().strip() == '{"breakpoints":[["0","0"],["1/2","2/5"],["1","1"]]}'


def test_decide_exit_codes(files, tmp_path, capsys):
    witness = tmp_path / "w.json"
    code, out = run(capsys, "decide", files["f3"], files["g3"], "--witness", str(witness))
    assert code == 0
    assert json.loads(out)["conjugate"] is True
    assert witness.exists()

    code, out = run(capsys, "decide", files["f1"], files["f4"])
    assert code == 1
    assert json.loads(out)["reason"] == "beta_mismatch"


def test_decide_mirrored(files, tmp_path, capsys):
    paths = []
    for name in ("f4", "g4"):
        path = tmp_path / f"{name}_inv.json"
        path.write_bytes(serialize_map(inverse(parse_map(open(files[name]).read()))))
        paths.append(str(path))
    assert run(capsys, "decide", *paths)[0] == 2
    assert run(capsys, "decide", "--mirrored", *paths)[0] == 0


def test_decide_invalid_file(tmp_path, files, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"breakpoints":')
    assert run(capsys, "decide", str(bad), files["f1"])[0] == 2
    assert run(capsys, "decide", str(tmp_path / "missing.json"), files["f1"])[0] == 2


def test_classify(files, capsys):
    code, out = run(capsys, "classify", files["f3"], files["g3"], files["f1"])
    assert code == 0
    classes = json.loads(out)
    assert [c["members"] for c in classes] == [[files["f3"], files["g3"]], [files["f1"]]]


def test_random(capsys):
    code, out = run(capsys, "random", "--seed", "5", "--nodes", "3", "--denom-bound", "16", "--count", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert run(capsys, "random", "--seed", "5", "--nodes", "3", "--denom-bound", "16", "--count", "2")[1] == out


def test_random_bad_config(capsys):
    assert run(capsys, "random", "--seed", "5", "--denom-bound", "1")[0] == 2


def test_plot(files, capsys):
    code, out = run(capsys, "plot", files["f1"], "--samples", "2")
    assert out == "x,y\n0,0\n1/4,1/2\n1/2,2/3\n1,1\n"


def test_reconstruct(tmp_path, capsys):
    report = tmp_path / "r.json"
    report.write_text('{"alpha":"2","beta":{"marked":[{"value":"3/8","gap":"2"}]}}')
    assert run(capsys, "reconstruct", str(report)) == (0, G4_TEXT + "\n")


def test_reconstruct_invalid_profile(tmp_path, capsys):
    report = tmp_path / "r.json"
    report.write_text('{"alpha":"2","beta":{"marked":[{"value":"3/2","gap":"2"}]}}')
    assert run(capsys, "reconstruct", str(report))[0] == 2


def test_classify_with_workers(files, capsys):
    names = [files[k] for k in ("f1", "f3", "f4", "g3", "g4")]
    code, parallel = run(capsys, "classify", "--workers", "2", *names)
    assert code == 0
    assert parallel == run(capsys, "classify", "--workers", "1", *names)[1]
    assert [c["members"] for c in json.loads(parallel)] == [
        [files["f1"]], [files["f3"], files["g3"]], [files["f4"], files["g4"]],
    ]


@pytest.fixture
def restore_level():
    yield
    set_level(logging.WARNING)


@pytest.mark.parametrize("flags, level", [(["-v"], logging.INFO), (["-vv"], logging.DEBUG)])
def test_verbose_flags(files, capsys, restore_level, flags, level):
    assert run(capsys, *flags, "validate", files["f1"])[0] == 0
    assert logging.getLogger("plconj").level == level


def test_log_level_from_environment(files, capsys, monkeypatch, restore_level):
    monkeypatch.setenv("PLCONJ_LOG_LEVEL", "debug")
    assert run(capsys, "validate", files["f1"])[0] == 0
    assert logging.getLogger("plconj").level == logging.DEBUG


def test_verbose_flag_wins_over_environment(files, capsys, monkeypatch, restore_level):
    monkeypatch.setenv("PLCONJ_LOG_LEVEL", "ERROR")
    run(capsys, "-v", "validate", files["f1"])
    assert logging.getLogger("plconj").level == logging.INFO
