import json

import pytest

from ptuples.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")], out


def test_construct(capsys):
    code, recs, _ = run(capsys, "construct", "--p", "5", "--d1", "3")
    assert code == 0
    assert recs[0]["members"] == ["+5", "+11", "+17", "+23", "+29"]
    assert recs[0]["p"] == 5 and recs[0]["d1"] == 3 and recs[0]["kind"] == "tuple"


def test_construct_extend(capsys):
    code, recs, _ = run(capsys, "construct", "--p", "5", "--d1", "3", "--extend-left")
    assert recs[0]["members"][0] == "-29" and recs[0]["left_stop"]


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--p", "5", "--members", "5,11,17,23,29")[0] == 0
    code, recs, _ = run(capsys, "verify", "--p", "5", "--members", "5,7,19,31")
    assert code == 1 and recs[0]["error"] == "ExtensionExists"


def test_usage_errors(capsys):
    assert main(["nonsense"]) == 2
    assert main(["construct", "--p", "5"]) == 2
    assert main(["construct", "--p", "9", "--d1", "1"]) == 2
    assert main(["verify", "--p", "5", "--members", "a,b"]) == 2


def test_walks(capsys):
    code, recs, _ = run(capsys, "walks", "--p", "3", "--d1", "1", "--gap-bound", "2",
                        "--value-bound", "10")
    assert code == 0 and recs[-1]["count"] == 1 and recs[0]["members"] == ["+3", "+5", "+7"]


def test_repeat(capsys):
    code, recs, _ = run(capsys, "repeat", "--p", "5", "--offsets", "0,6,12,18", "--residue", "1",
                        "--from", "6", "--to", "700")
    assert code == 0
    assert [r["first"] for r in recs if r["kind"] == "occurrence"] == [41, 61, 251, 601, 641]
    assert recs[-1]["count"] == 5 and recs[-1]["offsets"] == [0, 6, 12, 18]


def test_repeat_threads_byte_identical(capsys):
    args = ["repeat", "--p", "7", "--offsets", "0,4,22,40,72,76", "--residue", "4",
            "--from", "8", "--to", "200000"]
    outs = {run(capsys, *args, "--threads", str(t))[2] for t in (1, 2, 8)}
    assert len(outs) == 1


def test_threads_env(monkeypatch):
    from ptuples.cli import build_parser

    monkeypatch.setenv("PTUPLES_THREADS", "6")
    args = build_parser().parse_args(
        ["repeat", "--p", "5", "--offsets", "0,6,12,18", "--residue", "1", "--from", "6", "--to", "9"])
    assert args.threads == 6


def test_classify(capsys):
    code, recs, _ = run(capsys, "classify", "--a", "35", "--step", "6", "--scan", "120")
    assert code == 0 and recs[0]["generic_max"] == 4
    assert [r["members"][0] for r in recs if r["kind"] == "run"] == [41, 251, 641]


def test_corpus(capsys):
    code, recs, _ = run(capsys, "corpus")
    assert code == 0 and recs[-1]["failures"] == 0 and recs[-1]["errata"] >= 3


def test_corpus_export(capsys):
    code, _, out = run(capsys, "corpus", "--export")
    assert code == 0
    assert "id=sec1-triplet\t" in out and "members=3,5,7" in out


@pytest.mark.parametrize("cmd", ["construct", "verify", "walks", "repeat", "classify", "corpus"])
def test_help(cmd, capsys):
    assert main([cmd, "--help"]) == 0
