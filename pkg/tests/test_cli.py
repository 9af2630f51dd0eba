from __future__ import annotations

import json

import pytest

from spikelab.cli import build_parser, main


def run_cli(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else {})


def run_to_file(tmp_path, name: str, *argv: str) -> tuple[int, dict, str]:
    path = tmp_path / name
    code = main([*argv, "--output", str(path)])
    raw = path.read_text()
    return code, json.loads(raw), raw


# envelope and basic subcommands ---------------------------------------------------


def test_envelope_shape(capsys):
    code, doc = run_cli(capsys, "signature", "--diag", "p=3;x=2,2,1,1")
    assert code == 0
    assert set(doc) == {"schema", "command", "params", "result", "timing"}
    assert doc["schema"] == 1
    assert doc["command"] == "signature"
    assert doc["params"] == {"diag": "p=3;x=2,2,1,1"}
    assert "elapsed_ms" in doc["timing"]
    assert "elapsed_ms" not in doc["result"] and "ms" not in doc["result"]


def test_signature_payload(capsys):
    _, doc = run_cli(capsys, "signature", "--diag", "p=3;x=2,2,1,1")
    r = doc["result"]
    assert r["hex"] == "1886"
    assert r["size"] == 5
    assert [1] in r["members"] and [3, 4] in r["members"]
    assert r["balanced"] == [-1, -1, 1, 1]


def test_axioms_ok(capsys):
    code, doc = run_cli(capsys, "axioms", "--diag", "p=5;x=4,1,3")
    assert code == 0
    assert doc["result"]["holds"] is True


def test_normalize_and_canonical(capsys):
    _, doc = run_cli(capsys, "normalize", "--diag", "p=3;x=1,1,1")
    assert doc["result"]["normalized"] == [2, 1, 2]
    _, doc = run_cli(capsys, "canonical", "--diag", "p=3;x=2,2,2")
    assert doc["result"]["canonical"] == [1, 1, 1]
    assert doc["result"]["orbit_size"] == 5


def test_enumerate(capsys):
    code, doc = run_cli(capsys, "enumerate", "--p", "3", "--n", "3")
    assert code == 0
    assert doc["result"]["class_count"] == 2
    assert doc["result"]["total_diagonals"] == 8


def test_lemma_commands(capsys):
    code, doc = run_cli(capsys, "lemma21", "--p", "3", "--n", "2")
    assert code == 0 and doc["result"]["failures"] == []
    code, doc = run_cli(capsys, "lemma22", "--p", "3", "--n", "3")
    assert code == 0 and doc["result"]["failures"] == []


def test_detcheck(capsys):
    code, doc = run_cli(
        capsys, "detcheck", "--p", "7", "--n-max", "5", "--samples", "50", "--seed", "3"
    )
    assert code == 0
    assert doc["result"]["checked"] == 50 and doc["result"]["failures"] == []


def test_unique(capsys):
    code, doc = run_cli(capsys, "unique", "--p", "3", "--n", "5")
    assert code == 0
    assert doc["result"]["collisions"] == 0
    assert doc["result"]["diagonals"] == 32


def test_unique_below_threshold_collisions_are_not_failures(capsys):
    code, doc = run_cli(capsys, "unique", "--p", "5", "--n", "3")
    assert code == 0  # n < 2p-1: no injectivity promise, informational only
    assert doc["result"]["collisions"] > 0


def test_transfer(capsys):
    code, doc = run_cli(capsys, "transfer", "--diag", "p=3;x=2,2,2,1", "--q", "5")
    assert code == 0
    assert doc["result"]["witness"] == [4, 4, 4, 1]
    code, doc = run_cli(capsys, "transfer", "--diag", "p=3;x=2,2,1,1", "--q", "5")
    assert code == 0
    assert doc["result"]["witness"] is None


def test_charset(capsys):
    code, doc = run_cli(
        capsys, "charset", "--diag", "p=3;x=2,2,1,1", "--primes", "2,5,7,11,13"
    )
    assert code == 0
    r = doc["result"]
    assert [v["representable"] for v in r["verdicts"]] == ["no"] * 5
    assert r["certificate"]["admissible_primes"] == [3]


def test_construct(capsys):
    code, doc = run_cli(capsys, "construct", "prop41", "--p", "3", "--q", "5")
    assert code == 0
    assert doc["result"]["diagonal"] == [2, 2, 2, 1]
    assert doc["result"]["diagonal_mod_q"] == [4, 4, 4, 1]
    code, doc = run_cli(capsys, "construct", "prop43", "--p", "5")
    assert code == 0
    assert doc["result"]["diagonal"] == [4, 4, 1, 2, 3, 1]
    assert doc["result"]["inverse_integers"] == [-1, -1, 1, -2, 2, -4]


def test_lbound(capsys):
    code, doc = run_cli(capsys, "lbound", "--p", "2", "--primes", "2,3,5", "--n-max", "4")
    assert code == 0
    assert doc["result"]["found_n"] == 3
    assert doc["result"]["in_interval"] is True


# exit codes ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["signature", "--diag", "p=4;x=1,2"],  # composite modulus
        ["signature", "--diag", "nonsense"],
        ["signature", "--diag", "p=3;x=0,1"],
        ["enumerate", "--p", "4", "--n", "3"],
        ["enumerate", "--p", "3", "--n", "9"],  # above the enumeration cap
        ["lemma21", "--p", "5", "--n", "2"],  # too short for the guarantee
        ["charset", "--diag", "p=3;x=1,1", "--primes", "5,x"],
        ["transfer", "--diag", "p=3;x=1,1", "--q", "6"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""  # no report on the data stream
    assert "error" in captured.err.lower() or captured.err


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_missing_required_argument_exits_2(capsys):
    assert main(["signature"]) == 2


def test_budget_exhaustion_exits_3(capsys):
    code = main(["transfer", "--diag", "p=3;x=1,1,1,1", "--q", "11", "--node-budget", "2"])
    assert code == 3
    assert capsys.readouterr().out == ""


def test_charset_unknown_verdict_exits_3(capsys):
    code, doc = run_cli(
        capsys,
        "charset", "--diag", "p=3;x=1,1,1", "--primes", "7", "--node-budget", "2",
    )
    assert code == 3
    assert doc["result"]["verdicts"][0]["representable"] == "unknown"


def test_threads_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("SPIKE_LAB_THREADS", "0")
    assert main(["signature", "--diag", "p=3;x=1,1"]) == 2
    monkeypatch.setenv("SPIKE_LAB_THREADS", "abc")
    assert main(["signature", "--diag", "p=3;x=1,1"]) == 2
    capsys.readouterr()
    monkeypatch.setenv("SPIKE_LAB_THREADS", "4")
    assert main(["signature", "--diag", "p=3;x=1,1"]) == 0


# output file and determinism ---------------------------------------------------------


def test_output_file_matches_stdout(tmp_path, capsys):
    code, doc = run_cli(capsys, "enumerate", "--p", "3", "--n", "4")
    code2, doc2, raw = run_to_file(tmp_path, "census.json", "enumerate", "--p", "3", "--n", "4")
    assert code == code2 == 0
    assert doc["result"] == doc2["result"]
    assert raw.endswith("\n")
    assert doc2["params"] == {"p": 3, "n": 4}  # --output is not echoed as a param


def test_output_overwrites_atomically(tmp_path):
    path = tmp_path / "r.json"
    path.write_text("stale")
    main(["axioms", "--diag", "p=3;x=1,1,1", "--output", str(path)])
    doc = json.loads(path.read_text())
    assert doc["result"]["holds"] is True
    assert not list(tmp_path.glob("*.tmp"))


SUBCOMMANDS = [
    ["axioms", "--diag", "p=3;x=1,1,1"],
    ["signature", "--diag", "p=3;x=2,2,1,1"],
    ["normalize", "--diag", "p=3;x=1,1,1"],
    ["canonical", "--diag", "p=3;x=2,2,2"],
    ["enumerate", "--p", "3", "--n", "3"],
    ["lemma21", "--p", "3", "--n", "2"],
    ["lemma22", "--p", "3", "--n", "3"],
    ["detcheck", "--p", "5", "--n-max", "5", "--samples", "60", "--seed", "1"],
    ["unique", "--p", "3", "--n", "4"],
    ["transfer", "--diag", "p=3;x=2,2,2,1", "--q", "5"],
    ["charset", "--diag", "p=3;x=2,2,1,1", "--primes", "2,5,7"],
    ["construct", "prop41", "--p", "3", "--q", "5"],
    ["construct", "prop43", "--p", "3"],
    ["lbound", "--p", "2", "--primes", "2,3,5", "--n-max", "3"],
]


@pytest.mark.parametrize("argv", SUBCOMMANDS, ids=lambda a: a[0] + ("-" + a[1] if a[0] == "construct" else ""))
def test_every_subcommand_is_deterministic(capsys, argv):
    code1, doc1 = run_cli(capsys, *argv)
    code2, doc2 = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    payload1 = json.dumps(doc1["result"], indent=2).encode()
    payload2 = json.dumps(doc2["result"], indent=2).encode()
    assert payload1 == payload2
    assert doc1["params"] == doc2["params"]


def test_parser_lists_all_subcommands():
    parser = build_parser()
    text = parser.format_help()
    for name in (
        "axioms", "signature", "normalize", "canonical", "enumerate", "lemma21",
        "lemma22", "detcheck", "unique", "transfer", "charset", "construct", "lbound",
    ):
        assert name in text
