"""The fq command line: outputs, exit codes, verification and determinism."""
import json
import os
import subprocess
import sys

import pytest

from fq.cli import run
from fq.finite.cayley import MarkedGroup, cyclic_group
from fq.finite.marked import dump_cayley


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def call_json(capsys, *argv):
    code, out = call(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def z2_file(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(dump_cayley(MarkedGroup(cyclic_group(2), (1,)), ["a"]))
    return str(path)


@pytest.fixture
def z2_dyson_file(tmp_path):
    path = tmp_path / "z2d.json"
    path.write_text(dump_cayley(MarkedGroup(cyclic_group(2), (0, 0, 1, 0)), ["a", "ah", "e", "eh"]))
    return str(path)


def test_enum(capsys):
    code, doc = call_json(capsys, "enum", "--pres", "< a | a^6 >", "--max-order", "6")
    assert code == 0 and doc["certificate"]["count"] == 4
    assert [e["order"] for e in doc["certificate"]["entries"]] == [1, 2, 3, 6]


def test_wp_exit_codes(capsys):
    code, doc = call_json(capsys, "wp", "--pres", "< a | a^2 >", "--word", "a", "--budget", "10")
    assert code == 0 and doc["verdict"] == "no" and doc["certificate"]["group"]["order"] == 2
    code, doc = call_json(capsys, "wp", "--pres", "< a | a^2 >", "--word", "a^4", "--budget", "100")
    assert code == 0 and doc["verdict"] == "yes"
    code, doc = call_json(capsys, "wp", "--pres", "< a | a^2 >", "--word", "a", "--budget", "0")
    assert code == 2 and doc["verdict"] == "unknown"


def test_usage_errors(capsys):
    assert run(["wp", "--pres", "< a | a^2 >"]) == 1
    assert "--word" in capsys.readouterr().err
    assert run(["wp", "--pres", "< a | a^2 ", "--word", "a"]) == 1
    assert run(["wp", "--pres", "< a | a^2 >", "--word", "a", "--budget", "-3"]) == 1
    assert run(["wp", "--pres", "< a | a^2 >", "--wor", "a"]) == 1
    assert run(["bogus"]) == 1
    code, out = call(capsys, "wp", "--pres", "< a | b >", "--word", "a", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "error"


def test_dyson_commands(capsys, z2_dyson_file):
    code, doc = call_json(capsys, "dyson", "wp", "--set", "prog:0/2", "--word", "e eh")
    assert code == 0 and doc["verdict"] == "yes"
    code, doc = call_json(capsys, "dyson", "nf", "--set", "finite:", "--word", "e eh")
    assert doc["certificate"]["syllables"] == [{"factor": "plain", "shift": 0, "lamps": [0]},
                                               {"factor": "hat", "shift": 0, "lamps": [0]}]
    code, doc = call_json(capsys, "dyson", "quotient-check", "--set", "prog:0/2", "--group", z2_dyson_file)
    assert code == 0 and doc["verdict"] == "no"
    code, doc = call_json(capsys, "dyson", "quotient-check", "--set", "finite:", "--group", z2_dyson_file)
    assert code == 0 and doc["verdict"] == "yes"
    code, out = call(capsys, "dyson", "lan-pres", "--set", "finite:", "--n", "1")
    assert code == 0 and "< a, ah, e, eh | a, ah, e^2, eh^2 >" in out
    code, doc = call_json(capsys, "dyson", "lan-pres", "--set", "lemma55:registry=test", "--n", "5")
    assert code == 2
    code, doc = call_json(capsys, "dyson", "rf-witness", "--set", "prog:0/4", "--word", "a e a^-1 ah eh ah^-1")
    assert code == 0 and doc["certificate"]["N"] == 4


def test_zset_commands(capsys):
    code, doc = call_json(capsys, "zset", "member", "--set", "lemma55:registry=test", "--x", str(11 ** 4))
    assert code == 0 and doc["verdict"] == "yes"
    code, doc = call_json(capsys, "zset", "witness", "--set", "lemma55:registry=test", "--x", "15")
    assert code == 0 and doc["certificate"]["modulus"] == 15
    code, doc = call_json(capsys, "zset", "mod", "--set", "lemma55:registry=test", "--n", "5")
    assert code == 2
    code, doc = call_json(capsys, "zset", "prog-subset", "--set", "lemmaB:f=identity", "--a", "2", "--b", "12")
    assert code == 0 and doc["verdict"] == "yes"


def test_other_commands(capsys, z2_file):
    code, doc = call_json(capsys, "check", "--pres", "< a | a^2 >", "--group", z2_file)
    assert code == 0 and doc["verdict"] == "yes"
    code, doc = call_json(capsys, "kernel-gens", "--ngens", "1", "--group", z2_file)
    assert code == 0 and doc["certificate"]["generators"] == [[1, 1]]
    code, doc = call_json(capsys, "n2q", "--pres", "< a | >", "--normal", "a^3", "--budget", "2000")
    assert code == 0 and doc["certificate"]["group"]["order"] == 3
    code, doc = call_json(capsys, "conj", "--pres", "< a, b | [a,b] >", "--x", "a", "--y", "b")
    assert code == 0 and doc["verdict"] == "no"
    code, doc = call_json(capsys, "separate", "--pres", "< a | >", "--a", "zprog:0/4", "--b", "zprog:2/4",
                          "--word", "a^4")
    assert code == 0 and doc["verdict"] == "in_a"
    code, doc = call_json(capsys, "depth", "--pres", "< a | >", "--oracle", "free", "--max-len", "6")
    assert code == 0
    rows = {r["n"]: r["rho"] for r in doc["certificate"]["rows"]}
    assert [rows[n] for n in range(1, 7)] == [2, 3, 3, 3, 3, 4]


VERIFY_CASES = [
    ["wp", "--pres", "< a | a^2 >", "--word", "a^4"],
    ["wp", "--pres", "< a, b | [a,b] >", "--word", "a^2 b"],
    ["separate", "--pres", "< a | >", "--a", "zprog:0/4", "--b", "zprog:2/4", "--word", "a^6"],
    ["conj", "--pres", "< a, b | >", "--x", "a b", "--y", "b a"],
    ["n2q", "--pres", "< a, b | >", "--normal", "a;b^2"],
    ["enum", "--pres", "< a, b | a^2, b^2, [a,b] >", "--max-order", "4"],
    ["dyson", "separate", "--set", "prog:0/2", "--word", "a e a^-1 eh", "--max-order", "16"],
    ["dyson", "quotient-check", "--set", "prog:0/2", "--group", "@z2d"],
    ["zset", "witness", "--set", "lemma55:registry=test", "--x", "121"],
    ["zset", "member", "--set", "lemmaB:f=identity", "--x", "14"],
    ["depth", "--pres", "< a | >", "--oracle", "free", "--max-len", "4"],
]


@pytest.mark.parametrize("argv", VERIFY_CASES, ids=lambda a: " ".join(a[:2]))
def test_verify_round_trip(capsys, tmp_path, z2_dyson_file, argv):
    argv = [z2_dyson_file if a == "@z2d" else a for a in argv]
    code, out = call(capsys, *argv, "--json")
    assert code == 0
    path = tmp_path / "doc.json"
    path.write_text(out)
    assert run(["verify", str(path)]) == 0


def test_verify_rejects_tampering(capsys, tmp_path):
    code, out = call(capsys, "wp", "--pres", "< a, b | [a,b] >", "--word", "a^2 b", "--json")
    doc = json.loads(out)
    doc["input"]["word"] = [1, 2, -1, -2]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    assert run(["verify", str(path)]) == 1


def test_deterministic_output(capsys):
    argv = ["conj", "--pres", "< a, b | >", "--x", "a b", "--y", "b a", "--json"]
    assert call(capsys, *argv) == call(capsys, *argv)


def test_threads_env(capsys, monkeypatch):
    argv = ["enum", "--pres", "< a, b | >", "--max-order", "4", "--json"]
    _, base = call(capsys, *argv)
    monkeypatch.setenv("FQ_THREADS", "3")
    assert call(capsys, *argv)[1] == base
    monkeypatch.setenv("FQ_THREADS", "zero")
    assert run(argv) == 1
    monkeypatch.delenv("FQ_THREADS")
    assert run(argv + ["--threads", "0"]) == 1


def test_console_script():
    exe = [sys.executable, "-m", "fq.cli"]
    r = subprocess.run(exe + ["dyson", "wp", "--set", "prog:0/2", "--word", "e eh"], capture_output=True, text=True,
                       env={**os.environ})
    assert r.returncode == 0 and r.stdout.strip().startswith("yes")
