import json

import pytest

from aitgl import main as cli
from aitgl.exceptions import RuleViolation
from aitgl.models.bitstring import StringSet
from aitgl.storage.trace_store import TraceStore


def run(trace_dir, *argv):
    return cli.main([*argv, "--out", str(trace_dir)])


def summary(trace_dir, name):
    records = TraceStore.read(trace_dir / f"{name}.jsonl")
    assert records[-1]["kind"] == "summary"
    return records[-1]["data"]


def test_enumerate(trace_dir, capsys):
    assert run(trace_dir, "enumerate", "--k", "2", "--budget", "10000", "--max-len", "3") == 0
    data = summary(trace_dir, "enumerate")
    assert data["members"] == ["", "0", "1", "00", "11", "000", "111"]
    assert data["width"] == 2
    assert TraceStore.read_string_set(trace_dir / "enumerate_S.json") == {"", "0", "1", "00", "11", "000", "111"}
    assert "|S| = 7, width = 2" in capsys.readouterr().out


def test_trim_from_machine(trace_dir, capsys):
    assert run(trace_dir, "trim", "--from-machine", "2", "--w", "2", "--depth", "3", "--horizon", "10000") == 0
    data = summary(trace_dir, "trim")
    assert data["T"] == ["", "0", "1", "00", "11", "000", "111"]
    decisions = [r for r in TraceStore.read(trace_dir / "trim.jsonl") if "included" in r]
    assert [r["s"] for r in decisions if not r["included"]] == ["01", "10", "001", "010", "011", "100", "101", "110"]
    assert "T(w=2, depth=3) = {Λ,0,1,00,11,000,111}" in capsys.readouterr().out


def test_trim_from_file_with_limit_trace(trace_dir, tmp_path):
    source = TraceStore.write_string_set(tmp_path / "s.json", StringSet(["00", "1"]))
    assert run(trace_dir, "trim", "--from-file", str(source), "--w", "1", "--depth", "2", "--horizon", "2", "--limit-trace") == 0
    records = TraceStore.read(trace_dir / "trim.jsonl")
    limits = [r for r in records if "members" in r and "step" in r]
    assert [r["step"] for r in limits] == [0, 1, 2]
    assert limits[-1]["members"] == ["00"]
    assert summary(trace_dir, "trim")["T"] == ["00"]


def test_tokens(trace_dir, tmp_path):
    source = TraceStore.write_string_set(tmp_path / "t.json", StringSet(["", "0", "1", "00", "11", "000", "111"]))
    assert run(trace_dir, "tokens", "--input", str(source)) == 0
    data = summary(trace_dir, "tokens")
    assert data["tokens_used"] == 2
    assert data["labels"] == {"000": 1, "111": 2}
    assert data["decoded"] == {"1": "000", "2": "111"}

    events = TraceStore.read(trace_dir / "tokens.jsonl")[:-1]
    assert events[1] == {"step": 2, "observed": "0", "event": "moved", "token": 1, "from": "", "to": "0"}


def test_play_copycat(trace_dir, capsys):
    assert run(trace_dir, "play", "--w", "1", "--bob", "copycat", "--horizon", "10") == 0
    records = TraceStore.read(trace_dir / "play.jsonl")
    moves = [r for r in records if "ply" in r]
    assert len(moves) == 10
    assert moves[1]["player"] == "B" and moves[1]["coincidence"] == 0
    assert records[-2]["kind"] == "diagnostic"
    assert summary(trace_dir, "play")["coincidence"] == 0
    assert "coincidence=0" in capsys.readouterr().out


def test_play_several_w_in_workers(trace_dir):
    assert run(trace_dir, "play", "--w", "1", "2", "3", "--bob", "pass", "--horizon", "40", "--jobs", "2") == 0
    for w in (1, 2, 3):
        data = summary(trace_dir, f"play_w{w}")
        assert data["w"] == w
        assert data["coincidence"] is None


def test_estimate(trace_dir):
    assert run(trace_dir, "estimate", "--seq", "alt", "--mode", "M", "--n-hi", "8") == 0
    data = summary(trace_dir, "estimate")
    assert data["value"] == 4
    assert data["witness"] == "0001"

    assert run(trace_dir, "estimate", "--mode", "Minf-str", "--x", "1", "--n-hi", "10") == 0
    assert summary(trace_dir, "estimate")["value"] == 3


def test_estimate_on_game_trace(trace_dir):
    assert run(trace_dir, "play", "--w", "2", "--bob", "pass", "--horizon", "50") == 0
    play_trace = trace_dir / "play.jsonl"
    assert run(trace_dir, "estimate", "--seq", f"game-trace:{play_trace}", "--mode", "Minf-seq", "--n-lo", "2") == 0
    data = summary(trace_dir, "estimate")
    assert data["n_range"] == [2, 24]
    assert data["value"] == 3


def test_label(trace_dir):
    assert run(trace_dir, "label", "--k", "2", "--depth", "3", "--horizon", "10000", "--w", "2") == 0
    data = summary(trace_dir, "label")
    assert data["labels"] == {"000": 1, "111": 2}
    assert data["bits"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--k", "2", "--budget", "10000", "--max-len", "6"],
        ["trim", "--from-machine", "3", "--w", "3", "--depth", "4", "--horizon", "500", "--limit-trace"],
        ["play", "--w", "3", "--bob", "random:7", "--horizon", "300"],
        ["play", "--w", "4", "--bob", "blind:3", "--horizon", "300"],
        ["estimate", "--seq", "alt", "--mode", "Cinf-seq", "--n-lo", "3", "--n-hi", "9"],
    ],
)
def test_traces_are_byte_identical_across_runs(tmp_path, monkeypatch, argv):
    monkeypatch.delenv("AITGL_TRACE_DIR", raising=False)
    first, second = tmp_path / "a", tmp_path / "b"
    assert run(first, *argv) == 0
    assert run(second, *argv) == 0
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_shuffled_token_order_is_seeded(tmp_path, monkeypatch):
    monkeypatch.delenv("AITGL_TRACE_DIR", raising=False)
    source = TraceStore.write_string_set(tmp_path / "t.json", StringSet(["", "0", "1", "00", "10", "000", "101"]))
    outputs = []
    for name in ("a", "b"):
        assert run(tmp_path / name, "tokens", "--input", str(source), "--order", "shuffle:9") == 0
        outputs.append((tmp_path / name / "tokens.jsonl").read_bytes())
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["conjure"],
        ["enumerate", "--k", "2"],
        ["play", "--w", "0", "--bob", "pass", "--horizon", "5"],
        ["play", "--w", "1", "--bob", "sneaky", "--horizon", "5"],
        ["play", "--w", "99", "--bob", "pass", "--horizon", "5"],
        ["trim", "--w", "1", "--depth", "2", "--horizon", "2"],
        ["estimate", "--mode", "Minf-str"],
        ["estimate", "--mode", "M", "--n-lo", "5", "--n-hi", "2"],
        ["tokens", "--input", "missing.json"],
        ["play", "--w", "1", "--bob", "blind:30", "--horizon", "5"],
        ["enumerate", "--k", "30", "--max-len", "3"],
        ["trim", "--from-machine", "30", "--w", "1", "--depth", "2", "--horizon", "2"],
        ["label", "--k", "30", "--depth", "2", "--horizon", "2"],
    ],
)
def test_usage_errors_exit_1(trace_dir, argv, capsys):
    assert run(trace_dir, *argv) == 1
    assert "error:" in capsys.readouterr().err


def test_blind_bob_program_length_is_bounded(trace_dir, capsys):
    assert run(trace_dir, "play", "--w", "1", "--bob", "blind:17", "--horizon", "5") == 1
    assert "f_m=17 exceeds the limit 16" in capsys.readouterr().err
    assert run(trace_dir, "play", "--w", "1", "--bob", "blind:3", "--horizon", "5") == 0


def test_duplicate_observation_exits_1(trace_dir, tmp_path):
    source = tmp_path / "dup.json"
    source.write_text(json.dumps([{"s": "0", "len": 1}, {"s": "0", "len": 1}]), encoding="utf-8")
    assert run(trace_dir, "tokens", "--input", str(source), "--order", "file") == 1


def test_capacity_overflow_exits_2(trace_dir, tmp_path):
    source = TraceStore.write_string_set(tmp_path / "wide.json", StringSet(["0", "1"]))
    assert run(trace_dir, "tokens", "--input", str(source), "--w", "1") == 2


def test_rule_violation_exits_2(trace_dir, monkeypatch, capsys):
    def violating(*args, **kwargs):
        raise RuleViolation(1, 1, 3)

    monkeypatch.setattr(cli, "play_sweep", violating)
    assert run(trace_dir, "play", "--w", "1", "--bob", "pass", "--horizon", "5") == 2
    assert "alice_quota" in capsys.readouterr().err


def test_trace_dir_from_environment(tmp_path, monkeypatch):
    env_dir = tmp_path / "from-env"
    monkeypatch.setenv("AITGL_TRACE_DIR", str(env_dir))
    assert cli.main(["enumerate", "--k", "2", "--max-len", "2", "--out", str(tmp_path / "ignored")]) == 0
    assert (env_dir / "enumerate.jsonl").exists()
    assert not (tmp_path / "ignored").exists()
