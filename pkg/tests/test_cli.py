from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from drcembed.cli import (
    CSV_COLUMNS,
    ExperimentConfig,
    ResultRecord,
    batch_run,
    decode,
    encode,
    execute,
    expand_seeds,
    resolve_graph,
    rows_to_csv,
    run_cli,
)
from drcembed.errors import PreconditionError
from drcembed.generators import hypercube, paley
from drcembed.io import loads_graph, write_graph


def run(argv, capsys):
    code = run_cli(argv)
    out, err = capsys.readouterr()
    return code, out, err


def record(out: str) -> dict:
    return json.loads(out)


def test_gen_hypercube(capsys):
    code, out, _ = run(["gen", "--family", "hypercube", "--d", "3"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "p 8 12"
    assert loads_graph(out) == hypercube(3)


def test_gen_graph6_and_file(tmp_path, capsys):
    target = tmp_path / "c.g6"
    code, _, _ = run(["gen", "--family", "complete", "--n", "4", "--format", "graph6", "--out", str(target)], capsys)
    assert code == 0 and target.read_text() == "C~\n"


def test_oracle_ramsey_k3(capsys):
    code, out, _ = run(["oracle", "--op", "ramsey", "--h1", "k3", "--h2", "k3"], capsys)
    assert code == 0
    rec = record(out)
    assert rec["payload"]["value"] == 6 and rec["outcome"] == "success"


def test_embed_below_threshold_exit_2(capsys):
    code, out, err = run(
        ["embed", "--alg", "bipartite-dense", "--pattern", "c4", "--host", "gnp:50:1/2:1", "--epsilon", "1/2"], capsys
    )
    assert code == 2
    assert record(out)["outcome"] == "size-error"
    assert "N = 25 <" in err


def test_bad_algorithm_is_usage_error(capsys):
    code, _, _ = run(["embed", "--alg", "nope", "--pattern", "c4", "--host", "k5"], capsys)
    assert code == 1


def test_missing_file_is_usage_error(tmp_path, capsys):
    code, _, _ = run(["certify", "--host", str(tmp_path / "absent.txt")], capsys)
    assert code == 1


def test_budget_exceeded_exit_3(capsys):
    code, out, _ = run(["oracle", "--op", "count", "--pattern", "k4", "--host", "gnp:40:1/2:0", "--budget", "50"], capsys)
    assert code == 3 and record(out)["outcome"] == "budget-exceeded"


def test_embed_success_is_rechecked(capsys):
    code, out, _ = run(
        ["embed", "--alg", "bipartite-dense", "--pattern", "c4", "--host", "gnp:1100:55/100:0", "--epsilon", "1/2"], capsys
    )
    assert code == 0
    rec = record(out)
    assert rec["payload"]["independently_valid"] is True and len(rec["payload"]["mapping"]) == 4


def test_certify_and_verify(tmp_path, capsys):
    path = tmp_path / "p13.txt"
    write_graph(paley(13), path)
    code, out, _ = run(["certify", "--host", str(path)], capsys)
    assert code == 0
    lam = record(out)["payload"]["lambda"]
    assert abs(lam - (1 + 13**0.5) / 2) < 1e-9
    # 1 is a quadratic residue mod 13, so 0-1-2 is a path
    code, out, _ = run(["verify", "--pattern", "p3", "--host", str(path), "--mapping", "0,1,2"], capsys)
    assert code == 0 and record(out)["payload"]["valid"] is True
    code, out, _ = run(["verify", "--pattern", "k2", "--host", "k3", "--mapping", "0,0"], capsys)
    assert record(out)["payload"]["valid"] is False and code == 2


def test_run_is_deterministic(capsys):
    argv = ["drc", "--host", "gnp:200:1/2:3", "--epsilon", "1/2", "--t", "2", "--x", "3", "--seed", "5"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    a, b = ResultRecord.from_json(first), ResultRecord.from_json(second)
    assert a.payload_digest() == b.payload_digest() and a.inputs_digest == b.inputs_digest


def test_config_round_trip():
    cfg = ExperimentConfig("embed", {"host": "k5"}, {"epsilon": Fraction(1, 3), "alg": "degenerate"}, seed=4, budget=10)
    back = ExperimentConfig.from_json(cfg.to_json())
    assert back == cfg
    with pytest.raises(PreconditionError):
        ExperimentConfig.from_dict({"op": "embed", "surprise": 1})


def test_encode_decode_fractions():
    value = {"a": Fraction(2, 3), "b": [Fraction(1), 2.5, "x"]}
    assert decode(encode(value)) == {"a": Fraction(2, 3), "b": [Fraction(1), 2.5, "x"]}


def test_record_round_trip():
    rec = execute(ExperimentConfig("oracle", {"h1": "k3"}, {"op": "ramsey"}))
    back = ResultRecord.from_json(rec.to_json())
    assert back.payload == rec.payload and back.outcome == "success"


def test_resolve_graph_specs():
    assert resolve_graph("paley:5").m == 5
    assert resolve_graph("kb:2:3").m == 6
    assert resolve_graph("hypercube:2").m == 4
    with pytest.raises(PreconditionError):
        resolve_graph("gnp:x")
    with pytest.raises(PreconditionError):
        resolve_graph("z9")


def test_empty_batch():
    rows = batch_run([])
    assert rows == []
    assert rows_to_csv(rows) == ",".join(CSV_COLUMNS) + "\n"


def test_batch_isolates_bad_rows():
    configs = [
        {"op": "oracle", "inputs": {"h1": "k3"}, "params": {"op": "ramsey"}},
        {"op": "oracle", "bogus": True},
        {"op": "oracle", "inputs": {"host": "paley:17"}, "params": {"op": "clique"}},
        {"op": "embed", "inputs": {"pattern": "c4", "host": "k9"}, "params": {"alg": "bipartite-dense", "epsilon": "1/2"}},
    ]
    rows = batch_run(configs)
    assert [r["outcome"] for r in rows] == ["success", "usage-error", "success", "size-error"]
    assert rows[0]["value"] == 6 and rows[2]["value"] == 3
    assert rows[1]["error"]


def test_batch_workers_match_serial():
    configs = [ExperimentConfig("oracle", {"pattern": "c4", "host": "q3"}, {"op": "count"}, seed=s) for s in range(3)]
    assert [r["payload_digest"] for r in batch_run(configs, workers=2)] == [r["payload_digest"] for r in batch_run(configs)]


def test_expand_seeds():
    seeds = [c.seed for c in expand_seeds(ExperimentConfig("drc", seed=7), 3)]
    assert seeds == [7, 8, 9]


def test_batch_command(tmp_path, capsys):
    cfg = tmp_path / "b.jsonl"
    cfg.write_text(
        json.dumps({"op": "oracle", "inputs": {"pattern": "c4", "host": "q3"}, "params": {"op": "count"}})
        + "\nnot json\n\n"
    )
    out = tmp_path / "out.csv"
    code, _, _ = run(["batch", "--config", str(cfg), "--seeds", "2", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert list(rows[0]) == CSV_COLUMNS
    assert [r["outcome"] for r in rows] == ["success", "success", "usage-error"]
    assert rows[0]["value"] == "48"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "drcembed.cli", "oracle", "--op", "clique", "--host", "paley:13"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["value"] == 3
