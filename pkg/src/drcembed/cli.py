"""Command-line entry point, experiment configs, result records and batches.

Every subcommand except ``gen`` builds an :class:`ExperimentConfig`, runs
it through :func:`execute` and prints one JSON line (a
:class:`ResultRecord`).  Exit codes: 0 success, 1 usage error, 2 failed
hypothesis / size condition / best-effort failure / invalid embedding,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__, generators
from .bitset import mask_of, to_list
from .errors import (
    BudgetError,
    DrcEmbedError,
    EmbeddingFailure,
    HypothesisFailure,
    InternalError,
    PreconditionError,
    SizeError,
)
from .graph import INDUCED_PAIR, SUBGRAPH, BipartiteGraph, Embedding, Graph
from .io import dumps_graph, parse_coloring, parse_graph, to_graph6

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3

OUTCOME_EXIT = {
    "success": EXIT_OK,
    "usage-error": EXIT_USAGE,
    "hypothesis-failure": EXIT_HYPOTHESIS,
    "size-error": EXIT_HYPOTHESIS,
    "embedding-failure": EXIT_HYPOTHESIS,
    "invalid": EXIT_HYPOTHESIS,
    "budget-exceeded": EXIT_BUDGET,
}

_RATIONAL = re.compile(r"^-?\d+/\d+$")


# ---------------------------------------------------------------------------
# serialization helpers


def encode(value: Any) -> Any:
    """JSON-safe form: rationals as "num/den", tuples as lists, numpy scalars as Python numbers."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return [encode(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    return repr(value)


def decode(value: Any) -> Any:
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value)
    if isinstance(value, dict):
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


def canonical_json(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


# ---------------------------------------------------------------------------
# configs and records


@dataclass
class ExperimentConfig:
    """One run: operation id, named inputs (paths or graph specs), parameters and run controls.

    String parameters of the form ``num/den`` are read back as rationals.
    """

    op: str
    inputs: dict[str, str] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    trials: int | None = None
    budget: int | None = None
    out: str | None = None

    def to_dict(self) -> dict:
        return encode(asdict(self))

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        if not isinstance(d, dict) or "op" not in d:
            raise PreconditionError("config needs an 'op' field")
        unknown = set(d) - {"op", "inputs", "params", "seed", "trials", "budget", "out"}
        if unknown:
            raise PreconditionError(f"unknown config fields {sorted(unknown)}")
        return cls(
            op=d["op"],
            inputs=dict(d.get("inputs") or {}),
            params=decode(dict(d.get("params") or {})),
            seed=int(d.get("seed", 0)),
            trials=None if d.get("trials") is None else int(d["trials"]),
            budget=None if d.get("budget") is None else int(d["budget"]),
            out=d.get("out"),
        )

    @classmethod
    def from_json(cls, line: str) -> "ExperimentConfig":
        return cls.from_dict(json.loads(line))


@dataclass
class ResultRecord:
    op: str
    inputs_digest: str
    params: dict
    seed: int
    outcome: str
    payload: dict
    wall_time: float
    budget: int | None = None
    trials: int | None = None
    error: str | None = None
    schema: int = SCHEMA_VERSION
    version: str = __version__

    @property
    def exit_code(self) -> int:
        return OUTCOME_EXIT.get(self.outcome, EXIT_USAGE)

    @property
    def success(self) -> bool:
        return self.outcome == "success"

    def payload_digest(self) -> str:
        return digest(self.payload)

    def to_json(self) -> str:
        return json.dumps(encode(asdict(self)), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        d = json.loads(line)
        return cls(**d)


# ---------------------------------------------------------------------------
# input resolution


def resolve_graph(spec) -> Graph:
    """A graph from a file path or a spec such as ``k3``, ``gnp:200:1/2:7``, ``paley:13``, ``kb:3:4``."""
    if isinstance(spec, Graph):
        return spec
    s = str(spec)
    if Path(s).is_file():
        return parse_graph(s)
    parts = s.split(":")
    kind = parts[0].lower()
    try:
        if kind == "gnp":
            return generators.random_graph(int(parts[1]), Fraction(parts[2]), int(parts[3]) if len(parts) > 3 else 0)
        if kind == "bip":
            return generators.random_bipartite(int(parts[1]), Fraction(parts[2]), int(parts[3]) if len(parts) > 3 else 0)
        if kind == "paley":
            return generators.paley(int(parts[1]))
        if kind == "kb":
            return generators.complete_bipartite(int(parts[1]), int(parts[2]))
        if kind == "hypercube":
            return generators.hypercube(int(parts[1]))
    except (IndexError, ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"malformed graph spec {s!r}: {exc}") from None
    return generators.named_graph(s)


def _input_digest(cfg: ExperimentConfig) -> str:
    h = hashlib.sha256()
    for key in sorted(cfg.inputs):
        val = str(cfg.inputs[key])
        h.update(key.encode())
        p = Path(val)
        h.update(p.read_bytes() if p.is_file() else val.encode())
    h.update(canonical_json({"op": cfg.op, "params": cfg.params, "seed": cfg.seed}).encode())
    return h.hexdigest()


def _graph_input(cfg: ExperimentConfig, name: str) -> Graph:
    spec = cfg.inputs.get(name, cfg.params.get(name))
    if spec is None:
        raise PreconditionError(f"missing input {name!r}")
    return resolve_graph(spec)


def _frac(cfg: ExperimentConfig, name: str, default=None) -> Fraction:
    v = cfg.params.get(name, default)
    if v is None:
        raise PreconditionError(f"missing parameter {name!r}")
    return Fraction(v)


def _int(cfg: ExperimentConfig, name: str, default=None) -> int | None:
    v = cfg.params.get(name, default)
    return None if v is None else int(v)


def _int_list(v) -> list[int]:
    if v is None:
        return []
    if isinstance(v, str):
        return [int(x) for x in v.split(",") if x.strip()]
    return [int(x) for x in v]


def _embedding_payload(emb: Embedding) -> dict:
    return {
        "mapping": list(emb.mapping),
        "mode": emb.mode,
        "parts": [[to_list(a), to_list(b)] for a, b in emb.parts],
        "meta": encode(emb.meta),
    }


def _prefix_chain(sizes: Sequence[int], n: int) -> list[int]:
    if any(s > n for s in sizes) or list(sizes) != sorted(sizes, reverse=True):
        raise PreconditionError("nested sizes must be non-increasing and at most the host order")
    return [mask_of(range(s)) for s in sizes]


# ---------------------------------------------------------------------------
# operations


def op_drc(cfg: ExperimentConfig) -> dict:
    from .drc import DrcParams, drc_find_witness
    from .embedders._host import equal_part_host

    g = _graph_input(cfg, "host")
    host = g if isinstance(g, BipartiteGraph) and g.n1 == g.n2 else equal_part_host(g, cfg.seed).graph
    params = DrcParams(
        a=_int(cfg, "a", 1), d=_int(cfg, "d", 2), t=_int(cfg, "t", 2), x=_int(cfg, "x", 1), epsilon=_frac(cfg, "epsilon")
    )
    o = drc_find_witness(host, params, cfg.trials or 64, cfg.seed, budget=cfg.budget)
    return {
        "T": list(o.T),
        "A": to_list(o.A),
        "size": o.size,
        "size_bound": o.size_bound,
        "bad_count": o.bad_count,
        "bad_bound": o.bad_bound,
        "is_witness": o.is_witness,
        "method": o.method,
        "trial": o.trial,
        "value": o.size,
        "bound": o.size_bound,
    }


def op_embed(cfg: ExperimentConfig) -> dict:
    from . import embedders
    from .embedders.ledger import NestedFamily
    from .oracles import chromatic_partition, recheck_embedding

    alg = cfg.params.get("alg")
    h = _graph_input(cfg, "pattern")
    g = _graph_input(cfg, "host")
    seed, budget = cfg.seed, cfg.budget
    strict = not cfg.params.get("best_effort", False)
    second = None
    pattern_for_check = h
    if alg == "bipartite-dense":
        emb = embedders.embed_bipartite_dense(h, g, _frac(cfg, "epsilon"), seed, max_trials=cfg.trials or 64, budget=budget)
    elif alg == "degenerate":
        emb = embedders.embed_degenerate(
            h, g, _frac(cfg, "epsilon"), _frac(cfg, "delta", 1), seed, x=_int(cfg, "x"), retries=cfg.trials or 64, budget=budget
        )
    elif alg == "arrangeable":
        order = _int_list(cfg.params.get("ordering")) or list(range(h.n))
        emb = embedders.embed_arrangeable(
            h, order, _int(cfg, "p", 1), g, _frac(cfg, "epsilon"), seed,
            delta=_frac(cfg, "delta", 1), x=_int(cfg, "x"), retries=cfg.trials or 64, budget=budget,
        )
    elif alg == "chromatic":
        nested = NestedFamily(_prefix_chain(_int_list(cfg.params.get("nested")), g.n))
        emb = embedders.embed_chromatic(h, chromatic_partition(h), g, nested, _int(cfg, "x", 1), _int(cfg, "d"), strict=strict, budget=budget)
    elif alg == "subdivision":
        from .generators import one_subdivision

        emb = embedders.embed_subdivision(h, g, _frac(cfg, "epsilon"), seed, retries=cfg.trials or 64)
        pattern_for_check = one_subdivision(h)
    elif alg == "induced":
        nested = NestedFamily(_prefix_chain(_int_list(cfg.params.get("nested")), g.n))
        second = _graph_input(cfg, "second") if ("second" in cfg.inputs or "second" in cfg.params) else g.complement()
        emb = embedders.embed_induced(h, g, second, nested, _int(cfg, "m", 2 * h.n), strict=strict, budget=budget, seed=seed)
    else:
        raise PreconditionError(f"unknown embedding algorithm {alg!r}")
    payload = _embedding_payload(emb)
    payload["independently_valid"] = recheck_embedding(pattern_for_check, g, emb, second)
    return payload


def op_oracle(cfg: ExperimentConfig) -> dict:
    from . import oracles

    which = cfg.params.get("op")
    budget = cfg.budget
    if which in ("count", "count-induced"):
        mode = oracles.INDUCED_MODE if which == "count-induced" else oracles.SUBGRAPH_MODE
        return {"value": oracles.count_labeled_copies(_graph_input(cfg, "pattern"), _graph_input(cfg, "host"), mode, budget=budget)}
    if which == "induced":
        w = oracles.find_induced(_graph_input(cfg, "pattern"), _graph_input(cfg, "host"), budget=budget)
        return {"value": w is not None, "witness": None if w is None else list(w)}
    if which == "universal":
        return {"value": oracles.universality_check(_graph_input(cfg, "host"), _int(cfg, "n"), budget=budget)}
    if which in ("clique", "independent"):
        fn = oracles.max_clique if which == "clique" else oracles.max_independent_set
        s = fn(_graph_input(cfg, "host"), budget=budget)
        return {"value": s.bit_count(), "witness": to_list(s)}
    if which == "chromatic":
        classes = oracles.chromatic_partition(_graph_input(cfg, "pattern"), budget=budget)
        return {"value": len(classes), "witness": [to_list(c) for c in classes]}
    if which == "ramsey":
        h1 = _graph_input(cfg, "h1")
        h2 = _graph_input(cfg, "h2") if ("h2" in cfg.inputs or "h2" in cfg.params) else h1
        return {"value": oracles.ramsey_exact(h1, h2, _int(cfg, "nmax", 8), budget=budget)}
    if which == "mono":
        return {"value": oracles.min_mono_copies(_graph_input(cfg, "pattern"), _int(cfg, "N"), budget=budget)}
    raise PreconditionError(f"unknown oracle operation {which!r}")


def _coloring_input(cfg: ExperimentConfig):
    from .ramsey_lab import EdgeColoring

    if "coloring" in cfg.inputs:
        return parse_coloring(cfg.inputs["coloring"])
    k = _int(cfg, "k", 2)
    cseed = _int(cfg, "coloring_seed", cfg.seed)
    if "host" in cfg.inputs or "host" in cfg.params:
        return EdgeColoring.random(_graph_input(cfg, "host"), k, cseed)
    N = _int(cfg, "N")
    if N is None:
        raise PreconditionError("need a coloring file, a host, or N for a random colouring of K_N")
    return EdgeColoring.random_complete(N, k, cseed)


def op_ramsey(cfg: ExperimentConfig) -> dict:
    from . import ramsey_lab as rl

    driver = cfg.params.get("driver")
    seed, budget = cfg.seed, cfg.budget
    if driver == "mono2":
        col = _coloring_input(cfg)
        c, emb = rl.mono_embed_2color(_graph_input(cfg, "pattern"), col, seed, override=bool(cfg.params.get("override")), budget=budget)
        return {"color": c, **_embedding_payload(emb)}
    if driver == "multicolor":
        col = _coloring_input(cfg)
        specs = cfg.params.get("patterns") or cfg.params.get("pattern")
        specs = specs.split(",") if isinstance(specs, str) else list(specs)
        if len(specs) == 1:
            specs = specs * col.k
        c, emb = rl.multicolor_bipartite_driver([resolve_graph(s) for s in specs], col, seed, budget=budget)
        return {"color": c, **_embedding_payload(emb)}
    if driver == "induced":
        col = _coloring_input(cfg)
        cert = None
        if cfg.params.get("target_p") is not None:
            cert = rl.certify_pseudorandom(col.host, "sampled", p=_frac(cfg, "target_p"), seed=seed)
        c, emb = rl.induced_ramsey_driver(
            _graph_input(cfg, "pattern"), col.host, col, seed, certificate=cert, m=_int(cfg, "m"), t=_int(cfg, "t"), budget=budget
        )
        return {"color": c, **_embedding_payload(emb)}
    if driver == "erdos-hajnal":
        g = _graph_input(cfg, "host")
        t = _int(cfg, "t", 2)
        res = rl.erdos_hajnal_driver(g, t, seed=seed, budget=budget)
        if not res.ok:
            raise EmbeddingFailure(res.details.get("reason", "no outcome"), details=res.details)
        return {"kind": res.kind, "left": to_list(res.left), "right": to_list(res.right), "valid": rl.validate_eh(g, res, t)}
    if driver == "bidense":
        g = _graph_input(cfg, "host")
        out = rl.bidense_search(g, _int(cfg, "z", 1), _frac(cfg, "epsilon", Fraction(1, 4)), seed=seed)
        return {"found": out.found, "w1": to_list(out.w1), "w2": to_list(out.w2), "candidates": out.candidates, "source": out.source}
    raise PreconditionError(f"unknown ramsey driver {driver!r}")


def op_certify(cfg: ExperimentConfig) -> dict:
    from .ramsey_lab import certify_pseudorandom

    g = _graph_input(cfg, "host")
    method = cfg.params.get("method", "spectral")
    p = cfg.params.get("p")
    cert = certify_pseudorandom(g, method, samples=cfg.trials or 1000, seed=cfg.seed, p=None if p is None else Fraction(p))
    return {"p": cert.p, "lambda": cert.lam, "method": cert.method, "evidence": cert.evidence, "value": cert.lam}


def op_verify(cfg: ExperimentConfig) -> dict:
    from .oracles import recheck_embedding

    h = _graph_input(cfg, "pattern")
    g = _graph_input(cfg, "host")
    mode = cfg.params.get("mode", "subgraph")
    mapping = tuple(_int_list(cfg.params.get("mapping")))
    second = None
    if mode == "induced":
        emb = Embedding(mapping, INDUCED_PAIR)
        if "second" in cfg.inputs or "second" in cfg.params:
            second = _graph_input(cfg, "second")
    elif mode == "subgraph":
        emb = Embedding(mapping, SUBGRAPH)
    else:
        raise PreconditionError(f"unknown verification mode {mode!r}")
    return {"valid": recheck_embedding(h, g, emb, second), "mapping": list(mapping)}


OPERATIONS: dict[str, Callable[[ExperimentConfig], dict]] = {
    "drc": op_drc,
    "embed": op_embed,
    "oracle": op_oracle,
    "ramsey": op_ramsey,
    "certify": op_certify,
    "verify": op_verify,
}


def classify(exc: BaseException) -> str:
    if isinstance(exc, InternalError):
        raise exc
    if isinstance(exc, BudgetError):
        return "budget-exceeded"
    if isinstance(exc, SizeError):
        return "size-error"
    if isinstance(exc, HypothesisFailure):
        return "hypothesis-failure"
    if isinstance(exc, EmbeddingFailure):
        return "embedding-failure"
    return "usage-error"


def execute(cfg: ExperimentConfig) -> ResultRecord:
    """Run one config; library errors become failure outcomes, internal errors propagate."""
    start = time.perf_counter()
    payload: dict = {}
    error = None
    try:
        fn = OPERATIONS.get(cfg.op)
        if fn is None:
            raise PreconditionError(f"unknown operation {cfg.op!r}")
        in_digest = _input_digest(cfg)
        payload = encode(fn(cfg))
        outcome = "success"
        if payload.get("valid") is False or payload.get("independently_valid") is False:
            outcome = "invalid"
    except (DrcEmbedError, OSError, ValueError) as exc:
        if isinstance(exc, InternalError):
            raise
        outcome = classify(exc) if isinstance(exc, DrcEmbedError) else "usage-error"
        error = f"{type(exc).__name__}: {exc}"
        details = getattr(exc, "details", None)
        if details:
            payload = {"details": encode(details)}
        level = getattr(exc, "level", None)
        if level is not None:
            payload["level"] = level
        try:
            in_digest = _input_digest(cfg)
        except OSError:
            in_digest = ""
    return ResultRecord(
        op=cfg.op,
        inputs_digest=in_digest,
        params=encode(cfg.params),
        seed=cfg.seed,
        outcome=outcome,
        payload=payload,
        wall_time=time.perf_counter() - start,
        budget=cfg.budget,
        trials=cfg.trials,
        error=error,
    )


# ---------------------------------------------------------------------------
# batches

CSV_COLUMNS = ["trial", "op", "seed", "outcome", "success", "value", "bound", "ratio", "wall_time", "payload_digest", "error"]


def _row(index: int, rec: ResultRecord) -> dict:
    value = rec.payload.get("value") if isinstance(rec.payload, dict) else None
    bound = rec.payload.get("bound") if isinstance(rec.payload, dict) else None
    ratio = None
    try:
        if value is not None and bound is not None and float(Fraction(bound)) != 0:
            ratio = float(Fraction(value) / Fraction(bound))
    except (TypeError, ValueError):
        ratio = None
    return {
        "trial": index,
        "op": rec.op,
        "seed": rec.seed,
        "outcome": rec.outcome,
        "success": rec.success,
        "value": value,
        "bound": bound,
        "ratio": ratio,
        "wall_time": f"{rec.wall_time:.6f}",
        "payload_digest": rec.payload_digest(),
        "error": rec.error or "",
    }


def _run_entry(entry) -> ResultRecord:
    index, raw = entry
    try:
        cfg = raw if isinstance(raw, ExperimentConfig) else ExperimentConfig.from_dict(raw)
    except (DrcEmbedError, TypeError, ValueError) as exc:
        return ResultRecord("?", "", {}, 0, "usage-error", {}, 0.0, error=f"{type(exc).__name__}: {exc}")
    try:
        return execute(cfg)
    except InternalError as exc:
        return ResultRecord(cfg.op, "", encode(cfg.params), cfg.seed, "internal-error", {}, 0.0, error=str(exc))


def batch_run(configs: Sequence, *, workers: int = 1) -> list[dict]:
    """One CSV-ready row per config, in input order; per-trial errors never abort the batch."""
    entries = list(enumerate(configs))
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_entry, entries))
    else:
        records = [_run_entry(e) for e in entries]
    return [_row(i, r) for i, r in enumerate(records)]


def rows_to_csv(rows: list[dict]) -> str:
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def expand_seeds(cfg: ExperimentConfig, count: int) -> list[ExperimentConfig]:
    return [ExperimentConfig(cfg.op, dict(cfg.inputs), dict(cfg.params), cfg.seed + i, cfg.trials, cfg.budget, cfg.out) for i in range(count)]


# ---------------------------------------------------------------------------
# argument parsing


def _gen(args) -> Graph:
    fam = args.family
    n = args.n
    p = Fraction(args.p) if args.p is not None else Fraction(1, 2)
    if fam == "hypercube":
        return generators.hypercube(args.d)
    if fam == "complete":
        return generators.complete(n)
    if fam == "empty":
        return generators.empty(n)
    if fam == "cycle":
        return generators.cycle(n)
    if fam == "path":
        return generators.path(n)
    if fam == "star":
        return generators.star(n)
    if fam == "matching":
        return generators.perfect_matching(n)
    if fam == "complete-bipartite":
        return generators.complete_bipartite(n, args.n2 if args.n2 is not None else n)
    if fam == "random":
        return generators.random_graph(n, p, args.seed)
    if fam == "random-bipartite":
        return generators.random_bipartite(n, p, args.seed, args.n2)
    if fam == "degenerate":
        return generators.random_d_degenerate(n, args.d, args.max_degree, args.seed)
    if fam == "bipartite-degenerate":
        return generators.random_bipartite_degenerate(n, args.n2 if args.n2 is not None else n, args.d, args.max_degree, args.seed)
    if fam == "paley":
        return generators.paley(n)
    if fam == "named":
        return generators.named_graph(args.name)
    raise PreconditionError(f"unknown family {fam!r}")


FAMILIES = [
    "hypercube", "complete", "empty", "cycle", "path", "star", "matching", "complete-bipartite",
    "random", "random-bipartite", "degenerate", "bipartite-degenerate", "paley", "named",
]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="drcembed", description="Dependent random choice embeddings and oracles.")
    parser.add_argument("--version", action="version", version=f"drcembed {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a graph family as an edge list")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--n2", type=int, default=None)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--p", default=None)
    g.add_argument("--max-degree", type=int, default=None)
    g.add_argument("--name", default=None)
    g.add_argument("--format", choices=["edgelist", "graph6"], default="edgelist")

    d = sub.add_parser("drc", parents=[common], help="dependent random choice on a host")
    d.add_argument("--host", required=True)
    for name in ("a", "d", "t", "x"):
        d.add_argument(f"--{name}", type=int, default=None)
    d.add_argument("--epsilon", required=True)

    e = sub.add_parser("embed", parents=[common], help="run an embedder")
    e.add_argument("--alg", required=True, choices=["bipartite-dense", "degenerate", "arrangeable", "chromatic", "subdivision", "induced"])
    e.add_argument("--pattern", required=True)
    e.add_argument("--host", required=True)
    e.add_argument("--second", default=None, help="graph carrying pattern non-edges (induced; default: complement)")
    e.add_argument("--epsilon", default=None)
    e.add_argument("--delta", default=None)
    e.add_argument("--x", type=int, default=None)
    e.add_argument("--d", type=int, default=None)
    e.add_argument("--p", type=int, default=None)
    e.add_argument("--m", type=int, default=None)
    e.add_argument("--ordering", default=None)
    e.add_argument("--nested", default=None, help="comma-separated prefix sizes of the nested chain")
    e.add_argument("--best-effort", action="store_true")

    o = sub.add_parser("oracle", parents=[common], help="exact brute-force computations")
    o.add_argument("--op", required=True, choices=["count", "count-induced", "induced", "universal", "clique", "independent", "chromatic", "ramsey", "mono"])
    o.add_argument("--pattern", default=None)
    o.add_argument("--host", default=None)
    o.add_argument("--h1", default=None)
    o.add_argument("--h2", default=None)
    o.add_argument("--nmax", type=int, default=None)
    o.add_argument("--n", type=int, default=None)
    o.add_argument("--N", type=int, default=None)

    r = sub.add_parser("ramsey", parents=[common], help="Ramsey-type drivers")
    r.add_argument("--driver", required=True, choices=["mono2", "multicolor", "induced", "erdos-hajnal", "bidense"])
    r.add_argument("--pattern", default=None)
    r.add_argument("--patterns", default=None)
    r.add_argument("--coloring", default=None)
    r.add_argument("--host", default=None)
    r.add_argument("--N", type=int, default=None)
    r.add_argument("--k", type=int, default=None)
    r.add_argument("--t", type=int, default=None)
    r.add_argument("--z", type=int, default=None)
    r.add_argument("--m", type=int, default=None)
    r.add_argument("--epsilon", default=None)
    r.add_argument("--target-p", default=None)
    r.add_argument("--override", action="store_true")

    c = sub.add_parser("certify", parents=[common], help="pseudo-randomness certificate")
    c.add_argument("--host", required=True)
    c.add_argument("--method", choices=["spectral", "sampled"], default="spectral")
    c.add_argument("--p", default=None)

    v = sub.add_parser("verify", parents=[common], help="re-check a claimed embedding")
    v.add_argument("--pattern", required=True)
    v.add_argument("--host", required=True)
    v.add_argument("--mapping", required=True)
    v.add_argument("--mode", choices=["subgraph", "induced"], default="subgraph")
    v.add_argument("--second", default=None)

    b = sub.add_parser("batch", parents=[common], help="run a JSONL file of configs, write CSV")
    b.add_argument("--config", required=True)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--seeds", type=int, default=1, help="expand each config over this many consecutive seeds")
    return parser


_INPUT_KEYS = {"host", "pattern", "second", "coloring", "h1", "h2"}
_SKIP = {"command", "seed", "trials", "budget", "out", "format"}


def config_from_args(args) -> ExperimentConfig:
    inputs, params = {}, {}
    for key, val in vars(args).items():
        if key in _SKIP or val is None or val is False:
            continue
        if key in _INPUT_KEYS:
            inputs[key] = val
        elif key in ("epsilon", "delta", "target_p", "p") and isinstance(val, str):
            params[key] = Fraction(val)
        else:
            params[key] = val
    return ExperimentConfig(args.command, inputs, params, args.seed, args.trials, args.budget, args.out)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "gen":
        try:
            g = _gen(args)
        except (DrcEmbedError, ValueError, TypeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        _emit(to_graph6(g) + "\n" if args.format == "graph6" else dumps_graph(g), args.out)
        return EXIT_OK
    if args.command == "batch":
        try:
            lines = Path(args.config).read_text().splitlines()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        configs: list = []
        for line in lines:
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                cfg = ExperimentConfig.from_dict(raw)
                configs.extend(expand_seeds(cfg, args.seeds))
            except (ValueError, DrcEmbedError):
                configs.append({"malformed": line})
        rows = batch_run(configs, workers=args.workers)
        _emit(rows_to_csv(rows), args.out)
        return EXIT_OK
    cfg = config_from_args(args)
    rec = execute(cfg)
    _emit(rec.to_json() + "\n", args.out)
    if rec.error:
        print(f"{rec.outcome}: {rec.error}", file=sys.stderr)
    return rec.exit_code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
