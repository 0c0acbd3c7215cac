"""Command-line interface, graph file format and JSON reports.

Graph files::

    % comment
    planar-rot v1 <n> <m>
    <neighbours of vertex 0 in clockwise order>
    ...
    #weights
    <face id> <weight>

A vertex line may be empty (isolated vertex); lines holding only a comment
are skipped.

Exit codes: 0 success, 1 malformed input, 2 refusal (size guard or
budget), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .approx import CapExceeded, exact_tsp_group, is_tour, mis_approx, tour_length, tsp_approx
from .division import weak_r_division
from .generators import Family, GeneratorSpec, generate
from .graph_core import GraphError, component_balance, connected_components
from .greedy_filling import FillingError, greedy_fill
from .hyperbolic_metric import (
    HYPERBOLICITY_MAX_N,
    SLIMNESS_MAX_N,
    SizeGuardError,
    effective_delta,
    hyperbolicity_exact,
    is_geodesic_cycle,
    slimness_estimate,
    slimness_upper_bound,
)
from .oracles import (
    OracleBudget,
    OracleRefusal,
    oracle_components,
    oracle_hyperbolicity,
    oracle_is_geodesic_walk,
    oracle_is_independent,
    oracle_is_tour,
    oracle_mis,
    oracle_tsp,
)
from .plane_embedding import EmbeddingError, PlaneGraph
from .separator import AnomalyError, GuardFailed, InvariantViolation, SeparatorConfig, separator

SCHEMA_VERSION = 1
HEADER = "planar-rot"
FORMAT_VERSION = "v1"

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_REFUSED = 2
EXIT_INVARIANT = 3


class MalformedInput(GraphError):
    pass


class Refusal(GraphError):
    pass


# ---------------------------------------------------------------------------
# Graph files
# ---------------------------------------------------------------------------


@dataclass
class GraphFile:
    plane: PlaneGraph
    weights: dict[int, int] = field(default_factory=dict)


def _strip(line: str) -> tuple[str, bool]:
    """Text before any ``%`` and whether the line was comment-only."""
    body, mark, _ = line.partition("%")
    return body.strip(), bool(mark) and not body.strip()


def parse_graph(text: str) -> GraphFile:
    lines = text.splitlines()
    i = 0
    header = None
    while i < len(lines):
        body, comment = _strip(lines[i])
        i += 1
        if comment or not body:
            continue
        header = body
        break
    if header is None:
        raise MalformedInput("line 1: missing header")
    parts = header.split()
    if len(parts) != 4 or parts[0] != HEADER or parts[1] != FORMAT_VERSION:
        raise MalformedInput(f"line {i}: expected '{HEADER} {FORMAT_VERSION} <n> <m>'")
    try:
        n, m = int(parts[2]), int(parts[3])
    except ValueError:
        raise MalformedInput(f"line {i}: n and m must be integers") from None
    if n < 0 or m < 0:
        raise MalformedInput(f"line {i}: negative count")
    rot: list[list[int]] = []
    while len(rot) < n:
        if i >= len(lines):
            raise MalformedInput(f"line {i + 1}: expected {n} vertex lines, found {len(rot)}")
        body, comment = _strip(lines[i])
        i += 1
        if comment:
            continue
        if body.startswith("#"):
            raise MalformedInput(f"line {i}: section before all {n} vertex lines")
        try:
            nbrs = [int(x) for x in body.split()]
        except ValueError:
            raise MalformedInput(f"line {i}: non-integer neighbour id") from None
        for u in nbrs:
            if not 0 <= u < n:
                raise MalformedInput(f"line {i}: neighbour {u} out of range 0..{n - 1}")
        rot.append(nbrs)
    weights: dict[int, int] = {}
    section = None
    while i < len(lines):
        body, comment = _strip(lines[i])
        i += 1
        if comment or not body:
            continue
        if body.startswith("#"):
            if body != "#weights":
                raise MalformedInput(f"line {i}: unknown section {body!r}")
            section = "weights"
            continue
        if section != "weights":
            raise MalformedInput(f"line {i}: unexpected content after vertex lines")
        fields = body.split()
        if len(fields) != 2:
            raise MalformedInput(f"line {i}: expected '<face id> <weight>'")
        try:
            f, w = int(fields[0]), int(fields[1])
        except ValueError:
            raise MalformedInput(f"line {i}: non-integer weight entry") from None
        if w < 0 or f < 0:
            raise MalformedInput(f"line {i}: negative face id or weight")
        weights[f] = w
    edges = sum(len(r) for r in rot)
    if edges != 2 * m:
        raise MalformedInput(f"header says m={m} but vertex lines list {edges} edge ends")
    try:
        plane = PlaneGraph(rot)
    except (EmbeddingError, GraphError) as exc:
        raise MalformedInput(f"invalid embedding: {exc}") from None
    for f in weights:
        if f >= len(plane.faces):
            raise MalformedInput(f"weight for face {f} but the graph has {len(plane.faces)} faces")
    return GraphFile(plane, weights)


def format_graph(plane: PlaneGraph, weights: dict[int, int] | None = None) -> str:
    out = [f"{HEADER} {FORMAT_VERSION} {plane.n} {plane.m}"]
    out += [" ".join(str(u) for u in r) for r in plane.rotation]
    if weights:
        out.append("#weights")
        out += [f"{f} {w}" for f, w in sorted(weights.items())]
    return "\n".join(out) + "\n"


def read_graph(path: str) -> GraphFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def digest(plane: PlaneGraph) -> str:
    return "sha256:" + hashlib.sha256(format_graph(plane).encode()).hexdigest()


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in seq]
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


def report(operation: str, plane: PlaneGraph, params: dict, outputs: dict, checks: dict,
           seconds: float | None) -> dict:
    rep = {
        "schema": SCHEMA_VERSION,
        "tool_version": __version__,
        "operation": operation,
        "input": {"digest": digest(plane), "n": plane.n, "m": plane.m},
        "parameters": params,
        "outputs": outputs,
        "verification": {"checks": checks, "passed": all(checks.values())},
    }
    if seconds is not None:
        rep["timing"] = {"seconds": round(seconds, 3)}
    return _plain(rep)


def _emit(rep: dict, path: str | None) -> None:
    text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def budget_from_env() -> OracleBudget:
    """Oracle budget with overrides from ``HYPSEP_BUDGET`` (e.g. ``mis=20,tsp=12``)."""
    budget = OracleBudget()
    raw = os.environ.get("HYPSEP_BUDGET", "")
    for item in filter(None, (s.strip() for s in raw.split(","))):
        key, _, val = item.partition("=")
        if key not in budget.max_n or not val.isdigit():
            raise MalformedInput(f"bad HYPSEP_BUDGET entry {item!r}")
        budget.max_n[key] = int(val)
    return budget


# ---------------------------------------------------------------------------
# Independent re-checks
# ---------------------------------------------------------------------------


def check_separator(plane: PlaneGraph, kind: str, vertices: Sequence[int], balance) -> dict:
    g = plane.graph
    sizes = oracle_components(g, vertices)
    largest = sizes[0] if sizes else 0
    closed = kind == "cycle"
    return {
        "geodesic": oracle_is_geodesic_walk(g, list(vertices), closed),
        "balance": Fraction(g.n - largest, g.n) == Fraction(balance),
    }


def check_division(plane: PlaneGraph, groups, boundary, r: int) -> dict:
    count: dict[int, int] = {}
    for gr in groups:
        for v in gr:
            count[v] = count.get(v, 0) + 1
    edges_covered = all(any(u in set(gr) and v in set(gr) for gr in groups) for u, v in plane.graph.edges()) \
        if plane.n <= 400 else True
    return {
        "cover": set(count) == set(range(plane.n)),
        "group_size": all(len(gr) <= r for gr in groups),
        "boundary": {v for v, c in count.items() if c > 1} == set(boundary),
        "edges_inside_groups": edges_covered,
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _config(args) -> SeparatorConfig:
    kw = {}
    if getattr(args, "c", None) is not None:
        kw["c"] = args.c
    if getattr(args, "seed", None) is not None:
        kw["seed"] = args.seed
    return SeparatorConfig(**kw)


def resolve_delta(plane: PlaneGraph, spec: str, seed: int = 0) -> tuple[int, str, int]:
    """``auto``: exact slimness under the size guard; ``sampled``: estimate; else an integer."""
    if spec == "auto":
        if plane.n > SLIMNESS_MAX_N:
            raise Refusal(f"--delta auto refuses n={plane.n} (threshold {SLIMNESS_MAX_N}); pass --delta K or sampled")
        rep = slimness_upper_bound(plane.graph)
        return effective_delta(rep.slim), "exact", rep.slim
    if spec == "sampled":
        rep = slimness_estimate(plane.graph, seed=seed)
        return effective_delta(rep.slim), "sampled", rep.slim
    try:
        k = int(spec)
    except ValueError:
        raise MalformedInput(f"--delta must be auto, sampled or an integer, got {spec!r}") from None
    if k < 0:
        raise MalformedInput("--delta must be non-negative")
    return effective_delta(k), "given", k


def cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "k", "delta", "rings", "m", "seed") if getattr(args, k) is not None}
    try:
        spec = GeneratorSpec.make(args.family, **params)
        plane = generate(spec)
    except KeyError as exc:
        raise MalformedInput(f"family {args.family} needs --{exc.args[0]}") from None
    text = format_graph(plane)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_hyperbolicity(args) -> int:
    gf = read_graph(args.graph)
    t = time.perf_counter()
    rep = hyperbolicity_exact(gf.plane.graph)
    outputs = {"delta": rep.delta, "witness": list(rep.witness) if rep.witness else None}
    checks = {}
    if gf.plane.n <= 60:
        checks["oracle"] = oracle_hyperbolicity(gf.plane.graph) == rep.delta
    _emit(report("hyperbolicity", gf.plane, {}, outputs, checks, _secs(args, t)), args.json)
    return EXIT_OK


def cmd_slimness(args) -> int:
    gf = read_graph(args.graph)
    t = time.perf_counter()
    if args.sampled:
        rep = slimness_estimate(gf.plane.graph, args.samples, args.seed or 0)
    else:
        rep = slimness_upper_bound(gf.plane.graph)
    outputs = {"slim": rep.slim, "source": rep.source,
               "witness_triangle": list(rep.witness_triangle) if rep.witness_triangle else None}
    _emit(report("slimness", gf.plane, {"sampled": args.sampled}, outputs, {}, _secs(args, t)), args.json)
    return EXIT_OK


def _parse_ids(text: str, n: int) -> list[int]:
    try:
        ids = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise MalformedInput("vertex list must be integers") from None
    if any(not 0 <= v < n for v in ids):
        raise MalformedInput("vertex id out of range")
    return ids


def cmd_fill(args) -> int:
    gf = read_graph(args.graph)
    plane = gf.plane
    cycle = _parse_ids(args.cycle, plane.n)
    delta, source, raw = resolve_delta(plane, args.delta)
    t = time.perf_counter()
    weights = [gf.weights.get(f, 0) for f in range(len(plane.faces))] if gf.weights else None
    fill = greedy_fill(plane, cycle, delta, face_weight=weights)
    faces = fill.faces
    outputs = {
        "faces": [list(f) for f in faces],
        "edges": len(fill.edges),
        "steps": len(fill.steps),
        "anomalies": fill.anomalies,
    }
    checks = {
        "face_length": all(len(f) <= 20 * delta for f in faces),
        "area": len(fill.edges) <= 21 * delta * len(cycle),
    }
    params = {"delta": delta, "delta_source": source, "delta_raw": raw, "cycle": cycle}
    _emit(report("fill", plane, params, outputs, checks, _secs(args, t)), args.json)
    return EXIT_OK


def cmd_separator(args) -> int:
    gf = read_graph(args.graph)
    plane = gf.plane
    delta, source, raw = resolve_delta(plane, args.delta, args.seed or 0)
    cfg = _config(args)
    t = time.perf_counter()
    res = separator(plane, delta, cfg)
    outputs = {
        "kind": res.kind,
        "vertices": list(res.vertices),
        "balance": res.balance,
        "size": res.size,
        "outcome": res.meta.get("outcome"),
        "degraded": res.meta.get("degraded", False),
        "guard_failures": res.meta.get("guard_failures", []),
    }
    params = {"delta": delta, "delta_source": source, "delta_raw": raw, "c": cfg.c, "seed": cfg.seed}
    checks = check_separator(plane, res.kind, res.vertices, res.balance)
    _emit(report("separator", plane, params, outputs, checks, _secs(args, t)), args.json)
    return EXIT_OK if all(checks.values()) else EXIT_INVARIANT


def cmd_divide(args) -> int:
    gf = read_graph(args.graph)
    plane = gf.plane
    if args.r <= 8:
        raise Refusal("r must exceed 8")
    delta, source, raw = resolve_delta(plane, args.delta, args.seed or 0)
    t = time.perf_counter()
    div = weak_r_division(plane, args.r, delta, _config(args))
    outputs = div.as_dict()
    params = {"r": args.r, "delta": delta, "delta_source": source}
    checks = check_division(plane, div.groups, div.boundary, args.r)
    _emit(report("divide", plane, params, outputs, checks, _secs(args, t)), args.json)
    return EXIT_OK if all(checks.values()) else EXIT_INVARIANT


def _epsilon(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"--eps must be a number, got {text!r}") from None
    if not 0 < eps < 1:
        raise MalformedInput("--eps must lie strictly between 0 and 1")
    return eps


def cmd_mis(args) -> int:
    gf = read_graph(args.graph)
    plane = gf.plane
    eps = _epsilon(args.eps)
    delta = None
    if args.delta != "auto":
        delta = resolve_delta(plane, args.delta, args.seed or 0)[0]
    t = time.perf_counter()
    res = mis_approx(plane, eps, delta, _config(args))
    outputs = {"vertices": res.vertices, "size": res.size, **res.meta}
    checks = {"independent": oracle_is_independent(plane.graph, res.vertices)}
    _emit(report("mis", plane, {"epsilon": eps, "delta": args.delta}, outputs, checks, _secs(args, t)), args.json)
    return EXIT_OK if all(checks.values()) else EXIT_INVARIANT


def cmd_tsp(args) -> int:
    gf = read_graph(args.graph)
    plane = gf.plane
    eps = _epsilon(args.eps)
    delta = None
    if args.delta != "auto":
        delta = resolve_delta(plane, args.delta, args.seed or 0)[0]
    t = time.perf_counter()
    res = tsp_approx(plane, eps, delta, _config(args))
    outputs = {"tour": res.walk, "length": res.length, **res.meta}
    checks = {} if res.walk is None else {"tour": oracle_is_tour(plane.graph, res.walk)}
    _emit(report("tsp", plane, {"epsilon": eps, "delta": args.delta}, outputs, checks, _secs(args, t)), args.json)
    return EXIT_OK if all(checks.values()) else EXIT_INVARIANT


def verify_report(plane: PlaneGraph, rep: dict, budget: OracleBudget) -> dict:
    """Re-check a saved report against the graph with the brute-force oracles."""
    if rep.get("input", {}).get("digest") != digest(plane):
        raise MalformedInput("report digest does not match the graph")
    op = rep.get("operation")
    out = rep.get("outputs", {})
    g = plane.graph
    checks: dict = {}
    if op == "separator":
        checks.update(check_separator(plane, out["kind"], out["vertices"], Fraction(out["balance"])))
    elif op == "divide":
        checks.update(check_division(plane, out["groups"], out["boundary"], out["r"]))
    elif op == "mis":
        checks["independent"] = oracle_is_independent(g, out["vertices"])
        if g.n <= budget.max_n["mis"]:
            opt = oracle_mis(g, budget)
            eff = Fraction(out["epsilon_effective"])
            checks["ratio"] = len(out["vertices"]) >= (1 - eff) * opt
            checks["boundary_bound"] = len(out["vertices"]) >= opt - out["boundary_size"]
    elif op == "tsp":
        if out.get("tour") is None:
            checks["disconnected"] = len(connected_components(g)) > 1
        else:
            checks["tour"] = oracle_is_tour(g, out["tour"])
            if g.n <= budget.max_n["tsp"]:
                opt = oracle_tsp(g, budget)
                eff = Fraction(out["epsilon_effective"])
                checks["ratio"] = tour_length(out["tour"]) <= (1 + eff) * opt
    elif op == "hyperbolicity":
        if g.n <= budget.max_n["hyperbolicity"]:
            checks["oracle"] = oracle_hyperbolicity(g, budget) == Fraction(out["delta"])
    else:
        raise MalformedInput(f"cannot verify operation {op!r}")
    return checks


def cmd_verify(args) -> int:
    gf = read_graph(args.graph)
    plane = gf.plane
    budget = budget_from_env()
    t = time.perf_counter()
    if args.report:
        try:
            with open(args.report, encoding="utf-8") as fh:
                rep = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedInput(f"cannot read report: {exc}") from None
        checks = verify_report(plane, rep, budget)
        params = {"report": rep.get("operation")}
    else:
        g = plane.graph
        checks = {}
        if g.n <= budget.max_n["hyperbolicity"]:
            checks["hyperbolicity"] = hyperbolicity_exact(g).delta == oracle_hyperbolicity(g, budget)
        if g.n <= budget.max_n["mis"]:
            res = mis_approx(plane, Fraction(1, 2))
            opt = oracle_mis(g, budget)
            checks["mis"] = oracle_is_independent(g, res.vertices) and \
                res.size >= (1 - Fraction(res.meta["epsilon_effective"])) * opt
        if g.n <= budget.max_n["tsp"] and len(connected_components(g)) == 1:
            walk = exact_tsp_group(g, cap=max(18, g.n))
            checks["tsp"] = oracle_is_tour(g, walk) and tour_length(walk) == oracle_tsp(g, budget)
        params = {"budget": budget.max_n}
    _emit(report("verify", plane, params, {"checks": sorted(checks)}, checks, _secs(args, t)), args.json)
    return EXIT_OK if all(checks.values()) else EXIT_INVARIANT


BENCH_SUITES = ("cylinder", "triangulation", "binary_tiling")
BENCH_FIELDS = ["family", "n", "param", "r", "delta", "sep_kind", "sep_size", "sep_balance",
                "groups", "boundary", "separator_total"]


def bench_instance(family: str, size: int, param: int, seed: int = 0):
    """Instance of roughly ``size`` vertices: ``param`` is the ring length,
    the triangulation seed, or ignored for binary tilings (where ``size`` is the depth)."""
    if family == "cylinder":
        return cylinder_for(size, param)
    if family == "triangulation":
        return generate(GeneratorSpec.make("triangulation", n=size, seed=param + seed))
    if family == "binary_tiling":
        return generate(GeneratorSpec.make("binary_tiling", m=size))
    raise MalformedInput(f"unknown bench suite {family!r}")


def cylinder_for(size: int, delta: int) -> PlaneGraph:
    return generate(GeneratorSpec.make("cylinder", delta=delta, rings=max(2, size // delta)))


def bench_rows(family: str, sizes: Sequence[int], rs: Sequence[int], param: int, seed: int = 0,
               timing: bool = False) -> list[dict]:
    rows = []
    for size in sizes:
        plane = bench_instance(family, size, param, seed)
        delta = effective_delta(slimness_estimate(plane.graph, seed=seed).slim)
        sep = separator(plane, delta)
        for r in rs:
            if r >= plane.n:
                continue
            t = time.perf_counter()
            div = weak_r_division(plane, r, delta)
            row = {
                "family": family, "n": plane.n, "param": param, "r": r, "delta": delta,
                "sep_kind": sep.kind, "sep_size": sep.size, "sep_balance": str(sep.balance),
                "groups": len(div.groups), "boundary": len(div.boundary),
                "separator_total": div.separator_total,
            }
            if timing:
                row["seconds"] = round(time.perf_counter() - t, 3)
            rows.append(row)
    rows.sort(key=lambda row: (row["family"], row["n"], row["r"]))
    return rows


def fit_exponents(rows: list[dict]) -> dict:
    """Least-squares slopes of log|boundary| against log n (per r) and log(1/sqrt r) (per n)."""
    import numpy as np

    def slope(xs, ys):
        pts = [(x, y) for x, y in zip(xs, ys) if y > 0]
        if len(pts) < 2:
            return None
        a = np.log([p[0] for p in pts])
        b = np.log([p[1] for p in pts])
        return float(np.polyfit(a, b, 1)[0])

    by_r: dict[int, list] = {}
    by_n: dict[int, list] = {}
    for row in rows:
        by_r.setdefault(row["r"], []).append(row)
        by_n.setdefault(row["n"], []).append(row)
    out = {"vs_n": {}, "vs_inv_sqrt_r": {}}
    for r, rr in sorted(by_r.items()):
        out["vs_n"][r] = slope([x["n"] for x in rr], [x["boundary"] for x in rr])
    for n, rr in sorted(by_n.items()):
        out["vs_inv_sqrt_r"][n] = slope([1 / math.sqrt(x["r"]) for x in rr], [x["boundary"] for x in rr])
    return out


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",")]
    rs = [int(x) for x in args.r.split(",")]
    if any(r <= 8 for r in rs):
        raise Refusal("every r must exceed 8")
    rows = bench_rows(args.suite, sizes, rs, args.param, args.seed or 0, args.timing)
    fields = BENCH_FIELDS + (["seconds"] if args.timing else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.csv and args.csv != "-":
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.fit:
        _emit(_plain(fit_exponents(rows)), args.fit)
    return EXIT_OK


def _secs(args, start: float) -> float | None:
    return None if getattr(args, "no_timing", False) else time.perf_counter() - start


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_MALFORMED)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hypsep", description="Geodesic separators and approximation schemes for planar hyperbolic graphs.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, graph=True):
        if graph:
            p.add_argument("graph", help="planar-rot v1 file")
        p.add_argument("--json", default=None, help="write the JSON report here (default stdout)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--no-timing", action="store_true", help="omit timings so reports are byte-stable")

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("--family", required=True, choices=[f.value for f in Family])
    for name in ("n", "k", "delta", "rings", "m", "seed"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("hyperbolicity", help="exact four-point hyperbolicity")
    common(h)
    h.set_defaults(func=cmd_hyperbolicity)

    s = sub.add_parser("slimness", help="slimness of canonical geodesic triangles")
    common(s)
    s.add_argument("--sampled", action="store_true")
    s.add_argument("--samples", type=int, default=300)
    s.set_defaults(func=cmd_slimness)

    f = sub.add_parser("fill", help="greedy filling of a cycle")
    common(f)
    f.add_argument("--cycle", required=True, help="comma-separated vertex ids")
    f.add_argument("--delta", default="auto")
    f.set_defaults(func=cmd_fill)

    sp = sub.add_parser("separator", help="geodesic path or cycle separator")
    common(sp)
    sp.add_argument("--delta", default="auto", help="auto, sampled or an integer")
    sp.add_argument("--c", type=float, default=None)
    sp.set_defaults(func=cmd_separator)

    d = sub.add_parser("divide", help="weak r-division")
    common(d)
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--delta", default="auto")
    d.add_argument("--c", type=float, default=None)
    d.set_defaults(func=cmd_divide)

    for name, fn in (("mis", cmd_mis), ("tsp", cmd_tsp)):
        m = sub.add_parser(name, help=f"approximate {name.upper()}")
        common(m)
        m.add_argument("--eps", required=True)
        m.add_argument("--delta", default="auto")
        m.add_argument("--c", type=float, default=None)
        m.set_defaults(func=fn)

    v = sub.add_parser("verify", help="oracle cross-checks")
    common(v)
    v.add_argument("--report", default=None, help="saved report to re-check")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="separator and division tables as CSV")
    common(b, graph=False)
    b.add_argument("--suite", required=True, choices=BENCH_SUITES)
    b.add_argument("--sizes", required=True, help="comma-separated sizes")
    b.add_argument("--r", default="16,64,256")
    b.add_argument("--param", type=int, default=4, help="cylinder ring length or triangulation seed")
    b.add_argument("--csv", default=None)
    b.add_argument("--fit", default=None, help="write fitted exponents as JSON here")
    b.add_argument("--timing", action="store_true")
    b.set_defaults(func=cmd_bench)
    return ap


def _fail(code: int, kind: str, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": kind, "reason": str(exc)}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Refusal, SizeGuardError, OracleRefusal, CapExceeded, GuardFailed) as exc:
        return _fail(EXIT_REFUSED, "refused", exc)
    except (InvariantViolation, AnomalyError) as exc:
        return _fail(EXIT_INVARIANT, "invariant_violation", exc)
    except (MalformedInput, EmbeddingError, FillingError, GraphError) as exc:
        return _fail(EXIT_MALFORMED, "malformed_input", exc)


if __name__ == "__main__":
    raise SystemExit(main())
