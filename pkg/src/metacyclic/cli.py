"""Command-line front end.

Every command builds a report dictionary; ``--format text`` renders the same
data.  Exit status: 0 success, 1 domain error (JSON ``{"error": kind}`` on
stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import codes, induced, lincode, poly
from .algebra import GroupParams, parse_algebra_element
from .errors import BudgetExceeded, MetacyclicError, ParseError
from .polyfact import check_group_params
from .wedderburn import build_decomposition, classify_summands

COMMANDS = ("decompose", "analyze", "build", "induce", "intersect", "search", "attack-check")


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    params: GroupParams | None = None
    inputs: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "json"
    budget: int = lincode.DEFAULT_BUDGET
    seed: int = 0
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# file helpers


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_code(path: str) -> codes.MetacyclicCode:
    return codes.MetacyclicCode.from_json(_read_json(path))


def _subgroup_arg(params: GroupParams, text: str) -> induced.SubgroupSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = _read_json(text) if Path(text).exists() else [g for g in text.split(",") if g]
    return induced.SubgroupSpec.from_json(params, data)


def _h_code(params: GroupParams, H, path: str) -> induced.SubgroupCode:
    C = codes.MetacyclicCode.from_json(_read_json(path), check=False)
    if C.params != params:
        raise ParseError("subgroup code parameters differ")
    return induced.SubgroupCode(H, C.basis)


# ---------------------------------------------------------------------------
# commands


def cmd_decompose(cfg: JobConfig) -> dict:
    dec = build_decomposition(cfg.params)
    report = dec.to_json()
    cls = classify_summands(dec)
    report["kinds"] = [
        f"skew(k={o.k})" if o.kind == "skew" else lab["summand"]
        for lab, o in zip(cls["labels"], dec.orbit_table)
    ]
    report["dimension"] = dec.dimension()
    return report


def cmd_analyze(cfg: JobConfig) -> dict:
    C = _load_code(cfg.inputs["code"])
    report = codes.analyze(C, cfg.budget)
    # the report doubles as a code file
    report["basis"] = C.to_json()["basis"]
    return report


def cmd_attack(cfg: JobConfig) -> dict:
    C = _load_code(cfg.inputs["code"])
    rep = codes.attack_feasibility(C, cfg.budget, cfg.options.get("min_count"))
    return {"params": C.params.to_json(), "dim": C.dim, "attack": rep.to_json()}


def cmd_build(cfg: JobConfig) -> dict:
    params = cfg.params
    opts = cfg.options
    if opts.get("h"):
        H = _subgroup_arg(params, opts["h"])
        if opts.get("poly"):
            D = induced.cyclic_h_code(H, poly.parse(opts["poly"], params.field))
        else:
            gens = [parse_algebra_element(params, g).vector for g in opts.get("gens") or []]
            if not gens:
                raise UsageError("an H-code needs --gen or --poly")
            D = induced.h_code_from_generators(H, gens)
        out = codes.MetacyclicCode(params, D.basis, check=False).to_json()
        out["subgroup"] = H.to_json()
        return out
    if opts.get("poly"):
        C = induced.cyclic_ideal(params, opts["poly"])
    elif opts.get("gens"):
        C = codes.ideal_from_generators(params, [parse_algebra_element(params, g) for g in opts["gens"]])
    else:
        C = codes.random_ideal(params, np.random.default_rng(cfg.seed))
    return C.to_json()


def cmd_induce(cfg: JobConfig) -> dict:
    params = codes.MetacyclicCode.from_json(_read_json(cfg.inputs["code"]), check=False).params
    H = _subgroup_arg(params, cfg.inputs["h"])
    D = _h_code(params, H, cfg.inputs["code"])
    C = induced.induce(D)
    out = C.to_json()
    d = None
    if D.dim:
        try:
            d = D.min_distance(cfg.budget)
        except BudgetExceeded:
            pass
    induce_report = {"length": C.length, "dim": C.dim, "d": d, "index": H.index}
    out["report"] = induce_report
    return out


def cmd_intersect(cfg: JobConfig) -> dict:
    first = codes.MetacyclicCode.from_json(_read_json(cfg.inputs["c1"]), check=False)
    params = first.params
    H1 = _subgroup_arg(params, cfg.inputs["h1"])
    H2 = _subgroup_arg(params, cfg.inputs["h2"])
    D1 = _h_code(params, H1, cfg.inputs["c1"])
    D2 = _h_code(params, H2, cfg.inputs["c2"])
    rep = induced.intersect_induced(D1, D2, cfg.budget)
    out = rep.to_json()
    out["code"] = rep.code.to_json()
    return out


# ---------------------------------------------------------------------------
# search


def _int_list(text: str | None) -> list[int]:
    if text is None or text == "":
        return []
    out = []
    for part in str(text).split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def grid_points(ns, ms, qs, rs=None) -> list[tuple]:
    pts = []
    for n in ns:
        for m in ms:
            for q in qs:
                cands = rs if rs else range(2, n)
                for r in cands:
                    try:
                        check_group_params(n, m, r % n, q)
                    except MetacyclicError:
                        continue
                    pts.append((n, m, r % n, q))
    return sorted(set(pts))


def all_submodules(orbit, ring, limit: int) -> list:
    """Every R_i-submodule of R_i^s_i, as sums of cyclic submodules."""
    K = orbit.field
    size = K.base.size ** (orbit.s * orbit.u * orbit.degree)
    if size > limit:
        raise BudgetExceeded(f"R^s has {size} elements, over the limit {limit}")
    Fq = K.base
    width = orbit.s * orbit.u * orbit.degree
    cyclic = {}
    for code in range(1, size):
        digits = (code // Fq.size ** np.arange(width)) % Fq.size
        row = K.from_fq(digits.reshape(1, orbit.s, orbit.u, orbit.degree))
        L = codes.module_closure(orbit, ring, row)
        cyclic.setdefault(L.basis.tobytes(), L)
    zero = codes.SubmoduleCode(orbit, ring, np.zeros((0, width), dtype=np.int64))
    found = {zero.basis.tobytes(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for L in frontier:
            for M in cyclic.values():
                S = codes.module_closure(orbit, ring, np.concatenate([L.rows, M.rows]))
                key = S.basis.tobytes()
                if key not in found:
                    found[key] = S
                    nxt.append(S)
        frontier = nxt
    return sorted(found.values(), key=lambda L: (L.dim, L.basis.tobytes()))


def _point_codes(params: GroupParams, mode: str, samples: int, seed: int, budget: int):
    if mode == "exhaustive":
        dec = build_decomposition(params)
        limit = min(budget, 1 << 12)
        lattices = [all_submodules(sm.orbit, sm.ring, limit) for sm in dec.summands]
        total = math.prod(len(x) for x in lattices)
        if total > budget:
            raise BudgetExceeded(f"{total} ideals exceed the budget")
        for combo in np.ndindex(*[len(x) for x in lattices]):
            yield codes.code_from_submodules(params, [lat[c] for lat, c in zip(lattices, combo)])
    else:
        rng = np.random.default_rng([seed, *params.to_json().values()])
        for _ in range(samples):
            yield codes.random_ideal(params, rng)


def search_point(point, mode: str, samples: int, seed: int, budget: int) -> dict:
    params = GroupParams(*point)
    rows = {}
    note = None
    try:
        for C in _point_codes(params, mode, samples, seed, budget):
            if C.dim == 0:
                continue
            key = C.basis.tobytes()
            if key in rows:
                continue
            try:
                d = codes.min_distance_exact(C, budget)
            except BudgetExceeded:
                d = None
            bound = codes.min_distance_bound(C, budget).value
            rows[key] = {
                "code": f"[{C.length},{C.dim},{d if d is not None else '?'}]",
                "length": C.length,
                "k": C.dim,
                "d": d,
                "d_bound": bound,
                "dims": [L.dim for L in C.decomposition],
            }
    except BudgetExceeded as exc:
        note = f"BudgetExceeded: {exc}"
    table = sorted(rows.values(), key=lambda r: (-(r["d"] or r["d_bound"]), -r["k"], r["dims"]))
    return {"params": params.to_json(), "codes": table, "note": note}


def cmd_search(cfg: JobConfig) -> dict:
    o = cfg.options
    points = grid_points(o["n"], o["m"], o["q"], o.get("r"))
    ckpt_path = o.get("checkpoint")
    done = {}
    if ckpt_path and Path(ckpt_path).exists():
        done = _read_json(ckpt_path).get("points", {})
    results = []
    for pt in points:
        key = ",".join(map(str, pt))
        if key not in done:
            done[key] = search_point(pt, o["mode"], o["samples"], cfg.seed, cfg.budget)
            if ckpt_path:
                Path(ckpt_path).write_text(json.dumps({"points": done}, sort_keys=True))
        results.append(done[key])
    table = []
    for res in results:
        for row in res["codes"]:
            table.append({**res["params"], **row})
    table.sort(key=lambda r: (-(r["d"] or r["d_bound"]), -r["k"], r["n"], r["m"], r["q"], r["r"], r["dims"]))
    return {"mode": o["mode"], "seed": cfg.seed, "points": len(points), "table": table,
            "notes": {f"{r['params']['n']},{r['params']['m']},{r['params']['r']},{r['params']['q']}": r["note"]
                      for r in results if r["note"]}}


HANDLERS = {
    "decompose": cmd_decompose,
    "analyze": cmd_analyze,
    "build": cmd_build,
    "induce": cmd_induce,
    "intersect": cmd_intersect,
    "search": cmd_search,
    "attack-check": cmd_attack,
}


def run(config: JobConfig) -> tuple[int, dict]:
    if config.command not in HANDLERS:
        raise UsageError(f"unknown command {config.command}")
    if config.budget <= 0:
        raise UsageError("budget must be positive")
    try:
        return 0, HANDLERS[config.command](config)
    except MetacyclicError as exc:
        return 1, {"error": exc.kind, "message": str(exc)}


# ---------------------------------------------------------------------------
# rendering


def render_text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)


def _emit(report: dict, fmt: str, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=1) if fmt == "json" else render_text(report)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# argument parsing


def _budget_default() -> int:
    env = os.environ.get("MCC_BUDGET")
    if env is None:
        return lincode.DEFAULT_BUDGET
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MCC_BUDGET must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int)
    common.add_argument("--seed", type=int, default=0)

    group = argparse.ArgumentParser(add_help=False)
    for name in ("n", "m", "r", "q"):
        group.add_argument(f"--{name}", type=int, required=True)

    p = argparse.ArgumentParser(prog="metacyclic", description="Metacyclic group algebras and codes.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("decompose", parents=[common, group], help="orbit table and block structure")
    a = sub.add_parser("analyze", parents=[common], help="distance, bound, GC view, census")
    a.add_argument("--code", required=True)
    a = sub.add_parser("attack-check", parents=[common], help="dual low-weight census")
    a.add_argument("--code", required=True)
    a.add_argument("--min-count", type=int)
    b = sub.add_parser("build", parents=[common, group], help="write a code file")
    b.add_argument("--gen", action="append", help="generator such as 'e+a+a^2' (repeatable)")
    b.add_argument("--poly", help="generator polynomial of a cyclic code on <a> (or on <c> with --h)")
    b.add_argument("--h", help="build a code of F_q H for the subgroup H with these generators")
    i = sub.add_parser("induce", parents=[common], help="induce a subgroup code to G")
    i.add_argument("--code", required=True)
    i.add_argument("--h", required=True, help='subgroup generators, e.g. \'["a"]\'')
    x = sub.add_parser("intersect", parents=[common], help="intersect two induced codes")
    for name in ("h1", "c1", "h2", "c2"):
        x.add_argument(f"--{name}", required=True)
    s = sub.add_parser("search", parents=[common], help="rank codes over a parameter grid")
    s.add_argument("--n", required=True, help="values such as 7 or 3,5,7 or 3-9")
    s.add_argument("--m", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--r", help="restrict r (default: all admissible)")
    s.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--checkpoint")
    return p


def config_from_args(args) -> JobConfig:
    budget = args.budget if args.budget is not None else _budget_default()
    cfg = JobConfig(args.command, output=args.out, format=args.format, budget=budget, seed=args.seed)
    cmd = args.command
    if cmd in ("decompose", "build"):
        cfg.params = _params(args.n, args.m, args.r, args.q)
    if cmd in ("analyze", "attack-check"):
        cfg.inputs["code"] = args.code
    if cmd == "attack-check":
        cfg.options["min_count"] = args.min_count
    if cmd == "build":
        cfg.options.update(gens=args.gen, poly=args.poly, h=args.h)
    if cmd == "induce":
        cfg.inputs.update(code=args.code, h=args.h)
    if cmd == "intersect":
        cfg.inputs.update(h1=args.h1, c1=args.c1, h2=args.h2, c2=args.c2)
    if cmd == "search":
        cfg.options.update(
            n=_int_list(args.n),
            m=_int_list(args.m),
            q=_int_list(args.q),
            r=_int_list(args.r),
            mode=args.mode,
            samples=args.samples,
            checkpoint=args.checkpoint,
        )
    return cfg


def _params(n, m, r, q) -> GroupParams:
    return GroupParams(n, m, r, q)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        status, report = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except MetacyclicError as exc:
        status, report = 1, {"error": exc.kind, "message": str(exc)}
    if status:
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
        return status
    _emit(report, cfg.format, cfg.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
