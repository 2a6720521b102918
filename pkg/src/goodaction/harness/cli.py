"""Command line driver.

Exit codes: 0 all verified, 1 a conclusion or golden clause failed,
2 invalid input or manifest, 3 a resource bound was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ..config import DEFAULT_BOUNDS
from ..errors import ManifestError, OrderBoundExceeded
from .corpus import build_action, load_manifest, parse_instance
from .report import FAIL, dumps, environment_block

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


def _analyze_one(args):
    from .pipeline import analyze
    inst, theorems, seed = args
    try:
        res = analyze(inst, theorems, seed, DEFAULT_BOUNDS)
        return inst.id, res.to_dict(), res.failed, res.messages, res.elapsed, None
    except OrderBoundExceeded as exc:
        return inst.id, None, True, [], 0.0, ("bound", f"{inst.id}: {exc}")
    except ManifestError as exc:
        return inst.id, None, True, [], 0.0, ("input", str(exc))


def _theorem_counts(instances: list[dict]) -> dict:
    counts: dict[str, dict[str, int]] = {}
    for d in instances:
        for r in d["theorems"]:
            c = counts.setdefault(r["theorem"], {})
            c[r["conclusion"]] = c.get(r["conclusion"], 0) + 1
    return counts


def cmd_verify(ns) -> int:
    try:
        meta, insts = load_manifest(ns.corpus)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    theorems = None if not ns.theorems else {t.strip() for t in ns.theorems.split(",") if t.strip()}
    if theorems is not None:
        from .theorems import THEOREMS
        unknown = theorems - set(THEOREMS)
        if unknown:
            print(f"error: unknown theorems {sorted(unknown)}", file=sys.stderr)
            return EXIT_INPUT
    jobs = [(i, theorems, ns.seed) for i in sorted(insts, key=lambda i: i.id)]
    t0 = time.perf_counter()
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as ex:
            results = list(ex.map(_analyze_one, jobs))
    else:
        results = [_analyze_one(j) for j in jobs]
    results.sort(key=lambda r: r[0])

    code = EXIT_OK
    out = []
    for iid, d, failed, messages, elapsed, err in results:
        if err is not None:
            kind, msg = err
            print(f"error: {msg}", file=sys.stderr)
            code = max(code, EXIT_BOUND if kind == "bound" else EXIT_INPUT)
            out.append({"id": iid, "error": msg})
            continue
        status = "FAIL" if failed else "ok"
        print(f"{status:4s} {iid}  ({elapsed:.2f}s)")
        for m in messages:
            print(f"     {m}")
        if failed:
            code = max(code, EXIT_FAIL)
        out.append(d)
    report = {
        "environment": environment_block(ns.seed, DEFAULT_BOUNDS),
        "manifest": meta,
        "instances": out,
        "theorem_counts": _theorem_counts([d for d in out if "theorems" in d]),
        "failed_instances": sorted(r[0] for r in results if r[2]),
    }
    if ns.report:
        Path(ns.report).write_text(dumps(report))
    n_fail = len(report["failed_instances"])
    print(f"{len(out)} instances, {n_fail} failed, {time.perf_counter() - t0:.1f}s")
    return code


def parse_action_arg(text: str) -> dict:
    """JSON object, or shorthand: trivial | power:K | inner:X | images:[[...],...]."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"bad action JSON: {exc}") from exc
    kind, _, rest = text.partition(":")
    try:
        if kind == "trivial" and not rest:
            return {"type": "trivial"}
        if kind == "power":
            return {"type": "power", "k": int(rest)}
        if kind == "inner":
            return {"type": "inner", "element": int(rest)}
        if kind == "images":
            return {"type": "images", "images": json.loads(rest)}
    except (ValueError, json.JSONDecodeError) as exc:
        raise ManifestError(f"bad action {text!r}") from exc
    raise ManifestError(f"bad action {text!r}")


def cmd_check_good(ns) -> int:
    from ..action_theory import is_good, prop23_criterion
    inst = parse_instance({"id": "cli", "G": ns.g, "A": ns.a, "action": parse_action_arg(ns.action)})
    act = build_action(inst)
    rep = is_good(act)
    print(f"|G| = {act.G.order}, |A| = {act.A.order}, coprime = {act.is_coprime()}")
    print(f"prop 2.3 criterion: {prop23_criterion(act)}")
    if rep.good:
        print(f"good ({rep.pairs_checked} pairs checked)")
    else:
        print(f"not good, minimal witness {rep.witness_sizes()}")
    return EXIT_OK


def cmd_info(ns) -> int:
    from ..constructors import evaluate
    from ..fitting_towers import fitting_series
    from ..group_core import all_subgroups, is_nilpotent, is_solvable, normal_subgroups
    G = evaluate(ns.g)
    orders = {}
    for o in G.element_orders.tolist():
        orders[o] = orders.get(o, 0) + 1
    print(f"group {ns.g}")
    print(f"order {G.order}, abelian {G.is_abelian}, classes {len(G.classes)}")
    print("element orders " + ", ".join(f"{k}:{v}" for k, v in sorted(orders.items())))
    solv = is_solvable(G)
    print(f"solvable {solv}, nilpotent {is_nilpotent(G)}")
    if solv:
        fd = fitting_series(G)
        print(f"Fitting series orders {[F.order for F in fd.series]}, height {fd.height}")
        print(f"subgroups {len(all_subgroups(G))}, normal subgroups {len(normal_subgroups(G))}")
    return EXIT_OK


def cmd_example32(ns) -> int:
    from .example32 import verify_example_3_2
    t0 = time.perf_counter()
    rep = verify_example_3_2()
    for name, status in rep.hypotheses:
        print(f"{status:4s}  {name}")
    print(f"conclusion {rep.conclusion} ({time.perf_counter() - t0:.2f}s)")
    if ns.report:
        Path(ns.report).write_text(dumps(rep.to_dict()))
    return EXIT_OK if rep.conclusion != FAIL else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="goodaction", description="Good actions on finite groups")
    sub = ap.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", help="run the corpus through every verifier")
    v.add_argument("--corpus", required=True)
    v.add_argument("--theorems", default="", help="comma separated, e.g. thm2.9,thm4.2")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report", default="")
    v.set_defaults(fn=cmd_verify)
    c = sub.add_parser("check-good", help="decide goodness of one action")
    c.add_argument("--g", required=True)
    c.add_argument("--a", required=True)
    c.add_argument("--action", required=True)
    c.set_defaults(fn=cmd_check_good)
    i = sub.add_parser("info", help="orders, Fitting series and subgroup counts")
    i.add_argument("--g", required=True)
    i.set_defaults(fn=cmd_info)
    e = sub.add_parser("example32", help="golden run of the order-189 example")
    e.add_argument("--report", default="")
    e.set_defaults(fn=cmd_example32)
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.fn(ns)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OrderBoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
