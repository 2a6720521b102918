"""Build corpus/default.json.

Actions given as "auto" are the first homomorphism A -> Aut(G) (in the
fixed enumeration order of all_actions) that passes the listed filters.
Goodness tags are assigned by the checker, never by hand.

    python scripts/build_corpus.py [--out corpus/default.json]
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from goodaction.action_theory import fixed_points, is_good
from goodaction.constructors import evaluate
from goodaction.harness.corpus import SCHEMA_VERSION, build_action, parse_instance
from goodaction.harness.pipeline import all_actions

F21 = "sd(cyclic(7),cyclic(3),pow2)"
G189 = "sd(cyclic(7),cyclic(9),pow2)"

# (id, G, A, action, extra fields)
SPECS = [
    # coprime, power maps on cyclic groups
    ("c3_c2_inv", "cyclic(3)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c5_c2_inv", "cyclic(5)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c5_c4_pow2", "cyclic(5)", "cyclic(4)", {"type": "power", "k": 2}, {}),
    ("c7_c2_inv", "cyclic(7)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c7_c3_pow2", "cyclic(7)", "cyclic(3)", {"type": "power", "k": 2}, {}),
    ("c7_c6_pow3", "cyclic(7)", "cyclic(6)", {"type": "power", "k": 3}, {}),
    ("c9_c2_inv", "cyclic(9)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c11_c2_inv", "cyclic(11)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c11_c5_pow3", "cyclic(11)", "cyclic(5)", {"type": "power", "k": 3}, {}),
    ("c13_c2_inv", "cyclic(13)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c13_c3_pow3", "cyclic(13)", "cyclic(3)", {"type": "power", "k": 3}, {}),
    ("c13_c4_pow5", "cyclic(13)", "cyclic(4)", {"type": "power", "k": 5}, {}),
    ("c13_c6_pow4", "cyclic(13)", "cyclic(6)", {"type": "power", "k": 4}, {}),
    ("c15_c2_inv", "cyclic(15)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c19_c9_pow4", "cyclic(19)", "cyclic(9)", {"type": "power", "k": 4}, {}),
    ("c21_c2_inv", "cyclic(21)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c25_c2_inv", "cyclic(25)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c31_c5_pow2", "cyclic(31)", "cyclic(5)", {"type": "power", "k": 2}, {}),
    ("c7_c3xc3_partial", "cyclic(7)", "dp(cyclic(3),cyclic(3))", {"type": "power", "k": [2, 1]},
     {"B": [1]}),
    ("c5_c2xc2_inv", "cyclic(5)", "dp(cyclic(2),cyclic(2))", {"type": "power", "k": [-1, -1]}, {}),
    # coprime, elementary abelian and other groups
    ("c3xc3_c2_inv", "dp(cyclic(3),cyclic(3))", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c3xc3_c4_fpf", "dp(cyclic(3),cyclic(3))", "cyclic(4)", "auto:faithful,fpf", {}),
    ("c3xc3_c8_fpf", "dp(cyclic(3),cyclic(3))", "cyclic(8)", "auto:faithful,fpf", {}),
    ("c3xc3_c2xc2_fpf", "dp(cyclic(3),cyclic(3))", "dp(cyclic(2),cyclic(2))", "auto:faithful,fpf", {}),
    ("c3xc3_q8_fpf", "dp(cyclic(3),cyclic(3))", "named(q8)", "auto:faithful,fpf", {}),
    ("c5xc5_c2_inv", "dp(cyclic(5),cyclic(5))", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c5xc5_c3_fpf", "dp(cyclic(5),cyclic(5))", "cyclic(3)", "auto:faithful,fpf", {}),
    ("c7xc7_c3_pow2", "dp(cyclic(7),cyclic(7))", "cyclic(3)", {"type": "power", "k": 2}, {}),
    ("c2xc2_c3_fpf", "dp(cyclic(2),cyclic(2))", "cyclic(3)", "auto:faithful,fpf", {}),
    ("c2xc2_c3xc3_fpf", "dp(cyclic(2),cyclic(2))", "dp(cyclic(3),cyclic(3))", "auto:fpf", {}),
    ("c2cube_c7_fpf", "dp(cyclic(2),dp(cyclic(2),cyclic(2)))", "cyclic(7)", "auto:faithful,fpf", {}),
    ("q8_c3", "named(q8)", "cyclic(3)", "auto:faithful", {}),
    ("f21_c2", F21, "cyclic(2)", "auto:faithful", {}),
    ("s3_c5_trivial", "sym(3)", "cyclic(5)", {"type": "trivial"}, {}),
    ("c4_c3_trivial", "cyclic(4)", "cyclic(3)", {"type": "trivial"}, {}),
    ("d10_c3_trivial", "sd(cyclic(5),cyclic(2),inv)", "cyclic(3)", {"type": "trivial"}, {}),
    ("f20_c3_trivial", "sd(cyclic(5),cyclic(4),pow2)", "cyclic(3)", {"type": "trivial"}, {}),
    ("f21_c5_trivial", F21, "cyclic(5)", {"type": "trivial"}, {}),
    ("s4_c5_trivial", "sym(4)", "cyclic(5)", {"type": "trivial"}, {}),
    ("sl23_c5_trivial", "named(sl2_3)", "cyclic(5)", {"type": "trivial"}, {}),
    # noncoprime
    ("c4_c2_inv", "cyclic(4)", "cyclic(2)", {"type": "power", "k": -1}, {"tags": ["expected-not-good"]}),
    ("c6_c2_inv", "cyclic(6)", "cyclic(2)", {"type": "power", "k": -1}, {}),
    ("c3_c6_inv", "cyclic(3)", "cyclic(6)", {"type": "power", "k": -1}, {}),
    ("c3_c3_trivial", "cyclic(3)", "cyclic(3)", {"type": "trivial"}, {}),
    ("c9_c3_pow4", "cyclic(9)", "cyclic(3)", {"type": "power", "k": 4}, {}),
    ("c8_c2_pow5", "cyclic(8)", "cyclic(2)", {"type": "power", "k": 5}, {}),
    ("c2xc2_c2_swap", "dp(cyclic(2),cyclic(2))", "cyclic(2)", "auto:faithful", {}),
    ("c3xc3_c3_fpfnot", "dp(cyclic(3),cyclic(3))", "cyclic(3)", "auto:faithful", {}),
    ("s3_inner_transposition", "sym(3)", "cyclic(2)", {"type": "inner", "element": "order:2"}, {}),
    ("s3_inner_3cycle", "sym(3)", "cyclic(3)", {"type": "inner", "element": "order:3"}, {}),
    ("d8_inner", "sd(cyclic(4),cyclic(2),inv)", "cyclic(2)", {"type": "inner", "element": "order:2"}, {}),
    ("q8_inner", "named(q8)", "cyclic(2)", {"type": "inner", "element": "order:4"}, {}),
    ("f21_inner_c3", F21, "cyclic(3)", {"type": "inner", "element": "order:3"}, {}),
    ("s4_inner_c4", "sym(4)", "cyclic(4)", {"type": "inner", "element": "order:4"}, {}),
    ("ex32_g189_alpha", G189, "cyclic(3)", "ex32", {"tags": ["example"]}),
]

AFFINE = [
    {"id": "example1_affine", "kind": "affine", "H": "named(frobenius600)", "p": 2, "x_order": 3,
     "seed": 0, "tags": ["affine", "expected-good"],
     "notes": "H = SL(2,3) acting on C5^2; G = V H with V a faithful irreducible GF(2)H-module"},
]


def _auto(G, A, filters):
    for imgs, act in all_actions(G, A):
        if "faithful" in filters and any(
                (act.autos[a] == act.autos[0]).all() for a in range(1, A.order)):
            continue
        if "fpf" in filters and not fixed_points(act).is_trivial():
            continue
        return [[int(x) for x in act.autos[A.generators[i]][list(G.generators)]]
                for i in range(len(A.generators))]
    raise SystemExit(f"no action of {A.label} on {G.label} with filters {filters}")


def _ex32_images(G):
    # r^i sigma^k -> r^i sigma^(4k); element index is i*9 + k
    return [[(g // 9) * 9 + (4 * (g % 9)) % 9 for g in G.generators]]


def build() -> dict:
    insts = []
    for iid, g, a, action, extra in SPECS:
        G, A = evaluate(g), evaluate(a)
        if action == "ex32":
            action = {"type": "images", "images": _ex32_images(G)}
        elif isinstance(action, str):
            action = {"type": "images", "images": _auto(G, A, action.split(":")[1].split(","))}
        elif action["type"] == "inner" and isinstance(action["element"], str):
            k = int(action["element"].split(":")[1])
            action = {"type": "inner", "element": int(next(x for x in range(G.order)
                                                         if G.element_orders[x] == k))}
        raw = {"id": iid, "G": g, "A": a, "action": action}
        if "B" in extra:
            raw["B"] = extra["B"]
        inst = parse_instance(raw)
        act = build_action(inst)
        tags = set(extra.get("tags", []))
        good = is_good(act).good
        tags.add("expected-good" if good else "expected-not-good")
        tags.add("coprime" if act.is_coprime() else "noncoprime")
        if fixed_points(act).is_trivial():
            tags.add("fpf")
        if action["type"] == "inner":
            tags.add("inner")
        if G.order <= 100 and A.order <= 9:
            tags.add("thm31")
        raw["tags"] = sorted(tags)
        insts.append(raw)
    insts.extend(AFFINE)
    return {"schema_version": SCHEMA_VERSION, "name": "default",
            "description": "desk-scale actions: coprime, noncoprime, fixed-point-free, inner, "
                           "the order-189 example and the affine Frobenius example",
            "instances": sorted(insts, key=lambda d: d["id"])}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "corpus" / "default.json"))
    ns = ap.parse_args()
    data = build()
    Path(ns.out).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(data['instances'])} instances to {ns.out}")


if __name__ == "__main__":
    main()
