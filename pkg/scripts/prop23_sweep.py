"""Exhaustive sweep: every action A -> Aut(G) for corpus pairs with |G||A| <= 120.

Reports, per pair, how many actions satisfy the coprimality criterion and
whether any of those fails to be good.

    python scripts/prop23_sweep.py [--corpus corpus/default.json] [--max 120]
"""
import argparse
import sys
from pathlib import Path

from goodaction.constructors import evaluate
from goodaction.harness.corpus import load_manifest
from goodaction.harness.pipeline import prop23_sweep

ROOT = Path(__file__).resolve().parents[1]


def sweep_pairs(corpus, limit):
    _, insts = load_manifest(corpus)
    pairs = sorted({(i.G, i.A) for i in insts if i.kind == "group"})
    return [(g, a) for g, a in pairs if evaluate(g).order * evaluate(a).order <= limit]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--corpus", default=str(ROOT / "corpus" / "default.json"))
    ap.add_argument("--max", type=int, default=120)
    ns = ap.parse_args()
    bad = 0
    for g, a in sweep_pairs(ns.corpus, ns.max):
        r = prop23_sweep(g, a)
        bad += len(r.exceptions)
        print(f"{g:40s} {a:28s} actions {r.actions:4d}  criterion {r.prop23_true:4d}  "
              f"good {r.good:4d}  exceptions {len(r.exceptions)}")
    print(f"total exceptions: {bad}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
