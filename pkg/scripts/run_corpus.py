"""Run the default corpus and write a report next to it.

    python scripts/run_corpus.py [--jobs N] [--seed S] [--report out.json]
"""
import sys
from pathlib import Path

from goodaction.harness.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    args = sys.argv[1:]
    if "--report" not in args:
        args += ["--report", str(ROOT / "corpus" / "report.json")]
    sys.exit(main(["verify", "--corpus", str(ROOT / "corpus" / "default.json")] + args))
