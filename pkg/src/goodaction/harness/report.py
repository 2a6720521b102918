"""Theorem reports, hypothesis checklists and JSON emission."""
from __future__ import annotations

import json
import platform
from dataclasses import dataclass, field
from typing import Any, Callable

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
NOT_APPLICABLE = "not-applicable"


class Checklist:
    """Named hypotheses checked in order; later ones are skipped after a failure."""

    def __init__(self):
        self.items: list[tuple[str, str]] = []
        self.failed: str | None = None

    def check(self, name: str, fn: Callable[[], bool]) -> bool:
        if self.failed is not None:
            self.items.append((name, SKIPPED))
            return False
        ok = bool(fn())
        self.items.append((name, PASS if ok else FAIL))
        if not ok:
            self.failed = name
        return ok

    @property
    def ok(self) -> bool:
        return self.failed is None


@dataclass
class TheoremReport:
    theorem: str
    instance: str
    hypotheses: list[tuple[str, str]] = field(default_factory=list)
    conclusion: str = NOT_APPLICABLE
    failed_hypothesis: str | None = None
    witnesses: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None

    @classmethod
    def from_checklist(cls, theorem: str, instance: str, cl: Checklist, seed=None) -> "TheoremReport":
        return cls(theorem, instance, list(cl.items), NOT_APPLICABLE, cl.failed, {}, seed)

    def conclude(self, ok: bool) -> "TheoremReport":
        if self.failed_hypothesis is not None:
            raise RuntimeError("conclusion evaluated with a failed hypothesis")
        self.conclusion = PASS if ok else FAIL
        return self

    @property
    def applicable(self) -> bool:
        return self.failed_hypothesis is None and self.conclusion != NOT_APPLICABLE

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "hypotheses": [{"name": n, "status": s} for n, s in self.hypotheses],
            "conclusion": self.conclusion,
            "failed_hypothesis": self.failed_hypothesis,
            "witnesses": self.witnesses,
            "seed": self.seed,
        }


def environment_block(seed: int, bounds) -> dict:
    import numpy
    import sympy
    from .. import __version__
    from dataclasses import asdict
    return {
        "seed": seed,
        "bounds": asdict(bounds),
        "versions": {
            "goodaction": __version__,
            "python": platform.python_version(),
            "numpy": numpy.__version__,
            "sympy": sympy.__version__,
        },
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, default=_default) + "\n"


def _default(o):
    import numpy as np
    from fractions import Fraction
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"not JSON serializable: {type(o)}")
