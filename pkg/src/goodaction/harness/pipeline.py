"""Per-instance analysis: classification, identity checks and theorem reports."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..action_theory import (
    Action,
    check_prop_2_2,
    check_prop_2_5,
    commutator,
    invariant_hall,
    is_good,
    prop23_criterion,
)
from ..config import DEFAULT_BOUNDS, Bounds
from ..constructors import evaluate
from ..errors import OrderBoundExceeded, SearchExhausted
from ..fitting_towers import fitting_height, find_tower, tallest_tower, verify_tower
from ..gf_linear import AffineGroup, affine_commutator_with, faithful_irreducible_module, is_irreducible
from ..group_core import is_nilpotent, is_solvable, pi, prime_divisors
from .corpus import CorpusInstance, build_action, resolve_B
from .report import FAIL, PASS, SKIPPED, TheoremReport
from .theorems import THEOREMS, Context

PROP22_MAX = (48, 8)        # (|G|, |A|) limits for the Prop 2.2 sweep
TOWER_MAX, TOWER_EXHAUSTIVE_MAX = 200, 100


@dataclass
class InstanceResult:
    id: str
    summary: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    theorems: list[TheoremReport] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failed(self) -> bool:
        return (any(v == FAIL for v in self.checks.values())
                or any(r.conclusion == FAIL for r in self.theorems))

    def to_dict(self) -> dict:
        return {"id": self.id, "summary": self.summary, "checks": self.checks,
                "theorems": [r.to_dict() for r in self.theorems]}


def _tag_check(tags, good: bool) -> str | None:
    if "expected-good" in tags:
        return PASS if good else FAIL
    if "expected-not-good" in tags:
        return PASS if not good else FAIL
    return None


def analyze_action(act: Action, inst: CorpusInstance, theorems=None, seed: int = 0,
                   bounds: Bounds = DEFAULT_BOUNDS) -> InstanceResult:
    res = InstanceResult(inst.id)
    G, A = act.G, act.A
    rep = is_good(act)
    good = rep.good
    coprime = act.is_coprime()
    nilA = is_nilpotent(A)
    solG = is_solvable(G)
    res.summary = {"G_order": G.order, "A_order": A.order, "coprime": coprime, "good": good,
                   "prop23": prop23_criterion(act), "A_nilpotent": nilA, "G_solvable": solG,
                   "commutator_order": commutator(act).order, "tags": list(inst.tags)}
    if not good:
        res.summary["witness"] = rep.witness_sizes()
        res.messages.append(f"{inst.id}: not good, minimal witness {rep.witness_sizes()}")
    if solG:
        res.summary["h(G)"] = fitting_height(G)

    c = res.checks
    t = _tag_check(inst.tags, good)
    if t is not None:
        c["tag consistent with goodness"] = t
        if t == FAIL:
            res.messages.append(f"{inst.id}: tags say otherwise")
    if coprime:
        c["coprime implies good"] = PASS if good else FAIL
    if res.summary["prop23"]:
        c["prop 2.3 criterion implies good"] = PASS if good else FAIL
    if good and G.order <= PROP22_MAX[0] and A.order <= PROP22_MAX[1]:
        c["prop 2.2 identities"] = PASS if check_prop_2_2(act).ok else FAIL
    if good and solG:
        for p in sorted(set(prime_divisors(A.order)) & set(prime_divisors(G.order))):
            c[f"prop 2.5 at p={p}"] = PASS if check_prop_2_5(act, p) else FAIL
    if good and nilA and solG:
        primes = sorted(pi(G))
        ok = all(invariant_hall(act, s) is not None
                 for k in range(1, len(primes) + 1) for s in combinations(primes, k))
        c["prop 2.6 invariant Hall subgroups"] = PASS if ok else FAIL
        if G.order <= TOWER_MAX:
            _tower_checks(act, res, bounds)

    ctx = Context(act, inst.id, resolve_B(inst, act), seed, bounds)
    names = sorted(THEOREMS) if theorems is None else [n for n in sorted(THEOREMS) if n in theorems]
    for name in names:
        res.theorems.append(THEOREMS[name](ctx))
    by = {r.theorem: r for r in res.theorems}
    if "thm4.2" in by and "thm4.4" in by and by["thm4.4"].conclusion == PASS:
        # l(A) <= 2 l(A), so the stronger bound forces the weaker one
        c["thm 4.4 bound implies thm 4.2 bound"] = PASS if ctx.h_G <= 2 * ctx.ell_A else FAIL
    return res


def _tower_checks(act: Action, res: InstanceResult, bounds: Bounds) -> None:
    h = res.summary["h(G)"]
    try:
        t = find_tower(act, bounds)
    except SearchExhausted:
        res.checks["tower height equals h(G)"] = FAIL
        return
    res.summary["tower"] = {"height": t.height, "primes": list(t.primes), "route": t.route}
    ok = t.height == h and verify_tower(act, t).ok
    res.checks["tower height equals h(G)"] = PASS if ok else FAIL
    if act.G.order <= TOWER_EXHAUSTIVE_MAX:
        taller = tallest_tower(act, stop_at=h + 1)
        res.checks["no tower taller than h(G)"] = PASS if taller.height <= h else FAIL


def analyze_affine(inst: CorpusInstance, seed: int = 0, bounds: Bounds = DEFAULT_BOUNDS) -> InstanceResult:
    """Goodness for affine instances goes through the coprimality criterion only."""
    res = InstanceResult(inst.id)
    H = evaluate(inst.H, bounds)
    M = faithful_irreducible_module(H, inst.p, seed=inst.seed, bounds=bounds)
    verdict = is_irreducible(M, seed=inst.seed + 1, bounds=bounds)
    G = AffineGroup(M)
    hx = next((h for h in range(H.order) if int(H.element_orders[h]) == inst.x_order), None)
    c = res.checks
    c["module faithful"] = PASS if M.is_faithful() else FAIL
    c["module irreducible"] = PASS if verdict.irreducible else FAIL
    if hx is None:
        c["element of the requested order"] = FAIL
        return res
    x = (np.zeros(G.dim, dtype=np.int64), hx)
    comm = affine_commutator_with(G, x)
    c["prop 2.3 criterion"] = PASS if comm.coprime else FAIL
    if "expected-good" in inst.tags:
        c["tag consistent with goodness"] = PASS if comm.coprime else SKIPPED
    res.summary = {"H_order": H.order, "p": inst.p, "dimension": M.dim,
                   "G_order": str(G.order), "x_order": inst.x_order,
                   "commutator_order": str(comm.order), "action_order": comm.action_order,
                   "quotient_order": str(comm.quotient_order), "coprime_quotient": comm.coprime,
                   "irreducibility_method": verdict.method,
                   "module": dict(getattr(M, "provenance", {}))}
    return res


def analyze(inst: CorpusInstance, theorems=None, seed: int = 0,
            bounds: Bounds = DEFAULT_BOUNDS) -> InstanceResult:
    t0 = time.perf_counter()
    if inst.kind == "affine":
        res = analyze_affine(inst, seed, bounds)
    else:
        res = analyze_action(build_action(inst, bounds), inst, theorems, seed, bounds)
    res.elapsed = time.perf_counter() - t0
    return res


# -- exhaustive sweep of actions between two groups -----------------------------------

def automorphism_group(G, bounds: Bounds = DEFAULT_BOUNDS):
    """Aut(G) as a Cayley-table group under right composition, plus the maps."""
    from ..group_core import Group, automorphisms
    auts = sorted(automorphisms(G, bounds), key=lambda m: tuple(m))
    index = {m.tobytes(): i for i, m in enumerate(auts)}
    ident = index[np.arange(G.order, dtype=auts[0].dtype).tobytes()]
    order = [ident] + [i for i in range(len(auts)) if i != ident]
    auts = [auts[i] for i in order]
    index = {m.tobytes(): i for i, m in enumerate(auts)}
    # g^(ab) = (g^a)^b
    table = np.array([[index[auts[j][auts[i]].tobytes()] for j in range(len(auts))]
                      for i in range(len(auts))], dtype=np.int64)
    return Group(table, label=f"Aut({G.label})", check=False), auts


def all_actions(G, A, bounds: Bounds = DEFAULT_BOUNDS):
    """Every homomorphism A -> Aut(G), as Actions, in a fixed order."""
    from itertools import product
    from ..group_core import extend_hom
    Aut, auts = automorphism_group(G, bounds)
    gens = list(A.generators)
    for imgs in product(range(Aut.order), repeat=len(gens)):
        hom = extend_hom(A, Aut, gens, list(imgs))
        if hom is None or (hom < 0).any():
            continue
        yield imgs, Action(G, A, [auts[i] for i in imgs], bounds)


@dataclass
class SweepResult:
    pair: tuple[str, str]
    actions: int = 0
    prop23_true: int = 0
    good: int = 0
    exceptions: list = field(default_factory=list)


def prop23_sweep(G_expr: str, A_expr: str, bounds: Bounds = DEFAULT_BOUNDS) -> SweepResult:
    """Check prop23_criterion => is_good over every action of A on G."""
    G, A = evaluate(G_expr, bounds), evaluate(A_expr, bounds)
    out = SweepResult((G_expr, A_expr))
    for imgs, act in all_actions(G, A, bounds):
        out.actions += 1
        good = is_good(act).good
        out.good += good
        if prop23_criterion(act):
            out.prop23_true += 1
            if not good:
                out.exceptions.append(list(imgs))
    return out
