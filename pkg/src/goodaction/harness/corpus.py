"""Corpus manifests: JSON lists of (G, A, action) instances."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..action_theory import Action, inner_action
from ..config import DEFAULT_BOUNDS, Bounds
from ..constructors import evaluate, parse_expr, power_map
from ..errors import GroupError, ManifestError
from ..group_core import Group, Subgroup, closure, extend_hom

SCHEMA_VERSION = 1
TOP_FIELDS = {"schema_version", "name", "description", "instances"}
GROUP_FIELDS = {"id", "kind", "G", "A", "action", "B", "tags", "notes"}
AFFINE_FIELDS = {"id", "kind", "H", "p", "x_order", "seed", "tags", "notes"}
ACTION_TYPES = {"trivial", "power", "images", "inner"}
KNOWN_TAGS = {"expected-good", "expected-not-good", "coprime", "noncoprime", "fpf", "thm31",
              "example", "inner", "affine"}


@dataclass(frozen=True)
class CorpusInstance:
    id: str
    kind: str = "group"
    G: str = ""
    A: str = ""
    action: tuple = ()            # sorted (key, value) pairs of the action entry
    B: tuple[int, ...] | None = None
    tags: tuple[str, ...] = ()
    notes: str = ""
    H: str = ""
    p: int = 0
    x_order: int = 0
    seed: int = 0

    @property
    def action_spec(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.action}


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    if isinstance(v, dict):
        return tuple(sorted((k, _freeze(x)) for k, x in v.items()))
    return v


def _check_expr(text, where: str) -> str:
    if not isinstance(text, str):
        raise ManifestError(f"{where}: group expression must be a string")
    parse_expr(text)
    return text


def parse_instance(raw: dict) -> CorpusInstance:
    if not isinstance(raw, dict):
        raise ManifestError("instance must be an object")
    iid = raw.get("id")
    if not isinstance(iid, str) or not iid:
        raise ManifestError("instance needs a non-empty string id")
    kind = raw.get("kind", "group")
    allowed = GROUP_FIELDS if kind == "group" else AFFINE_FIELDS if kind == "affine" else None
    if allowed is None:
        raise ManifestError(f"{iid}: unknown kind {kind!r}")
    extra = set(raw) - allowed
    if extra:
        raise ManifestError(f"{iid}: unknown fields {sorted(extra)}")
    tags = raw.get("tags", [])
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise ManifestError(f"{iid}: tags must be a list of strings")
    unknown = set(tags) - KNOWN_TAGS
    if unknown:
        raise ManifestError(f"{iid}: unknown tags {sorted(unknown)}")
    notes = raw.get("notes", "")
    if kind == "affine":
        for k in ("H", "p", "x_order"):
            if k not in raw:
                raise ManifestError(f"{iid}: affine instance needs {k!r}")
        if not isinstance(raw["p"], int) or not isinstance(raw["x_order"], int):
            raise ManifestError(f"{iid}: p and x_order must be integers")
        return CorpusInstance(iid, "affine", tags=tuple(tags), notes=notes,
                              H=_check_expr(raw["H"], iid), p=raw["p"], x_order=raw["x_order"],
                              seed=int(raw.get("seed", 0)))
    for k in ("G", "A", "action"):
        if k not in raw:
            raise ManifestError(f"{iid}: missing field {k!r}")
    act = raw["action"]
    if not isinstance(act, dict) or act.get("type") not in ACTION_TYPES:
        raise ManifestError(f"{iid}: action type must be one of {sorted(ACTION_TYPES)}")
    spec_fields = {"trivial": {"type"}, "power": {"type", "k"}, "images": {"type", "images"},
                   "inner": {"type", "element"}}[act["type"]]
    if set(act) != spec_fields:
        raise ManifestError(f"{iid}: action {act['type']!r} takes exactly {sorted(spec_fields)}")
    B = raw.get("B")
    if B is not None and (not isinstance(B, list) or not all(isinstance(b, int) for b in B)):
        raise ManifestError(f"{iid}: B must be a list of element indices of A")
    return CorpusInstance(iid, "group", _check_expr(raw["G"], iid), _check_expr(raw["A"], iid),
                          _freeze(act), tuple(B) if B is not None else None, tuple(tags), notes)


def load_manifest(path) -> tuple[dict, list[CorpusInstance]]:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest: {exc}") from exc
    return parse_manifest(raw)


def parse_manifest(raw) -> tuple[dict, list[CorpusInstance]]:
    if not isinstance(raw, dict):
        raise ManifestError("manifest must be a JSON object")
    extra = set(raw) - TOP_FIELDS
    if extra:
        raise ManifestError(f"unknown top-level fields {sorted(extra)}")
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ManifestError(f"schema_version must be {SCHEMA_VERSION}")
    items = raw.get("instances", [])
    if not isinstance(items, list):
        raise ManifestError("instances must be a list")
    insts = [parse_instance(x) for x in items]
    ids = [i.id for i in insts]
    if len(set(ids)) != len(ids):
        raise ManifestError("duplicate instance ids")
    meta = {k: raw.get(k, "") for k in ("name", "description")}
    return meta, insts


def instance_to_json(inst: CorpusInstance) -> dict:
    if inst.kind == "affine":
        out = {"id": inst.id, "kind": "affine", "H": inst.H, "p": inst.p, "x_order": inst.x_order,
               "seed": inst.seed}
    else:
        out = {"id": inst.id, "G": inst.G, "A": inst.A, "action": inst.action_spec}
        if inst.B is not None:
            out["B"] = list(inst.B)
    if inst.tags:
        out["tags"] = list(inst.tags)
    if inst.notes:
        out["notes"] = inst.notes
    return out


# -- building actions ----------------------------------------------------------------

def action_maps(G: Group, A: Group, spec: dict) -> list[np.ndarray]:
    """Automorphism arrays for A's generators from a manifest action spec."""
    t = spec["type"]
    ngen = len(A.generators)
    if t == "trivial":
        return [np.arange(G.order)] * ngen
    if t == "power":
        ks = spec["k"] if isinstance(spec["k"], list) else [spec["k"]] * ngen
        if len(ks) != ngen or not G.is_abelian:
            raise ManifestError("power action needs abelian G and one exponent per generator of A")
        return [power_map(G, int(k)) for k in ks]
    if t == "images":
        imgs = spec["images"]
        if len(imgs) != ngen:
            raise ManifestError("images action needs one image list per generator of A")
        maps = []
        for row in imgs:
            if len(row) != len(G.generators) or not all(0 <= int(x) < G.order for x in row):
                raise ManifestError("each image list must give one valid element per generator of G")
            m = extend_hom(G, G, list(G.generators), [int(x) for x in row])
            if m is None or (m < 0).any():
                raise ManifestError("generator images do not define an endomorphism of G")
            maps.append(m)
        return maps
    raise ManifestError(f"action type {t!r} cannot be converted to maps")


def build_action(inst: CorpusInstance, bounds: Bounds = DEFAULT_BOUNDS) -> Action:
    if inst.kind != "group":
        raise ManifestError(f"{inst.id}: not a group instance")
    try:
        G = evaluate(inst.G, bounds)
        A = evaluate(inst.A, bounds)
        spec = inst.action_spec
        if spec["type"] == "inner":
            x = int(spec["element"])
            if not 0 <= x < G.order:
                raise ManifestError(f"{inst.id}: inner element out of range")
            act = inner_action(G, x, bounds)
            if act.A.order != A.order:
                raise ManifestError(f"{inst.id}: inner action has order {act.A.order}, A has {A.order}")
            return act
        return Action(G, A, action_maps(G, A, spec), bounds, label=inst.id)
    except ManifestError:
        raise
    except GroupError as exc:
        from ..errors import OrderBoundExceeded
        if isinstance(exc, OrderBoundExceeded):
            raise
        raise ManifestError(f"{inst.id}: {exc}") from exc


def resolve_B(inst: CorpusInstance, act: Action) -> Subgroup:
    if inst.B is None:
        return act.A.trivial()
    if not all(0 <= b < act.A.order for b in inst.B):
        raise ManifestError(f"{inst.id}: B generator out of range")
    return closure(act.A, list(inst.B))
