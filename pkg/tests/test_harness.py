import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from goodaction.action_theory import commutator, make_action, trivial_action
from goodaction.constructors import cyclic, evaluate, power_map
from goodaction.cyclotomic import homogeneous_components
from goodaction.errors import ManifestError
from goodaction.group_core import centralizer, commutator_subgroup, is_normal, normal_subgroups
from goodaction.harness.cli import main, parse_action_arg
from goodaction.harness.corpus import (
    SCHEMA_VERSION,
    build_action,
    instance_to_json,
    load_manifest,
    parse_instance,
    parse_manifest,
)
from goodaction.harness.example32 import verify_example_3_2
from goodaction.harness.pipeline import all_actions, analyze, prop23_sweep
from goodaction.harness.report import FAIL, NOT_APPLICABLE, PASS, Checklist, TheoremReport
from goodaction.harness.theorems import (
    THEOREMS,
    Context,
    _acts_trivially,
    _perm_action,
    _sweep_reps,
    conjugate_intersection,
)

ROOT = Path(__file__).resolve().parents[1]
DEFAULT = ROOT / "corpus" / "default.json"


def manifest(*instances):
    return {"schema_version": SCHEMA_VERSION, "name": "t", "description": "", "instances": list(instances)}


def write(tmp_path, data, name="m.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


C2_ON_C4 = {"id": "c4_c2_inv", "G": "cyclic(4)", "A": "cyclic(2)",
            "action": {"type": "power", "k": -1}, "tags": ["expected-good"]}
C2_ON_C3 = {"id": "c3_c2_inv", "G": "cyclic(3)", "A": "cyclic(2)",
            "action": {"type": "power", "k": -1}, "tags": ["expected-good"]}


def ctx_for(G, A, maps, B=None):
    return Context(make_action(G, A, maps), "t", B)


# -- manifests -------------------------------------------------------------------------

def test_default_corpus_parses():
    meta, insts = load_manifest(DEFAULT)
    assert meta["name"] == "default"
    assert len(insts) >= 50
    assert sum("coprime" in i.tags for i in insts) >= 30
    for inst in insts:
        assert parse_instance(instance_to_json(inst)) == inst


@pytest.mark.parametrize("bad", [
    {**C2_ON_C3, "colour": "red"},
    {**C2_ON_C3, "tags": ["mystery"]},
    {**C2_ON_C3, "action": {"type": "power"}},
    {**C2_ON_C3, "action": {"type": "twist", "k": 1}},
    {**C2_ON_C3, "G": "cyclic(3"},
    {**C2_ON_C3, "B": "all"},
    {"id": "", "G": "cyclic(3)", "A": "cyclic(2)", "action": {"type": "trivial"}},
    {"id": "x", "kind": "affine", "H": "named(frobenius600)", "p": 2},
])
def test_bad_instances_rejected(bad):
    with pytest.raises(ManifestError):
        parse_instance(bad)


def test_bad_manifests_rejected():
    with pytest.raises(ManifestError):
        parse_manifest({**manifest(), "extra": 1})
    with pytest.raises(ManifestError):
        parse_manifest({**manifest(), "schema_version": 99})
    with pytest.raises(ManifestError):
        parse_manifest(manifest(C2_ON_C3, C2_ON_C3))


def test_bad_actions_rejected():
    bad = [{**C2_ON_C3, "action": {"type": "images", "images": [[1, 2]]}},
           {**C2_ON_C3, "action": {"type": "images", "images": [[0]]}},
           {**C2_ON_C3, "G": "sym(3)", "action": {"type": "power", "k": -1}},
           {**C2_ON_C3, "action": {"type": "inner", "element": 7}}]
    for raw in bad:
        with pytest.raises(ManifestError):
            build_action(parse_instance(raw))


def test_parse_action_arg():
    assert parse_action_arg("trivial") == {"type": "trivial"}
    assert parse_action_arg("power:-1") == {"type": "power", "k": -1}
    assert parse_action_arg("inner:3") == {"type": "inner", "element": 3}
    assert parse_action_arg("images:[[2]]") == {"type": "images", "images": [[2]]}
    assert parse_action_arg('{"type": "trivial"}') == {"type": "trivial"}
    for bad in ["power:x", "spin", "{", "trivial:1"]:
        with pytest.raises(ManifestError):
            parse_action_arg(bad)


# -- CLI -------------------------------------------------------------------------------

def test_cli_empty_corpus(tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert main(["verify", "--corpus", write(tmp_path, manifest()), "--report", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["instances"] == [] and data["failed_instances"] == []


def test_cli_wrongly_tagged_instance(tmp_path, capsys):
    code = main(["verify", "--corpus", write(tmp_path, manifest(C2_ON_C4, C2_ON_C3))])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL c4_c2_inv" in out
    assert "{'B': 2, 'H': 4, '[H,B]': 2, 'C_H(B)': 2}" in out


def test_cli_input_errors(tmp_path, capsys):
    assert main(["verify", "--corpus", str(tmp_path / "missing.json")]) == 2
    assert main(["verify", "--corpus", write(tmp_path, {"instances": []})]) == 2
    assert main(["verify", "--corpus", write(tmp_path, manifest(C2_ON_C3)), "--theorems", "thm9.9"]) == 2
    assert main(["check-good", "--g", "cyclic(", "--a", "cyclic(2)", "--action", "trivial"]) == 2
    assert main(["info", "--g", "nonsense(3)"]) == 2


def test_cli_bound_exceeded(tmp_path, capsys):
    big = {"id": "big", "G": "cyclic(20001)", "A": "cyclic(1)", "action": {"type": "trivial"}}
    assert main(["verify", "--corpus", write(tmp_path, manifest(big))]) == 3
    assert main(["info", "--g", "cyclic(20001)"]) == 3


def test_cli_check_good_and_info(capsys):
    assert main(["check-good", "--g", "cyclic(4)", "--a", "cyclic(2)", "--action", "power:-1"]) == 0
    out = capsys.readouterr().out
    assert "not good" in out and "'H': 4" in out
    assert main(["info", "--g", "sym(4)"]) == 0
    out = capsys.readouterr().out
    assert "height 3" in out and "subgroups 30" in out


def test_cli_example32(tmp_path, capsys):
    rep = tmp_path / "ex.json"
    assert main(["example32", "--report", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["conclusion"] == PASS and len(data["hypotheses"]) == 7


def test_report_deterministic_and_parallel(tmp_path, capsys):
    m = write(tmp_path, manifest(C2_ON_C3, {**C2_ON_C4, "tags": ["expected-not-good"]},
                                 {"id": "s3_c2", "G": "sym(3)", "A": "cyclic(2)",
                                  "action": {"type": "inner", "element": 1}}))
    paths = [tmp_path / f"r{i}.json" for i in range(3)]
    for p, jobs in zip(paths, ["1", "1", "2"]):
        assert main(["verify", "--corpus", m, "--report", str(p), "--jobs", jobs, "--seed", "5"]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes() == paths[2].read_bytes()
    data = json.loads(paths[0].read_text())
    assert [d["id"] for d in data["instances"]] == sorted(d["id"] for d in data["instances"])
    assert data["environment"]["seed"] == 5


# -- theorem reports -------------------------------------------------------------------

def test_checklist_skips_after_failure():
    cl = Checklist()
    assert cl.check("a", lambda: True)
    assert not cl.check("b", lambda: False)
    assert not cl.check("c", lambda: 1 / 0)
    assert cl.items == [("a", PASS), ("b", FAIL), ("c", "skipped")] and cl.failed == "b"
    r = TheoremReport.from_checklist("x", "y", cl)
    with pytest.raises(RuntimeError):
        r.conclude(True)


def test_theorem_examples_small():
    G, A = cyclic(3), cyclic(2)
    ctx = ctx_for(G, A, [power_map(G, -1)])
    r = THEOREMS["thm2.9"](ctx)
    assert r.conclusion == PASS and r.witnesses["h(G)"] == 1 and r.witnesses["h(C_G(A))"] == 0
    r = THEOREMS["thm4.2"](ctx)
    assert r.conclusion == PASS and r.witnesses["bound"] == 2
    t = Context(trivial_action(cyclic(5), cyclic(3)), "t")
    r = THEOREMS["thm2.9"](t)
    assert r.conclusion == PASS and r.witnesses["h(G)"] == r.witnesses["h(C_G(A))"] == 1
    r = THEOREMS["thm4.2"](t)
    assert r.conclusion == NOT_APPLICABLE and r.failed_hypothesis == "C_G(A) = 1"


def test_thm45_B_equal_A_boundary():
    C7, C3 = cyclic(7), cyclic(3)
    act = make_action(C7, C3, [power_map(C7, 2)])
    ctx = Context(act, "t", act.A.whole())
    r = THEOREMS["thm4.5"](ctx)
    # [G,A] = G is A-invariant, so (d) fails unless G = 1
    assert r.conclusion == NOT_APPLICABLE and r.failed_hypothesis.startswith("(d)")
    r = THEOREMS["thm4.5"](Context(act, "t"))
    assert r.conclusion == PASS and r.witnesses["bound"] == 1


@settings(max_examples=30)
@given(st.sampled_from([("cyclic(7)", "cyclic(3)"), ("dp(cyclic(3),cyclic(3))", "cyclic(3)"),
                        ("sym(3)", "cyclic(3)"), ("cyclic(9)", "cyclic(3)"),
                        ("dp(cyclic(2),cyclic(2))", "cyclic(3)")]), st.data())
def test_conjugate_intersection_invariant_normal(pair, data):
    G, A = evaluate(pair[0]), evaluate(pair[1])
    act = data.draw(st.sampled_from([a for _, a in all_actions(G, A)]))
    for B in (act.A.trivial(), act.A.whole()):
        X = conjugate_intersection(act, B)
        assert is_normal(X) and act.is_invariant(X)
        assert X <= commutator(act, B)


@pytest.fixture(scope="module")
def small_results():
    _, insts = load_manifest(DEFAULT)
    keep = {"c3_c2_inv", "c7_c3_pow2", "c4_c2_inv", "s3_inner_3cycle", "c2xc2_c3_fpf", "q8_c3",
            "c3_c3_trivial", "c5_c4_pow2"}
    return [analyze(i) for i in insts if i.id in keep]


def test_report_invariants(small_results):
    assert len(small_results) == 8
    for res in small_results:
        assert not res.failed
        assert sorted(r.theorem for r in res.theorems) == sorted(THEOREMS)
        for r in res.theorems:
            statuses = dict(r.hypotheses)
            if r.failed_hypothesis is not None:
                assert r.conclusion == NOT_APPLICABLE
                assert statuses[r.failed_hypothesis] == FAIL
            else:
                assert all(s == PASS for s in statuses.values())
                assert r.conclusion in (PASS, FAIL)


def test_prop23_sweep_small():
    s = prop23_sweep("cyclic(4)", "cyclic(2)")
    assert s.actions == 2 and s.exceptions == []
    assert s.good == 1


def test_example32_golden():
    rep = verify_example_3_2()
    assert [s for _, s in rep.hypotheses] == [PASS] * 7
    w = rep.witnesses
    assert w["chi_degree"] == 3 and w["dim_C_V(A)"] == 0
    assert w["N_G(W1)_order"] == w["C_G(A)_order"] == 21
    assert w["alpha_on_components"] == [0, 1, 2]


# -- why thm3.3 never applies ------------------------------------------------------------

SWEEP_PAIRS = [("cyclic(7)", "cyclic(3)"), ("cyclic(3)", "cyclic(2)"), ("dp(cyclic(3),cyclic(3))", "cyclic(2)"),
               ("dp(cyclic(2),cyclic(2))", "cyclic(3)"), ("cyclic(5)", "cyclic(4)"), ("sym(3)", "cyclic(2)"),
               ("cyclic(9)", "cyclic(3)")]


@settings(max_examples=20)
@given(st.sampled_from(SWEEP_PAIRS), st.data())
def test_invariant_components_kill_center_commutator(pair, data):
    """If A fixes every homogeneous component of V_N, then [Z(N), A] acts trivially on V.

    Z(N) acts on each component by a scalar, and an A-stable component sees
    z and z^a with the same scalar.  So the last hypothesis of the
    component-invariance theorem contradicts its conclusion.
    """
    G, A = evaluate(pair[0]), evaluate(pair[1])
    act = data.draw(st.sampled_from([a for _, a in all_actions(G, A)]))
    reps = _sweep_reps(act, act.bounds)
    assert reps is not None
    V, _ = data.draw(st.sampled_from(reps))
    GA = act.GA
    for N in normal_subgroups(GA):
        dec = homogeneous_components(V, N)
        pA = _perm_action(dec, act.A_in_GA)
        if all(p == tuple(range(len(dec))) for p in pA.values()):
            ZN = centralizer(N, N)
            assert _acts_trivially(V, commutator_subgroup(ZN, act.A_in_GA))
