"""Concrete groups: cyclic, symmetric, products, wreath products, and the
named groups used by the verification corpus.

Automorphism maps are right actions written exponentially: ``maps[k][h]`` is
``h^k``, and ``h^(k1 k2) = (h^k1)^k2``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .config import DEFAULT_BOUNDS, Bounds
from .errors import (ManifestError, NotAHomomorphism, NotAnAutomorphism, OrderBoundExceeded,
                     RelationViolated)
from .group_core import (
    Group,
    Homomorphism,
    Subgroup,
    center,
    closure,
    extend_hom,
    is_isomorphic,
)


def _check_order(n: int, bounds: Bounds) -> None:
    if n > bounds.group_order:
        raise OrderBoundExceeded(f"group order {n} exceeds bound {bounds.group_order}")


def cyclic(n: int, label: str | None = None, bounds: Bounds = DEFAULT_BOUNDS) -> Group:
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1")
    _check_order(n, bounds)
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return Group(table, generators=[1] if n > 1 else [], label=label or f"cyclic({n})", check=False)


def direct_product(G1: Group, G2: Group, label: str | None = None,
                   bounds: Bounds = DEFAULT_BOUNDS) -> Group:
    n2 = G2.order
    _check_order(G1.order * n2, bounds)
    t = G1.table[:, None, :, None] * n2 + G2.table[None, :, None, :]
    table = t.reshape(G1.order * n2, G1.order * n2)
    gens = [g * n2 for g in G1.generators] + list(G2.generators)
    return Group(table, generators=gens, label=label or f"dp({G1.label},{G2.label})", check=False)


def symmetric(n: int) -> Group:
    """S_n on points 0..n-1; (p*q)(i) = q(p(i))."""
    if not 1 <= n <= 5:
        raise ValueError("symmetric(n) supports 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(q[p[i]] for i in range(n))] for q in perms] for p in perms]
    gens = []
    if n >= 2:
        t = list(range(n))
        t[0], t[1] = 1, 0
        cyc = tuple((i + 1) % n for i in range(n))
        gens = sorted({pos[tuple(t)], pos[cyc]})
    return Group(table, generators=gens, label=f"sym({n})")


def _check_automorphism(H: Group, phi: np.ndarray) -> None:
    phi = np.asarray(phi)
    if phi.shape != (H.order,) or np.unique(phi).size != H.order:
        raise NotAnAutomorphism("map is not a bijection of H")
    if not (phi[H.table] == H.table[np.ix_(phi, phi)]).all():
        raise NotAnAutomorphism("map does not respect multiplication")


def extend_action(H: Group, K: Group, gen_maps: Sequence[np.ndarray]) -> np.ndarray:
    """Extend automorphisms for K's generators to a right action K -> Aut(H).

    Returns an array ``auto`` with ``auto[k]`` the map h -> h^k.  Raises
    NotAHomomorphism when the assignment violates a relation of K.
    """
    if len(gen_maps) != len(K.generators):
        raise ValueError("need one map per generator of K")
    maps = [np.asarray(m, dtype=np.int64) for m in gen_maps]
    for m in maps:
        _check_automorphism(H, m)
    auto = np.full((K.order, H.order), -1, dtype=np.int64)
    auto[0] = np.arange(H.order)
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for s, m in zip(K.generators, maps):
                y = int(K.table[x, s])
                img = m[auto[x]]
                if auto[y, 0] < 0:
                    auto[y] = img
                    new.append(y)
                elif not (auto[y] == img).all():
                    raise RelationViolated("generator images violate a relation of K")
        frontier = new
    return auto


@dataclass(frozen=True, eq=False)
class SemidirectProduct:
    group: Group
    normal: Subgroup        # image of H
    complement: Subgroup    # image of K
    embed_normal: np.ndarray
    embed_complement: np.ndarray
    auto: np.ndarray        # auto[k][h] = h^k


def semidirect_product(H: Group, K: Group, gen_maps: Sequence[np.ndarray],
                       label: str | None = None, bounds: Bounds = DEFAULT_BOUNDS) -> SemidirectProduct:
    """H x| K with (h1,k1)(h2,k2) = (h1 * h2^(k1^-1), k1 k2); element index h*|K|+k."""
    n = H.order * K.order
    if n > bounds.group_order:
        raise OrderBoundExceeded(f"semidirect product of order {n} exceeds bound")
    auto = extend_action(H, K, gen_maps)
    nh, nk = H.order, K.order
    hh = np.repeat(np.arange(nh), nk)
    kk = np.tile(np.arange(nk), nh)
    twisted = auto[K.inverse[kk][:, None], hh[None, :]]           # h2^(k1^-1)
    hpart = H.table[hh[:, None], twisted]
    kpart = K.table[kk[:, None], kk[None, :]]
    table = hpart * nk + kpart
    emb_h = np.arange(nh) * nk
    emb_k = np.arange(nk)
    gens = [int(emb_h[g]) for g in H.generators] + [int(emb_k[g]) for g in K.generators]
    G = Group(table, generators=gens, label=label or f"sd({H.label},{K.label})",
              check=n <= 200)
    mh = np.zeros(n, dtype=bool)
    mh[emb_h] = True
    mk = np.zeros(n, dtype=bool)
    mk[emb_k] = True
    return SemidirectProduct(G, Subgroup(G, mh), Subgroup(G, mk), emb_h, emb_k, auto)


def power_map(H: Group, k: int) -> np.ndarray:
    """x -> x^k on an abelian group."""
    out = np.zeros(H.order, dtype=np.int64)
    for x in range(H.order):
        out[x] = H.power(x, k)
    return out


def wreath_cyclic(G: Group, q: int, bounds: Bounds = DEFAULT_BOUNDS) -> Group:
    """G wr C_q: base G^q with C_q rotating the coordinates."""
    n = G.order
    if n ** q * q > bounds.group_order:
        raise OrderBoundExceeded(f"|G|^q*q = {n ** q * q} exceeds bound")
    base = G
    for _ in range(q - 1):
        base = direct_product(G, base)
    # coordinates of a base element: index = sum c_i n^(q-1-i)
    coords = np.array(list(itertools.product(range(n), repeat=q)), dtype=np.int64).reshape(-1, q)
    weights = n ** np.arange(q - 1, -1, -1)
    rot = (np.roll(coords, 1, axis=1) * weights).sum(axis=1)
    C = cyclic(q)
    sd = semidirect_product(base, C, [rot], label=f"wr({G.label},{q})", bounds=bounds)
    return sd.group


# -- named groups --------------------------------------------------------------

def _matrices_det1(p: int) -> list[tuple[int, int, int, int]]:
    mats = [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
    ident = (1, 0, 0, 1)
    mats.remove(ident)
    return [ident] + mats


def _matmul(a, b, p):
    return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)


def _matrix_group(mats, p, label):
    pos = {m: i for i, m in enumerate(mats)}
    table = [[pos[_matmul(a, b, p)] for b in mats] for a in mats]
    return Group(table, label=label)


@lru_cache(maxsize=None)
def special_linear_2(p: int) -> tuple[Group, tuple]:
    mats = _matrices_det1(p)
    return _matrix_group(mats, p, f"SL(2,{p})"), tuple(mats)


@lru_cache(maxsize=None)
def sl2_3() -> Group:
    """SL(2,3) enumerated as 2x2 determinant-one matrices over GF(3)."""
    return _matrix_group(_matrices_det1(3), 3, "named(sl2_3)")


@lru_cache(maxsize=None)
def quaternion8() -> Group:
    """Q8 as the elements of SL(2,3) of 2-power order."""
    mats = _matrices_det1(3)
    G = _matrix_group(mats, 3, "")
    keep = [mats[i] for i in range(G.order) if G.element_orders[i] in (1, 2, 4)]
    return _matrix_group(keep, 3, "named(q8)")


@lru_cache(maxsize=None)
def _sl23_in_sl25() -> tuple[Group, np.ndarray, list]:
    """An SL(2,3) subgroup of SL(2,5) plus an isomorphism onto it.

    Returns (SL(2,3), image indices in SL(2,5) per element, SL(2,5) matrices).
    """
    S5, mats5 = special_linear_2(5)
    orders = S5.element_orders
    target = None
    for a in range(S5.order):
        if orders[a] != 4:
            continue
        for b in range(S5.order):
            if orders[b] != 3:
                continue
            H = closure(S5, [a, b])
            if H.order == 24:
                target = H
                break
        if target is not None:
            break
    T, emb = target.as_group()
    sl = sl2_3()
    iso = is_isomorphic(sl, T)
    assert iso is not None
    return sl, emb[iso.images], list(mats5)


def _natural_action_maps(K: Group, kernel: Group, matrix_of) -> list[np.ndarray]:
    """Row-vector action v -> v M(k) of K's generators on C5 x C5."""
    maps = []
    for g in K.generators:
        m = matrix_of(g)
        img = np.zeros(25, dtype=np.int64)
        for i in range(5):
            for j in range(5):
                x = (i * m[0] + j * m[2]) % 5
                y = (i * m[1] + j * m[3]) % 5
                img[i * 5 + j] = x * 5 + y
        maps.append(img)
    return maps


@lru_cache(maxsize=None)
def frobenius600_data() -> SemidirectProduct:
    sl, images, mats5 = _sl23_in_sl25()
    V = direct_product(cyclic(5), cyclic(5))
    maps = _natural_action_maps(sl, V, lambda g: mats5[images[g]])
    return semidirect_product(V, sl, maps, label="named(frobenius600)")


def frobenius600() -> Group:
    """(C5 x C5) x| SL(2,3), SL(2,3) acting naturally inside SL(2,5)."""
    return frobenius600_data().group


@lru_cache(maxsize=None)
def extraspecial_27_exp9() -> Group:
    """<sigma, alpha | sigma^9 = alpha^3 = 1, sigma^alpha = sigma^4>."""
    C9 = cyclic(9)
    sd = semidirect_product(C9, cyclic(3), [power_map(C9, 4)], label="named(xs27e9)")
    return sd.group


@dataclass(frozen=True, eq=False)
class Example32:
    GA: Group
    G: Subgroup
    A: Subgroup
    N: Subgroup
    R: Subgroup
    S: Subgroup
    ZS: Subgroup
    sigma: int
    alpha: int
    r: int
    G_group: Group
    A_group: Group
    auto: np.ndarray           # alpha-power automorphisms of G_group
    embed_G: np.ndarray
    embed_A: np.ndarray


@lru_cache(maxsize=None)
def example_3_2() -> Example32:
    """R = Z7, <sigma> = Z9 acting on R by r -> r^2, alpha: sigma -> sigma^4.

    G = R<sigma> (order 63), A = <alpha> (order 3), GA of order 189.
    """
    C7, C9, C3 = cyclic(7), cyclic(9), cyclic(3)
    inner = semidirect_product(C7, C9, [power_map(C7, 2)], label="ex32_G")
    G = inner.group
    r, sigma = int(inner.embed_normal[1]), int(inner.embed_complement[1])
    gens = list(G.generators)
    want = {r: r, sigma: G.power(sigma, 4)}
    alpha_map = extend_hom(G, G, gens, [want[g] for g in gens])
    if alpha_map is None or (alpha_map < 0).any():
        raise NotAHomomorphism("sigma -> sigma^4 does not define an automorphism")
    outer = semidirect_product(G, C3, [alpha_map], label="named(ex32_GA)")
    GA = outer.group
    eg, ea = outer.embed_normal, outer.embed_complement
    s_, a_, r_ = int(eg[sigma]), int(ea[1]), int(eg[r])
    Gs = outer.normal
    As = outer.complement
    R = closure(GA, [r_])
    S = closure(GA, [s_, a_])
    ZS = closure(GA, [GA.power(s_, 3)])
    N = closure(GA, [r_, GA.power(s_, 3)])
    return Example32(GA, Gs, As, N, R, S, ZS, s_, a_, r_, G, C3, outer.auto, eg, ea)


def example_3_2_GA() -> tuple[Group, Subgroup, Subgroup, Subgroup]:
    e = example_3_2()
    return e.GA, e.G, e.N, e.A


NAMED = {
    "sl2_3": sl2_3,
    "q8": quaternion8,
    "frobenius600": frobenius600,
    "xs27e9": extraspecial_27_exp9,
    "ex32_GA": lambda: example_3_2().GA,
}


# -- expression grammar ----------------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9+\-.]*|\d+|[(),])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ManifestError(f"bad group expression near {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


@dataclass(frozen=True)
class GroupExpr:
    """Parsed constructor tree: op name plus arguments (GroupExpr, int or str)."""
    op: str
    args: tuple

    def __str__(self):
        return f"{self.op}({','.join(str(a) for a in self.args)})"


_ARITY = {"cyclic": ("int",), "sym": ("int",), "dp": ("expr", "expr"),
          "sd": ("expr", "expr", "name"), "wr": ("expr", "int"), "named": ("name",)}


def parse_expr(text: str) -> GroupExpr:
    toks = _tokenize(text)
    pos = 0

    def take(expect=None):
        nonlocal pos
        if pos >= len(toks):
            raise ManifestError(f"unexpected end of expression {text!r}")
        t = toks[pos]
        if expect is not None and t != expect:
            raise ManifestError(f"expected {expect!r} in {text!r}, got {t!r}")
        pos += 1
        return t

    def expr() -> GroupExpr:
        op = take()
        if op not in _ARITY:
            raise ManifestError(f"unknown constructor {op!r}")
        take("(")
        args = []
        for i, kind in enumerate(_ARITY[op]):
            if i:
                take(",")
            if kind == "expr":
                args.append(expr())
            elif kind == "int":
                t = take()
                if not t.isdigit():
                    raise ManifestError(f"expected integer, got {t!r}")
                args.append(int(t))
            else:
                args.append(take())
        take(")")
        return GroupExpr(op, tuple(args))

    e = expr()
    if pos != len(toks):
        raise ManifestError(f"trailing tokens in {text!r}")
    return e


def _named_action(H: Group, K: Group, name: str) -> list[np.ndarray]:
    parts = name.split("+")
    if len(parts) == 1:
        parts = parts * len(K.generators)
    if len(parts) != len(K.generators):
        raise ManifestError(f"action {name!r} needs one part per generator of K")
    maps = []
    for part in parts:
        if part in ("triv", "trivial"):
            maps.append(np.arange(H.order))
        elif part == "inv":
            if not H.is_abelian:
                raise ManifestError("inversion action needs abelian H")
            maps.append(H.inverse.copy())
        elif part.startswith("pow") and part[3:].isdigit():
            if not H.is_abelian:
                raise ManifestError("power action needs abelian H")
            maps.append(power_map(H, int(part[3:])))
        else:
            raise ManifestError(f"unknown action name {part!r}")
    return maps


def evaluate(expr: GroupExpr | str, bounds: Bounds = DEFAULT_BOUNDS) -> Group:
    if isinstance(expr, str):
        expr = parse_expr(expr)
    return _evaluate(expr, bounds)


@lru_cache(maxsize=256)
def _evaluate(e: GroupExpr, bounds: Bounds) -> Group:
    label = str(e)
    if e.op == "cyclic":
        return cyclic(e.args[0], label=label)
    if e.op == "sym":
        return symmetric(e.args[0])
    if e.op == "dp":
        return direct_product(_evaluate(e.args[0], bounds), _evaluate(e.args[1], bounds), label=label)
    if e.op == "sd":
        H, K = _evaluate(e.args[0], bounds), _evaluate(e.args[1], bounds)
        try:
            return semidirect_product(H, K, _named_action(H, K, e.args[2]), label=label,
                                      bounds=bounds).group
        except (NotAnAutomorphism, NotAHomomorphism) as exc:
            raise ManifestError(f"{label}: {exc}") from exc
    if e.op == "wr":
        return wreath_cyclic(_evaluate(e.args[0], bounds), e.args[1], bounds=bounds)
    if e.op == "named":
        if e.args[0] not in NAMED:
            raise ManifestError(f"unknown named group {e.args[0]!r}")
        return NAMED[e.args[0]]()
    raise ManifestError(f"unknown constructor {e.op!r}")


def frobenius_kernel_check(sd: SemidirectProduct) -> bool:
    """True iff every nontrivial complement element fixes only 1 in the kernel."""
    for k in range(1, sd.auto.shape[0]):
        fixed = np.flatnonzero(sd.auto[k] == np.arange(sd.auto.shape[1]))
        if fixed.size != 1:
            return False
    return True
