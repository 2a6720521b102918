"""Finite groups as Cayley tables, and the subgroup machinery built on them.

Elements of a group of order ``n`` are the integers ``0..n-1`` and ``0`` is
always the identity.  A :class:`Subgroup` is a boolean membership mask over
its parent's elements.  Everything here is exact and deterministic.
"""
from __future__ import annotations

import hashlib
import json
import os
from functools import reduce
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

from .config import DEFAULT_BOUNDS, Bounds
from .errors import (
    IndexOutOfRange,
    NonSolvableUnsupported,
    NotAHomomorphism,
    NotNormal,
    OrderBoundExceeded,
    ParentMismatch,
)

CACHE_ENV = "GOODACTION_CACHE"
LATTICE_CACHE_VERSION = 1


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def p_part(n: int, primes: Iterable[int]) -> int:
    primes = set(primes)
    return reduce(lambda a, kv: a * kv[0] ** kv[1] if kv[0] in primes else a, factorint(n).items(), 1)


class PrimeSet(frozenset):
    """A finite set of primes (sigma, pi(G), ...)."""

    def __new__(cls, primes: Iterable[int] = ()):
        primes = frozenset(int(p) for p in primes)
        bad = [p for p in primes if not isprime(p)]
        if bad:
            raise ValueError(f"not prime: {sorted(bad)}")
        return super().__new__(cls, primes)

    def __repr__(self):
        return f"PrimeSet({sorted(self)})"


class Group:
    """A finite group given by its full multiplication table.

    All derived tables (inverses, element orders, conjugacy classes) are
    filled in here and never change afterwards.
    """

    def __init__(self, table, generators: Sequence[int] | None = None, label: str = "",
                 check: bool = True, bounds: Bounds = DEFAULT_BOUNDS):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("multiplication table must be a nonempty square array")
        n = table.shape[0]
        if n > bounds.group_order:
            raise OrderBoundExceeded(f"group order {n} exceeds bound {bounds.group_order}")
        self.order = n
        self.label = label
        idx = np.arange(n)
        if check:
            if (table < 0).any() or (table >= n).any():
                raise ValueError("table entries out of range")
            if not (table[0] == idx).all() or not (table[:, 0] == idx).all():
                raise ValueError("element 0 must be the identity")
            srt = np.sort(table, axis=1)
            if not (srt == idx).all() or not (np.sort(table, axis=0) == idx[:, None]).all():
                raise ValueError("table is not a Latin square")
            _check_associative(table)
        self.table = _frozen(table)
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(table == 0)
        inv[rows] = cols
        self.inverse = _frozen(inv)
        self.element_orders = _frozen(_element_orders(table))
        classes, class_of = _conjugacy_classes(table, inv)
        self.classes: tuple[tuple[int, ...], ...] = classes
        self.class_of = _frozen(class_of)
        if generators is None:
            generators = _greedy_generators(self)
        gens = tuple(int(g) for g in generators)
        if check and closure_mask(self, gens).sum() != n:
            raise ValueError("generators do not generate the group")
        self.generators = gens
        self._memo: dict = {}

    # -- element arithmetic -------------------------------------------------
    def mul(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.table[out, x])
        return out

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        out, base = 0, int(x)
        while k:
            if k & 1:
                out = int(self.table[out, base])
            base = int(self.table[base, base])
            k >>= 1
        return out

    def conj(self, x, g):
        """x^g = g^-1 x g (vectorised over numpy inputs)."""
        return self.table[self.table[self.inverse[g], x], g]

    def comm(self, x, y):
        """[x, y] = x^-1 y^-1 x y."""
        t, i = self.table, self.inverse
        return t[t[i[x], i[y]], t[x, y]]

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=bool))

    def trivial(self) -> "Subgroup":
        m = np.zeros(self.order, dtype=bool)
        m[0] = True
        return Subgroup(self, m)

    @property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Group(order={self.order}, label={self.label!r})"

    def fingerprint(self) -> str:
        return hashlib.sha256(self.table.astype(np.int32).tobytes()).hexdigest()[:16]


def _check_associative(table: np.ndarray, samples: int = 4000, seed: int = 0) -> None:
    n = table.shape[0]
    if n <= 200:
        for a in range(n):
            if not (table[table[a]] == table[a][table]).all():
                raise ValueError("table is not associative")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    if not (table[table[a, b], c] == table[a, table[b, c]]).all():
        raise ValueError("table is not associative")


def _element_orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while (orders == 0).any():
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        cur = table[cur, idx]
        k += 1
    return orders


def _conjugacy_classes(table: np.ndarray, inv: np.ndarray):
    n = table.shape[0]
    class_of = np.full(n, -1, dtype=np.int64)
    classes = []
    idx = np.arange(n)
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = np.unique(table[table[inv, x], idx])
        class_of[orbit] = len(classes)
        classes.append(tuple(int(y) for y in orbit))
    return tuple(classes), class_of


def _greedy_generators(G: Group) -> tuple[int, ...]:
    order = sorted(range(G.order), key=lambda x: (-int(G.element_orders[x]), x))
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for x in order:
        if mask.all():
            break
        if not mask[x]:
            gens.append(x)
            mask = closure_mask(G, gens)
    return tuple(gens)


def closure_mask(G: Group, seed: Iterable[int], start: np.ndarray | None = None) -> np.ndarray:
    gens = np.unique(np.asarray(list(seed), dtype=np.int64))
    if gens.size and (gens.min() < 0 or gens.max() >= G.order):
        raise IndexOutOfRange("seed element out of range")
    gens = gens[gens != 0]
    if start is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
    else:
        mask = start.copy()
        frontier = np.flatnonzero(mask)
    if gens.size == 0:
        return mask
    t = G.table
    while frontier.size:
        prods = t[np.ix_(frontier, gens)].ravel()
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return mask


class Subgroup:
    """A subgroup of ``parent``, stored as a membership mask."""

    __slots__ = ("parent", "members", "_elements", "_key", "_gens")

    def __init__(self, parent: Group, members: np.ndarray):
        members = np.asarray(members, dtype=bool)
        if members.shape != (parent.order,):
            raise ValueError("mask length differs from parent order")
        self.parent = parent
        self.members = _frozen(members.copy())
        self._elements = None
        self._key = None
        self._gens = None

    @property
    def order(self) -> int:
        return int(self.elements.size)

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._elements = _frozen(np.flatnonzero(self.members))
        return self._elements

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = np.packbits(self.members).tobytes()
        return self._key

    @property
    def generators(self) -> tuple[int, ...]:
        if self._gens is None:
            G = self.parent
            els = sorted(self.elements.tolist(), key=lambda x: (-int(G.element_orders[x]), x))
            gens: list[int] = []
            mask = np.zeros(G.order, dtype=bool)
            mask[0] = True
            for x in els:
                if mask.sum() == self.order:
                    break
                if not mask[x]:
                    gens.append(x)
                    mask = closure_mask(G, gens)
            self._gens = tuple(gens)
        return self._gens

    def sort_key(self):
        return (self.order, tuple(self.elements.tolist()))

    def __contains__(self, x) -> bool:
        return bool(self.members[x])

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return not (self.members & ~other.members).any()

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self):
        return hash((id(self.parent), self.key))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.order})"

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_subgroup(self) -> bool:
        """Direct check of the subgroup axioms (used by tests)."""
        G, e = self.parent, self.elements
        if not self.members[0]:
            return False
        if not self.members[G.inverse[e]].all():
            return False
        return bool(self.members[G.table[np.ix_(e, e)]].all())

    def as_group(self, label: str = "") -> tuple[Group, np.ndarray]:
        """Materialise as a standalone group; returns (group, embedding).

        Unlabelled results are cached on the parent so repeated calls return
        the same Group object.
        """
        cache = self.parent._memo.setdefault("as_group", {}) if not label else None
        if cache is not None and self.key in cache:
            H, e = cache[self.key]
            return H, e.copy()
        e = self.elements  # sorted, so identity stays at index 0
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[e] = np.arange(e.size)
        table = pos[self.parent.table[np.ix_(e, e)]]
        gens = [int(pos[g]) for g in self.generators]
        H = Group(table, generators=gens, label=label, check=False)
        if cache is not None:
            cache[self.key] = (H, e.copy())
        return H, e.copy()


def _same_parent(*subs: Subgroup) -> Group:
    p = subs[0].parent
    for s in subs[1:]:
        if s.parent is not p:
            raise ParentMismatch("subgroups live in different groups")
    return p


def subgroup_from_elements(G: Group, elements: Iterable[int]) -> Subgroup:
    m = np.zeros(G.order, dtype=bool)
    m[np.asarray(list(elements), dtype=np.int64)] = True
    return Subgroup(G, m)


def canonical_sort(subs: Iterable[Subgroup]) -> list[Subgroup]:
    return sorted(subs, key=Subgroup.sort_key)


class Homomorphism:
    """A group homomorphism given by its full element map."""

    def __init__(self, source: Group, target: Group, images, check: bool = True):
        images = np.asarray(images, dtype=np.int64)
        if images.shape != (source.order,):
            raise ValueError("image array has wrong length")
        self.source, self.target = source, target
        self.images = _frozen(images.copy())
        if check and not self.is_homomorphism():
            raise NotAHomomorphism("map does not respect multiplication")

    def is_homomorphism(self) -> bool:
        s, t, im = self.source.table, self.target.table, self.images
        if im[0] != 0:
            return False
        return bool((im[s] == t[np.ix_(im, im)]).all())

    def __call__(self, x):
        return self.images[x]

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, self.images == 0)

    def image(self) -> Subgroup:
        m = np.zeros(self.target.order, dtype=bool)
        m[self.images] = True
        return Subgroup(self.target, m)

    def is_injective(self) -> bool:
        return np.unique(self.images).size == self.source.order

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.source.order == self.target.order

    def image_of(self, H: Subgroup) -> Subgroup:
        m = np.zeros(self.target.order, dtype=bool)
        m[self.images[H.elements]] = True
        return Subgroup(self.target, m)

    def preimage(self, K: Subgroup) -> Subgroup:
        return Subgroup(self.source, K.members[self.images])


# -- basic subgroup operations ---------------------------------------------

def closure(parent: Group, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``parent`` containing ``seed``."""
    return Subgroup(parent, closure_mask(parent, seed))


def join(*subs: Subgroup) -> Subgroup:
    G = _same_parent(*subs)
    gens = [g for s in subs for g in s.generators]
    return closure(G, gens)


def intersection(*subs: Subgroup) -> Subgroup:
    G = _same_parent(*subs)
    m = np.logical_and.reduce([s.members for s in subs])
    return Subgroup(G, m)


def product_set_size(H: Subgroup, K: Subgroup) -> int:
    """|HK| as a set, by |H||K|/|H cap K|."""
    return H.order * K.order // intersection(H, K).order


def product_set(H: Subgroup, K: Subgroup) -> np.ndarray:
    G = _same_parent(H, K)
    m = np.zeros(G.order, dtype=bool)
    m[G.table[np.ix_(H.elements, K.elements)].ravel()] = True
    return m


def commutator_subgroup(H: Subgroup, K: Subgroup) -> Subgroup:
    """[H, K], generated by all h^-1 k^-1 h k."""
    G = _same_parent(H, K)
    c = G.comm(H.elements[:, None], K.elements[None, :])
    return closure(G, np.unique(c))


def centralizer(H: Subgroup, S: Subgroup) -> Subgroup:
    """C_H(S) = {h in H : hs = sh for all s in S}."""
    G = _same_parent(H, S)
    h = H.elements
    s = np.asarray(S.generators, dtype=np.int64)
    if s.size == 0:
        return H
    ok = (G.table[np.ix_(h, s)] == G.table[np.ix_(s, h)].T).all(axis=1)
    m = np.zeros(G.order, dtype=bool)
    m[h[ok]] = True
    return Subgroup(G, m)


def center(G: Group) -> Subgroup:
    W = G.whole()
    return centralizer(W, W)


def conjugate(H: Subgroup, g: int) -> Subgroup:
    G = H.parent
    m = np.zeros(G.order, dtype=bool)
    m[G.conj(H.elements, g)] = True
    return Subgroup(G, m)


def normalizer(G: Group | Subgroup, H: Subgroup) -> Subgroup:
    """N_G(H); ``G`` may be the whole group or an ambient subgroup."""
    amb = G if isinstance(G, Subgroup) else G.whole()
    P = _same_parent(amb, H)
    g = amb.elements
    hg = np.asarray(H.generators, dtype=np.int64)
    if hg.size == 0:
        return amb
    conj = P.table[P.table[P.inverse[g][:, None], hg[None, :]], g[:, None]]
    ok = H.members[conj].all(axis=1)
    m = np.zeros(P.order, dtype=bool)
    m[g[ok]] = True
    return Subgroup(P, m)


def is_normal(H: Subgroup, within: Subgroup | None = None) -> bool:
    amb = within if within is not None else H.parent.whole()
    hg = np.asarray(H.generators, dtype=np.int64)
    if hg.size == 0:
        return True
    P = H.parent
    ag = np.asarray(amb.generators, dtype=np.int64)
    if ag.size == 0:
        return True
    conj = P.table[P.table[P.inverse[ag][:, None], hg[None, :]], ag[:, None]]
    return bool(H.members[conj].all())


def normal_closure(S: Subgroup, within: Subgroup | None = None) -> Subgroup:
    G = S.parent
    amb = within if within is not None else G.whole()
    gens = list(S.generators)
    cur = S
    while True:
        ag = np.asarray(amb.generators, dtype=np.int64)
        cg = np.asarray(cur.generators, dtype=np.int64)
        if ag.size == 0 or cg.size == 0:
            return cur
        conj = G.table[G.table[G.inverse[ag][:, None], cg[None, :]], ag[:, None]].ravel()
        if cur.members[conj].all():
            return cur
        gens = list(cur.generators) + np.unique(conj[~cur.members[conj]]).tolist()
        cur = closure(G, gens)


def core(H: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """Largest subgroup of H normal in ``within`` (default: the parent)."""
    G = H.parent
    amb = within if within is not None else G.whole()
    m = H.members.copy()
    for g in amb.elements:
        m &= H.members[G.conj(np.arange(G.order), G.inverse[g])]
    return Subgroup(G, m)


def quotient(G: Group, N: Subgroup, label: str = "") -> tuple[Group, Homomorphism]:
    """G/N as a Cayley table on cosets, with the projection."""
    if N.parent is not G:
        raise ParentMismatch("N is not a subgroup of G")
    if not is_normal(N):
        raise NotNormal("quotient needs a normal subgroup")
    n = G.order
    coset = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset[g] < 0:
            coset[G.table[g, N.elements]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    table = coset[G.table[np.ix_(reps, reps)]]
    gens = sorted({int(coset[g]) for g in G.generators} - {0})
    Q = Group(table, generators=gens, label=label, check=False)
    return Q, Homomorphism(G, Q, coset, check=False)


# -- series and invariants --------------------------------------------------

def derived_subgroup(H: Subgroup) -> Subgroup:
    return commutator_subgroup(H, H)


def derived_series(G: Group | Subgroup) -> list[Subgroup]:
    cur = G if isinstance(G, Subgroup) else G.whole()
    series = [cur]
    while True:
        nxt = derived_subgroup(cur)
        if nxt == cur:
            return series
        series.append(nxt)
        cur = nxt


def is_solvable(G: Group | Subgroup) -> bool:
    key = "solvable"
    if isinstance(G, Group) and key in G._memo:
        return G._memo[key]
    out = derived_series(G)[-1].is_trivial()
    if isinstance(G, Group):
        G._memo[key] = out
    return out


def derived_length(G: Group | Subgroup) -> int:
    s = derived_series(G)
    if not s[-1].is_trivial():
        raise NonSolvableUnsupported("derived length of a nonsolvable group")
    return len(s) - 1


def lower_central_series(G: Group | Subgroup) -> list[Subgroup]:
    top = G if isinstance(G, Subgroup) else G.whole()
    series = [top]
    while True:
        nxt = commutator_subgroup(series[-1], top)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(G: Group | Subgroup) -> bool:
    return lower_central_series(G)[-1].is_trivial()


def exponent(G: Group | Subgroup) -> int:
    if isinstance(G, Subgroup):
        orders = G.parent.element_orders[G.elements]
    else:
        orders = G.element_orders
    return reduce(lambda a, b: a * b // gcd(a, b), (int(o) for o in np.unique(orders)), 1)


def is_p_group(H: Group | Subgroup, p: int | None = None) -> bool:
    n = H.order
    ps = prime_divisors(n)
    if not ps:
        return True
    return len(ps) == 1 and (p is None or ps[0] == p)


def is_elementary_abelian(H: Subgroup) -> bool:
    if H.is_trivial():
        return True
    ps = prime_divisors(H.order)
    if len(ps) != 1:
        return False
    G = H.parent
    if not (G.element_orders[H.elements][1:] == ps[0]).all():
        return False
    return commutator_subgroup(H, H).is_trivial()


def pi(G: Group | Subgroup) -> PrimeSet:
    return PrimeSet(prime_divisors(G.order))


# -- subgroup lattice --------------------------------------------------------

def _prime_order_extensions(G: Group, H: Subgroup, allowed: np.ndarray | None = None,
                            primes: frozenset | None = None) -> Iterator[Subgroup]:
    """Subgroups K = H<g> with g normalising H and |K:H| prime."""
    N = normalizer(G, H)
    cand = N.members & ~H.members
    if allowed is not None:
        cand &= allowed
    covered = H.members.copy()
    t = G.table
    h = H.elements
    for g in np.flatnonzero(cand):
        if covered[g]:
            continue
        # order of gH in N/H
        k, x = 1, int(g)
        while not H.members[x]:
            x = int(t[x, g])
            k += 1
        if not isprime(k) or (primes is not None and k not in primes):
            continue
        m = H.members.copy()
        x = int(g)
        for _ in range(k - 1):
            m[t[h, x]] = True
            x = int(t[x, g])
        covered |= m
        yield Subgroup(G, m)


def _cache_path(G: Group) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root or not G.label:
        return None
    key = hashlib.sha256(f"v{LATTICE_CACHE_VERSION}|{G.label}".encode()).hexdigest()[:24]
    return Path(root) / f"lattice-{key}.json"


def _load_cached_lattice(G: Group) -> list[Subgroup] | None:
    path = _cache_path(G)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != LATTICE_CACHE_VERSION or data.get("order") != G.order \
            or data.get("table_sha") != G.fingerprint():
        return None
    out = []
    for hexmask in data["masks"]:
        bits = np.unpackbits(np.frombuffer(bytes.fromhex(hexmask), dtype=np.uint8))[:G.order]
        out.append(Subgroup(G, bits.astype(bool)))
    return out


def _store_cached_lattice(G: Group, subs: list[Subgroup]) -> None:
    path = _cache_path(G)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {"version": LATTICE_CACHE_VERSION, "label": G.label, "order": G.order,
            "table_sha": G.fingerprint(), "masks": [s.key.hex() for s in subs]}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data))
    tmp.replace(path)


def all_subgroups(G: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[Subgroup]:
    """Every subgroup of a solvable group, by cyclic extension.

    Each subgroup of a solvable group sits at the top of a chain of
    prime-index normal steps, so extending known subgroups by one element of
    prime order modulo them reaches all of them.
    """
    if G.order > bounds.subgroups:
        raise OrderBoundExceeded(f"|G|={G.order} exceeds subgroup bound {bounds.subgroups}")
    if "all_subgroups" in G._memo:
        return G._memo["all_subgroups"]
    if not is_solvable(G):
        raise NonSolvableUnsupported("subgroup enumeration is only for solvable groups")
    subs = _load_cached_lattice(G)
    if subs is None:
        seen = {G.trivial().key: G.trivial()}
        layer = [G.trivial()]
        while layer:
            nxt = {}
            for H in layer:
                for K in _prime_order_extensions(G, H):
                    if K.key not in seen and K.key not in nxt:
                        nxt[K.key] = K
            seen.update(nxt)
            layer = list(nxt.values())
        subs = canonical_sort(seen.values())
        _store_cached_lattice(G, subs)
    G._memo["all_subgroups"] = subs
    return subs


def normal_subgroups(G: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of classes."""
    if G.order > bounds.subgroups:
        raise OrderBoundExceeded(f"|G|={G.order} exceeds subgroup bound {bounds.subgroups}")
    if "normal_subgroups" in G._memo:
        return G._memo["normal_subgroups"]
    base = {}
    for cls in G.classes:
        N = closure(G, cls)
        base.setdefault(N.key, N)
    found = dict(base)
    found.setdefault(G.trivial().key, G.trivial())
    frontier = list(found.values())
    basis = list(base.values())
    while frontier:
        new = {}
        for N in frontier:
            for M in basis:
                if M <= N:
                    continue
                J = Subgroup(G, product_set(N, M))
                if J.key not in found and J.key not in new:
                    new[J.key] = J
        found.update(new)
        frontier = list(new.values())
    out = canonical_sort(found.values())
    G._memo["normal_subgroups"] = out
    return out


def maximal_subgroups(G: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[Subgroup]:
    subs = [s for s in all_subgroups(G, bounds) if not s.is_whole()]
    return [s for s in subs if not any(s < t for t in subs)]


def frattini_subgroup(G: Group, bounds: Bounds = DEFAULT_BOUNDS) -> Subgroup:
    maxes = maximal_subgroups(G, bounds)
    if not maxes:
        return G.whole()
    return intersection(*maxes)


def minimal_normal_subgroups(G: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[Subgroup]:
    nontriv = [N for N in normal_subgroups(G, bounds) if not N.is_trivial()]
    return [N for N in nontriv if not any(M < N for M in nontriv)]


# -- Sylow and Hall ----------------------------------------------------------

def sigma_elements(G: Group, sigma: Iterable[int]) -> np.ndarray:
    sigma = set(sigma)
    return np.array([set(prime_divisors(int(o))) <= sigma for o in G.element_orders])


def sigma_subgroups_dfs(G: Group, sigma: Iterable[int], target: int,
                        within: Subgroup | None = None) -> Iterator[Subgroup]:
    """Depth-first walk over sigma-subgroups, yielding those of order ``target``."""
    sigma = frozenset(sigma)
    allowed = sigma_elements(G, sigma)
    if within is not None:
        allowed &= within.members
    stack = [G.trivial()]
    seen = {G.trivial().key}
    while stack:
        H = stack.pop()
        if H.order == target:
            yield H
            continue
        kids = [K for K in _prime_order_extensions(G, H, allowed, sigma) if K.key not in seen]
        for K in sorted(kids, key=Subgroup.sort_key, reverse=True):
            seen.add(K.key)
            stack.append(K)


def hall_subgroup(G: Group, sigma: Iterable[int], within: Subgroup | None = None) -> Subgroup | None:
    """A Hall sigma-subgroup of G (or of the subgroup ``within``)."""
    amb = within if within is not None else G.whole()
    if not is_solvable(amb):
        raise NonSolvableUnsupported("Hall subgroups need a solvable group")
    target = p_part(amb.order, sigma)
    return next(sigma_subgroups_dfs(G, sigma, target, within), None)


def sylow_subgroup(G: Group, p: int, within: Subgroup | None = None) -> Subgroup:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    amb = within if within is not None else G.whole()
    target = p_part(amb.order, [p])
    found = next(sigma_subgroups_dfs(G, [p], target, within), None)
    assert found is not None  # Sylow's theorem
    return found


def conjugates(H: Subgroup, within: Subgroup | None = None) -> list[Subgroup]:
    G = H.parent
    amb = within if within is not None else G.whole()
    out = {}
    N = normalizer(amb, H)
    covered = np.zeros(G.order, dtype=bool)
    for g in amb.elements:
        if covered[g]:
            continue
        covered[G.table[N.elements, g]] = True
        K = conjugate(H, int(g))
        out.setdefault(K.key, K)
    return canonical_sort(out.values())


# -- isomorphism -------------------------------------------------------------

def _invariants(G: Group) -> tuple:
    prof = tuple(sorted(zip(G.element_orders.tolist(),
                            [len(G.classes[c]) for c in G.class_of.tolist()])))
    try:
        dl = derived_length(G)
    except NonSolvableUnsupported:
        dl = -1
    return (G.order, prof, center(G).order, dl, exponent(G), len(G.classes))


def extend_hom(source: Group, target: Group, gens: Sequence[int], imgs: Sequence[int]) -> np.ndarray | None:
    """Extend generator images to a homomorphism on <gens>; None if inconsistent.

    Entries outside <gens> stay -1.  Every edge x -> x*g of the Cayley graph
    of <gens> is checked, which makes the result a homomorphism.
    """
    phi = np.full(source.order, -1, dtype=np.int64)
    phi[0] = 0
    frontier = np.array([0])
    st, tt = source.table, target.table
    while frontier.size:
        new = []
        for g, h in zip(gens, imgs):
            z = st[frontier, g]
            w = tt[phi[frontier], h]
            un = phi[z] < 0
            phi[z[un]] = w[un]
            if (phi[z] != w).any():
                return None
            new.append(z[un])
        frontier = np.unique(np.concatenate(new)) if new else np.array([], dtype=np.int64)
    return phi


def is_isomorphic(G1: Group, G2: Group, bounds: Bounds = DEFAULT_BOUNDS) -> Homomorphism | None:
    """An isomorphism G1 -> G2, or None."""
    if G1.order != G2.order:
        return None
    if G1.order > bounds.isomorphism:
        raise OrderBoundExceeded(f"isomorphism test bound {bounds.isomorphism} exceeded")
    if _invariants(G1) != _invariants(G2):
        return None
    gens = list(G1.generators)
    sig = lambda G, x: (int(G.element_orders[x]), len(G.classes[G.class_of[x]]))
    cands = [[y for y in range(G2.order) if sig(G2, y) == sig(G1, g)] for g in gens]
    sizes = [int(closure_mask(G1, gens[:k + 1]).sum()) for k in range(len(gens))]

    def search(k: int, imgs: list[int]):
        if k == len(gens):
            phi = extend_hom(G1, G2, gens, imgs)
            if phi is not None and np.unique(phi).size == G1.order:
                return phi
            return None
        for y in cands[k]:
            trial = imgs + [y]
            phi = extend_hom(G1, G2, gens[:k + 1], trial)
            if phi is None or np.unique(phi[phi >= 0]).size != sizes[k]:
                continue
            res = search(k + 1, trial)
            if res is not None:
                return res
        return None

    phi = search(0, [])
    return None if phi is None else Homomorphism(G1, G2, phi)


def automorphisms(G: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[np.ndarray]:
    """All automorphisms of a small group as element maps (harness sweeps)."""
    if G.order > bounds.isomorphism:
        raise OrderBoundExceeded("automorphism enumeration bound exceeded")
    gens = list(G.generators)
    sig = lambda x: (int(G.element_orders[x]), len(G.classes[G.class_of[x]]))
    cands = [[y for y in range(G.order) if sig(y) == sig(g)] for g in gens]
    sizes = [int(closure_mask(G, gens[:k + 1]).sum()) for k in range(len(gens))]
    out = []

    def search(k, imgs):
        if k == len(gens):
            phi = extend_hom(G, G, gens, imgs)
            if phi is not None and np.unique(phi).size == G.order:
                out.append(phi)
            return
        for y in cands[k]:
            trial = imgs + [y]
            phi = extend_hom(G, G, gens[:k + 1], trial)
            if phi is None or np.unique(phi[phi >= 0]).size != sizes[k]:
                continue
            search(k + 1, trial)

    search(0, [])
    out.sort(key=lambda a: a.tolist())
    return out
