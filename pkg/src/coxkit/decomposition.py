"""Direct-product decompositions of small finite Coxeter groups by brute force
over a multiplication table."""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .coxeter import DEFAULT_BOUND, coxeter_group
from .errors import CoxkitError, NotSpherical
from .graph import CoxeterGraph, catalog_name, components, is_spherical

REMAK_LIMIT = 10_000


@dataclass
class FiniteGroupTable:
    elements: list                 # GroupEl, identity first
    mult: np.ndarray               # mult[i, j] = index of e_i e_j
    inv: np.ndarray
    graph: CoxeterGraph | None = None

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def generate(self, gens: Iterable[int]) -> frozenset:
        """Subgroup generated by ``gens``."""
        gens = np.array(sorted(set(gens)) or [0], dtype=np.intp)
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.intp)
        while frontier.size:
            new = np.unique(self.mult[np.ix_(frontier, gens)])
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return frozenset(np.flatnonzero(mask).tolist())

    def conj_class(self, x: int, within: Iterable[int] | None = None) -> frozenset:
        H = np.arange(self.order) if within is None else np.array(sorted(within), dtype=np.intp)
        return frozenset(self.mult[self.mult[H, x], self.inv[H]].tolist())

    def is_normal(self, N: frozenset, within: frozenset | None = None) -> bool:
        H = range(self.order) if within is None else within
        Nl = np.array(sorted(N), dtype=np.intp)
        return all(set(self.mult[self.mult[h, Nl], self.inv[h]].tolist()) <= N for h in H)

    def commute(self, A: Iterable[int], B: Iterable[int]) -> bool:
        a = np.array(sorted(A), dtype=np.intp)
        b = np.array(sorted(B), dtype=np.intp)
        return bool(np.array_equal(self.mult[np.ix_(a, b)], self.mult[np.ix_(b, a)].T))

    def check_axioms(self, samples: int = 200, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        n = self.order
        if not (np.array_equal(self.mult[0], np.arange(n)) and np.array_equal(self.mult[:, 0], np.arange(n))):
            return False
        if not np.all(self.mult[np.arange(n), self.inv] == 0):
            return False
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(np.all(self.mult[self.mult[a, b], c] == self.mult[a, self.mult[b, c]]))


def build_table(g: CoxeterGraph, bound: int = DEFAULT_BOUND) -> FiniteGroupTable:
    """Multiplication table of ``W[Gamma]``.

    Left multiplication by each generator is computed once on the exact
    matrices and looked up by key; every row is then a composition of those
    permutations along the element's reduced word.
    """
    W = coxeter_group(g)
    elems = W.elements(bound)
    index = {e.key(): i for i, e in enumerate(elems)}
    n = len(elems)
    left = []
    for j in range(len(g)):
        left.append(np.array([index[e.lmul_gen(j).key()] for e in elems], dtype=np.intp))
    mult = np.empty((n, n), dtype=np.intp)
    mult[0] = np.arange(n)
    # BFS order: e_i = e_p * s with e_p earlier, so e_i x = e_p (s x)
    for i in range(1, n):
        e = elems[i]
        j = g.index(e.word[-1])
        p = index[e.rmul_gen(j).key()]
        mult[i] = mult[p][left[j]]
    inv = np.argmin(mult, axis=1).astype(np.intp)  # the unique column holding 0
    return FiniteGroupTable(elems, mult, inv, g)


# -- normal subgroups and Remak decompositions ----------------------------------

def normal_subgroups(t: FiniteGroupTable, H: frozenset | None = None) -> list:
    """All normal subgroups of ``H`` (default: the whole group), sorted by (order, elements)."""
    H = frozenset(range(t.order)) if H is None else H
    seen, classes = set(), []
    for x in sorted(H):
        if x in seen:
            continue
        c = t.conj_class(x, H)
        seen |= c
        classes.append(c)
    closures = {t.generate(c) for c in classes}
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for N in frontier:
            for C in closures:
                if C <= N:
                    continue
                J = t.generate(N | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda N: (len(N), sorted(N)))


@dataclass
class DirectDecomposition:
    factors: list                  # frozensets of element indices

    @property
    def orders(self) -> list:
        return sorted(len(f) for f in self.factors)

    def to_json(self) -> dict:
        return {"factors": self.orders}


def verify_decomposition(t: FiniteGroupTable, d: DirectDecomposition, H: frozenset | None = None) -> bool:
    """Normal, pairwise commuting and trivially intersecting factors whose product is ``H``."""
    H = frozenset(range(t.order)) if H is None else H
    size = 1
    for i, A in enumerate(d.factors):
        if not A <= H or not t.is_normal(A, H):
            return False
        size *= len(A)
        for B in d.factors[i + 1:]:
            if A & B != {0} or not t.commute(A, B):
                return False
    return size == len(H)


def remak_decompose(t: FiniteGroupTable, limit: int = REMAK_LIMIT) -> list:
    """All Remak decompositions (indecomposable, nontrivial factors) of the table's group."""
    if t.order > limit:
        raise CoxkitError(f"group of order {t.order} exceeds the Remak search limit {limit}")
    memo: dict = {}
    result = _remak(t, frozenset(range(t.order)), memo)
    return [DirectDecomposition(sorted(fs, key=lambda f: (len(f), sorted(f)))) for fs in
            sorted(result, key=lambda fs: sorted((len(f), sorted(f)) for f in fs))]


def _remak(t: FiniteGroupTable, H: frozenset, memo: dict) -> set:
    if H in memo:
        return memo[H]
    if len(H) == 1:
        memo[H] = {frozenset()}
        return memo[H]
    normals = [N for N in normal_subgroups(t, H) if 1 < len(N) < len(H)]
    out = set()
    for i, N in enumerate(normals):
        for M in normals[i:]:
            if len(N) * len(M) != len(H) or N & M != {0}:
                continue
            for dn in _remak(t, N, memo):
                for dm in _remak(t, M, memo):
                    out.add(dn | dm)
    if not out:
        out = {frozenset([H])}
    memo[H] = out
    return out


def centralizer(t: FiniteGroupTable, E: Iterable[int]) -> frozenset:
    E = np.array(sorted(set(E)), dtype=np.intp)
    if E.size == 0:
        return frozenset(range(t.order))
    ok = np.all(t.mult[:, E] == t.mult[E, :].T, axis=1)
    return frozenset(np.flatnonzero(ok).tolist())


def center(t: FiniteGroupTable) -> frozenset:
    return centralizer(t, range(t.order))


# -- the classification --------------------------------------------------------

def in_decomposable_list(name: str) -> bool:
    """Irreducible finite types whose Coxeter group is a nontrivial direct product."""
    if name == "E7" or name == "H3":
        return True
    m = re.fullmatch(r"B(\d+)", name)
    if m:
        n = int(m.group(1))
        return n >= 3 and n % 2 == 1
    m = re.fullmatch(r"I2\((\d+)\)", name)
    if m:
        p = int(m.group(1))
        return p >= 6 and p % 4 == 2
    return False


@dataclass
class DecompReport:
    name: str
    order: int
    center_order: int
    decomposable: bool
    factors: list
    in_list: bool
    center_is_factor: bool
    krs_consistent: bool
    decompositions: list = field(repr=False, default_factory=list)

    @property
    def consistent(self) -> bool:
        ok = self.decomposable == self.in_list and self.krs_consistent
        if self.decomposable:
            ok = ok and self.center_is_factor
        return ok

    def to_json(self) -> dict:
        return {
            "type": self.name,
            "order": self.order,
            "center_order": self.center_order,
            "decomposable": self.decomposable,
            "factors": self.factors,
            "consistent_with_classification": self.consistent,
        }


def verify_decompW(g: CoxeterGraph, bound: int = DEFAULT_BOUND) -> DecompReport:
    if len(components(g)) != 1:
        raise CoxkitError("the decomposability classification concerns connected graphs")
    if not is_spherical(g):
        raise NotSpherical("verify_decompW needs a finite Coxeter group")
    name = catalog_name(g)
    t = build_table(g, bound)
    decs = remak_decompose(t)
    Z = center(t)
    first = decs[0]
    decomposable = len(first.factors) > 1
    w0, _ = coxeter_group(g).longest_element(bound)
    w0_idx = next(i for i, e in enumerate(t.elements) if e == w0)
    center_factor = any(f == Z and len(f) == 2 and w0_idx in f for f in first.factors)
    krs = len({tuple(d.orders) for d in decs}) == 1
    return DecompReport(name, t.order, len(Z), decomposable, first.orders,
                        in_decomposable_list(name), center_factor, krs, decs)


@functools.lru_cache(maxsize=16)
def cached_table(g: CoxeterGraph, bound: int = DEFAULT_BOUND) -> FiniteGroupTable:
    return build_table(g, bound)
