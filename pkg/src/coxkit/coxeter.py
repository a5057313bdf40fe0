"""The canonical linear representation and brute-force finite Coxeter group work.

A group element is stored as the exact matrix of its action on the simple
roots: column ``j`` holds the coordinates of ``w(alpha_j)``.  The
representation is faithful, so matrix equality is group equality and the
tuple of coordinate keys is a canonical hashable key.
"""
from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (CoxkitError, InternalInvariantError, NotSpherical,
                     RootOutOfRange, TruncatedEnumeration)
from .graph import CoxeterGraph, components, is_spherical
from .scalar import CycScalar

DEFAULT_BOUND = 20_000

Word = tuple  # of vertex names


def parse_word(text: str | Sequence[str]) -> Word:
    """Whitespace-separated vertex names; ``s^-1`` is accepted and read as ``s``."""
    toks = text.split() if isinstance(text, str) else list(text)
    out = []
    for tok in toks:
        name, _, exp = tok.partition("^")
        if exp and exp not in ("1", "-1", "+1"):
            raise CoxkitError(f"bad exponent in token {tok!r}")
        out.append(name)
    return tuple(out)


def format_word(word: Iterable[str]) -> str:
    return " ".join(word)


class RootVec:
    """A vector of ``V`` in the basis of simple roots."""

    __slots__ = ("group", "coords", "_key")

    def __init__(self, group: "CoxeterGroup", coords: Sequence[CycScalar]):
        self.group = group
        self.coords = tuple(coords)
        self._key = None

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(c.key() for c in self.coords)
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, RootVec) and self.key() == other.key()

    def __neg__(self):
        return RootVec(self.group, [-c for c in self.coords])

    def __add__(self, other):
        return RootVec(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RootVec":
        return RootVec(self.group, [x * c for x in self.coords])

    def sign(self) -> int:
        """Sign of the first nonzero coordinate (0 for the zero vector)."""
        for c in self.coords:
            if not c.is_zero():
                return c.sign()
        return 0

    def is_root_signed(self) -> bool:
        """True when all nonzero coordinates share one sign."""
        signs = {c.sign() for c in self.coords} - {0}
        return len(signs) <= 1

    def coordinate(self, v: str) -> CycScalar:
        return self.coords[self.group.graph.index(v)]

    def name(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"RootVec{self.name()}"

    def to_json(self) -> dict:
        return {
            "coords": {v: c.to_json() for v, c in zip(self.group.graph.vertices, self.coords)},
            "name": self.name(),
        }


class GroupEl:
    """An element of ``W[Gamma]`` as an exact matrix of the canonical representation."""

    __slots__ = ("group", "cols", "_key", "_word", "_bound")

    def __init__(self, group: "CoxeterGroup", cols, bound: int):
        self.group = group
        self.cols = cols
        self._key = None
        self._word = None
        self._bound = bound

    # -- identity and hashing -------------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(tuple(c.key() for c in col) for col in self.cols)
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, GroupEl) and self.key() == other.key()

    def __repr__(self):
        return f"GroupEl({format_word(self.word) or 'id'})"

    # -- products --------------------------------------------------------

    def rmul_gen(self, j: int) -> "GroupEl":
        """``w * s_j``: only columns of neighbours of ``s_j`` (and ``j`` itself) move."""
        cols = list(self.cols)
        cj = self.cols[j]
        for t, c in self.group._col_update[j]:
            cols[t] = tuple(a + b * c for a, b in zip(self.cols[t], cj))
        cols[j] = tuple(-a for a in cj)
        return GroupEl(self.group, tuple(cols), self._bound + 1)

    def lmul_gen(self, j: int) -> "GroupEl":
        """``s_j * w``: reflect every column."""
        refl = self.group.reflect_coords
        return GroupEl(self.group, tuple(refl(j, col) for col in self.cols), self._bound + 1)

    def __mul__(self, other: "GroupEl") -> "GroupEl":
        if not isinstance(other, GroupEl):
            return NotImplemented
        out = self
        for s in other.word:
            out = out.rmul_gen(self.group.graph.index(s))
        out._bound = self._bound + other._bound
        return out

    def inverse(self) -> "GroupEl":
        return self.group.element(reversed(self.word))

    def conjugate(self, x: "GroupEl") -> "GroupEl":
        """``self * x * self^-1``."""
        return self * x * self.inverse()

    # -- action ---------------------------------------------------------

    def image_of_simple(self, j: int) -> RootVec:
        return RootVec(self.group, self.cols[j])

    def apply(self, v: RootVec) -> RootVec:
        n = len(self.cols)
        zero = self.group.ctx.zero()
        acc = [zero] * n
        for j, c in enumerate(v.coords):
            if c.is_zero():
                continue
            col = self.cols[j]
            acc = [a + x * c for a, x in zip(acc, col)]
        return RootVec(self.group, acc)

    # -- descents, reduced words ---------------------------------------

    def is_right_descent(self, j: int) -> bool:
        """``l(w s_j) < l(w)`` iff ``w(alpha_j)`` is negative."""
        return _vec_sign(self.cols[j]) < 0

    def right_descents(self) -> list[str]:
        vs = self.group.graph.vertices
        return [vs[j] for j in range(len(vs)) if self.is_right_descent(j)]

    @property
    def word(self) -> Word:
        """Canonical reduced word: strip the least-indexed right descent repeatedly."""
        if self._word is None:
            letters = []
            w = self
            vs = self.group.graph.vertices
            steps = 0
            while True:
                j = next((j for j in range(len(vs)) if w.is_right_descent(j)), None)
                if j is None:
                    break
                steps += 1
                if steps > self._bound:
                    raise InternalInvariantError(
                        f"descent stripping exceeded the input length bound {self._bound}"
                    )
                letters.append(vs[j])
                w = w.rmul_gen(j)
            self._word = tuple(reversed(letters))
        return self._word

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return self.key() == self.group.identity.key()

    def support(self) -> frozenset:
        return frozenset(self.word)

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "length": self.length,
            "matrix": [[c.to_json() for c in col] for col in self.cols],
        }


def _vec_sign(coords) -> int:
    for c in coords:
        if not c.is_zero():
            return c.sign()
    return 0


@dataclass
class Enumeration:
    """Result of a bounded breadth-first enumeration."""

    elements: list
    complete: bool

    @property
    def truncated(self) -> bool:
        return not self.complete

    def __iter__(self) -> Iterator[GroupEl]:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


@dataclass
class RootSystem:
    """Roots in canonical order: positives by discovery order, then their negatives."""

    group: "CoxeterGroup"
    roots: list
    witnesses: dict = field(repr=False)   # key -> (word, vertex) with root = word(alpha_vertex)
    complete: bool = True
    depth: int | None = None

    def __post_init__(self):
        self.index = {r.key(): i for i, r in enumerate(self.roots)}

    @property
    def positive(self) -> list:
        return [r for r in self.roots if r.sign() > 0]

    @property
    def negative(self) -> list:
        return [r for r in self.roots if r.sign() < 0]

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, r: RootVec):
        return r.key() in self.index

    def lookup(self, r: RootVec) -> int:
        try:
            return self.index[r.key()]
        except KeyError:
            raise RootOutOfRange(f"root {r.name()} is not in the enumerated root system") from None

    def witness(self, r: RootVec) -> tuple[GroupEl, str]:
        word, s = self.witnesses[r.key()]
        return self.group.element(word), s


class CoxeterGroup:
    """``W[Gamma]`` for a finite vertex set, via its canonical representation."""

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.ctx = graph.ctx
        n = len(graph)
        g2 = graph.gram2
        # coefficient c with (w s_j)(alpha_t) = w(alpha_t) + c * w(alpha_j), i.e. c = -2<alpha_t, alpha_j>
        self._col_update = []
        for j in range(n):
            upd = []
            for t in range(n):
                if t != j and not g2[t][j].is_zero():
                    upd.append((t, _compact(-g2[t][j])))
            self._col_update.append(tuple(upd))
        self._row = [[(t, _compact(g2[t][j])) for t in range(n) if not g2[t][j].is_zero()]
                     for j in range(n)]
        one, zero = self.ctx.one(), self.ctx.zero()
        self.identity = GroupEl(self, tuple(
            tuple(one if i == j else zero for i in range(n)) for j in range(n)), 0)
        self.identity._word = ()
        self.gens = tuple(self.identity.rmul_gen(j) for j in range(n))
        self._roots_cache: dict = {}

    def __repr__(self):
        return f"CoxeterGroup({self.graph!r})"

    # -- basic construction -------------------------------------------

    def reflect_coords(self, j: int, coords: tuple) -> tuple:
        """Coordinates of ``s_j(v)``: ``v - 2<v, alpha_j> alpha_j``."""
        acc = None
        for t, c in self._row[j]:
            x = coords[t]
            if x.is_zero():
                continue
            term = x * c
            acc = term if acc is None else acc + term
        if acc is None:
            return coords
        out = list(coords)
        out[j] = coords[j] - acc
        return tuple(out)

    def element(self, word: Iterable[str]) -> GroupEl:
        w = self.identity
        for s in word:
            w = w.rmul_gen(self.graph.index(s))
        return w

    def gen(self, s: str) -> GroupEl:
        return self.gens[self.graph.index(s)]

    def simple_root(self, s: str) -> RootVec:
        return self.identity.image_of_simple(self.graph.index(s))

    def reflect(self, s: str, v: RootVec) -> RootVec:
        return RootVec(self, self.reflect_coords(self.graph.index(s), v.coords))

    def inner(self, v: RootVec, u: RootVec) -> CycScalar:
        """Bilinear form ``<v, u>``."""
        g2 = self.graph.gram2
        acc = self.ctx.zero()
        for i, a in enumerate(v.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(u.coords):
                if b.is_zero() or g2[i][j].is_zero():
                    continue
                acc = acc + a * b * g2[i][j]
        return acc / 2

    # -- enumeration ---------------------------------------------------

    def enumerate(self, bound: int = DEFAULT_BOUND, max_length: int | None = None) -> Enumeration:
        """Breadth-first closure from the identity under right multiplication by generators.

        Elements come out ordered by length, ties broken by discovery order
        (generators in vertex order), so the identity is always first.
        """
        if bound < 1:
            raise ValueError("bound must be >= 1")
        seen = {self.identity.key(): self.identity}
        order = [self.identity]
        queue = deque([(self.identity, 0)])
        n = len(self.graph)
        while queue:
            w, depth = queue.popleft()
            if max_length is not None and depth >= max_length:
                continue
            for j in range(n):
                x = w.rmul_gen(j)
                k = x.key()
                if k in seen:
                    continue
                if len(order) >= bound:
                    return Enumeration(order, complete=False)
                seen[k] = x
                order.append(x)
                queue.append((x, depth + 1))
        return Enumeration(order, complete=max_length is None)

    def elements(self, bound: int = DEFAULT_BOUND) -> list[GroupEl]:
        """Every element, raising if the group is larger than ``bound``."""
        en = self.enumerate(bound)
        if en.truncated:
            raise TruncatedEnumeration(f"W[Gamma] has more than {bound} elements")
        return en.elements

    def roots(self, depth: int | None = None) -> RootSystem:
        """Root system by closure of the simple roots under simple reflections.

        Without ``depth`` the graph must be spherical and the full (finite)
        system is returned; with ``depth`` only roots ``w(alpha_s)`` with
        ``l(w) <= depth`` along the search are kept, together with their
        negatives.
        """
        if depth is None and not is_spherical(self.graph):
            raise NotSpherical("root system is infinite: a depth bound is required")
        cache_key = depth
        if cache_key in self._roots_cache:
            return self._roots_cache[cache_key]
        vs = self.graph.vertices
        found: dict = {}
        order = []
        queue = deque()
        for s in vs:
            r = self.simple_root(s)
            found[r.key()] = ((), s)
            order.append(r)
            queue.append((r, ()))
        while queue:
            r, word = queue.popleft()
            if depth is not None and len(word) >= depth:
                continue
            for j, s in enumerate(vs):
                nr = RootVec(self, self.reflect_coords(j, r.coords))
                k = nr.key()
                if k not in found:
                    found[k] = ((s,) + word, found[r.key()][1])
                    order.append(nr)
                    queue.append((nr, (s,) + word))
        positives = []
        for r in order:
            if not r.is_root_signed():
                raise InternalInvariantError(f"vector {r.name()} has mixed-sign coordinates")
            if r.sign() > 0:
                positives.append(r)
        pos_keys = {p.key() for p in positives}
        for r in order:
            # negative roots whose positive partner lies beyond the depth bound
            if r.sign() < 0 and (-r).key() not in pos_keys:
                positives.append(-r)
                pos_keys.add((-r).key())
        for r in list(positives) + [-p for p in positives]:
            if r.key() not in found:
                word, s = found[(-r).key()]
                found[r.key()] = (word + (s,), s)
        roots = positives + [-p for p in positives]
        system = RootSystem(self, roots, found,
                            complete=depth is None, depth=depth)
        self._roots_cache[cache_key] = system
        return system

    # -- longest element and cosets ------------------------------------

    def longest_element(self, bound: int = DEFAULT_BOUND) -> tuple[GroupEl, bool]:
        """``w_0`` by greedy right multiplication, and whether it is central."""
        if len(components(self.graph)) != 1:
            raise CoxkitError("longest_element expects a connected graph")
        if not is_spherical(self.graph):
            raise NotSpherical("no longest element: W[Gamma] is infinite")
        w = self.identity
        n = len(self.graph)
        steps = 0
        while True:
            j = next((j for j in range(n) if not w.is_right_descent(j)), None)
            if j is None:
                break
            w = w.rmul_gen(j)
            steps += 1
            if steps > bound:
                raise TruncatedEnumeration("longest element search exceeded the bound")
        central = all(w.cols[j] == tuple(-c for c in self.identity.cols[j]) for j in range(n))
        return w, central

    def minimal_coset_decomposition(self, w: GroupEl, Y: Iterable[str], X: Iterable[str]):
        """``(u, m0, v)`` with ``w = u m0 v``, ``u`` in ``W_Y``, ``v`` in ``W_X``, lengths additive.

        Strips left descents in ``Y`` and right descents in ``X`` (least index
        first, left side before right) until none remain.
        """
        Yi = sorted(self.graph.index(s) for s in Y)
        Xi = sorted(self.graph.index(s) for s in X)
        m, minv = w, w.inverse()
        u_word, v_word = [], []
        while True:
            j = next((j for j in Yi if minv.is_right_descent(j)), None)
            if j is not None:
                m, minv = m.lmul_gen(j), minv.rmul_gen(j)
                u_word.append(self.graph.vertices[j])
                continue
            j = next((j for j in Xi if m.is_right_descent(j)), None)
            if j is not None:
                m, minv = m.rmul_gen(j), minv.lmul_gen(j)
                v_word.insert(0, self.graph.vertices[j])
                continue
            break
        m._bound = w._bound
        return self.element(u_word), m, self.element(v_word)

    def is_minimal(self, w: GroupEl, Y: Iterable[str], X: Iterable[str]) -> bool:
        winv = w.inverse()
        return not any(winv.is_right_descent(self.graph.index(s)) for s in Y) and \
            not any(w.is_right_descent(self.graph.index(s)) for s in X)

    def in_parabolic(self, w: GroupEl, X: Iterable[str]) -> bool:
        return w.support() <= frozenset(X)

    # -- centre, quasi-centre, Coxeter elements ------------------------

    def center_and_quasi_center(self, bound: int = DEFAULT_BOUND):
        elems = self.elements(bound)
        gen_keys = {g.key() for g in self.gens}
        Z, QZ = [], []
        for w in elems:
            if all((w * g).key() == (g * w).key() for g in self.gens):
                Z.append(w)
            winv = w.inverse()
            if all((w * g * winv).key() in gen_keys for g in self.gens):
                QZ.append(w)
        return Z, QZ

    def coxeter_element(self) -> GroupEl:
        return self.element(self.graph.vertices)

    def is_essential(self, c: GroupEl, bound: int = DEFAULT_BOUND) -> bool:
        """True iff no conjugate of ``c`` lies in a proper standard parabolic subgroup."""
        S = frozenset(self.graph.vertices)
        for u in self.elements(bound):
            if (u * c * u.inverse()).support() != S:
                return False
        return True

    def is_essential_coxeter_element(self, bound: int = DEFAULT_BOUND) -> bool:
        if not is_spherical(self.graph):
            raise NotSpherical("essentiality is decided by brute force on finite groups only")
        return self.is_essential(self.coxeter_element(), bound)


def _compact(c: CycScalar):
    """Rational scalars become ints/Fractions so that products take the fast path."""
    q = c.as_fraction()
    if q is None:
        return c
    return q.numerator if q.denominator == 1 else q


@functools.lru_cache(maxsize=64)
def coxeter_group(graph: CoxeterGraph) -> CoxeterGroup:
    return CoxeterGroup(graph)


# -- thin functional surface ---------------------------------------------

def element_of(graph: CoxeterGraph, word) -> GroupEl:
    if isinstance(word, str):
        word = parse_word(word)
    return coxeter_group(graph).element(word)


def reduced_word(w: GroupEl) -> Word:
    return w.word


def support(w: GroupEl) -> frozenset:
    return w.support()


def inner(v: RootVec, u: RootVec) -> CycScalar:
    return v.group.inner(v, u)


def reflect(s: str, v: RootVec) -> RootVec:
    return v.group.reflect(s, v)


def enumerate_group(graph: CoxeterGraph, bound: int = DEFAULT_BOUND) -> Enumeration:
    return coxeter_group(graph).enumerate(bound)


def enumerate_roots(graph: CoxeterGraph, depth: int | None = None) -> RootSystem:
    return coxeter_group(graph).roots(depth)


def longest_element(graph: CoxeterGraph) -> tuple[GroupEl, bool]:
    return coxeter_group(graph).longest_element()


def minimal_coset_decomposition(w: GroupEl, Y, X):
    return w.group.minimal_coset_decomposition(w, Y, X)


def center_and_quasi_center(graph: CoxeterGraph, bound: int = DEFAULT_BOUND):
    return coxeter_group(graph).center_and_quasi_center(bound)


def is_essential_coxeter_element(graph: CoxeterGraph, bound: int = DEFAULT_BOUND) -> bool:
    return coxeter_group(graph).is_essential_coxeter_element(bound)
