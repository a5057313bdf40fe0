"""Coxeter graphs: parsing, presets, analysis and emitters."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import GraphError
from .scalar import CycScalar, ScalarContext, conductor_for_labels, context

INF = math.inf


def _check_label(m) -> int | float:
    if m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, int):
        raise GraphError(f"label must be an integer or inf, got {m!r}")
    if m < 2:
        raise GraphError(f"off-diagonal label must be >= 2, got {m}")
    return m


def label_str(m) -> str:
    return "inf" if m == INF else str(m)


class CoxeterGraph:
    """A Coxeter matrix over named vertices.

    ``edges`` maps vertex pairs to labels (``int >= 2`` or ``INF``); pairs not
    mentioned get the label 2.  Vertex order is significant: it fixes the
    canonical enumeration order used for every tie-break downstream.
    """

    def __init__(self, vertices: Iterable[str], edges: Mapping[tuple[str, str], int | float] = ()):
        verts = tuple(vertices)
        index = {}
        for v in verts:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex names must be nonempty strings, got {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        labels: dict[frozenset, int | float] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        for (a, b), m in items:
            for v in (a, b):
                if v not in index:
                    raise GraphError(f"unknown vertex {v!r} in edge {a} {b}")
            if a == b:
                raise GraphError(f"edge {a} {b} is a loop")
            m = _check_label(m)
            key = frozenset((a, b))
            if key in labels and labels[key] != m:
                raise GraphError(
                    f"conflicting labels for {a} {b}: {label_str(labels[key])} vs {label_str(m)}"
                )
            labels[key] = m
        self.vertices = verts
        self._index = index
        self._labels = {k: m for k, m in labels.items() if m != 2}

    # -- queries -------------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def label(self, s: str, t: str) -> int | float:
        if s == t:
            self.index(s)
            return 1
        self.index(s), self.index(t)
        return self._labels.get(frozenset((s, t)), 2)

    def edges(self) -> list[tuple[str, str, int | float]]:
        """Pairs with label != 2, in canonical (vertex-order) order."""
        out = []
        vs = self.vertices
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                m = self._labels.get(frozenset((a, b)))
                if m is not None:
                    out.append((a, b, m))
        return out

    @cached_property
    def matrix(self) -> tuple[tuple[int | float, ...], ...]:
        return tuple(tuple(self.label(a, b) for b in self.vertices) for a in self.vertices)

    @cached_property
    def ctx(self) -> ScalarContext:
        return context(conductor_for_labels(self._labels.values()))

    def neighbours(self, v: str, infinite_only: bool = False) -> list[str]:
        out = []
        for u in self.vertices:
            if u == v:
                continue
            m = self.label(v, u)
            if (m == INF) if infinite_only else (m >= 3):
                out.append(u)
        return out

    def __eq__(self, other):
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._labels == other._labels

    def __hash__(self):
        return hash((self.vertices, frozenset(self._labels.items())))

    def __repr__(self):
        es = ", ".join(f"{a}-{b}:{label_str(m)}" for a, b, m in self.edges())
        return f"CoxeterGraph([{' '.join(self.vertices)}]; {es})"

    # -- bilinear form -------------------------------------------------

    def two_form(self, s: str, t: str) -> CycScalar:
        """``2<alpha_s, alpha_t>`` (an algebraic integer)."""
        m = self.label(s, t)
        if m == INF:
            return self.ctx.rational(-2)
        return -self.ctx.two_cos(m)

    @cached_property
    def gram2(self) -> tuple[tuple[CycScalar, ...], ...]:
        """Matrix of ``2<alpha_s, alpha_t>`` in vertex order."""
        return tuple(tuple(self.two_form(a, b) for b in self.vertices) for a in self.vertices)


# -- parsing and emitting ----------------------------------------------

def _parse_label(tok: str, where: str) -> int | float:
    if tok.lower() in ("inf", "∞", "infinity"):
        return INF
    try:
        m = int(tok)
    except ValueError:
        raise GraphError(f"{where}: bad label {tok!r}") from None
    if m < 2:
        raise GraphError(f"{where}: label must be >= 2, got {m}")
    return m


def parse_graph(text: str) -> CoxeterGraph:
    """Parse a graph document in the line-oriented text format or in JSON."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        where = f"line {lineno}"
        if toks[0] == "vertices":
            if vertices is not None:
                raise GraphError(f"{where}: second 'vertices' line")
            vertices = toks[1:]
        elif toks[0] == "edge":
            if len(toks) != 4:
                raise GraphError(f"{where}: expected 'edge a b L'")
            edges.append(((toks[1], toks[2]), _parse_label(toks[3], where)))
        else:
            raise GraphError(f"{where}: unknown directive {toks[0]!r}")
    if vertices is None:
        raise GraphError("missing 'vertices' line")
    return CoxeterGraph(vertices, edges)


def _parse_json(text: str) -> CoxeterGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise GraphError("JSON graph needs a 'vertices' list")
    edges = []
    for e in doc.get("edges", []):
        if not isinstance(e, list) or len(e) != 3:
            raise GraphError(f"bad JSON edge {e!r}")
        a, b, m = e
        edges.append(((a, b), _parse_label(str(m), f"edge {a} {b}")))
    return CoxeterGraph(doc["vertices"], edges)


def emit(g: CoxeterGraph, fmt: str = "text") -> str:
    if fmt == "text":
        for v in g.vertices:
            if any(c.isspace() for c in v):
                raise GraphError(f"vertex {v!r} cannot be written in the text format")
        lines = ["vertices " + " ".join(g.vertices)]
        lines += [f"edge {a} {b} {label_str(m)}" for a, b, m in g.edges()]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "vertices": list(g.vertices),
            "edges": [[a, b, label_str(m)] for a, b, m in g.edges()],
        }
        return json.dumps(doc) + "\n"
    if fmt == "dot":
        lines = ["graph coxeter {"]
        lines += [f"  {json.dumps(v)};" for v in g.vertices]
        for a, b, m in g.edges():
            attr = "" if m == 3 else f' [label="{"∞" if m == INF else m}"]'
            lines.append(f"  {json.dumps(a)} -- {json.dumps(b)}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise GraphError(f"unknown format {fmt!r}")


# -- presets -----------------------------------------------------------

def _path(n: int, labels: list[int]) -> CoxeterGraph:
    vs = [f"s{i}" for i in range(1, n + 1)]
    return CoxeterGraph(vs, {(vs[i], vs[i + 1]): m for i, m in enumerate(labels)})


def preset(family: str, param: int) -> CoxeterGraph:
    """Standard connected spherical graphs, plus the affine cycle ``Ã n``.

    Vertices are named ``s1, s2, ...``.  ``B`` puts the label 4 on ``s1-s2``;
    ``D`` and ``E`` attach the extra vertex as in Bourbaki's numbering
    (``D_n``: ``s_{n-1}`` and ``s_n`` both hang off ``s_{n-2}``; ``E_n``:
    ``s2`` hangs off ``s4`` of the chain ``s1-s3-s4-...``).
    """
    fam = family.strip()
    try:
        n = int(param)
    except (TypeError, ValueError):
        raise GraphError(f"preset parameter must be an integer, got {param!r}") from None

    def need(ok: bool):
        if not ok:
            raise GraphError(f"parameter {n} out of range for family {fam}")

    if fam == "A":
        need(n >= 1)
        return _path(n, [3] * (n - 1))
    if fam == "B":
        need(n >= 2)
        return _path(n, [4] + [3] * (n - 2))
    if fam == "D":
        need(n >= 4)
        vs = [f"s{i}" for i in range(1, n + 1)]
        edges = {(vs[i], vs[i + 1]): 3 for i in range(n - 2)}
        edges[(vs[n - 3], vs[n - 1])] = 3
        return CoxeterGraph(vs, edges)
    if fam == "E":
        need(n in (6, 7, 8))
        vs = [f"s{i}" for i in range(1, n + 1)]
        chain = ["s1"] + [f"s{i}" for i in range(3, n + 1)]
        edges = {(chain[i], chain[i + 1]): 3 for i in range(len(chain) - 1)}
        edges[("s2", "s4")] = 3
        return CoxeterGraph(vs, edges)
    if fam == "F":
        need(n == 4)
        return _path(4, [3, 4, 3])
    if fam == "H":
        need(n in (3, 4))
        return _path(n, [5] + [3] * (n - 2))
    if fam in ("I2", "I"):
        need(n >= 3)
        return _path(2, [n])
    if fam in ("Ã", "~A", "affA"):
        need(n >= 1)
        if n == 1:
            return _path(2, [INF])
        vs = [f"s{i}" for i in range(1, n + 2)]
        edges = {(vs[i], vs[(i + 1) % len(vs)]): 3 for i in range(len(vs))}
        return CoxeterGraph(vs, edges)
    raise GraphError(f"unknown preset family {family!r}")


SPHERICAL_PRESETS = (
    [("A", n) for n in range(1, 6)]
    + [("B", n) for n in range(2, 6)]
    + [("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("H", 3), ("H", 4)]
    + [("I2", p) for p in range(5, 11)]
)


# -- subgraphs and analysis -------------------------------------------

def full_subgraph(g: CoxeterGraph, X: Iterable[str]) -> CoxeterGraph:
    keep = set(X)
    for v in keep:
        g.index(v)
    vs = [v for v in g.vertices if v in keep]
    return CoxeterGraph(vs, {(a, b): m for a, b, m in g.edges() if a in keep and b in keep})


def components(g: CoxeterGraph, infinite_only: bool = False,
               within: Iterable[str] | None = None) -> list[list[str]]:
    """Connected components on the ``label >= 3`` (or ``label = inf``) adjacency.

    Components are listed by their first vertex in canonical order, and each
    component keeps canonical vertex order.
    """
    allowed = set(g.vertices if within is None else within)
    seen: set[str] = set()
    comps = []
    for v in g.vertices:
        if v not in allowed or v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y in g.neighbours(x, infinite_only):
                if y in allowed and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append([u for u in g.vertices if u in comp])
    return comps


def is_infty_connected(g: CoxeterGraph, within: Iterable[str] | None = None) -> bool:
    return len(components(g, infinite_only=True, within=within)) <= 1


def leading_minors(g: CoxeterGraph) -> list[CycScalar]:
    """Leading principal minors of ``2<.,.>`` until the first non-positive one.

    Computed by Gaussian elimination without pivoting: the k-th minor is the
    product of the first k pivots, and the form is positive definite exactly
    when every pivot is positive.
    """
    n = len(g)
    a = [list(row) for row in g.gram2]
    minors = []
    det = g.ctx.one()
    for k in range(n):
        piv = a[k][k]
        det = det * piv
        minors.append(det)
        if piv.sign() <= 0:
            break
        inv = piv.inverse()
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            f = a[i][k] * inv
            for j in range(k + 1, n):
                if not a[k][j].is_zero():
                    a[i][j] = a[i][j] - f * a[k][j]
    return minors


def is_positive_definite(g: CoxeterGraph) -> bool:
    if len(g) == 0:
        return True
    minors = leading_minors(g)
    return len(minors) == len(g) and all(m.sign() > 0 for m in minors)


def catalog_name(g: CoxeterGraph) -> str | None:
    """Match a connected graph against the spherical catalog (types A-I)."""
    n = len(g)
    if n == 0:
        return None
    if len(components(g)) != 1:
        return None
    es = g.edges()
    if any(m == INF for _, _, m in es):
        return None
    if n == 1:
        return "A1"
    if len(es) != n - 1:
        return None
    deg = {v: len(g.neighbours(v)) for v in g.vertices}
    branch = [v for v, k in deg.items() if k >= 3]
    if any(k > 3 for k in deg.values()) or len(branch) > 1:
        return None
    if branch:
        if any(m != 3 for _, _, m in es):
            return None
        b = branch[0]
        arms = []
        for start in g.neighbours(b):
            length, prev, cur = 1, b, start
            while True:
                nxt = [u for u in g.neighbours(cur) if u != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return f"D{n}"
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return f"E{n}"
        return None
    # a path: walk it from one end
    end = next(v for v in g.vertices if deg[v] == 1)
    order, prev = [end], None
    while len(order) < n:
        nxt = [u for u in g.neighbours(order[-1]) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    labels = [g.label(order[i], order[i + 1]) for i in range(n - 1)]
    special = [(i, m) for i, m in enumerate(labels) if m != 3]
    if not special:
        return f"A{n}"
    if len(special) > 1:
        return None
    i, m = special[0]
    at_end = i in (0, n - 2)
    if n == 2:
        return "B2" if m == 4 else f"I2({m})"
    if m == 4 and at_end:
        return f"B{n}"
    if m == 4 and n == 4:
        return "F4"
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return None


@dataclass(frozen=True)
class ComponentReport:
    vertices: tuple[str, ...]
    infty_connected: bool
    spherical: str | None          # catalog name, or None when not spherical
    positive_definite: bool
    minors: tuple[CycScalar, ...]

    @property
    def verdict(self) -> str:
        return self.spherical if self.spherical else "non-spherical"


@dataclass(frozen=True)
class GraphReport:
    components: tuple[ComponentReport, ...]

    @property
    def spherical(self) -> bool:
        return all(c.spherical for c in self.components)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def to_json(self) -> dict:
        return {
            "components": [
                {
                    "vertices": list(c.vertices),
                    "infty_connected": c.infty_connected,
                    "spherical": c.verdict,
                    "minors": [m.to_json() for m in c.minors],
                }
                for c in self.components
            ]
        }


def analyze(g: CoxeterGraph) -> GraphReport:
    reports = []
    for comp in components(g):
        sub = full_subgraph(g, comp)
        pd = is_positive_definite(sub)
        name = catalog_name(sub)
        if pd != (name is not None):
            from .errors import InternalInvariantError
            raise InternalInvariantError(
                f"positive-definiteness ({pd}) disagrees with catalog match ({name}) on {sub!r}"
            )
        reports.append(ComponentReport(
            vertices=tuple(comp),
            infty_connected=is_infty_connected(sub),
            spherical=name,
            positive_definite=pd,
            minors=tuple(leading_minors(sub)) if comp else (),
        ))
    return GraphReport(tuple(reports))


def is_spherical(g: CoxeterGraph) -> bool:
    return all(is_positive_definite(full_subgraph(g, c)) for c in components(g))
