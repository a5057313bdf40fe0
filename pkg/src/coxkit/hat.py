"""The Coxeter graph on the root system, and orderings of positive roots
whose prefix subgraphs stay connected and ∞-connected."""
from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import DEFAULT_BOUND, RootSystem, RootVec, coxeter_group
from .errors import CoxkitError, InternalInvariantError, NotSpherical
from .graph import INF, CoxeterGraph, is_spherical


@dataclass
class HatGraph:
    base: CoxeterGraph
    roots: RootSystem
    graph: CoxeterGraph
    truncated: bool = False
    # unordered pairs of root indices whose label was not witnessed (truncated mode only)
    unknown_pairs: set = field(default_factory=set)
    _labels: dict = field(default_factory=dict, repr=False)

    def label(self, beta: RootVec, gamma: RootVec):
        """``m̂`` for two roots; ``None`` for a pair that could not be certified."""
        i, j = self.roots.lookup(beta), self.roots.lookup(gamma)
        if i == j:
            return 1
        key = frozenset((i, j))
        if key in self.unknown_pairs:
            return None
        return self._labels.get(key, INF)

    def label_by_index(self, i: int, j: int):
        if i == j:
            return 1
        key = frozenset((i, j))
        if key in self.unknown_pairs:
            return None
        return self._labels.get(key, INF)

    def vertex_name(self, r: RootVec) -> str:
        return self.graph.vertices[self.roots.lookup(r)]

    def edge_counts(self) -> dict:
        """Number of unordered vertex pairs per label (``None`` for unknown)."""
        counts: dict = {}
        n = len(self.roots)
        for i in range(n):
            for j in range(i + 1, n):
                m = self.label_by_index(i, j)
                counts[m] = counts.get(m, 0) + 1
        return counts


def build_hat(g: CoxeterGraph, depth: int | None = None, bound: int = DEFAULT_BOUND) -> HatGraph:
    """Sweep ``(w(alpha_s), w(alpha_t))`` over group elements and record ``m_{s,t}``.

    Without ``depth`` the graph must be spherical: every element is visited
    and unwitnessed pairs get ``∞``.  With ``depth`` only elements of length
    at most ``depth`` are visited and unwitnessed pairs are reported as
    unknown (they appear with label ``∞`` in :attr:`HatGraph.graph`).
    """
    W = coxeter_group(g)
    if depth is None:
        if not is_spherical(g):
            raise NotSpherical("exact hat graph needs a spherical graph; pass a depth")
        roots = W.roots()
        elements = W.elements(bound)
    else:
        roots = W.roots(depth)
        elements = W.enumerate(bound, max_length=depth).elements
    n = len(g)
    labels: dict = {}
    for w in elements:
        idx = []
        for j in range(n):
            idx.append(roots.index.get(w.image_of_simple(j).key()))
        for a in range(n):
            for b in range(a + 1, n):
                i, k = idx[a], idx[b]
                if i is None or k is None:
                    continue
                m = g.label(g.vertices[a], g.vertices[b])
                key = frozenset((i, k))
                old = labels.setdefault(key, m)
                if old != m:
                    raise InternalInvariantError(
                        f"conflicting hat labels {old} and {m} on "
                        f"{roots.roots[i].name()} / {roots.roots[k].name()}"
                    )
    unknown = set()
    if depth is not None:
        neg = {r.key(): roots.index[(-r).key()] for r in roots}
        for i in range(len(roots)):
            for k in range(i + 1, len(roots)):
                key = frozenset((i, k))
                if key not in labels and neg[roots.roots[i].key()] != k:
                    unknown.add(key)
    names = [r.name() for r in roots]
    edges = {}
    for i in range(len(roots)):
        for k in range(i + 1, len(roots)):
            m = labels.get(frozenset((i, k)), INF)
            if m != 2:
                edges[(names[i], names[k])] = m
    hat = CoxeterGraph(names, edges)
    return HatGraph(g, roots, hat, truncated=depth is not None,
                    unknown_pairs=unknown, _labels=labels)


@dataclass
class Filtration:
    order: list                   # positive roots beta_1, beta_2, ...
    hat: HatGraph = field(repr=False)

    def prefix(self, i: int) -> list:
        """``X_i = {±beta_1, ..., ±beta_i}`` as roots."""
        head = self.order[:i]
        return head + [-b for b in head]

    def prefixes(self):
        for i in range(1, len(self.order) + 1):
            yield self.prefix(i)


def _adjacent(h: HatGraph, i: int, k: int) -> bool:
    m = h.label_by_index(i, k)
    return m is not None and m >= 3


def filtration_order(h: HatGraph) -> Filtration:
    """Greedy order: start from the first positive root, then repeatedly add the
    least-indexed positive root that is (up to sign) adjacent to the current
    prefix set."""
    if h.truncated:
        raise CoxkitError("filtration_order needs an exact (non-truncated) hat graph")
    roots = h.roots
    positives = roots.positive
    if not positives:
        return Filtration([], h)
    pos_idx = [roots.lookup(p) for p in positives]
    neg_idx = {roots.lookup(p): roots.lookup(-p) for p in positives}
    chosen = [pos_idx[0]]
    inside = {pos_idx[0], neg_idx[pos_idx[0]]}
    while len(chosen) < len(pos_idx):
        pick = None
        for p in pos_idx:
            if p in inside:
                continue
            if any(_adjacent(h, p, x) or _adjacent(h, neg_idx[p], x) for x in inside):
                pick = p
                break
        if pick is None:
            raise CoxkitError(
                "no positive root is adjacent to the current prefix: the hat graph is "
                "disconnected (is the base graph connected?)"
            )
        chosen.append(pick)
        inside |= {pick, neg_idx[pick]}
    f = Filtration([roots.roots[i] for i in chosen], h)
    report = verify_filtration(h, f)
    if not report.ok:
        raise InternalInvariantError(f"greedy filtration failed verification: {report.failures}")
    return f


@dataclass
class FiltrationReport:
    prefixes: list                # (i, connected, infty_connected)
    missing: list                 # positive roots not covered by the order

    @property
    def failures(self) -> list:
        return [p for p in self.prefixes if not (p[1] and p[2])]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.missing

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "prefixes": [{"i": i, "connected": c, "infty_connected": ic}
                         for i, c, ic in self.prefixes],
            "missing": [r.name() for r in self.missing],
        }


def _connected(vertices: list, adjacent) -> bool:
    """Union-find connectivity of the induced subgraph."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a_i, a in enumerate(vertices):
        for b in vertices[a_i + 1:]:
            if adjacent(a, b):
                parent[find(a)] = find(b)
    return len({find(v) for v in vertices}) <= 1


def verify_filtration(h: HatGraph, f: Filtration) -> FiltrationReport:
    """Re-check every prefix subgraph for connectivity and ∞-connectivity."""
    covered = {r.key() for r in f.order}
    missing = [p for p in h.roots.positive if p.key() not in covered]
    rows = []
    for i, prefix in enumerate(f.prefixes(), 1):
        idx = [h.roots.lookup(r) for r in prefix]
        conn = _connected(idx, lambda a, b: (h.label_by_index(a, b) or 0) >= 3)
        inf_conn = _connected(idx, lambda a, b: h.label_by_index(a, b) == INF)
        rows.append((i, conn, inf_conn))
    return FiltrationReport(rows, missing)
