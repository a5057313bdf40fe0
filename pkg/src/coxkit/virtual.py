"""Virtual Artin words, the two projections onto W, and the rewriting of a word
as a kernel word in the root generators times an element of W."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coxeter import GroupEl, RootSystem, RootVec, coxeter_group
from .errors import CoxkitError, GraphError, RootOutOfRange
from .graph import INF, CoxeterGraph, components, is_spherical

SIGMA, TAU = "sigma", "tau"


@dataclass(frozen=True)
class VALetter:
    kind: str          # SIGMA or TAU
    vertex: str
    exp: int = 1       # always 1 for TAU

    def __str__(self):
        if self.kind == TAU:
            return f"t:{self.vertex}"
        return self.vertex if self.exp == 1 else f"{self.vertex}^-1"


def sigma(v: str, e: int = 1) -> VALetter:
    return VALetter(SIGMA, v, e)


def tau(v: str) -> VALetter:
    return VALetter(TAU, v, 1)


VAWord = tuple  # of VALetter


def parse_va(text: str | Sequence[str], graph: CoxeterGraph | None = None) -> VAWord:
    """Tokens ``s``, ``s^-1`` (sigma letters) and ``t:v`` (tau letter on ``v``)."""
    toks = text.split() if isinstance(text, str) else list(text)
    out = []
    for tok in toks:
        if tok.startswith("t:"):
            out.append(tau(tok[2:]))
            continue
        name, sep, exp = tok.partition("^")
        if sep and exp not in ("1", "+1", "-1"):
            raise CoxkitError(f"bad exponent in token {tok!r}; use s or s^-1")
        out.append(sigma(name, -1 if exp == "-1" else 1))
    if graph is not None:
        for a in out:
            if a.vertex not in graph:
                raise GraphError(f"unknown vertex {a.vertex!r} in word")
    return tuple(out)


def format_va(w: VAWord) -> str:
    return " ".join(str(a) for a in w)


def free_reduce_va(w: VAWord) -> VAWord:
    """Cancel ``sigma_s sigma_s^-1`` and ``tau_s tau_s`` to a fixpoint."""
    stack: list = []
    for a in w:
        if stack:
            b = stack[-1]
            if b.vertex == a.vertex and b.kind == a.kind and (a.kind == TAU or a.exp == -b.exp):
                stack.pop()
                continue
        stack.append(a)
    return tuple(stack)


def project(w: VAWord, kind: str, g: CoxeterGraph) -> GroupEl:
    """``pi_K`` (tau_s -> s, sigma_s -> 1) or ``pi_P`` (both -> s)."""
    if kind not in ("K", "P"):
        raise CoxkitError(f"unknown projection {kind!r}; use K or P")
    W = coxeter_group(g)
    return W.element(a.vertex for a in w if kind == "P" or a.kind == TAU)


# -- kernel words ------------------------------------------------------------

@dataclass(frozen=True)
class DeltaWord:
    letters: tuple = ()            # (RootVec, exp)
    flavor: str = "delta"          # or "zeta"

    def key(self) -> tuple:
        return (self.flavor, tuple((r.key(), e) for r, e in self.letters))

    def __eq__(self, other):
        return isinstance(other, DeltaWord) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return len(self.letters)

    def reduced(self) -> "DeltaWord":
        stack: list = []
        for r, e in self.letters:
            if stack and stack[-1][1] == -e and stack[-1][0] == r:
                stack.pop()
            else:
                stack.append((r, e))
        return DeltaWord(tuple(stack), self.flavor)

    def to_json(self) -> list:
        return [{"root": r.name(), "exp": e} for r, e in self.letters]

    def __str__(self):
        sym = "δ" if self.flavor == "delta" else "ζ"
        return " ".join(f"{sym}{r.name()}" + ("" if e == 1 else "^-1") for r, e in self.letters)


@dataclass(frozen=True)
class NormalPair:
    """``g = k * w`` (convention K) or ``g = w * k`` (convention P).

    ``raw`` is the unreduced letter stream of the left-to-right scan; for P it
    is the kernel word on the left of ``w`` before moving it across.
    """
    kernel_part: DeltaWord
    coxeter_part: GroupEl
    convention: str
    raw: DeltaWord = field(compare=False)

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "deltas": self.kernel_part.to_json(),
            "w": " ".join(self.coxeter_part.word),
        }


def _root_system(g: CoxeterGraph, depth: int | None) -> RootSystem:
    W = coxeter_group(g)
    if depth is None and not is_spherical(g):
        raise CoxkitError("root system is infinite; supply a depth bound")
    return W.roots(depth)


def _checked(roots: RootSystem, r: RootVec) -> RootVec:
    if r not in roots:
        raise RootOutOfRange(f"root {r.name()} is outside the enumerated root system "
                             "(increase the depth)")
    return r


def act_on_delta(w: GroupEl, d: DeltaWord, roots: RootSystem | None = None) -> DeltaWord:
    """``w(delta_beta) = delta_{w(beta)}`` letterwise."""
    out = []
    for r, e in d.letters:
        img = w.apply(r)
        if roots is not None:
            _checked(roots, img)
        out.append((img, e))
    return DeltaWord(tuple(out), d.flavor)


def normal_pair(word: VAWord, kind: str, g: CoxeterGraph, depth: int | None = None) -> NormalPair:
    """Rewrite ``word`` as a kernel word and an element of ``W``.

    K: scan with ``w`` the image of the tau-prefix; ``sigma_s^e`` emits
    ``delta_{w(alpha_s)}^e``.  P: scan with ``w`` the image of the whole
    prefix; ``sigma_s`` emits ``zeta_{ws(alpha_s)}``, ``sigma_s^-1`` emits
    ``zeta_{w(alpha_s)}^-1``, and every letter updates ``w <- ws``.
    """
    if kind not in ("K", "P"):
        raise CoxkitError(f"unknown convention {kind!r}; use K or P")
    roots = _root_system(g, depth)
    W = coxeter_group(g)
    w = W.identity
    raw = []
    for a in word:
        if a.vertex not in g:
            raise GraphError(f"unknown vertex {a.vertex!r} in word")
        j = g.index(a.vertex)
        if a.kind == TAU:
            w = w.rmul_gen(j)
            continue
        if kind == "K":
            raw.append((_checked(roots, w.image_of_simple(j)), a.exp))
        else:
            nxt = w.rmul_gen(j)
            beta = nxt.image_of_simple(j) if a.exp == 1 else w.image_of_simple(j)
            raw.append((_checked(roots, beta), a.exp))
            w = nxt
    flavor = "delta" if kind == "K" else "zeta"
    raw_word = DeltaWord(tuple(raw), flavor)
    k = raw_word.reduced()
    if kind == "P":
        # k * w = w * (w^-1 . k)
        k = act_on_delta(w.inverse(), k, roots)
    return NormalPair(k, w, kind, raw_word)


# -- the mixed relation --------------------------------------------------------

@dataclass(frozen=True)
class VA3Relation:
    s: str
    t: str
    m: int
    r: str
    lhs: VAWord
    rhs: VAWord

    def to_json(self) -> dict:
        return {"s": self.s, "t": self.t, "m": self.m, "r": self.r,
                "lhs": format_va(self.lhs), "rhs": format_va(self.rhs)}


def va3_resolve(g: CoxeterGraph, s: str, t: str) -> VA3Relation:
    """``(alternating tau-word of m-1 letters ending in tau_s) sigma_t = sigma_r (same tau-word)``,
    with ``r`` the vertex whose simple root is the image of ``alpha_t``."""
    for v in (s, t):
        if v not in g:
            raise GraphError(f"unknown vertex {v!r}")
    if s == t:
        raise CoxkitError("va3 needs two distinct vertices")
    m = g.label(s, t)
    if m == INF:
        raise CoxkitError(f"m({s},{t}) is infinite: no mixed relation")
    taus, cur = [], s
    for _ in range(m - 1):
        taus.insert(0, cur)
        cur = t if cur == s else s
    W = coxeter_group(g)
    w = W.element(taus)
    img = w.image_of_simple(g.index(t))
    r = next((v for v in g.vertices if W.simple_root(v) == img), None)
    if r is None:
        raise CoxkitError(f"image of alpha_{t} is {img.name()}, not a simple root")
    tw = tuple(tau(v) for v in taus)
    return VA3Relation(s, t, m, r, tw + (sigma(t),), (sigma(r),) + tw)


# -- induced moves on kernel words ---------------------------------------------

def locate_braid_move(before: DeltaWord, after: DeltaWord, hat) -> tuple | None:
    """If ``after`` is ``before`` with one window ``x y x ...`` (m letters) replaced by
    ``y x y ...`` where ``m`` is the hat label of ``(x, y)``, return
    ``(position, x, y, m)``; otherwise ``None``.  Both words are read unreduced."""
    a, b = before.letters, after.letters
    if len(a) != len(b) or before.flavor != after.flavor:
        return None
    diff = [i for i in range(len(a)) if a[i][0] != b[i][0] or a[i][1] != b[i][1]]
    if not diff:
        return None
    lo, hi = diff[0], diff[-1]
    x, ex = a[lo]
    y, ey = b[lo]
    if x == y:
        return None
    m = hat.label(x, y)
    if m is None or m == INF or m < 2:
        return None
    for i0 in range(max(0, hi - m + 1), lo + 1):
        if i0 + m > len(a):
            break
        if _alternates(a, i0, m, x, y) and _alternates(b, i0, m, y, x):
            if all(a[i] == b[i] for i in range(len(a)) if not i0 <= i < i0 + m):
                return (i0, x, y, m)
    return None


def _alternates(letters, i0, m, x, y) -> bool:
    first_e = letters[i0][1]
    for k in range(m):
        r, e = letters[i0 + k]
        if r != (x if k % 2 == 0 else y) or e != first_e:
            return False
    return True


# -- components -----------------------------------------------------------------

def split_components(word: VAWord, g: CoxeterGraph) -> dict:
    """Subword per connected component (keyed by the component's vertex tuple)."""
    parts = {}
    where = {}
    for comp in components(g):
        key = tuple(comp)
        parts[key] = []
        for v in comp:
            where[v] = key
    for a in word:
        if a.vertex not in where:
            raise GraphError(f"unknown vertex {a.vertex!r} in word")
        parts[where[a.vertex]].append(a)
    return {k: tuple(v) for k, v in parts.items()}
