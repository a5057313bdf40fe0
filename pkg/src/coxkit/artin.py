"""Words in the Artin generators: the map to W, the reduced-word section,
and the retraction onto a standard parabolic subgroup."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import GroupEl, coxeter_group
from .errors import CoxkitError, GraphError
from .graph import INF, CoxeterGraph

Letter = tuple  # (vertex, exponent in {+1, -1})


@dataclass(frozen=True)
class ArtinWord:
    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "ArtinWord") -> "ArtinWord":
        return ArtinWord(self.letters + other.letters)

    def inverse(self) -> "ArtinWord":
        return ArtinWord(tuple((v, -e) for v, e in reversed(self.letters)))

    def vertices(self) -> set:
        return {v for v, _ in self.letters}

    def __str__(self):
        return format_artin(self)


def _token(tok: str) -> Letter:
    name, sep, exp = tok.partition("^")
    if not name:
        raise CoxkitError(f"empty generator in token {tok!r}")
    if not sep:
        return (name, 1)
    if exp in ("1", "+1"):
        return (name, 1)
    if exp == "-1":
        return (name, -1)
    raise CoxkitError(f"bad exponent in token {tok!r}; use s or s^-1")


def parse_artin(text: str | Sequence[str], graph: CoxeterGraph | None = None) -> ArtinWord:
    """Parse whitespace-separated tokens ``s`` / ``s^-1``."""
    toks = text.split() if isinstance(text, str) else list(text)
    letters = tuple(_token(t) for t in toks)
    if graph is not None:
        bad = [v for v, _ in letters if v not in graph]
        if bad:
            raise GraphError(f"unknown vertex {bad[0]!r} in word")
    return ArtinWord(letters)


def format_artin(word: ArtinWord) -> str:
    return " ".join(v if e == 1 else f"{v}^-1" for v, e in word.letters)


def word(*letters) -> ArtinWord:
    """Shorthand: ``word("s", ("t", -1))``."""
    return ArtinWord(tuple(x if isinstance(x, tuple) else (x, 1) for x in letters))


# -- the map to W and its section -----------------------------------------

def omega(w: ArtinWord, g: CoxeterGraph) -> GroupEl:
    """Image in ``W[Gamma]``: ``sigma_s^(+-1)`` maps to ``s``."""
    return coxeter_group(g).element(v for v, _ in w.letters)


def is_colored(w: ArtinWord, g: CoxeterGraph) -> bool:
    return omega(w, g).is_identity()


def section_sigma(x: GroupEl) -> ArtinWord:
    """The positive word along the canonical reduced word of ``x``."""
    return ArtinWord(tuple((v, 1) for v in x.word))


# -- retraction ------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    letter: Letter
    u: GroupEl          # s_1 ... s_j
    v: GroupEl          # part in W_X
    w: GroupEl          # (X, {})-minimal part, u = v w
    t: GroupEl          # w' s_j w'^-1 for the relevant minimal part w'
    gamma: Letter | None

    def to_json(self) -> dict:
        return {
            "letter": format_artin(ArtinWord((self.letter,))),
            "u": " ".join(self.u.word), "v": " ".join(self.v.word),
            "w": " ".join(self.w.word), "t": " ".join(self.t.word),
            "gamma": None if self.gamma is None else format_artin(ArtinWord((self.gamma,))),
        }


@dataclass(frozen=True)
class RetractionTrace:
    steps: tuple

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


def retract_pX(w: ArtinWord, X: Iterable[str], g: CoxeterGraph) -> tuple[ArtinWord, RetractionTrace]:
    """``p_X`` letter by letter.

    With ``u_j = s_1 ... s_j = v_j w_j`` (``v_j`` in ``W_X``, ``w_j``
    ``(X, {})``-minimal), the ``j``-th letter contributes
    ``sigma_{t_j}^{e_j}`` when ``t_j`` is a generator in ``X``, where
    ``t_j = w_{j-1} s_j w_{j-1}^-1`` for ``e_j = +1`` and
    ``t_j = w_j s_j w_j^-1`` for ``e_j = -1``.
    """
    W = coxeter_group(g)
    X = sorted(set(X), key=g.index)
    for x in X:
        if x not in g:
            raise GraphError(f"unknown vertex {x!r} in X")
    gen_of = {W.gen(x).key(): x for x in X}
    u = W.identity
    w_prev = W.identity
    out, steps = [], []
    for s, e in w.letters:
        u = u.rmul_gen(g.index(s))
        v_j, w_j, _ = W.minimal_coset_decomposition(u, X, ())
        base = w_prev if e == 1 else w_j
        t = base * W.gen(s) * base.inverse()
        x = gen_of.get(t.key())
        gamma = (x, e) if x is not None else None
        if gamma:
            out.append(gamma)
        steps.append(TraceStep((s, e), u, v_j, w_j, t, gamma))
        w_prev = w_j
    return ArtinWord(tuple(out)), RetractionTrace(tuple(steps))


# -- decidable fragments -----------------------------------------------------

def free_reduce(w: ArtinWord) -> ArtinWord:
    """Cancel adjacent ``sigma_s sigma_s^-1`` pairs to a fixpoint."""
    stack: list = []
    for v, e in w.letters:
        if stack and stack[-1] == (v, -e):
            stack.pop()
        else:
            stack.append((v, e))
    return ArtinWord(tuple(stack))


def equal_in_special_case(a: ArtinWord, b: ArtinWord, g: CoxeterGraph) -> bool:
    """Word problem for free Artin groups (all labels ``∞``) and for ``Z``."""
    for w in (a, b):
        stray = w.vertices() - set(g.vertices)
        if stray:
            raise GraphError(f"unknown vertex {sorted(stray)[0]!r} in word")
    if len(g) == 1:
        return sum(e for _, e in a.letters) == sum(e for _, e in b.letters)
    vs = g.vertices
    free = all(g.label(vs[i], vs[j]) == INF for i in range(len(vs)) for j in range(i + 1, len(vs)))
    if not free:
        raise CoxkitError("equality is only decided for free (all-∞) or rank-one Artin groups")
    return free_reduce(a) == free_reduce(b)
