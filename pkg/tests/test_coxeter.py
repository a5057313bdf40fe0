from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coxkit.coxeter import (coxeter_group, element_of, enumerate_group, enumerate_roots, inner,
                            longest_element, minimal_coset_decomposition, reduced_word, reflect,
                            support)
from coxkit.errors import NotSpherical, RootOutOfRange, TruncatedEnumeration
from coxkit.graph import SPHERICAL_PRESETS, parse_graph, preset
from oracles import embed, parabolic, root_closure, simple_roots, subsets

A2 = preset("A", 2)


def test_inner_examples():
    W = coxeter_group(parse_graph("vertices s t u\nedge s t inf"))
    a = W.simple_root
    assert inner(a("s"), a("s")) == W.ctx.one()
    assert inner(a("s"), a("u")).is_zero()
    assert inner(a("s"), a("t")) == W.ctx.rational(-1)


def test_reflect_examples():
    W = coxeter_group(A2)
    a = W.simple_root
    assert reflect("s1", a("s1")) == -a("s1")
    assert reflect("s1", a("s2")) == a("s1") + a("s2")
    W3 = coxeter_group(preset("A", 3))
    assert reflect("s1", W3.simple_root("s3")) == W3.simple_root("s3")


def test_element_examples():
    assert element_of(A2, []).is_identity()
    assert element_of(A2, ["s1", "s1"]).is_identity()
    assert element_of(A2, "s1 s2 s1".split()) == element_of(A2, "s2 s1 s2".split())
    assert reduced_word(element_of(A2, "s1 s1 s2".split())) == ("s2",)
    assert len(reduced_word(element_of(A2, "s1 s2 s1".split()))) == 3
    assert reduced_word(element_of(A2, [])) == ()
    assert support(element_of(A2, [])) == frozenset()
    assert support(element_of(A2, ["s1", "s2"])) == {"s1", "s2"}


@pytest.mark.parametrize("fam,n,order", [("A", 2, 6), ("B", 3, 48), ("I2", 6, 12), ("A", 3, 24),
                                         ("H", 3, 120), ("F", 4, 1152), ("D", 4, 192)])
def test_group_orders(fam, n, order):
    e = enumerate_group(preset(fam, n))
    assert not e.truncated and len(e) == order
    assert e.elements[0].is_identity()


def test_truncation_is_explicit():
    g = preset("Ã", 2)
    e = enumerate_group(g, bound=50)
    assert e.truncated and len(e) == 50
    with pytest.raises(TruncatedEnumeration):
        coxeter_group(g).elements(50)
    with pytest.raises(NotSpherical):
        enumerate_roots(g)
    R = enumerate_roots(g, depth=3)
    assert not R.complete and len(R.positive) == len(R.negative)
    with pytest.raises(NotSpherical):
        longest_element(g)


@pytest.mark.parametrize("fam,n", [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3),
                                   ("B", 4)] + [("I2", m) for m in range(3, 9)])
def test_roots_match_euclidean_model(fam, n):
    g = preset(fam, n)
    R = enumerate_roots(g)
    simple = simple_roots(fam, n)
    model = root_closure(simple)
    assert {embed(r.coords, simple) for r in R} == model
    assert len(R) == len(model)


def test_h3_root_count():
    R = enumerate_roots(preset("H", 3))
    assert len(R) == 30 and len(R.positive) == 15


@pytest.mark.parametrize("fam,n", SPHERICAL_PRESETS[:16])
def test_roots_are_signed_and_closed(fam, n):
    g = preset(fam, n)
    W = coxeter_group(g)
    R = enumerate_roots(g)
    assert all(r.is_root_signed() and r.sign() != 0 for r in R)
    assert {(-r).key() for r in R} == {r.key() for r in R}
    keys = {r.key() for r in R}
    for r in R.positive[:10]:
        for s in g.vertices:
            assert W.reflect(s, r).key() in keys
    for r in list(R)[:10]:
        w, s = R.witness(r)
        assert w.image_of_simple(g.index(s)) == r


def test_lookup_outside_system():
    R = enumerate_roots(A2)
    W = coxeter_group(A2)
    with pytest.raises(RootOutOfRange):
        R.lookup(W.simple_root("s1") + W.simple_root("s1"))


@pytest.mark.parametrize("fam,n", [(f, k) for f, k in SPHERICAL_PRESETS if f not in ("E", "H") or k == 3]
                         + [("A", 1), ("I2", 4)])
def test_longest_element_length(fam, n):
    g = preset(fam, n)
    w0, central = longest_element(g)
    assert w0.length == len(enumerate_roots(g).positive)
    W = coxeter_group(g)
    assert central == all(w0 * s == s * w0 for s in W.gens)


def test_longest_examples():
    w0, c = longest_element(A2)
    assert (w0.length, c) == (3, False)
    w0, c = longest_element(preset("I2", 4))
    assert (w0.length, c) == (4, True)
    w0, c = longest_element(preset("B", 3))
    assert (w0.length, c) == (9, True)


@pytest.mark.parametrize("fam,n", [("A", 3), ("B", 3)] + [("I2", m) for m in range(3, 9)])
def test_descent_law_and_length(fam, n):
    g = preset(fam, n)
    W = coxeter_group(g)
    R = enumerate_roots(g)
    for w in W.elements():
        inv = sum(1 for r in R.positive if w.apply(r).sign() < 0)
        assert inv == w.length
        for j in range(len(g)):
            assert (w.rmul_gen(j).length < w.length) == w.is_right_descent(j)


def test_support_matches_every_reduced_expression_on_a3():
    g = preset("A", 3)
    W = coxeter_group(g)
    for w in W.elements():
        # all reduced expressions by backtracking over right descents
        stack = [(w, ())]
        exprs = []
        while stack:
            x, suffix = stack.pop()
            if x.is_identity():
                exprs.append(suffix)
                continue
            for j in range(len(g)):
                if x.is_right_descent(j):
                    stack.append((x.rmul_gen(j), (g.vertices[j],) + suffix))
        assert all(len(e) == w.length and frozenset(e) == w.support() for e in exprs)
        assert w.word in exprs


def test_coset_examples():
    W = coxeter_group(A2)
    w = W.element(["s1"])
    u, m0, v = minimal_coset_decomposition(w, [], ["s1"])
    assert m0.is_identity() and v == w
    u, m0, v = minimal_coset_decomposition(W.element(["s2"]), [], ["s1"])
    assert m0 == W.element(["s2"])


def test_double_cosets_exhaustive_a3():
    g = preset("A", 3)
    W = coxeter_group(g)
    S = g.vertices
    para = {X: parabolic(W, X) for X in subsets(S)}
    for w in W.elements():
        for Y in subsets(S):
            for X in subsets(S):
                u, m0, v = minimal_coset_decomposition(w, Y, X)
                assert u * m0 * v == w
                assert u.length + m0.length + v.length == w.length
                assert u.support() <= set(Y) and v.support() <= set(X)
                coset = {(a * w * b).key(): a * w * b for a in para[Y] for b in para[X]}
                shortest = min(x.length for x in coset.values())
                mins = [x for x in coset.values() if x.length == shortest]
                assert len(mins) == 1 and mins[0] == m0


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("B", 2), ("B", 3)] + [("I2", m) for m in range(5, 9)])
def test_quasi_center(fam, n):
    g = preset(fam, n)
    W = coxeter_group(g)
    w0, central = W.longest_element()
    Z, QZ = W.center_and_quasi_center()
    assert {x.key() for x in QZ} == {W.identity.key(), w0.key()}
    expected_Z = {W.identity.key(), w0.key()} if central else {W.identity.key()}
    assert {x.key() for x in Z} == expected_Z


def test_essential_examples():
    for g in (A2, preset("A", 3), preset("A", 1)):
        assert coxeter_group(g).is_essential_coxeter_element()
    W = coxeter_group(A2)
    assert not W.is_essential(W.element(["s1"]))


RELATION_GRAPHS = [preset("B", 3), preset("H", 3), parse_graph("vertices a b c\nedge a b inf\nedge b c 4")]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(0, 2), max_size=10), st.integers(0, 10),
       st.integers(0, 1), st.integers(0, 2), st.integers(0, 2))
def test_relation_moves_preserve_element(gi, idx, pos, kind, a, b):
    g = RELATION_GRAPHS[gi]
    vs = g.vertices
    word = [vs[i] for i in idx]
    pos = min(pos, len(word))
    if kind == 0:
        other = word[:pos] + [vs[a], vs[a]] + word[pos:]
    else:
        s, t = vs[a], vs[b]
        m = g.label(s, t) if s != t else 1
        if s == t or m == float("inf"):
            other = list(word)
        else:
            alt = lambda x, y: [x if i % 2 == 0 else y for i in range(m)]
            word = word[:pos] + alt(s, t) + word[pos:]
            other = word[:pos] + alt(t, s) + word[pos + m:]
    assert element_of(g, word) == element_of(g, other)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.sampled_from(["s1", "s2", "s3"]))
def test_form_is_invariant(i, j, s):
    g = preset("H", 3)
    W = coxeter_group(g)
    R = enumerate_roots(g)
    v, u = R.roots[i] + R.roots[3 * j], R.roots[2 * i + j]
    assert W.inner(W.reflect(s, v), W.reflect(s, u)) == W.inner(v, u)


def test_enumeration_is_deterministic():
    a = [w.key() for w in enumerate_group(preset("B", 3))]
    b = [w.key() for w in coxeter_group(preset("B", 3)).enumerate()]
    assert a == b
