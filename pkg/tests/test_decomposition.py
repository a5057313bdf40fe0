from __future__ import annotations

import pytest

from coxkit.coxeter import coxeter_group
from coxkit.decomposition import (DirectDecomposition, build_table, center, centralizer,
                                  in_decomposable_list, normal_subgroups, remak_decompose,
                                  verify_decomposition, verify_decompW)
from coxkit.errors import CoxkitError, TruncatedEnumeration
from coxkit.graph import parse_graph, preset


@pytest.mark.parametrize("fam,n,order", [("A", 2, 6), ("I2", 6, 12), ("B", 3, 48)])
def test_table(fam, n, order):
    t = build_table(preset(fam, n))
    assert t.order == order and t.check_axioms(samples=500)
    for i in range(0, order, max(1, order // 7)):
        for j in range(0, order, max(1, order // 5)):
            assert t.elements[t.mult[i, j]] == t.elements[i] * t.elements[j]


def test_table_bound():
    with pytest.raises(TruncatedEnumeration):
        build_table(preset("B", 3), bound=10)


def test_normal_subgroups_of_s4():
    t = build_table(preset("A", 3))
    orders = [len(N) for N in normal_subgroups(t)]
    assert orders == [1, 4, 12, 24]


@pytest.mark.parametrize("fam,n,orders", [("I2", 6, [2, 6]), ("A", 3, [24]), ("H", 3, [2, 60]),
                                          ("B", 3, [2, 24]), ("I2", 4, [8])])
def test_remak_examples(fam, n, orders):
    t = build_table(preset(fam, n))
    decs = remak_decompose(t)
    assert decs and all(d.orders == orders for d in decs)
    for d in decs:
        assert verify_decomposition(t, d)


def test_remak_limit():
    t = build_table(preset("A", 3))
    with pytest.raises(CoxkitError):
        remak_decompose(t, limit=10)


def test_verify_decomposition_rejects_bad_input():
    t = build_table(preset("I2", 6))
    Z = center(t)
    assert not verify_decomposition(t, DirectDecomposition([Z, Z]))


def test_reducible_graph_decomposes_along_components():
    t = build_table(parse_graph("vertices a b c\nedge a b 3"))
    decs = remak_decompose(t)
    assert all(sorted(d.orders) == [2, 6] for d in decs)


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("D", 4),
                                   ("H", 3), ("F", 4)] + [("I2", p) for p in range(3, 13)])
def test_classification(fam, n):
    rep = verify_decompW(preset(fam, n))
    assert rep.consistent, rep.to_json()
    doc = rep.to_json()
    assert set(doc) == {"type", "order", "center_order", "decomposable", "factors",
                        "consistent_with_classification"}


def test_classification_list():
    assert in_decomposable_list("I2(6)") and in_decomposable_list("I2(10)")
    assert not in_decomposable_list("I2(8)") and not in_decomposable_list("I2(5)")
    assert in_decomposable_list("B3") and in_decomposable_list("B5") and not in_decomposable_list("B4")
    assert in_decomposable_list("E7") and in_decomposable_list("H3")
    assert not in_decomposable_list("H4") and not in_decomposable_list("E8")


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("B", 3), ("H", 3), ("I2", 6), ("I2", 8)])
def test_center_matches_longest_element(fam, n):
    g = preset(fam, n)
    t = build_table(g)
    w0, central = coxeter_group(g).longest_element()
    expected = {0}
    if central:
        expected.add(next(i for i, e in enumerate(t.elements) if e == w0))
    assert center(t) == expected


def test_centralizer_examples():
    t = build_table(preset("A", 2))
    assert centralizer(t, []) == frozenset(range(6))
    w0, _ = coxeter_group(preset("A", 2)).longest_element()
    i0 = next(i for i, e in enumerate(t.elements) if e == w0)
    C = centralizer(t, [i0])
    assert i0 in C and len(C) < 6
    assert i0 not in center(t)


def test_centralizer_splits_across_decomposition():
    t = build_table(preset("I2", 6))
    H, K = remak_decompose(t)[0].factors
    for x in range(t.order):
        Z = centralizer(t, [x])
        ZH, ZK = Z & H, Z & K
        prod = {int(t.mult[a, b]) for a in ZH for b in ZK}
        # only sets E lying in one factor are guaranteed to split; x in H or K qualifies
        if x in H or x in K:
            assert prod == set(Z)
