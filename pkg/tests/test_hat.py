from __future__ import annotations

import pytest

from coxkit.errors import CoxkitError, NotSpherical
from coxkit.graph import INF, components, emit, parse_graph, preset
from coxkit.hat import Filtration, build_hat, filtration_order, verify_filtration

CONNECTED = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("H", 3), ("I2", 5), ("I2", 6), ("D", 4)]


def test_a1():
    h = build_hat(preset("A", 1))
    assert len(h.graph) == 2
    assert h.graph.edges()[0][2] == INF


def test_a2_counts():
    h = build_hat(preset("A", 2))
    assert len(h.graph) == 6
    assert h.edge_counts() == {3: 6, INF: 9}


@pytest.mark.parametrize("fam,n", CONNECTED)
def test_hat_invariants(fam, n):
    h = build_hat(preset(fam, n))
    R = h.roots
    assert len(h.graph) == len(R) and not h.unknown_pairs
    for r in R:
        assert h.label(r, -r) == INF
    assert len(components(h.graph)) == 1
    assert len(components(h.graph, infinite_only=True)) == 1
    # finite labels >= 3 force the opposite pair to be ∞
    for i, b in enumerate(R):
        for c in list(R)[i + 1:]:
            m = h.label(b, c)
            if m not in (2, INF) and c != -b:
                assert h.label(-b, c) == INF


def test_non_spherical_needs_depth():
    with pytest.raises(NotSpherical):
        build_hat(preset("Ã", 2))


def test_truncated_mode():
    g = preset("Ã", 2)
    h = build_hat(g, depth=2)
    assert h.truncated and h.unknown_pairs
    for r in h.roots:
        assert h.label(r, -r) == INF
    assert all(h.label_by_index(*sorted(p)) is None for p in h.unknown_pairs)
    with pytest.raises(CoxkitError):
        filtration_order(h)


def test_emit_uses_root_names():
    h = build_hat(preset("A", 2))
    text = emit(h.graph, "text")
    assert "(1,1)" in text and parse_graph(text) == h.graph


@pytest.mark.parametrize("fam,n", [("A", 1), ("A", 2), ("B", 2), ("A", 3), ("B", 3), ("H", 3), ("F", 4),
                                   ("D", 4), ("I2", 8)])
def test_filtration(fam, n):
    h = build_hat(preset(fam, n))
    f = filtration_order(h)
    assert len(f.order) == len(h.roots.positive)
    rep = verify_filtration(h, f)
    assert rep.ok and len(rep.prefixes) == len(f.order)


def test_filtration_rejects_disconnected_prefix():
    # A1 x A1: the two positive roots are orthogonal
    h = build_hat(parse_graph("vertices a b"))
    f = Filtration(list(h.roots.positive), h)
    rep = verify_filtration(h, f)
    assert not rep.ok and rep.failures[0][0] == 2
    with pytest.raises(CoxkitError):
        filtration_order(h)


def test_empty_filtration():
    h = build_hat(parse_graph("vertices"))
    f = filtration_order(h)
    assert f.order == [] and verify_filtration(h, f).ok
