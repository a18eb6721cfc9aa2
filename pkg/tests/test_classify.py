import json

import numpy as np
import pytest

from conftest import all_graphs, graph
from gpgraph import oracle
from gpgraph.classify import (
    NamedForm,
    SrgParams,
    bipartite_double,
    bipartiteness,
    classify,
    hamming_identification,
    odd_cycle_witness,
    ramanujan_check,
    semiprimitive_pair,
    srg_check,
    srg_family_params,
    validate_cycle,
    verdict_line,
)
from gpgraph.decompose import decompose
from gpgraph.errors import (
    DirectedGraph,
    DirectedSpectrum,
    InternalTheoremViolation,
    ParameterMismatch,
    PreconditionViolated,
)
from gpgraph.spectra import character_spectrum


@pytest.mark.parametrize(
    "k, q, forms",
    [
        (1, 9, ("K_9",)),
        (12, 25, ("5C_5", "5P_5")),
        (1, 3, ("K_3", "C_3")),
        (4, 49, ("L_{7,7}",)),
        (8, 49, ("7K_7",)),
        (2, 7, ("→P_7",)),
        (2, 13, ("P_13",)),
        (7, 8, ("4K_2",)),
        (26, 27, ("9→C_3", "9→P_3")),
        (5, 81, ("L_{9,9}",)),
        (4, 81, ("Brouwer-Haemers",)),
        (3, 16, ("Clebsch",)),
        (17, 256, ("16K_16",)),
        (51, 256, ("16·Clebsch",)),
        (20, 81, ("9P_9",)),
        (7, 64, ("H(3,4)",)),
        (8, 81, ("unknown",)),
    ],
)
def test_named_forms(k, q, forms):
    assert classify(graph(k, q)).forms == forms


def test_every_graph_classifies_without_violation():
    for g in all_graphs(128):
        c = classify(g)
        assert c.forms
        assert c.component_count == decompose(g).component_count


def test_rook_graphs_by_isomorphism():
    for q0 in (3, 5, 7, 9):
        g = graph((q0 + 1) // 2, q0 * q0)
        rook = oracle.cartesian_power(oracle.complete_graph(q0), 2)
        assert oracle.isomorphic(oracle.DenseGraph.from_gp(g), rook) is not None
        assert f"L_{{{q0},{q0}}}" in classify(g).forms


def test_named_form_rendering():
    assert str(NamedForm("paley", (7, True))) == "→P_7"
    assert str(NamedForm("cycles", (5, 1, False))) == "C_5"
    assert str(NamedForm("cliques", (4, 1))) == "K_4"
    assert str(NamedForm("srg", (10, 3, 0, 1))) == "srg(10,3,0,1)"
    assert str(NamedForm("union", (3,), NamedForm("complete", (4,)))) == "3K_4"
    assert str(NamedForm("union", (2,), NamedForm("rook", (3,)))) == "2·L_{3,3}"


def test_srg_check_examples():
    assert srg_check(graph(4, 81)) == (81, 20, 1, 6)
    assert srg_check(graph(8, 81)) is None
    assert srg_check(graph(3, 16)) == (16, 5, 0, 2)
    assert srg_check(graph(1, 7)) == (7, 6, 5, 0)
    assert srg_check(graph(8, 49)) == (49, 6, 5, 0)
    with pytest.raises(DirectedGraph):
        srg_check(graph(2, 7))


def test_srg_check_accepts_dense_graphs():
    assert srg_check(oracle.cycle_graph(5)) == (5, 2, 0, 1)
    assert srg_check(oracle.cycle_graph(6)) is None


def test_srg_params_satisfy_identity():
    for g in all_graphs(256):
        if g.directed:
            continue
        s = srg_check(g)
        if s is not None:
            v, k, e, d = s
            assert (v - k - 1) * d == k * (k - e - 1)


@pytest.mark.parametrize("p, ell, t", [(3, 1, 2), (2, 1, 2), (2, 1, 3), (2, 1, 4), (2, 2, 2)])
def test_srg_family_matches_brute_force(p, ell, t):
    q = p ** (2 * ell * t)
    assert srg_family_params(p, ell, t) == srg_check(graph(p**ell + 1, q))


def test_srg_family_examples():
    assert srg_family_params(3, 1, 2) == SrgParams(81, 20, 1, 6)
    assert srg_family_params(2, 1, 3) == SrgParams(64, 21, 8, 6)
    assert srg_family_params(2, 2, 2) == SrgParams(256, 51, 2, 12)
    assert str(srg_family_params(2, 1, 2)) == "srg(16,5,0,2)"


def test_srg_family_preconditions():
    with pytest.raises(PreconditionViolated):
        srg_family_params(3, 1, 1)


def test_srg_family_divisions_are_exact_over_a_wide_range():
    for p in (2, 3, 5, 7, 11):
        for ell in (1, 2, 3):
            for t in (2, 3, 4):
                v, k, e, d = srg_family_params(p, ell, t)
                assert (v - k - 1) * d == k * (k - e - 1)


@pytest.mark.parametrize("k, q", [(8, 81), (3, 49), (7, 64), (15, 256), (6, 49), (12, 49)])
def test_non_srg_by_constancy(k, q):
    assert srg_check(graph(k, q)) is None


@pytest.mark.parametrize("k, q", [(4, 25), (8, 25)])
def test_directed_cases_rejected_by_precondition(k, q):
    g = graph(k, q)
    if g.directed:
        with pytest.raises(DirectedGraph):
            srg_check(g)
    else:
        assert srg_check(g) is None


def test_bipartiteness_examples():
    assert bipartiteness(graph(7, 8)) == (True, None)
    assert bipartiteness(graph(1, 2)) == (True, None)
    bip, w = bipartiteness(graph(3, 16))
    assert not bip and len(w) == 5


def test_odd_cycle_witnesses_validate():
    for g in all_graphs(1024):
        w = odd_cycle_witness(g)
        if g.p == 2 and g.k == g.q - 1:
            assert w is None
        else:
            validate_cycle(g, w)


def test_validate_cycle_rejects_bad_witnesses():
    g = graph(3, 16)
    with pytest.raises(InternalTheoremViolation):
        validate_cycle(g, [0, 1, 2, 3])
    with pytest.raises(InternalTheoremViolation):
        validate_cycle(g, [0, 1, 0])
    w = odd_cycle_witness(g)
    with pytest.raises(InternalTheoremViolation):
        validate_cycle(g, [w[0], w[2], w[1], w[3], w[4]])


def test_bipartiteness_matches_two_coloring_to_256():
    for g in all_graphs(256):
        bip, _ = bipartiteness(g, decompose(g))
        coloring, _ = oracle.two_coloring(oracle.DenseGraph.from_gp(g))
        assert bip == (coloring is not None)


def test_bipartite_double_examples():
    double, connected = bipartite_double(graph(7, 8))
    assert not connected and len(oracle.components(double)) == 8
    double, connected = bipartite_double(graph(1, 3))
    assert connected and oracle.isomorphic(double, oracle.cycle_graph(6)) is not None
    assert bipartite_double(graph(3, 16))[1]


def test_semiprimitive_examples():
    assert semiprimitive_pair(3, 2)
    for p in (2, 3, 5, 7):
        assert semiprimitive_pair(2, p) and semiprimitive_pair(1, p)
    assert not semiprimitive_pair(8, 5)
    assert semiprimitive_pair(5, 2)  # 2^2 = 4 = -1 mod 5
    with pytest.raises(PreconditionViolated):
        semiprimitive_pair(0, 3)


def test_ramanujan_examples():
    assert ramanujan_check(character_spectrum(graph(3, 16)), 5)
    for q in (3, 4, 9, 16):
        assert ramanujan_check(character_spectrum(graph(1, q)), q - 1)
    assert ramanujan_check(character_spectrum(graph(3, 64)), 21)
    with pytest.raises(DirectedSpectrum):
        ramanujan_check(character_spectrum(graph(2, 7)), 3)


def test_ramanujan_bound_can_fail():
    # C_7 has eigenvalues 2cos(2 pi j/7), all within 2 sqrt(1)
    assert ramanujan_check(character_spectrum(graph(3, 7)), 2)
    from gpgraph.spectra import group_eigenvalues

    assert not ramanujan_check(group_eigenvalues([3.0, 2.9, -1.0], "x"), 3)


def test_hamming_identification():
    assert hamming_identification(graph(7, 64), 3, 4)
    assert not hamming_identification(graph(10, 81), 4, 3)
    assert hamming_identification(graph(1, 9), 1, 9)
    with pytest.raises(ParameterMismatch):
        hamming_identification(graph(7, 64), 2, 4)
    with pytest.raises(ParameterMismatch):
        hamming_identification(graph(3, 64), 3, 4)


def test_classification_to_dict_and_verdict():
    g = graph(20, 81)
    d = decompose(g)
    c = classify(g, d)
    doc = c.to_dict(g)
    json.dumps(doc)
    assert doc["named_form"] == "9P_9"
    assert doc["srg"] is None and doc["inner_srg"] == [9, 4, 1, 2]
    assert doc["bipartite"] is False and len(doc["odd_cycle_witness"]) == 3
    assert verdict_line(g, d, c) == (
        "Γ(20,81): undirected, 9 components ≅ Γ(2,9)=P_9, non-bipartite, not srg(whole), inner srg(9,4,1,2)"
    )
    g = graph(2, 7)
    d = decompose(g)
    assert verdict_line(g, d, classify(g, d)) == "Γ(2,7): directed, connected, →P_7, non-bipartite, not srg (directed)"
    g = graph(3, 16)
    d = decompose(g)
    assert verdict_line(g, d, classify(g, d)) == "Γ(3,16): undirected, connected, Clebsch, non-bipartite, srg(16,5,0,2)"


def test_classify_raises_when_claimed_form_is_false(monkeypatch):
    import sys

    cl = sys.modules["gpgraph.classify"]
    monkeypatch.setattr(cl, "_verify_cliques", lambda d, size, count: False)
    with pytest.raises(InternalTheoremViolation):
        classify(graph(8, 49))


def test_classification_invariants():
    for g in all_graphs(128):
        c = classify(g)
        assert c.bipartite == (c.odd_cycle_witness is None)
        if c.odd_cycle_witness is not None:
            assert len(c.odd_cycle_witness) % 2 == 1
        assert c.semiprimitive == semiprimitive_pair(g.k, g.p)
        assert (c.ramanujan is None) == g.directed
