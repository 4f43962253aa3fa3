import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from regideal import regular_graph as rg
from regideal.grammar import parse_ideal
from regideal.ring_core import RingElement, complement, nilradical

from conftest import ring

SMALL_LOCALS = ["F2", "F3", "Z4", "Z9", "F2[x]/x^3", "F2[x,y]/(x,y)^2"]

small_rings = st.lists(st.sampled_from(SMALL_LOCALS), min_size=1, max_size=4).map(" x ".join).filter(
    lambda t: ring(t).order <= 2048
)


def test_is_regular_on_examples():
    R = ring("Z4")
    two = parse_ideal(R, "(2)")
    assert not rg.is_regular_on(R, RingElement((2,)), two)
    assert rg.is_regular_on(R, RingElement((3,)), two)
    for r in R.elements():
        assert rg.is_regular_on(R, r, R.zero)


def test_zero_element_regular_only_on_zero_module():
    R = ring("F2 x Z4")
    zero = RingElement((0, 0))
    for M in R.ideals:
        assert rg.is_regular_on(R, zero, M) == (M == R.zero)


def test_contains_regular_element_examples():
    R = ring("Z4")
    two = parse_ideal(R, "(2)")
    assert rg.contains_regular_element(R, R.whole, two)
    assert not rg.contains_regular_element(R, two, two)
    S = ring("F2 x Z4")
    assert rg.contains_regular_element(S, parse_ideal(S, "0,(2)"), S.zero)


def test_regular_mask_matches_scalar_oracle():
    R = ring("F2 x Z4 x F3")
    elems = list(R.elements())
    for M in R.ideals:
        mask = rg.regular_mask(R, M)
        assert list(mask) == [rg.is_regular_on(R, r, M) for r in elems]


def test_arc_fast_examples():
    R = ring("F2 x Z4 x F3")
    d = parse_ideal(R, "0,1,1")
    for J in R.vertices:
        if J.parts[0] == 0 and J != d:
            assert rg.arc_fast(R, d, J)
    assert not rg.arc_fast(R, parse_ideal(R, "1,(2),0"), parse_ideal(R, "0,0,1"))
    with pytest.raises(ValueError):
        rg.arc_fast(R, d, d)


@pytest.mark.parametrize("text", ["F2 x Z4 x Z4", "F2 x Z4 x F3", "F2 x F3 x F5", "F2 x F2[x,y]/(x,y)^2 x F3"])
def test_arc_fast_matches_oracle_pairwise(text):
    R = ring(text)
    for I, J in itertools.permutations(R.vertices, 2):
        assert rg.arc_fast(R, I, J) == rg.contains_regular_element(R, I, J)


def test_c_sets():
    Z4 = ring("Z4")
    assert not rg.c_plus(Z4, parse_ideal(Z4, "(2)"))
    F = ring("F2 x F2")
    assert rg.c_minus(F, parse_ideal(F, "1,0")) == {parse_ideal(F, "1,0")}
    R = ring("F2 x Z4 x F3")
    assert rg.c_minus(R, R.zero) == set(R.vertices)
    assert rg.c_minus(R, R.zero, oracle=True) == set(R.vertices)


def test_reduced_arcs_are_strict_support_containment():
    R = ring("F2 x F3 x F5")
    g = rg.build_digraph(R)
    for (i, I), (j, J) in itertools.product(enumerate(R.vertices), repeat=2):
        assert g.arcs[i, j] == (R.support(J) < R.support(I))
    # six arcs, i.e. twelve ordered adjacent pairs in the symmetric graph
    assert g.arcs.sum() == 6
    assert rg.underlying(g).adjacency.sum() == 12


def test_degrees_example():
    R = ring("F2 x Z4 x Z4")
    g = rg.build_digraph(R)
    k = g.index[parse_ideal(R, "0,(2),(2)")]
    assert g.out_degree[k] == 0 and g.in_degree[k] == 1
    assert g.has_arc(parse_ideal(R, "0,1,1"), parse_ideal(R, "0,(2),(2)"))


def test_single_local_ring():
    g = rg.build_digraph(ring("Z4"))
    assert len(g.vertices) == 1 and not g.arcs.any()


def test_fault_is_caught_by_validation():
    R = ring("F2 x Z4 x F3")
    with rg.inject_arc_fault(0, 1):
        with pytest.raises(rg.ArcMismatchError):
            rg.build_digraph(R)
        assert rg.build_digraph(R, validate=False).arcs[0, 1] != rg.fast_arcs(R)[0, 1]
    assert rg.build_digraph(R).validated


def test_underlying_symmetric():
    g = rg.build_digraph(ring("F2 x Z4 x F3"))
    u = rg.underlying(g)
    assert (u.adjacency == u.adjacency.T).all()
    assert (u.adjacency == (g.arcs | g.arcs.T)).all()
    assert not u.adjacency.diagonal().any()


# exhaustive properties over random rings ----------------------------------------------


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_rings)
def test_oracle_equivalence_property(text):
    R = ring(text)
    assert (rg.fast_arcs(R) == rg.oracle_arcs(R)).all()


@settings(max_examples=40, deadline=None)
@given(small_rings)
def test_transitivity_and_duality(text):
    R = ring(text)
    g = rg.build_digraph(R, validate=False)
    assert rg.is_transitive(g.arcs)
    assert not g.arcs.diagonal().any()
    for (i, I), (j, J) in itertools.product(enumerate(g.vertices), repeat=2):
        Ic, Jc = complement(R, I), complement(R, J)
        assert g.arcs[i, j] == g.arcs[g.index[Jc], g.index[Ic]]


@settings(max_examples=30, deadline=None)
@given(small_rings.filter(lambda t: len(ring(t).components) >= 2))
def test_cplus_empty_iff_nilpotent(text):
    R = ring(text)
    N = nilradical(R)
    for I in R.ideals:
        assert (not rg.c_plus(R, I)) == R.contains(N, I)


@settings(max_examples=30, deadline=None)
@given(small_rings.filter(lambda t: ring(t).n_fields >= 1 and not ring(t).is_field))
def test_field_factor_cset_nonempty(text):
    R = ring(text)
    for I in R.ideals:
        assert rg.c_plus(R, I) or rg.c_minus(R, I)


def test_cset_fast_vs_oracle():
    R = ring("F2 x Z4 x F3")
    for I in R.ideals:
        assert rg.c_plus(R, I) == rg.c_plus(R, I, oracle=True)
        assert rg.c_minus(R, I) == rg.c_minus(R, I, oracle=True)
        extended = rg.c_minus(R, I, allow_trivial=True)
        assert extended - {R.zero} == rg.c_minus(R, I)
        assert (R.zero in extended) == (I == R.zero)
        assert rg.c_plus(R, I, allow_trivial=True) - {R.whole} == rg.c_plus(R, I)
