from __future__ import annotations

import itertools

import pytest

from cubefree_gl2.classifier import classify, is_isomorphic, sylow_shape_of
from cubefree_gl2.finite_field import FieldElem, element_order, field_of_order
from cubefree_gl2.matgroup import Mat, MatGroup, closure, diag, is_conjugate_subgroup, standard_subgroups, swap
from cubefree_gl2.oracle import gl_context, subgroup_lattice
from cubefree_gl2.representatives import (
    imprimitive_rep,
    primitive_rep,
    reducible_class_reps,
    reducible_representatives,
    rep_verify,
    representatives_for,
    stable_diagonal_subgroups,
)
from cubefree_gl2.shapes import Geo, NotCubeFree, abelian_shape, reducible_realizable, reducible_shapes, with_geo


def _gens(G):
    return [g.to_json() for g in G.generators]


def test_reducible_examples(F5, F7):
    reps = reducible_class_reps(abelian_shape(2), F5)
    assert [G.generators for G in reps] == [(diag(F5(4), F5(4)),), (diag(F5(4), F5(1)),)]
    reps = reducible_class_reps(abelian_shape(3), F7)
    assert [G.generators[0] for G in reps] == [diag(F7(2), F7(2)), diag(F7(2), F7(4)), diag(F7(2), F7(1))]
    (trivial,) = reducible_class_reps(abelian_shape(1), F5)
    assert trivial.order == 1


def test_reducible_rejects_unrealizable(F5):
    with pytest.raises(ValueError):
        reducible_class_reps(abelian_shape(3), F5)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_reducible_reps_pairwise_non_conjugate(q):
    F = field_of_order(q)
    M = list(standard_subgroups(F).M.group().elements)
    for m in (2, 3, 4, 6, 12):
        for shape in reducible_shapes(m):
            if m % F.p == 0 or not reducible_realizable(shape, F):
                continue
            reps = reducible_class_reps(shape, F)
            for G in reps:
                assert rep_verify(G, shape)
            for H, K in itertools.combinations(reps, 2):
                assert is_conjugate_subgroup(M, H, K) is None


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_stable_subgroups_are_swap_stable(q):
    F = field_of_order(q)
    a = swap(F)
    for order in range(1, 30):
        if order % F.p == 0:
            continue
        try:
            found = stable_diagonal_subgroups(order, F)
        except NotCubeFree:
            continue
        for L in found:
            assert L.conjugate(a) == L


def test_recipe_parameters(F7):
    shape = abelian_shape(6)
    for rep in reducible_representatives(shape, F7):
        params = rep.spec.params
        if params["normalizer"] != "M":
            continue
        odd_inverted = [x for x in rep.group.elements
                        if x.order() % 2 and (x.entries[0] * x.entries[3]).code == 1]
        assert element_order(params["lambda23"]) == len(odd_inverted)
        assert isinstance(params["lambda13"], FieldElem)


def test_imprimitive_examples(F3, F4, F5, F7):
    L = closure(F7, [diag(F7(2), F7(4))])
    G = imprimitive_rep(L, 2, F7)
    assert G.order == 6 and classify(G) == "imprimitive"
    assert G.generators == (diag(F7(2), F7(4)), swap(F7))
    trivial5 = MatGroup(F5, [], [(1, 0, 0, 1)])
    # dia(1,4)a squares to -I; -1 is a square mod 5, so the group fixes a line
    with pytest.raises(ValueError, match="reducible"):
        imprimitive_rep(trivial5, 4, F5)
    G = imprimitive_rep(MatGroup(F3, [], [(1, 0, 0, 1)]), 4, F3)
    assert G.order == 4 and classify(G) == "imprimitive"
    with pytest.raises(ValueError):
        imprimitive_rep(MatGroup(F4, [], [(1, 0, 0, 1)]), 4, F4)
    with pytest.raises(ValueError, match="reducible"):
        imprimitive_rep(closure(F7, [diag(F7(2), F7(2))]), 2, F7)


def test_imprimitive_needs_stable_L(F7):
    with pytest.raises(ValueError):
        imprimitive_rep(closure(F7, [diag(F7(2), F7(1))]), 2, F7)


def test_primitive_examples(F3, F5):
    with pytest.raises(ValueError, match="imprimitive"):
        primitive_rep(4, F3)
    G = primitive_rep(12, F5)
    assert G.generators == (standard_subgroups(F5).h ** 2,)
    assert G.order == 12 and classify(G) == "primitive"
    with pytest.raises(ValueError):
        primitive_rep(16, F3)
    for top in ("2", "4"):
        assert classify(primitive_rep(12, F5, top)) == "primitive"


def test_rep_verify_rejections(F4, F7):
    D12 = closure(F7, [diag(F7(3), F7(5)), swap(F7)])
    assert not rep_verify(D12, abelian_shape(12))
    assert rep_verify(D12, with_geo(sylow_shape_of(D12), Geo("imprimitive", 2)))
    x = F4([0, 1])
    A5 = closure(F4, [Mat.of(F4, [[1, 1], [0, 1]]), Mat.of(F4, [[1, x], [0, 1]]), Mat.of(F4, [[1, 0], [1, 1]])])
    for shape in reducible_shapes(60):
        assert not rep_verify(A5, shape)


def _class_id(lat, G):
    return lat.class_of(gl_context(G.field).indices(G))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_constructions_cover_every_irreducible_class(q):
    """Each oracle imprimitive/primitive class is the class of exactly one construction."""
    F = field_of_order(q)
    lat = subgroup_lattice(F, 60)
    for m in sorted({c.order for c in lat.classes}):
        if m % F.p:
            reps, _ = representatives_for(m, F)
            irreducible = [r for r in reps if r.spec.shape.geo.kind != "reducible"]
            built = [_class_id(lat, r.group) for r in irreducible]
            assert len(set(built)) == len(built)
            expected = {i for i, c in enumerate(lat.classes)
                        if c.order == m and classify(lat.representative(i)) != "reducible"}
            assert set(built) == expected, m
            # and the class is the only one of that isomorphism type
            for r, cid in zip(irreducible, built):
                for other in expected - {cid}:
                    assert not is_isomorphic(r.group, lat.representative(other))


def test_representatives_json(F7):
    reps, warnings = representatives_for(6, F7)
    data = [r.to_json() for r in reps]
    assert {d["order"] for d in data} == {6}
    assert sum(d["geo"] == "reducible" for d in data) == 7
    assert all(set(w) >= {"construction", "reason"} for w in warnings)
