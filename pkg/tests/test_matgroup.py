from __future__ import annotations

import random

import pytest

from cubefree_gl2.finite_field import field_of_order
from cubefree_gl2.matgroup import (
    Mat,
    MatGroup,
    closure,
    conj,
    diag,
    gl_order,
    identity,
    is_conjugate_subgroup,
    iter_gl,
    standard_subgroups,
    swap,
)

SINGER_QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49, 64]


def test_gl_order():
    assert gl_order(3) == 48
    assert gl_order(11) == 13200
    assert sum(1 for _ in iter_gl(field_of_order(4))) == gl_order(4)


def test_matrix_orders(F3, F5):
    assert identity(F5).order() == 1
    assert diag(F5(2), F5(1)).order() == 4
    assert swap(F3).order() == 2


def test_diag(F5, F7):
    assert diag(F5(1), F5(1)) == identity(F5)
    assert diag(F5(4), F5(4)) == Mat.of(F5, [[4, 0], [0, 4]])
    assert diag(F7(2), F7(4)).order() == 3
    with pytest.raises(ValueError):
        diag(F5(0), F5(1))


def test_singular_rejected(F5):
    with pytest.raises(ValueError):
        Mat.of(F5, [[1, 2], [2, 4]])


def test_closure(F3, F5):
    assert closure(F5, []).order == 1
    D8 = closure(F5, [diag(F5(4), F5(1)), swap(F5)])
    assert D8.order == 8
    assert diag(F5(1), F5(4)) in D8 and diag(F5(4), F5(4)) in D8
    assert closure(F3, [swap(F3)]).order == 2


def test_closure_ignores_generator_order(F7):
    gens = [diag(F7(3), F7(5)), swap(F7), diag(F7(2), F7(2))]
    G = closure(F7, gens)
    assert closure(F7, gens[::-1]) == G
    assert closure(F7, gens[1:] + gens[:1]).codes == G.codes


def test_group_invariants(F7):
    G = closure(F7, [diag(F7(3), F7(5)), swap(F7)])
    els = set(G.codes)
    assert (1, 0, 0, 1) in els
    assert all((x * y).codes in els for x in G.elements for y in G.elements)
    assert all(x.inverse().codes in els for x in G.elements)
    assert list(G.codes) == sorted(G.codes)
    assert all(g in G for g in G.generators)


def test_swap_conjugation(F7):
    a = swap(F7)
    for d1 in range(1, 7):
        for d2 in range(1, 7):
            assert conj(a, diag(F7(d1), F7(d2))) == diag(F7(d2), F7(d1))


@pytest.mark.parametrize("q", SINGER_QS)
def test_singer_normaliser(q):
    F = field_of_order(q)
    S = standard_subgroups(F)
    h, b = S.h, S.b
    assert h.order() == q * q - 1
    assert b * h * b.inverse() == h**q
    assert b * b == identity(F)
    # h^(q+1) generates the scalars
    z = h ** (q + 1)
    assert z.is_scalar() and z.order() == q - 1


def test_singer_small_cases(F3, F4):
    S3 = standard_subgroups(F3)
    assert S3.h.order() == 8
    assert S3.b * S3.h * S3.b.inverse() == S3.h**3
    S4 = standard_subgroups(F4)
    assert S4.S.group().order == 15


def test_descriptor_orders(F5):
    S = standard_subgroups(F5)
    assert [S.D.group().order, S.M.group().order, S.S.group().order, S.N.group().order] == [16, 32, 24, 48]


def test_conjugate_subgroup_witnesses(F5):
    S = standard_subgroups(F5)
    M = list(S.M.group().elements)
    H = closure(F5, [diag(F5(4), F5(1))])
    K = closure(F5, [diag(F5(1), F5(4))])
    assert is_conjugate_subgroup(M, H, H) == identity(F5)
    g = is_conjugate_subgroup(M, H, K)
    assert g is not None and H.conjugate(g) == K
    central = closure(F5, [diag(F5(4), F5(4))])
    assert is_conjugate_subgroup(iter_gl(F5), central, H) is None


def test_conjugate_subgroup_random(F7):
    rng = random.Random(7)
    G = list(iter_gl(F7))
    H = closure(F7, [diag(F7(2), F7(4)), swap(F7)])
    for _ in range(5):
        g = rng.choice(G)
        K = H.conjugate(g)
        w = is_conjugate_subgroup(G, H, K)
        assert w is not None and H.conjugate(w) == K


def test_iter_gl_cap():
    with pytest.raises(ValueError):
        next(iter_gl(field_of_order(16)))


def test_json_roundtrip(F9):
    x = Mat.of(F9, [[F9([0, 1]), 1], [0, 2]])
    assert Mat.from_json(F9, x.to_json()) == x
    assert x.to_json() == [[[0, 1], [1, 0]], [[0, 0], [2, 0]]]
    G = MatGroup(F9, [x], closure(F9, [x]).codes)
    assert G.to_json()["order"] == G.order
