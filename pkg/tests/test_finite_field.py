from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubefree_gl2.finite_field import (
    MAX_Q,
    add,
    element_of_order,
    element_order,
    euler_phi,
    field_of_order,
    inv,
    make_field,
    mul,
    neg,
    power,
    primitive_element,
)

PRIME_POWERS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (3, 3), (2, 4), (7, 2)]


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _brute_smallest_irreducible(p, k):
    """Scan monic degree-k polynomials in the required order; reject any product of two monics."""
    reducible = set()
    for d in range(1, k):
        for low in product(range(p), repeat=d):
            for low2 in product(range(p), repeat=k - d):
                reducible.add(tuple(_poly_mul(list(low) + [1], list(low2) + [1], p)))
    # coefficient tuples compared from the highest degree down
    for high_first in product(range(p), repeat=k):
        coeffs = tuple(reversed(high_first)) + (1,)
        if coeffs not in reducible:
            return coeffs


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3), (2, 4)])
def test_modulus_is_smallest_irreducible(p, k):
    assert make_field(p, k).modulus == _brute_smallest_irreducible(p, k)


def test_documented_moduli():
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert make_field(3, 1).q == 3


def test_make_field_is_deterministic():
    assert make_field(5, 2).modulus == make_field(5, 2).modulus
    assert make_field(5, 2) == field_of_order(25)


@pytest.mark.parametrize("p,k", [(4, 1), (1, 1), (3, 0), (6, 2)])
def test_make_field_rejects(p, k):
    with pytest.raises(ValueError):
        make_field(p, k)


def test_field_size_cap():
    with pytest.raises(ValueError):
        make_field(2, 21)
    assert MAX_Q == 1 << 20


def test_small_arithmetic(F5, F9):
    assert inv(F5(2)) == F5(3)
    assert power(F5(2), 4) == F5(1)
    x = F9([0, 1])
    assert mul(x, x) == F9(2)
    assert power(F5(2), -1) == F5(3)
    assert neg(F5(1)) == F5(4)
    assert add(F5(3), F5(4)) == F5(2)


def test_zero_inverse_and_mixed_fields(F5, F7):
    with pytest.raises(ZeroDivisionError):
        inv(F5(0))
    with pytest.raises(ValueError):
        add(F5(1), F7(1))


def test_element_orders(F5, F7):
    assert element_order(F5(1)) == 1
    assert element_order(F5(2)) == 4
    assert element_order(F7(2)) == 3
    with pytest.raises(ValueError):
        element_order(F5(0))


def test_element_of_order(F4, F5, F7):
    assert element_of_order(F5, 2) == F5(4)
    assert primitive_element(F7) == F7(3)
    assert element_of_order(F7, 3) == F7(2)
    assert element_of_order(F4, 3) == F4([0, 1])
    with pytest.raises(ValueError):
        element_of_order(F7, 4)


def test_euler_phi():
    assert [euler_phi(n) for n in (1, 9, 12)] == [1, 6, 4]


@st.composite
def field_and_units(draw, n=2):
    p, k = draw(st.sampled_from(PRIME_POWERS))
    F = make_field(p, k)
    codes = [draw(st.integers(1, F.q - 1)) for _ in range(n)]
    return F, [F.from_code(c) for c in codes]


@settings(max_examples=200, deadline=None)
@given(field_and_units(1))
def test_lagrange(data):
    F, (x,) = data
    assert x ** (F.q - 1) == F.one
    assert (F.q - 1) % element_order(x) == 0


@settings(max_examples=200, deadline=None)
@given(field_and_units(3))
def test_field_axioms(data):
    F, (x, y, z) = data
    assert inv(mul(x, y)) == mul(inv(y), inv(x))
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert add(x, neg(x)) == F.zero
    # Frobenius is additive
    assert (x + y) ** F.p == x ** F.p + y ** F.p


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PRIME_POWERS), st.data())
def test_element_of_order_has_that_order(pk, data):
    F = make_field(*pk)
    divisors = [d for d in range(1, F.q) if (F.q - 1) % d == 0]
    n = data.draw(st.sampled_from(divisors))
    assert element_order(element_of_order(F, n)) == n


def test_canonical_primitive_is_smallest():
    for p, k in PRIME_POWERS:
        F = make_field(p, k)
        g = primitive_element(F)
        assert element_order(g) == F.q - 1
        assert all(element_order(F.from_code(c)) < F.q - 1 for c in range(1, g.code))
