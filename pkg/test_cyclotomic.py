#!/usr/bin/env python3
"""
Tests for Z[zeta_m] arithmetic and the finite coefficient rings
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cyclotomic import (CycElem, LiteralRing, PrimeField, ZX, coefficient_ring, cyclotomic_polynomial,
                        enumerate_ring, euler_phi, format_cyc, l_of, make_ring_spec, reduce_mod_q,
                        to_number_field)
from errors import (IncompatibleRingError, InvalidOrderError, InvalidParameterError, NoRootError)


@pytest.mark.parametrize('m, expected', [(1, 1), (2, 1), (3, 3), (4, 2), (6, 3), (8, 4), (9, 9)])
def test_l_of(m, expected):
    assert l_of(m) == expected


@pytest.mark.parametrize('m', [0, -3, 2.5])
def test_l_of_rejects_bad_order(m):
    with pytest.raises(InvalidOrderError):
        l_of(m)


def test_root_power_folds_even_orders():
    assert CycElem.root_power(4, 1).coords == (0, 1)
    assert CycElem.root_power(4, 2).coords == (-1, 0)
    assert CycElem.root_power(4, 3).coords == (0, -1)
    assert CycElem.root_power(4, 4).coords == (1, 0)
    assert CycElem.root_power(3, 3).coords == (1, 0, 0)
    assert CycElem.root_power(3, -1).coords == (0, 0, 1)


def test_multiplication_uses_exponent_folding():
    w3 = CycElem.root_power(3, 1)
    assert (w3 * w3 * w3).coords == (1, 0, 0)
    i = CycElem.root_power(4, 1)
    assert (i * i).coords == (-1, 0)
    a = CycElem(6, (1, 2, 0))
    b = CycElem(6, (0, 0, 1))
    # (1 + 2w) w^2 = w^2 + 2w^3 = w^2 - 2
    assert (a * b).coords == (-2, 0, 1)


def test_mixed_orders_are_rejected():
    with pytest.raises(IncompatibleRingError):
        CycElem.one(3) + CycElem.one(4)
    with pytest.raises(IncompatibleRingError):
        CycElem(4, (1, 2, 3))


def test_format_cyc():
    assert format_cyc(CycElem(3, (1, 0, 2))) == '1 + 2*w^2'
    assert format_cyc(CycElem(3, (0, -1, 0))) == '-w'
    assert format_cyc(CycElem(4, (-3, 1))) == '-3 + w'
    assert format_cyc(CycElem.zero(5)) == '0'
    assert str(CycElem.integer(1, 7)) == '7'


def test_cyclotomic_polynomials():
    x = ZX.gens[0]
    assert cyclotomic_polynomial(1) == x - 1
    assert cyclotomic_polynomial(3) == x**2 + x + 1
    assert cyclotomic_polynomial(4) == x**2 + 1
    assert cyclotomic_polynomial(6) == x**2 - x + 1
    assert cyclotomic_polynomial(12).degree() == euler_phi(12) == 4


def test_number_field_zero_test_differs_from_literal_test():
    s = CycElem(3, (1, 1, 1))
    assert not s.is_zero
    assert to_number_field(s).is_zero


def test_is_real():
    assert not to_number_field(CycElem.root_power(4, 1)).is_real
    assert to_number_field(CycElem.root_power(4, 2)).is_real
    # w + w^2 = -1 for m = 3
    assert to_number_field(CycElem(3, (0, 1, 1))).is_real
    assert to_number_field(CycElem(3, (0, 1, 0))).conjugate() == to_number_field(CycElem(3, (0, 0, 1)))


def test_reduce_mod_q():
    assert reduce_mod_q(CycElem(3, (-1, 8, 14)), 7).coords == (6, 1, 0)


def test_prime_field_default_root():
    spec = PrimeField(3, 7)
    assert spec.zeta == 2
    assert spec.size == 7
    assert PrimeField(1, 2).zeta == 1
    assert PrimeField(4, 5).zeta in (2, 3)


def test_prime_field_preconditions():
    with pytest.raises(NoRootError):
        PrimeField(3, 5)
    with pytest.raises(NoRootError):
        PrimeField(3, 7, zeta=1)
    assert PrimeField(3, 7, zeta=4).zeta == 4
    with pytest.raises(InvalidParameterError):
        PrimeField(1, 4)


def test_literal_ring_size_and_labels():
    spec = LiteralRing(3, 7)
    assert spec.width == 3
    assert spec.size == 343
    assert LiteralRing(4, 3).size == 9
    assert spec.label() == 'paper(m=3, q=7)'
    assert make_ring_spec('paper', 3, 7) == spec
    assert make_ring_spec('literal', 3, 7) == spec
    with pytest.raises(InvalidParameterError):
        make_ring_spec('complex', 3, 7)


def test_coefficient_ring_indexing_and_embedding():
    ring = coefficient_ring(LiteralRing(4, 3))
    elements = list(enumerate_ring(LiteralRing(4, 3)))
    assert len(set(elements)) == 9
    assert all(ring.index(ring.element(i)) == i for i in range(ring.size))
    # w * w = -1 = 2 mod 3
    assert ring.mul((0, 1), (0, 1)) == (2, 0)

    field = coefficient_ring(PrimeField(3, 7))
    assert field.embed(CycElem.root_power(3, 1)) == (2,)
    assert field.embed(CycElem.root_power(3, 2)) == (4,)
    assert field.embed(CycElem(3, (1, 1, 1))) == (0,)
    assert field.roots_of_unity == [(1,), (2,), (4,)]


def test_tables_match_ring_operations():
    ring = coefficient_ring(LiteralRing(3, 2))
    for a in range(ring.size):
        for b in range(ring.size):
            x, y = ring.element(a), ring.element(b)
            assert ring.element(ring.add_table[a][b]) == ring.add(x, y)
            assert ring.element(ring.mul_table[a][b]) == ring.mul(x, y)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__]))
