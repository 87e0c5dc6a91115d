#!/usr/bin/env python3

"""Tests for LaurentPoly object"""

import pytest
from fractions import Fraction
from indcluster import LaurentPoly, VariableRegistry
from indcluster.exceptions import NotDivisibleError, DivisionByZeroError, ZeroToNegativePowerError, \
    UnknownVariableError


#
# Registry
#

def test_registry_register_idempotent(registry_instance):
    a = registry_instance.register('a')
    b = registry_instance.register('b')

    assert registry_instance.register('a') == a
    assert a != b
    assert len(registry_instance) == 2
    assert registry_instance.name(b) == 'b'
    assert 'a' in registry_instance


def test_registry_unknown(registry_instance):
    with pytest.raises(UnknownVariableError):
        registry_instance.id('nope')

    with pytest.raises(UnknownVariableError):
        registry_instance.name(42)


def test_registry_empty_name(registry_instance):
    with pytest.raises(ValueError):
        registry_instance.register('')


#
# Arithmetic
#

def test_add_mul(xyz):
    x, y, _ = xyz

    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert (x - x).is_zero
    assert x + 0 == x
    assert 2 * x == x + x


def test_constant_equality():
    assert LaurentPoly.constant(3) == 3
    assert LaurentPoly.constant(Fraction(1, 2)) * 2 == LaurentPoly.one()
    assert LaurentPoly.constant(0) == LaurentPoly.zero()


def test_negative_power(xyz):
    x, y, _ = xyz

    assert (2 * x * y) ** -1 * x * y == Fraction(1, 2)

    with pytest.raises(NotDivisibleError):
        (x + y) ** -1


def test_hash_consistent(xyz):
    x, y, _ = xyz

    assert hash(x * y + 1) == hash(y * x + 1)
    assert len({x + y, y + x}) == 1


#
# Exact division
#

def test_div_exact_polynomial(xyz):
    x, y, _ = xyz

    assert (x ** 2 - y ** 2).div_exact(x + y) == x - y


def test_div_exact_monomial(xyz):
    x, y, _ = xyz

    assert (x * y + x).div_exact(x) == y + 1


def test_div_exact_laurent(xyz):
    x, y, _ = xyz

    assert (x * y ** -1 + 1).div_exact(x + y) == y ** -1


def test_div_exact_zero_numerator(xyz):
    x, _, _ = xyz

    assert LaurentPoly.zero().div_exact(x + 1).is_zero


def test_div_exact_not_divisible(xyz):
    x, y, _ = xyz

    with pytest.raises(NotDivisibleError):
        (x + 1).div_exact(y + 1)


def test_div_exact_by_zero(xyz):
    x, _, _ = xyz

    with pytest.raises(DivisionByZeroError):
        x.div_exact(LaurentPoly.zero())

    with pytest.raises(ZeroDivisionError):
        x.div_exact(0)


#
# Substitution and evaluation
#

def test_substitute(registry_instance, xyz):
    x, y, _ = xyz

    assert (x * y).substitute({registry_instance.id('x'): y + 1}) == y ** 2 + y
    assert (x * y).substitute({registry_instance.id('x'): 3}) == 3 * y


def test_substitute_inverse_of_binomial(registry_instance, xyz):
    x, y, _ = xyz

    with pytest.raises(NotDivisibleError):
        (x ** -1).substitute({registry_instance.id('x'): y + 1})


def test_evaluate(registry_instance, xyz):
    x, y, _ = xyz
    values = {registry_instance.id('x'): 2, registry_instance.id('y'): 4}

    assert (x ** 2 * y ** -1 + 3).evaluate(values) == 4
    assert (x * y ** -1).evaluate(values) == Fraction(1, 2)


def test_evaluate_zero_to_negative_power(registry_instance, xyz):
    x, _, _ = xyz

    with pytest.raises(ZeroToNegativePowerError):
        (x ** -1).evaluate({registry_instance.id('x'): 0})


def test_evaluate_missing_value(xyz):
    x, _, _ = xyz

    with pytest.raises(UnknownVariableError):
        x.evaluate({})


def test_coefficient_positive(xyz):
    x, y, _ = xyz

    assert (x + 2 * y * x ** -1).is_coefficient_positive()
    assert not (x - y).is_coefficient_positive()


#
# Text and JSON
#

def test_to_text(registry_instance, xyz):
    x, y, _ = xyz

    assert (x + 1).to_text(registry_instance) == 'x + 1'
    assert (-2 * x * y ** -1).to_text(registry_instance) == '-2*x*y^-1'
    assert LaurentPoly.zero().to_text(registry_instance) == '0'


def test_terms_in_graded_lex_order(registry_instance):
    x1, x2, x3 = (LaurentPoly.symbol(name, registry_instance) for name in ('x1', 'x2', 'x3'))
    p = x2 ** 3 + x1 * x3 ** 2 + x3 + x1 ** 2 * x2

    assert p.to_text(registry_instance) == 'x1^2*x2 + x1*x3^2 + x2^3 + x3'
    assert [item['exps'] for item in p.to_json(registry_instance)][1:3] == [{'x1': 1, 'x3': 2}, {'x2': 3}]


def test_to_fraction_text(registry_instance, xyz):
    x, y, z = xyz

    assert ((x * y + z) * y ** -1).to_fraction_text(registry_instance) == '(x*y + z) / y'
    assert (x * y).to_fraction_text(registry_instance) == 'x*y'


def test_denominator(xyz):
    x, y, z = xyz

    assert ((x * y + z) * y ** -2).denominator() == y ** 2


def test_json_round_trip(registry_instance, xyz):
    x, y, z = xyz
    p = Fraction(3, 2) * x * y ** -1 - z + 7

    assert LaurentPoly.from_json(p.to_json(registry_instance), registry_instance) == p


def test_from_json_bad_coefficient(registry_instance):
    with pytest.raises(ValueError):
        LaurentPoly.from_json([{'coeff': 'abc', 'exps': {'x': 1}}], registry_instance)


def test_fingerprint_ignores_allocation_order():
    first, second = VariableRegistry(), VariableRegistry()
    first.register('x')
    second.register('y')

    p = LaurentPoly.symbol('x', first) + 2 * LaurentPoly.symbol('y', first)
    q = LaurentPoly.symbol('x', second) + 2 * LaurentPoly.symbol('y', second)

    assert p.fingerprint(first) == q.fingerprint(second)
