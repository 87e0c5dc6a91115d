"""LaurentPoly class."""
import json
import hashlib
import logging
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

import sympy
from sympy.polys.polyerrors import ExactQuotientFailed

from .exceptions import DivisionByZeroError, NotDivisibleError, ZeroToNegativePowerError, UnknownVariableError
from .registry import VariableRegistry, default_registry

logger = logging.getLogger(__name__)

# Sorted tuple of (VarId, nonzero exponent) pairs
Monomial = Tuple[Tuple[int, int], ...]
Number = Union[int, Fraction]

ONE: Monomial = ()


def monomial(exponents: Union[Mapping[int, int], Iterable[Tuple[int, int]]]) -> Monomial:
    """
    Canonical form of a monomial given as a mapping or as (VarId, exponent) pairs.
    """
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    collected: Dict[int, int] = {}
    for var_id, exp in items:
        collected[var_id] = collected.get(var_id, 0) + exp

    return tuple(sorted((v, e) for v, e in collected.items() if e != 0))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a

    return monomial(a + b)


def monomial_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE

    return tuple((v, e * k) for v, e in a)


def monomial_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def _fraction_text(coeff: Fraction) -> str:
    return f'{coeff.numerator}/{coeff.denominator}'


def _parse_fraction(text: Union[str, int]) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f'Invalid rational coefficient {text!r}')


class LaurentPoly(object):
    """
    Sparse multivariate Laurent polynomial with exact rational coefficients.

    Values are immutable. Variables are VarIds of a :class:`VariableRegistry`,
    the default registry unless stated otherwise.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[Any, Number]] = None) -> None:
        """
        :param terms: Mapping of monomials (canonical tuples or mappings VarId -> exponent) to coefficients.
        """
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = monomial(mono)
            clean[mono] = clean.get(mono, Fraction(0)) + Fraction(coeff)

        self._terms = {m: c for m, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Fraction]) -> 'LaurentPoly':
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    #
    # Constructors
    #

    @classmethod
    def zero(cls) -> 'LaurentPoly':
        return cls._wrap({})

    @classmethod
    def one(cls) -> 'LaurentPoly':
        return cls._wrap({ONE: Fraction(1)})

    @classmethod
    def constant(cls, value: Number) -> 'LaurentPoly':
        value = Fraction(value)
        return cls._wrap({ONE: value} if value else {})

    @classmethod
    def variable(cls, var_id: int, exponent: int = 1) -> 'LaurentPoly':
        return cls._wrap({monomial([(var_id, exponent)]): Fraction(1)})

    @classmethod
    def term(cls, mono: Monomial, coeff: Number = 1) -> 'LaurentPoly':
        coeff = Fraction(coeff)
        return cls._wrap({monomial(mono): coeff} if coeff else {})

    @classmethod
    def symbol(cls, name: str, registry: Optional[VariableRegistry] = None) -> 'LaurentPoly':
        """
        The variable called `name`, registering it if needed.
        """
        registry = registry or default_registry
        return cls.variable(registry.register(name))

    #
    # Inspection
    #

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    @property
    def is_monomial(self) -> bool:
        """True for a single nonzero term, i.e. a unit of the Laurent ring."""
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError('Not a constant')

        return self._terms.get(ONE, Fraction(0))

    def single_term(self) -> Tuple[Monomial, Fraction]:
        if not self.is_monomial:
            raise ValueError('Not a single term')

        return next(iter(self._terms.items()))

    def variables(self) -> FrozenSet[int]:
        return frozenset(v for mono in self._terms for v, _ in mono)

    def min_exponents(self) -> Dict[int, int]:
        """Per variable, the smallest exponent over all terms (absent counts as 0)."""
        result = {}
        for var_id in self.variables():
            result[var_id] = min(dict(mono).get(var_id, 0) for mono in self._terms)

        return result

    def denominator(self) -> 'LaurentPoly':
        """The monomial that clears all negative exponents."""
        return LaurentPoly.term(tuple((v, -e) for v, e in self.min_exponents().items() if e < 0))

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in canonical order: graded lexicographic on VarId, largest first."""
        var_ids = sorted(self.variables())

        def key(item):
            mono = dict(item[0])
            return monomial_degree(item[0]), tuple(mono.get(v, 0) for v in var_ids)

        return sorted(self._terms.items(), key=key, reverse=True)

    #
    # Arithmetic
    #

    @staticmethod
    def _coerce(other) -> Optional['LaurentPoly']:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)

        return None

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly._wrap({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = result.get(mono, 0) + coeff
            if total:
                result[mono] = total
            else:
                result.pop(mono, None)

        return LaurentPoly._wrap(result)

    __radd__ = __add__

    def __sub__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        return self + (-other)

    def __rsub__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        return other + (-self)

    def __mul__(self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = monomial_mul(m1, m2)
                total = result.get(mono, 0) + c1 * c2
                if total:
                    result[mono] = total
                else:
                    result.pop(mono, None)

        return LaurentPoly._wrap(result)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'LaurentPoly':
        if k < 0:
            if not self.is_monomial:
                raise NotDivisibleError(f'Cannot invert the non-monomial {self.to_text()}')

            mono, coeff = self.single_term()
            return LaurentPoly.term(monomial_pow(mono, k), Fraction(1) / coeff ** -k)

        result, base = LaurentPoly.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1

        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))

        return self._hash

    def __repr__(self) -> str:
        return f'LaurentPoly({self.to_text()!r})'

    def div_exact(self, other) -> 'LaurentPoly':
        """
        Exact quotient in the Laurent ring.

        Both operands are shifted by a monomial into polynomials not divisible by any variable,
        after which divisibility is decided by exact polynomial division over QQ.

        :param other: The divisor.
        :return: q with q * other == self.
        """
        other = self._coerce(other)
        if other is None:
            raise TypeError(f'Cannot divide by {other!r}')

        if other.is_zero:
            raise DivisionByZeroError('Division by the zero polynomial')

        if self.is_zero:
            return LaurentPoly.zero()

        if other.is_monomial:
            return self * other ** -1

        a_shift = self.min_exponents()
        b_shift = other.min_exponents()
        a_poly = self * LaurentPoly.term(monomial_pow(monomial(a_shift), -1))
        b_poly = other * LaurentPoly.term(monomial_pow(monomial(b_shift), -1))

        var_ids = sorted(a_poly.variables() | b_poly.variables())
        gens = sympy.symbols(f'x0:{len(var_ids)}')
        pa = sympy.Poly.from_dict(a_poly._dense(var_ids), *gens, domain=sympy.QQ)
        pb = sympy.Poly.from_dict(b_poly._dense(var_ids), *gens, domain=sympy.QQ)

        try:
            pq = pa.exquo(pb)
        except ExactQuotientFailed:
            raise NotDivisibleError(f'{self.to_text()} is not divisible by {other.to_text()}')

        quotient = {}
        for exps, coeff in pq.terms():
            coeff = sympy.Rational(coeff)
            quotient[monomial(zip(var_ids, exps))] = Fraction(int(coeff.p), int(coeff.q))

        shift = monomial_mul(monomial(a_shift), monomial_pow(monomial(b_shift), -1))
        return LaurentPoly(quotient) * LaurentPoly.term(shift)

    def _dense(self, var_ids: List[int]) -> Dict[Tuple[int, ...], sympy.Rational]:
        result = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            result[tuple(exps.get(v, 0) for v in var_ids)] = sympy.Rational(coeff.numerator, coeff.denominator)

        return result

    def substitute(self, mapping: Mapping[int, Union['LaurentPoly', Number]]) -> 'LaurentPoly':
        """
        Image under the ring map sending each mapped variable to the given value.
        Unmapped variables are left alone.

        :raises NotDivisibleError: if a negative power of a non-monomial image is required.
        """
        images = {v: self._coerce(p) for v, p in mapping.items()}
        powers: Dict[Tuple[int, int], LaurentPoly] = {}
        result = LaurentPoly.zero()

        for mono, coeff in self._terms.items():
            value = LaurentPoly.constant(coeff)
            kept = []
            for var_id, exp in mono:
                image = images.get(var_id)
                if image is None:
                    kept.append((var_id, exp))
                    continue

                if (var_id, exp) not in powers:
                    powers[(var_id, exp)] = image ** exp
                value = value * powers[(var_id, exp)]

            result = result + value * LaurentPoly.term(tuple(kept))

        return result

    def evaluate(self, values: Mapping[int, Number]) -> Fraction:
        """
        Exact value at a rational point.

        :raises UnknownVariableError: if a variable has no value.
        :raises ZeroToNegativePowerError: if a variable with a negative exponent is set to 0.
        """
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = coeff
            for var_id, exp in mono:
                try:
                    base = Fraction(values[var_id])
                except KeyError:
                    raise UnknownVariableError(f'No value for variable id {var_id}')

                if base == 0 and exp < 0:
                    raise ZeroToNegativePowerError(f'Variable id {var_id} is 0 but has exponent {exp}')

                value *= base ** exp
            total += value

        return total

    def is_coefficient_positive(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    #
    # Serialization
    #

    def _factor_text(self, mono: Monomial, registry: VariableRegistry) -> str:
        factors = []
        for var_id, exp in mono:
            name = registry.name(var_id)
            factors.append(name if exp == 1 else f'{name}^{exp}')

        return '*'.join(factors)

    def to_text(self, registry: Optional[VariableRegistry] = None) -> str:
        """
        Expanded text form, e.g. ``3*d[2,1]^2*d[]^-1 + 1``.
        """
        registry = registry or default_registry
        if not self._terms:
            return '0'

        parts = []
        for index, (mono, coeff) in enumerate(self.sorted_terms()):
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            factors = self._factor_text(mono, registry)

            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = factors
            else:
                body = f'{magnitude}*{factors}'

            if index == 0:
                parts.append(body if sign == '+' else f'-{body}')
            else:
                parts.append(f'{sign} {body}')

        return ' '.join(parts)

    def to_fraction_text(self, registry: Optional[VariableRegistry] = None) -> str:
        """
        Text form with the monomial denominator pulled out, e.g. ``(d[]*d[2,2] + d[2]*d[1,1]) / d[1]``.
        """
        registry = registry or default_registry
        denominator = self.denominator()
        if denominator == 1:
            return self.to_text(registry)

        numerator = self * denominator
        text = numerator.to_text(registry)
        if len(numerator._terms) > 1:
            text = f'({text})'

        return f'{text} / {denominator.to_text(registry)}'

    def to_json(self, registry: Optional[VariableRegistry] = None) -> List[dict]:
        registry = registry or default_registry
        return [
            {'coeff': _fraction_text(coeff), 'exps': {registry.name(v): e for v, e in mono}}
            for mono, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: List[dict], registry: Optional[VariableRegistry] = None) -> 'LaurentPoly':
        registry = registry or default_registry
        terms: Dict[Monomial, Fraction] = {}
        for item in data:
            mono = monomial((registry.register(name), int(e)) for name, e in item.get('exps', {}).items())
            terms[mono] = terms.get(mono, Fraction(0)) + _parse_fraction(item['coeff'])

        return cls(terms)

    def fingerprint(self, registry: Optional[VariableRegistry] = None) -> str:
        """
        Hex digest of the canonical form, independent of VarId allocation order.
        """
        registry = registry or default_registry
        canonical = sorted(
            (sorted((registry.name(v), e) for v, e in mono), _fraction_text(c)) for mono, c in self._terms.items()
        )
        return hashlib.sha1(json.dumps(canonical).encode('utf-8')).hexdigest()

    def to_sympy(self, symbols: Mapping[int, sympy.Expr]) -> sympy.Expr:
        """
        Symbolic image with each variable replaced by the given sympy expression.
        """
        total = sympy.Integer(0)
        for mono, coeff in self._terms.items():
            value = sympy.Rational(coeff.numerator, coeff.denominator)
            for var_id, exp in mono:
                value *= symbols[var_id] ** exp
            total += value

        return total
