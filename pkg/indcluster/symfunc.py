"""SymFuncP class."""
import logging
import math
import threading
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from .exceptions import SizeMismatchError
from .partition import Partition, partitions_of

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class SymFuncP(object):
    """
    SymFuncP object represents a symmetric function over the rationals in the power sum basis,
    sum(c_mu * p_mu) with p_mu = p_{mu_1} p_{mu_2} ...
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Optional[Mapping[Partition, Number]] = None) -> None:
        """
        :param coeffs: Coefficient of p_mu per partition mu. Zero coefficients are dropped.
        """
        clean = {}
        for mu, c in (coeffs or {}).items():
            if not isinstance(mu, Partition):
                raise ValueError(f'Power sum basis is indexed by partitions, got {mu!r}')
            c = Fraction(c)
            if c:
                clean[mu] = c

        self._coeffs = clean

    @classmethod
    def zero(cls) -> 'SymFuncP':
        return cls()

    @classmethod
    def constant(cls, value: Number) -> 'SymFuncP':
        return cls({Partition(): value})

    @classmethod
    def one(cls) -> 'SymFuncP':
        return cls.constant(1)

    @classmethod
    def p(cls, mu: Union[Partition, Sequence[int]]) -> 'SymFuncP':
        """The power sum p_mu."""
        return cls({mu if isinstance(mu, Partition) else Partition(sorted(mu, reverse=True)): 1})

    @property
    def coeffs(self) -> Dict[Partition, Fraction]:
        return dict(self._coeffs)

    def coeff(self, mu: Partition) -> Fraction:
        return self._coeffs.get(mu, Fraction(0))

    def items(self) -> Iterator[Tuple[Partition, Fraction]]:
        return iter(sorted(self._coeffs.items(), key=lambda item: (item[0].size, item[0]), reverse=True))

    def degrees(self) -> List[int]:
        return sorted({mu.size for mu in self._coeffs})

    def homogeneous_part(self, degree: int) -> 'SymFuncP':
        return SymFuncP({mu: c for mu, c in self._coeffs.items() if mu.size == degree})

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    #
    # Arithmetic
    #

    @staticmethod
    def _coerce(other) -> Optional['SymFuncP']:
        if isinstance(other, SymFuncP):
            return other
        if isinstance(other, (int, Fraction)):
            return SymFuncP.constant(other)
        return None

    def __add__(self, other) -> 'SymFuncP':
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        total = dict(self._coeffs)
        for mu, c in other._coeffs.items():
            total[mu] = total.get(mu, 0) + c

        return SymFuncP(total)

    __radd__ = __add__

    def __neg__(self) -> 'SymFuncP':
        return SymFuncP({mu: -c for mu, c in self._coeffs.items()})

    def __sub__(self, other) -> 'SymFuncP':
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        return self + (-other)

    def __rsub__(self, other) -> 'SymFuncP':
        return (-self) + other

    def __mul__(self, other) -> 'SymFuncP':
        if isinstance(other, (int, Fraction)):
            return SymFuncP({mu: c * other for mu, c in self._coeffs.items()})
        if not isinstance(other, SymFuncP):
            return NotImplemented

        total: Dict[Partition, Fraction] = {}
        for mu, a in self._coeffs.items():
            for nu, b in other._coeffs.items():
                key = Partition(sorted(mu.parts + nu.parts, reverse=True))
                total[key] = total.get(key, 0) + a * b

        return SymFuncP(total)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> 'SymFuncP':
        if not isinstance(other, (int, Fraction)):
            return NotImplemented

        return self * (Fraction(1) / Fraction(other))

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        return f'SymFuncP({self.to_text()})'

    #
    # Conversions
    #

    def to_text(self) -> str:
        """Readable form such as ``1/2*p[1,1] + 1/2*p[2]``."""
        if not self._coeffs:
            return '0'

        parts = []
        for mu, c in sorted(self._coeffs.items(), key=lambda item: (item[0].size, item[0].parts)):
            body = 'p[' + ','.join(map(str, mu.parts)) + ']' if mu else ''
            value = abs(c)
            if not body:
                text = str(value)
            elif value == 1:
                text = body
            else:
                text = f'{value}*{body}'

            if not parts:
                parts.append(text if c > 0 else f'-{text}')
            else:
                parts.append(f'+ {text}' if c > 0 else f'- {text}')

        return ' '.join(parts)

    def to_sympy(self, symbols: Sequence[sympy.Symbol]) -> sympy.Expr:
        """Polynomial in p_1, p_2, ... given as `symbols` (symbols[k - 1] stands for p_k)."""
        expr = sympy.Integer(0)
        for mu, c in self._coeffs.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for part in mu:
                term *= symbols[part - 1]
            expr += term

        return expr

    @classmethod
    def from_sympy(cls, expr: sympy.Expr, symbols: Sequence[sympy.Symbol]) -> 'SymFuncP':
        poly = sympy.Poly(sympy.expand(expr), *symbols)
        coeffs = {}
        for exps, c in poly.terms():
            parts = []
            for k, e in enumerate(exps, start=1):
                parts.extend([k] * e)
            c = sympy.Rational(c)
            coeffs[Partition(sorted(parts, reverse=True))] = Fraction(int(c.p), int(c.q))

        return cls(coeffs)


def power_sum_symbols(count: int) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(f'p{k}') for k in range(1, count + 1))


def z_mu(mu: Partition) -> int:
    """
    Order of the centralizer of a permutation of cycle type mu: prod_i i^{m_i} * m_i!.
    """
    total = 1
    for part, multiplicity in Counter(mu.parts).items():
        total *= part ** multiplicity * math.factorial(multiplicity)

    return total


#
# Characters
#

def _beta_set(partition: Partition) -> Tuple[int, ...]:
    length = len(partition)
    return tuple(p + length - i for i, p in enumerate(partition.parts, start=1))


def _from_beta_set(beta: Iterable[int]) -> Partition:
    ordered = sorted(beta, reverse=True)
    length = len(ordered)
    return Partition(b - (length - i) for i, b in enumerate(ordered, start=1))


class CharacterCache(object):
    """
    Memoized irreducible characters of the symmetric groups, by the Murnaghan-Nakayama rule.

    Safe to share between threads; entries are only ever added.
    """

    def __init__(self) -> None:
        self._memo: Dict[Tuple[Partition, Partition], int] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._memo)

    def character(self, lam: Partition, mu: Partition) -> int:
        """
        The value chi^lam(mu) of the irreducible character lam on permutations of cycle type mu.

        :raises SizeMismatchError: if |lam| != |mu|.
        """
        if lam.size != mu.size:
            raise SizeMismatchError(f'Character {lam} is not defined on the class {mu}')

        key = (lam, mu)
        found = self._memo.get(key)
        if found is not None:
            return found

        value = self._compute(lam, mu)
        with self._lock:
            self._memo[key] = value

        return value

    def _compute(self, lam: Partition, mu: Partition) -> int:
        if not mu:
            return 1

        hook = mu[0]
        rest = Partition(mu.parts[1:])
        beta = _beta_set(lam)
        members = set(beta)

        value = 0
        for b in beta:
            target = b - hook
            if target < 0 or target in members:
                continue
            # rim hook removal: sign from the beads jumped over
            height = sum(1 for c in beta if target < c < b)
            smaller = _from_beta_set((members - {b}) | {target})
            value += (-1) ** height * self.character(smaller, rest)

        return value


_characters = CharacterCache()


def character(lam: Partition, mu: Partition, cache: Optional[CharacterCache] = None) -> int:
    return (cache or _characters).character(lam, mu)


#
# Expansions
#

def schur_in_p(lam: Partition, cache: Optional[CharacterCache] = None) -> SymFuncP:
    """
    Power sum expansion s_lam = sum over mu of chi^lam(mu) / z_mu * p_mu.
    """
    return SymFuncP({mu: Fraction(character(lam, mu, cache), z_mu(mu)) for mu in partitions_of(lam.size)})


def hall_product(f: SymFuncP, g: SymFuncP) -> Fraction:
    """
    The Hall inner product, with <p_lam, p_mu> = z_lam if lam == mu and 0 otherwise.
    """
    if len(g.coeffs) < len(f.coeffs):
        f, g = g, f

    total = Fraction(0)
    for mu, c in f.coeffs.items():
        other = g.coeff(mu)
        if other:
            total += c * other * z_mu(mu)

    return total


_h_memo: Dict[int, SymFuncP] = {0: SymFuncP.one()}
_h_lock = threading.Lock()


def h_in_p(n: int) -> SymFuncP:
    """
    Complete homogeneous function h_n in power sums, by Newton's identity n h_n = sum_k p_k h_{n-k}.
    """
    if n < 0:
        return SymFuncP.zero()

    found = _h_memo.get(n)
    if found is not None:
        return found

    total = SymFuncP.zero()
    for k in range(1, n + 1):
        total = total + SymFuncP.p((k,)) * h_in_p(n - k)
    value = total / n

    with _h_lock:
        _h_memo[n] = value

    return value


def jacobi_trudi(lam: Partition) -> SymFuncP:
    """
    s_lam as det(h_{lam_i - i + j}), expanded into power sums.
    """
    if not lam:
        return SymFuncP.one()

    symbols = power_sum_symbols(lam.size)
    length = len(lam)
    matrix = sympy.Matrix(length, length,
                          lambda i, j: h_in_p(int(lam[i] - i + j)).to_sympy(symbols))
    return SymFuncP.from_sympy(matrix.det(method='berkowitz'), symbols)
