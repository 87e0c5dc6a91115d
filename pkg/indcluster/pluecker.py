"""PlueckerRelation class."""
import logging
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import sympy

from .exceptions import DoesNotFitBoxError
from .partition import FrobeniusForm, Partition, finite_label, parse_partition, partition_from_indices

logger = logging.getLogger(__name__)

Pair = Tuple[Partition, Partition]
Label = Union[Partition, Sequence[int]]


def _pair(a: Partition, b: Partition) -> Pair:
    return (a, b) if a >= b else (b, a)


@dataclass(frozen=True)
class PlueckerRelation(object):
    """
    Quadratic relation sum(coeff * d_lambda * d_mu) = 0 among Plücker variables.

    Terms are kept in canonical order (pairs descending) with the term holding the lexicographically largest
    label positive.
    """
    terms: Tuple[Tuple[int, Pair], ...]

    @classmethod
    def normalized(cls, terms: Sequence[Tuple[int, Pair]]) -> 'PlueckerRelation':
        merged: Dict[Pair, int] = {}
        for coeff, (a, b) in terms:
            pair = _pair(a, b)
            merged[pair] = merged.get(pair, 0) + coeff

        kept = sorted(((c, p) for p, c in merged.items() if c), key=lambda t: t[1], reverse=True)
        if kept:
            largest = max(label for _, pair in kept for label in pair)
            lead = next(c for c, pair in kept if largest in pair)
            if lead < 0:
                kept = [(-c, p) for c, p in kept]

        return cls(tuple(kept))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def labels(self) -> List[Partition]:
        found = []
        for _, pair in self.terms:
            for label in pair:
                if label not in found:
                    found.append(label)

        return found

    def conjugate(self) -> 'PlueckerRelation':
        return PlueckerRelation.normalized([(c, (a.conjugate(), b.conjugate())) for c, (a, b) in self.terms])

    def evaluate(self, value: Callable[[Partition], Any]) -> Any:
        """Value of the left hand side with d_lambda replaced by value(lambda)."""
        total = 0
        for coeff, (a, b) in self.terms:
            total += coeff * value(a) * value(b)

        return total

    def to_text(self) -> str:
        if not self.terms:
            return '0 = 0'

        parts = []
        for index, (coeff, (a, b)) in enumerate(self.terms):
            body = f'{a.name()}*{b.name()}'
            if abs(coeff) != 1:
                body = f'{abs(coeff)}*{body}'
            if index == 0:
                parts.append(body if coeff > 0 else f'-{body}')
            else:
                parts.append(f'+ {body}' if coeff > 0 else f'- {body}')

        return ' '.join(parts) + ' = 0'

    def to_json(self) -> List[Dict[str, Any]]:
        return [{'coeff': c, 'pair': [str(a), str(b)]} for c, (a, b) in self.terms]

    @classmethod
    def from_json(cls, data: List[Dict[str, Any]]) -> 'PlueckerRelation':
        return cls.normalized([(int(t['coeff']), tuple(parse_partition(p) for p in t['pair'])) for t in data])


def _sort_sign(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the sorting permutation (0 on repeats) and the sorted tuple."""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, tuple(sorted(items))

    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign

    return sign, tuple(sorted(items))


def pluecker_relation(m: int, i_part: Sequence[int], j_part: Sequence[int]) -> PlueckerRelation:
    """
    The relation sum_l (-1)^l d_{I, j_l} d_{J - j_l} = 0 for an (m-1)-tuple I and an (m+1)-tuple J,
    written in partition labels.

    :param m: Number of indices of each Plücker coordinate.
    :param i_part: Strictly increasing (m-1)-tuple.
    :param j_part: Strictly increasing (m+1)-tuple.
    :return: The normalized relation; empty when every term vanishes.
    """
    if m < 1:
        raise ValueError('m must be positive')
    if len(i_part) != m - 1 or len(j_part) != m + 1:
        raise ValueError(f'Expected tuples of lengths {m - 1} and {m + 1}')
    for seq in (i_part, j_part):
        if any(seq[k] >= seq[k + 1] for k in range(len(seq) - 1)):
            raise ValueError(f'Index tuple must be strictly increasing: {tuple(seq)}')
        if any(k < -m for k in seq):
            raise ValueError(f'Indices must be at least {-m}: {tuple(seq)}')

    terms = []
    for pos, j in enumerate(j_part):
        sign, left = _sort_sign(tuple(i_part) + (j,))
        if not sign:
            continue

        right = tuple(k for k in j_part if k != j)
        coeff = sign * (-1) ** pos
        terms.append((coeff, (partition_from_indices(left), partition_from_indices(right))))

    return PlueckerRelation.normalized(terms)


def kp_relation() -> PlueckerRelation:
    """d[2,2]*d[] - d[2,1]*d[1] + d[2]*d[1,1] = 0."""
    return pluecker_relation(2, (-2,), (-1, 0, 1))


def hook_relation(a: int, b: int) -> PlueckerRelation:
    """
    d_(a|b) d_(a-1|b-1) = d_() d_(a,a-1|b,b-1) + d_(a-1|b) d_(a|b-1).
    """
    if a < 1 or b < 1:
        raise ValueError('Hook relation needs a, b >= 1')

    def frob(arms, legs) -> Partition:
        return FrobeniusForm(tuple(arms), tuple(legs)).to_partition()

    return PlueckerRelation.normalized([
        (1, (frob([a], [b]), frob([a - 1], [b - 1]))),
        (-1, (Partition(), frob([a, a - 1], [b, b - 1]))),
        (-1, (frob([a - 1], [b]), frob([a], [b - 1]))),
    ])


def diag_relation(k: int) -> PlueckerRelation:
    """
    Exchange relation along the diagonal of the rectangle quiver:
    d_(k^k) d_((k+1)^k,k) = d_((k+1)^k) d_(k^(k+1)) + d_(k^(k-1),k-1) d_((k+1)^(k+1)).

    k = 0 gives the KP relation.
    """
    if k < 0:
        raise ValueError('k must be non-negative')
    if k == 0:
        return kp_relation()

    square = Partition.rectangle(k, k)
    return PlueckerRelation.normalized([
        (1, (square, Partition((k + 1,) * k + (k,)))),
        (-1, (Partition.rectangle(k, k + 1), Partition.rectangle(k + 1, k))),
        (-1, (Partition((k,) * (k - 1) + (k - 1,)), Partition.rectangle(k + 1, k + 1))),
    ])


#
# Minors
#

def _entry(value: Any) -> sympy.Expr:
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return sympy.Rational(value.numerator, value.denominator)

    return sympy.sympify(value)


class MinorsOracle(object):
    """
    Maximal minors of an m x (m + n) matrix. The label with index tuple (l_1, ..., l_m) reads columns l_i + m.

    Entries may be rationals or sympy expressions (symbolic mode).
    """

    def __init__(self, m: int, n: int, matrix: Sequence[Sequence[Any]]) -> None:
        if m < 1 or n < 0:
            raise ValueError('Box sides must be positive')
        if len(matrix) != m or any(len(row) != m + n for row in matrix):
            raise ValueError(f'Expected a {m}x{m + n} matrix')

        self.m = m
        self.n = n
        self.matrix = sympy.Matrix([[_entry(x) for x in row] for row in matrix])
        self.symbolic = bool(self.matrix.free_symbols)
        self._cache: Dict[Tuple[int, ...], Any] = {}
        self._lock = threading.Lock()

    @classmethod
    def random(cls, m: int, n: int, rng: Optional[random.Random] = None, bound: int = 10 ** 6) -> 'MinorsOracle':
        rng = rng or random.Random()
        return cls(m, n, [[rng.randint(-bound, bound) for _ in range(m + n)] for _ in range(m)])

    @classmethod
    def symbolic_matrix(cls, m: int, n: int) -> 'MinorsOracle':
        return cls(m, n, [[sympy.Symbol(f'a_{i}_{j}') for j in range(m + n)] for i in range(m)])

    def indices(self, label: Label) -> Tuple[int, ...]:
        if isinstance(label, Partition):
            return finite_label(label, self.m, self.n)

        indices = tuple(label)
        if len(indices) != self.m or any(i < -self.m or i >= self.n for i in indices):
            raise DoesNotFitBoxError(f'Index tuple {indices} is outside Gr({self.m}, {self.m + self.n})')

        return indices

    def __call__(self, label: Label) -> Any:
        """
        The minor d_label. Rational for numeric matrices, an expanded sympy expression otherwise.

        :raises DoesNotFitBoxError: if the label does not fit the box.
        """
        indices = self.indices(label)
        found = self._cache.get(indices)
        if found is not None:
            return found

        sub = self.matrix.extract(list(range(self.m)), [i + self.m for i in indices])
        value = sub.det(method='bareiss')
        if self.symbolic:
            value = sympy.expand(value)
        else:
            value = sympy.Rational(value)
            value = Fraction(int(value.p), int(value.q))

        with self._lock:
            self._cache[indices] = value

        return value

    def value_of_name(self, name: str) -> Any:
        """The minor labelled by a Plücker variable name such as ``d[2,1]``."""
        return self(parse_partition(name))


def minors_oracle(m: int, n: int, matrix: Sequence[Sequence[Any]]) -> MinorsOracle:
    return MinorsOracle(m, n, matrix)


def verify_relation(relation: PlueckerRelation, m: int, n: int, trials: int = 3,
                    rng: Optional[random.Random] = None, bound: int = 10 ** 6, exact: bool = False) -> bool:
    """
    Check a relation on Gr(m, m + n) with the minors oracle.

    :param exact: Use a fully symbolic matrix instead of random integer matrices (m + n <= 6).
    :raises DoesNotFitBoxError: if a label does not fit the box.
    """
    if exact:
        if m + n > 6:
            raise ValueError('Exact mode is limited to m + n <= 6')

        return sympy.expand(relation.evaluate(MinorsOracle.symbolic_matrix(m, n))) == 0

    rng = rng or random.Random()
    for trial in range(trials):
        oracle = MinorsOracle.random(m, n, rng, bound)
        value = relation.evaluate(oracle)
        if value != 0:
            logger.debug('Relation %s fails at trial %d with value %s', relation.to_text(), trial, value)
            return False

    return True
