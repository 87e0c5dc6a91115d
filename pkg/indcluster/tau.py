"""Tau class."""
import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from .exceptions import (DoesNotFitBoxError, EmptyCoordinateZeroError, InvalidPointError, NonPositiveInputError,
                         RankDeficientError, TruncationUnstableError)
from .expansion import laurent_expansion
from .grassmann import rect_seed
from .partition import Partition, parse_partition, partitions_in_box, partitions_of, partitions_up_to
from .pluecker import MinorsOracle, PlueckerRelation, hook_relation, pluecker_relation
from .symfunc import SymFuncP, hall_product, schur_in_p

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def _fraction_text(value: Fraction) -> str:
    return f'{value.numerator}/{value.denominator}'


def _to_sympy(value: Number) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _cell(value: Any) -> sympy.Expr:
    if isinstance(value, (int, Fraction)):
        return _to_sympy(value)

    return sympy.sympify(value)


def _to_fraction(value: Any) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    if not rows:
        return Fraction(1)

    return _to_fraction(sympy.Matrix([[_to_sympy(x) for x in row] for row in rows]).det(method='bareiss'))


class Tau(object):
    """
    Tau object represents a formal sum of Schur functions, stored as the coefficients <tau, s_lam>.
    """

    def __init__(self, coeffs: Optional[Mapping[Partition, Number]] = None) -> None:
        """
        :param coeffs: Coefficient per partition. Zero coefficients are dropped.
        """
        self._coeffs: Dict[Partition, Fraction] = {}
        for lam, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                self._coeffs[lam] = c

    @classmethod
    def schur(cls, lam: Partition) -> 'Tau':
        """The tau-function s_lam."""
        return cls({lam: 1})

    @classmethod
    def from_power_sums(cls, f: SymFuncP) -> 'Tau':
        """
        Schur coefficients of a symmetric function given in power sums, <f, s_lam> for every lam.
        """
        coeffs = {}
        for degree in f.degrees():
            part = f.homogeneous_part(degree)
            for lam in partitions_of(degree):
                coeffs[lam] = hall_product(part, schur_in_p(lam))

        return cls(coeffs)

    @property
    def coeffs(self) -> Dict[Partition, Fraction]:
        return dict(self._coeffs)

    def coeff(self, lam: Partition) -> Fraction:
        return self._coeffs.get(lam, Fraction(0))

    __call__ = coeff

    def support(self) -> List[Partition]:
        return sorted(self._coeffs, key=lambda lam: (lam.size, tuple(-p for p in lam.parts)))

    def items(self) -> Iterator[Tuple[Partition, Fraction]]:
        return ((lam, self._coeffs[lam]) for lam in self.support())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tau):
            return NotImplemented

        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        body = ', '.join(f'{lam}: {c}' for lam, c in self.items())
        return f'Tau({{{body}}})'

    def to_power_sums(self) -> SymFuncP:
        total = SymFuncP.zero()
        for lam, c in self._coeffs.items():
            total = total + schur_in_p(lam) * c

        return total

    def to_json(self) -> Dict[str, str]:
        return {str(lam): _fraction_text(c) for lam, c in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'Tau':
        """
        :raises ValueError: on malformed partition literals or coefficients.
        """
        coeffs = {}
        for key, value in data.items():
            try:
                coeffs[parse_partition(key)] = Fraction(value)
            except (TypeError, ZeroDivisionError):
                raise ValueError(f'Invalid coefficient {value!r} for {key}')

        return cls(coeffs)


def tau_coeff(tau: Union[Tau, SymFuncP], lam: Partition) -> Fraction:
    """
    <tau, s_lam>; power sum input is paired with the Schur function through the Hall product.
    """
    if isinstance(tau, SymFuncP):
        return hall_product(tau, schur_in_p(lam))

    return tau.coeff(lam)


#
# Plücker checks
#

@dataclass
class PlueckerReport(object):
    """Outcome of evaluating the Plücker relations on a tau-function. Truthy iff every residual vanished."""
    checked: int = 0
    relation: Optional[PlueckerRelation] = None
    residual: Fraction = Fraction(0)
    m: Optional[int] = None

    def __bool__(self) -> bool:
        return self.relation is None


def check_plucker(tau: Tau, m_bound: int, index_bound: int) -> PlueckerReport:
    """
    Evaluate every relation from :func:`pluecker_relation` with m <= m_bound and indices in [-m, index_bound]
    on the coefficients of tau, stopping at the first non-zero residual.
    """
    if m_bound < 1 or index_bound < 1:
        raise ValueError('Plücker check bounds must be at least 1')

    report = PlueckerReport()
    for m in range(1, m_bound + 1):
        indices = range(-m, index_bound + 1)
        for i_part in itertools.combinations(indices, m - 1):
            for j_part in itertools.combinations(indices, m + 1):
                relation = pluecker_relation(m, i_part, j_part)
                if not relation:
                    continue

                report.checked += 1
                residual = relation.evaluate(tau.coeff)
                if residual:
                    logger.debug('Plücker relation %s fails with residual %s', relation.to_text(), residual)
                    report.relation, report.residual, report.m = relation, residual, m
                    return report

    logger.debug('%d Plücker relations hold', report.checked)
    return report


def kp_residual(tau: Tau) -> Fraction:
    """<tau,1><tau,s22> - <tau,s21><tau,s1> + <tau,s11><tau,s2>, zero for tau-functions."""
    c = tau.coeff
    return (c(Partition()) * c(Partition((2, 2)))
            - c(Partition((2, 1))) * c(Partition((1,)))
            + c(Partition((1, 1))) * c(Partition((2,))))


def hook_residual(tau: Tau, a: int, b: int) -> Fraction:
    return hook_relation(a, b).evaluate(tau.coeff)


#
# Points of the Sato Grassmannian
#

@dataclass(frozen=True)
class PointW(object):
    """
    Point of Gr_stratum given by its admissible basis w_j = z^(a_j + 1) + sum of w_(n, j) z^(n + 1),
    where a_j = stratum_j - j and every stored exponent index n satisfies a_j < n <= band.
    """
    stratum: Partition
    band: int = 0
    coeffs: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.band < 0:
            raise InvalidPointError('band must be non-negative')
        if not isinstance(self.stratum, Partition):
            object.__setattr__(self, 'stratum', Partition(self.stratum))

        clean = {}
        for (n, j), value in dict(self.coeffs).items():
            if j < 1:
                raise InvalidPointError(f'Basis index {j} must be at least 1')
            if n <= self.a(j) or n > self.band:
                raise InvalidPointError(
                    f'Coefficient w_({n},{j}) lies outside ({self.a(j)}, {self.band}] for the stratum {self.stratum}')
            value = Fraction(value)
            if value:
                clean[(n, j)] = value

        object.__setattr__(self, 'coeffs', clean)

    @classmethod
    def hollow(cls, lam: Partition) -> 'PointW':
        """H_lam, spanned by z^(lam_j - j + 1)."""
        return cls(lam, 0, {})

    @classmethod
    def random(cls, rng: random.Random, max_rows: int, max_cols: int, band: int, bound: int = 5,
               density: float = 0.5) -> 'PointW':
        """A point with a random stratum inside the box and random integer perturbations up to the band."""
        stratum = Partition(sorted((rng.randint(0, max_cols) for _ in range(max_rows)), reverse=True))
        coeffs = {}
        for j in range(1, len(stratum) + 3):
            for n in range(stratum[j - 1] - j + 1, band + 1):
                if rng.random() < density:
                    coeffs[(n, j)] = rng.randint(-bound, bound)

        return cls(stratum, max(band, 0), coeffs)

    def a(self, j: int) -> int:
        return self.stratum[j - 1] - j

    def entry(self, n: int, j: int) -> Fraction:
        """Coefficient of z^(n + 1) in w_j."""
        a = self.a(j)
        if n < a:
            return Fraction(0)
        if n == a:
            return Fraction(1)

        return self.coeffs.get((n, j), Fraction(0))

    @property
    def last_perturbed(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    def cutoff(self, lam: Partition) -> int:
        return max(len(lam), len(self.stratum) + 1, self.last_perturbed, self.band) + 2

    def to_json(self) -> Dict[str, Any]:
        return {
            'stratum': list(self.stratum.parts),
            'band': self.band,
            'coeffs': [[n, j, _fraction_text(v)] for (n, j), v in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'PointW':
        """
        :raises InvalidPointError: on a malformed point.
        """
        try:
            stratum = Partition(data['stratum'])
            band = int(data.get('band', 0))
            coeffs = {(int(n), int(j)): Fraction(v) for n, j, v in data.get('coeffs', [])}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidPointError(f'Malformed point: {e}')

        return cls(stratum, band, coeffs)


def _truncated_delta(point: PointW, lam: Partition, size: int) -> Fraction:
    rows = [[point.entry(lam[i] - i - 1, j) for j in range(1, size + 1)] for i in range(size)]
    if any(not any(row) for row in rows):
        return Fraction(0)

    return _det(rows)


def point_delta(point: PointW, lam: Partition) -> Fraction:
    """
    The Plücker coordinate det(w_(lam_i - i, j)) of the point, computed on a K x K truncation.

    :raises TruncationUnstableError: if the K and K + 1 truncations disagree.
    """
    size = point.cutoff(lam)
    value = _truncated_delta(point, lam, size)
    check = _truncated_delta(point, lam, size + 1)
    if value != check:
        logger.warning('Truncation at size %d is not stable for %s', size, lam)
        raise TruncationUnstableError(f'Delta_{lam} changes from {value} to {check} between sizes {size} and '
                                      f'{size + 1}')

    return value


def point_from_matrix(m: int, n: int, matrix: Sequence[Sequence[Any]]) -> PointW:
    """
    Embed the row span of an m x (m + n) matrix into the Sato Grassmannian: column c carries z^(c - m + 1)
    and the span is completed by z^(-j + 1) for j > m.

    The returned basis is row reduced, so Delta_stratum = 1 and Delta_lam is the ratio of maximal minors
    d_lam / d_stratum for lam inside the m x n box. Multiply by :func:`stratum_minor` to recover the minors
    of the matrix itself.

    :raises RankDeficientError: if the matrix has rank below m.
    """
    if m < 1 or n < 0:
        raise ValueError('Box sides must be positive')
    if len(matrix) != m or any(len(row) != m + n for row in matrix):
        raise ValueError(f'Expected a {m}x{m + n} matrix')

    reduced, pivots = sympy.Matrix([[_cell(x) for x in row] for row in matrix]).rref()
    if len(pivots) < m:
        raise RankDeficientError(f'Matrix has rank {len(pivots)} < {m}')

    stratum = []
    coeffs = {}
    for j in range(1, m + 1):
        row = m - j
        pivot = pivots[row]
        stratum.append(pivot - m + j)
        for c in range(pivot + 1, m + n):
            if reduced[row, c] != 0:
                coeffs[(c - m, j)] = _to_fraction(reduced[row, c])

    return PointW(Partition(stratum), max(n - 1, 0), coeffs)


def stratum_minor(m: int, n: int, matrix: Sequence[Sequence[Any]]) -> Fraction:
    """The maximal minor d_stratum of the matrix, the factor dropped by :func:`point_from_matrix`."""
    stratum = point_from_matrix(m, n, matrix).stratum
    return _to_fraction(MinorsOracle(m, n, matrix)(stratum))


def tau_from_point(point: PointW, size_bound: int, jobs: int = 1) -> Tau:
    """The tau-function sum Delta_lam(W) s_lam, truncated to |lam| <= size_bound."""
    if size_bound < 0:
        raise ValueError('size_bound must be non-negative')

    labels = partitions_up_to(size_bound)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        values = list(pool.map(lambda lam: point_delta(point, lam), labels))

    return Tau(dict(zip(labels, values)))


#
# Giambelli
#

@dataclass
class GiambelliReport(object):
    """Delta_lam / Delta_empty against the determinant of the normalized hook coordinates."""
    label: Partition
    value: Fraction
    determinant: Fraction

    @property
    def residual(self) -> Fraction:
        return self.value - self.determinant

    def __bool__(self) -> bool:
        return self.residual == 0


def giambelli_check(point: PointW, lam: Partition) -> GiambelliReport:
    """
    Compare d_lam with det(d_(alpha_i | beta_j)) after normalizing d_empty to 1.

    :raises EmptyCoordinateZeroError: if Delta_empty vanishes.
    """
    empty = point_delta(point, Partition())
    if not empty:
        raise EmptyCoordinateZeroError(f'Delta_() of a point in the stratum {point.stratum} vanishes')

    form = lam.frobenius()
    rows = [[point_delta(point, Partition.hook(arm, leg)) / empty for leg in form.legs] for arm in form.arms]
    report = GiambelliReport(lam, point_delta(point, lam) / empty, _det(rows))
    logger.debug('Giambelli for %s: %s vs %s', lam, report.value, report.determinant)
    return report


#
# Positivity
#

@dataclass
class PositivityReport(object):
    """Values of F_lam at positive rectangle values. Truthy iff every value is positive."""
    values: Dict[Partition, Fraction] = field(default_factory=dict)
    non_positive_expansions: List[Partition] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.non_positive_expansions and all(v > 0 for v in self.values.values())


def positivity_certificate(rect_values: Mapping[Partition, Number], labels: Optional[Sequence[Partition]],
                           m: int, n: int) -> PositivityReport:
    """
    Evaluate the positive Laurent expansions F_lam of Q(m, n) at the given rectangle values.

    :param rect_values: Positive value per rectangle, the empty partition included.
    :param labels: Partitions to certify; every partition in the box when None.
    :raises NonPositiveInputError: if a rectangle value is not positive.
    :raises DoesNotFitBoxError: if a label does not fit the box.
    """
    values: Dict[Partition, Fraction] = {}
    for rect, value in rect_values.items():
        if not rect.is_rectangle:
            raise ValueError(f'{rect} is not a rectangle')
        value = Fraction(value)
        if value <= 0:
            raise NonPositiveInputError(f'Value {value} of {rect} is not positive')
        values[rect] = value

    labels = partitions_in_box(m, n) if labels is None else list(labels)
    for lam in labels:
        if not lam.fits(m, n):
            raise DoesNotFitBoxError(f'{lam} does not fit the {m}x{n} box')

    seed = rect_seed(m, n)
    roots = {}
    for rect, value in values.items():
        if rect.fits(m, n):
            roots[seed.by_label(rect).id] = value

    report = PositivityReport()
    for lam in labels:
        expr = laurent_expansion(lam, m, n)
        if not expr.is_coefficient_positive():
            report.non_positive_expansions.append(lam)
        report.values[lam] = Fraction(expr.evaluate(roots))

    return report
