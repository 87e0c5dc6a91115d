"""Partition class."""
import re
import random
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions as _sympy_partitions

from .exceptions import DoesNotFitBoxError


@total_ordering
class Partition(object):
    """
    Partition object represents an integer partition, a weakly decreasing tuple of positive parts.
    """

    __slots__ = ('parts',)

    def __init__(self, parts: Iterable[int] = ()) -> None:
        """
        :param parts: Weakly decreasing non-negative integers. Trailing zeros are dropped.
        """
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]

        if any(p <= 0 for p in parts):
            raise ValueError(f'Partition parts must be positive: {parts}')
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f'Partition parts must be weakly decreasing: {parts}')

        object.__setattr__(self, 'parts', parts)

    def __setattr__(self, key, value):
        raise AttributeError('Partition is immutable')

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> 'Partition':
        """The i x j rectangle (j^i)."""
        if rows < 0 or cols < 0:
            raise ValueError('Rectangle sides must be non-negative')

        return cls((cols,) * rows if cols else ())

    @classmethod
    def hook(cls, arm: int, leg: int) -> 'Partition':
        """The hook (arm + 1, 1^leg), Frobenius (arm | leg)."""
        return cls((arm + 1,) + (1,) * leg)

    #
    # Inspection
    #

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        """Part i (0-based); zero beyond the length."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented

        return self.parts == other.parts

    def __lt__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented

        return self.parts < other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f'Partition({self.parts!r})'

    def __str__(self) -> str:
        return '(' + ','.join(str(p) for p in self.parts) + ')'

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def is_rectangle(self) -> bool:
        return len(set(self.parts)) <= 1

    def bounding_box(self) -> Tuple[int, int]:
        """(rows, columns) of the smallest rectangle containing the diagram."""
        return len(self.parts), self[0]

    def fits(self, rows: int, cols: int) -> bool:
        return len(self.parts) <= rows and self[0] <= cols

    def contains(self, other: 'Partition') -> bool:
        return len(other) <= len(self) and all(self[i] >= p for i, p in enumerate(other))

    def conjugate(self) -> 'Partition':
        return Partition(sum(1 for p in self.parts if p > j) for j in range(self[0]))

    def name(self) -> str:
        """Name of the Plücker variable labelled by this partition, e.g. ``d[2,1]``."""
        return 'd[' + ','.join(str(p) for p in self.parts) + ']'

    #
    # Other encodings
    #

    def maya(self, charge: int = 0) -> 'MayaSeq':
        return partition_to_maya(self, charge)

    def frobenius(self) -> 'FrobeniusForm':
        return partition_to_frobenius(self)


@dataclass(frozen=True)
class MayaSeq(object):
    """
    Strictly decreasing integer sequence a_1 > a_2 > ... with a_k = charge - k for all k past the head.

    The head is kept minimal: its last element breaks the tail rule, or it is empty.
    """
    charge: int
    head: Tuple[int, ...] = ()

    def __post_init__(self):
        head = tuple(self.head)
        if any(head[i] <= head[i + 1] for i in range(len(head) - 1)):
            raise ValueError(f'Maya sequence must be strictly decreasing: {head}')

        while head and head[-1] == self.charge - len(head):
            head = head[:-1]
        if head and head[-1] <= self.charge - len(head) - 1:
            raise ValueError('Maya head must stay above its tail')

        object.__setattr__(self, 'head', head)

    def __getitem__(self, k: int) -> int:
        """Element a_k, 1-based."""
        if k < 1:
            raise IndexError('Maya sequences are indexed from 1')

        return self.head[k - 1] if k <= len(self.head) else self.charge - k

    def first(self, count: int) -> List[int]:
        return [self[k] for k in range(1, count + 1)]

    def to_partition(self) -> Partition:
        return maya_to_partition(self)[0]


@dataclass(frozen=True)
class FrobeniusForm(object):
    """
    Frobenius coordinates (arms | legs) of the diagonal boxes of a partition.
    """
    arms: Tuple[int, ...]
    legs: Tuple[int, ...]

    def __post_init__(self):
        arms, legs = tuple(self.arms), tuple(self.legs)
        if len(arms) != len(legs):
            raise ValueError('Frobenius arms and legs must have equal length')

        for seq in (arms, legs):
            if any(a < 0 for a in seq) or any(seq[i] <= seq[i + 1] for i in range(len(seq) - 1)):
                raise ValueError(f'Frobenius coordinates must be strictly decreasing and non-negative: {seq}')

        object.__setattr__(self, 'arms', arms)
        object.__setattr__(self, 'legs', legs)

    def __str__(self) -> str:
        return '(' + ','.join(map(str, self.arms)) + '|' + ','.join(map(str, self.legs)) + ')'

    def to_partition(self) -> Partition:
        rank = len(self.arms)
        rows = [self.arms[i] + i + 1 for i in range(rank)]
        # below the diagonal: row i has length #{j : legs[j] + j >= i} for i >= rank
        depth = self.legs[0] + 1 if rank else 0
        for i in range(rank, depth):
            rows.append(sum(1 for j in range(rank) if self.legs[j] + j >= i))

        return Partition(rows)


def partition_to_maya(partition: Partition, charge: int = 0) -> MayaSeq:
    return MayaSeq(charge, tuple(p - i + charge for i, p in enumerate(partition.parts, start=1)))


def maya_to_partition(seq: MayaSeq) -> Tuple[Partition, int]:
    """
    The partition and charge of a Maya sequence.
    """
    return Partition(a + i - seq.charge for i, a in enumerate(seq.head, start=1)), seq.charge


def partition_to_frobenius(partition: Partition) -> FrobeniusForm:
    """
    Frobenius form read off the charge 0 Maya sequence: arms are its non-negative members, legs come from the
    negative integers it misses.
    """
    depth = len(partition) + 1
    members = set(partition.maya().first(depth))
    arms = sorted((a for a in members if a >= 0), reverse=True)
    legs = sorted((-m - 1 for m in range(-depth, 0) if m not in members), reverse=True)

    return FrobeniusForm(tuple(arms), tuple(legs))


def frobenius_to_partition(form: FrobeniusForm) -> Partition:
    return form.to_partition()


#
# Finite index labels
#

def finite_label(partition: Partition, m: int, n: int) -> Tuple[int, ...]:
    """
    Index tuple l_1 < ... < l_m of the Plücker coordinate of Gr(m, m + n) labelled by a partition,
    with l_i = a_{m - i + 1}.

    :raises DoesNotFitBoxError: if the partition does not fit the m x n box.
    """
    if m < 1 or n < 0:
        raise ValueError('Box sides must be positive')
    if not partition.fits(m, n):
        raise DoesNotFitBoxError(f'{partition} does not fit the {m}x{n} box')

    seq = partition.maya()
    return tuple(seq[m - i + 1] for i in range(1, m + 1))


def partition_from_indices(indices: Sequence[int]) -> Partition:
    """
    Inverse of :func:`finite_label`: the partition of a strictly increasing index tuple l_1 < ... < l_m.
    """
    m = len(indices)
    if any(indices[i] >= indices[i + 1] for i in range(m - 1)):
        raise ValueError(f'Index tuple must be strictly increasing: {tuple(indices)}')
    if m and indices[0] < -m:
        raise ValueError(f'Index tuple {tuple(indices)} reaches below {-m}')

    return Partition(indices[m - i] + i for i in range(1, m + 1))


#
# Weak separation
#

def _maya_window(a: Partition, b: Partition) -> Tuple[set, set]:
    depth = max(len(a), len(b)) + 1
    return set(a.maya().first(depth)), set(b.maya().first(depth))


def weakly_separated(a: Partition, b: Partition) -> bool:
    """
    True iff the index sets of the two labels do not alternate: there are no x < y < z < w with x, z in one
    difference set and y, w in the other.
    """
    first, second = _maya_window(a, b)
    merged = sorted([(x, 0) for x in first - second] + [(x, 1) for x in second - first])

    runs = 0
    previous = None
    for _, side in merged:
        if side != previous:
            runs += 1
            previous = side

    return runs < 4


#
# Parsing and enumeration
#

_FROBENIUS = re.compile(r'^\(\s*([\d\s,]*)\|\s*([\d\s,]*)\)$')


def _split_ints(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []

    return [int(t) for t in text.split(',') if t.strip() != '']


def parse_partition(text: str) -> Partition:
    """
    Read a partition literal: ``[3,2]``, ``(3,2)``, ``3,2``, ``d[3,2]``, ``[]``, or Frobenius ``(2,0|1,0)``.

    :raises ValueError: if the literal is malformed.
    """
    if isinstance(text, Partition):
        return text

    raw = str(text).strip()
    if raw in ('∅', 'empty'):
        return Partition()
    if raw.startswith('d[') and raw.endswith(']'):
        raw = raw[1:]

    try:
        found = _FROBENIUS.match(raw)
        if found:
            return FrobeniusForm(tuple(_split_ints(found.group(1))), tuple(_split_ints(found.group(2)))).to_partition()

        if raw[:1] in '[(' and raw[-1:] in '])':
            raw = raw[1:-1]

        return Partition(_split_ints(raw))
    except ValueError as e:
        raise ValueError(f'Invalid partition literal {text!r}: {e}')


def partitions_in_box(rows: int, cols: int) -> List[Partition]:
    """
    Every partition fitting the rows x cols box, by size and then reverse lexicographically.
    """
    found = [Partition()]
    if rows < 1 or cols < 1:
        return found

    for size in range(1, rows * cols + 1):
        batch = []
        # sympy reuses the yielded dict
        for counts in _sympy_partitions(size, m=rows, k=cols):
            parts = []
            for part, multiplicity in sorted(counts.items(), reverse=True):
                parts.extend([part] * multiplicity)
            batch.append(Partition(parts))
        found.extend(sorted(batch, reverse=True))

    return found


def partitions_of(size: int) -> List[Partition]:
    """Partitions of `size`, reverse lexicographically: (size) first, (1^size) last."""
    if size < 0:
        raise ValueError('size must be non-negative')
    if size == 0:
        return [Partition()]

    found = []
    for counts in _sympy_partitions(size):
        parts = []
        for part, multiplicity in sorted(counts.items(), reverse=True):
            parts.extend([part] * multiplicity)
        found.append(Partition(parts))

    return sorted(found, reverse=True)


def partitions_up_to(size: int) -> List[Partition]:
    """Partitions of 0, 1, ..., `size` in that order."""
    found = []
    for k in range(size + 1):
        found.extend(partitions_of(k))

    return found


def random_partition(rng: random.Random, max_rows: int, max_cols: int) -> Partition:
    """A random partition inside the box, built from a random lattice path."""
    steps = ['E'] * max_cols + ['N'] * max_rows
    rng.shuffle(steps)

    parts = []
    width = 0
    for step in steps:
        if step == 'E':
            width += 1
        else:
            parts.append(width)

    return Partition(sorted(parts, reverse=True))


def rectangles(rows: int, cols: int, include_empty: bool = True) -> List[Partition]:
    """Rectangles i x j with 1 <= i <= rows, 1 <= j <= cols, row by row, after the empty partition."""
    found = [Partition()] if include_empty else []
    found.extend(Partition.rectangle(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1))
    return found


def as_partition(value) -> Optional[Partition]:
    """Coerce labels and literals to partitions; None when impossible."""
    if value is None or isinstance(value, Partition):
        return value

    try:
        return parse_partition(value)
    except (ValueError, TypeError):
        return None
