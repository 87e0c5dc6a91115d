"""Grassmannian seeds: rectangle quivers, windows of the infinite quiver, square moves and r-maps."""
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .exceptions import BoxShrinksError, NotQuadrilateralError
from .morphism import MeltingMorphismSpec
from .partition import FrobeniusForm, Partition, as_partition, rectangles
from .seed import Seed, mutate

logger = logging.getLogger(__name__)

# Mutation sequence turning the 4x4 window into one containing the quadrilateral quiver Q(4)
KP_SEQUENCE: Tuple[Partition, ...] = tuple(Partition(p) for p in (
    (1,), (1, 1), (2,), (2, 2), (1, 1, 1), (3,), (2, 2, 2), (3, 3), (3, 3, 3), (2, 1),
))


#
# Square moves
#

def _maya_set(label: Partition, depth: int) -> FrozenSet[int]:
    return frozenset(label.maya().first(depth))


def _set_partition(members: Set[int], depth: int) -> Partition:
    ordered = sorted(members, reverse=True)
    if len(ordered) != depth:
        raise NotQuadrilateralError('Label sets of different sizes')

    return Partition(a + i for i, a in enumerate(ordered, start=1))


def square_move(seed: Seed, vertex) -> Partition:
    """
    Label of the Plücker variable replacing `vertex` under a geometric exchange.

    The vertex must have two incoming and two outgoing simple arrows whose labels S+{p,q}, S+{r,s} and
    S+{p,s}, S+{q,r} (p < q < r < s) sit around the vertex label S+{p,r} or S+{q,s}.

    :raises NotQuadrilateralError: if the vertex is not a quadrilateral of Plücker labels.
    """
    x_id = seed.resolve(vertex)
    x = seed.var(x_id)
    if x_id not in seed.ex:
        raise NotQuadrilateralError(f'{x.name} is frozen')

    incoming, outgoing = [], []
    for v, b in seed.matrix.row(x_id).items():
        if abs(b) != 1:
            raise NotQuadrilateralError(f'{x.name} has a multiple arrow')
        (outgoing if b > 0 else incoming).append(seed.var(v))

    if len(incoming) != 2 or len(outgoing) != 2:
        raise NotQuadrilateralError(f'{x.name} has {len(incoming)} incoming and {len(outgoing)} outgoing arrows')

    labels = [as_partition(v.label) for v in incoming + outgoing]
    label = as_partition(x.label)
    if label is None or any(lab is None for lab in labels):
        raise NotQuadrilateralError(f'The neighbourhood of {x.name} is not labelled by partitions')

    depth = max(len(lab) for lab in labels + [label]) + 2
    sets = [_maya_set(lab, depth) for lab in labels]
    here = _maya_set(label, depth)

    common = frozenset.intersection(*sets)
    corners = sorted(frozenset.union(*sets) - common)
    if len(corners) != 4 or any(len(s - common) != 2 for s in sets) or not common <= here:
        raise NotQuadrilateralError(f'The neighbours of {x.name} are not in three-term position')

    p, q, r, s = corners
    if here - common not in ({p, r}, {q, s}):
        raise NotQuadrilateralError(f'{x.name} is not a diagonal of its neighbours')

    pairs = {frozenset([common | {p, q}, common | {r, s}]), frozenset([common | {p, s}, common | {q, r}])}
    found = {frozenset(sets[:2]), frozenset(sets[2:])}
    if found != pairs:
        raise NotQuadrilateralError(f'The arrows at {x.name} do not alternate around the square')

    other = {q, s} if here - common == {p, r} else {p, r}
    return _set_partition(set(common | other), depth)


class PlueckerNamer(object):
    """
    Names the variable created by a square move after its Plücker label, e.g. ``d[2,1]``.
    """

    def __call__(self, seed: Seed, x_id: int) -> Optional[Tuple[str, Partition]]:
        try:
            label = square_move(seed, x_id)
        except NotQuadrilateralError:
            return None

        return label.name(), label

    def __eq__(self, other) -> bool:
        return isinstance(other, PlueckerNamer)

    def __hash__(self) -> int:
        return hash(PlueckerNamer)


#
# Initial seeds
#

def _rectangle_arrows(rows: int, cols: int) -> List[Tuple[Partition, Partition]]:
    arrows = [(Partition(), Partition.rectangle(1, 1))]
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            here = Partition.rectangle(i, j)
            if j < cols:
                arrows.append((here, Partition.rectangle(i, j + 1)))
            if i < rows:
                arrows.append((here, Partition.rectangle(i + 1, j)))
            if i >= 2 and j >= 2:
                arrows.append((here, Partition.rectangle(i - 1, j - 1)))

    return arrows


def _labelled_seed(labels: Sequence[Partition], ex: Sequence[Partition], arrows: Sequence[Tuple[Partition, Partition]],
                   locked: Sequence[Partition] = ()) -> Seed:
    return Seed.from_arrows(
        [lab.name() for lab in labels],
        [lab.name() for lab in ex],
        [(a.name(), b.name(), 1) for a, b in arrows],
        labels={lab.name(): lab for lab in labels},
        locked=[lab.name() for lab in locked],
        namer=PlueckerNamer(),
    )


def rect_seed(m: int, n: int) -> Seed:
    """
    The rectangle seed Q(m, n) of Gr(m, m + n): vertices are the empty partition and the i x j rectangles;
    the empty partition and the rectangles of maximal height or width are frozen.
    """
    if m < 1 or n < 1:
        raise ValueError('rect_seed needs m, n >= 1')

    labels = rectangles(m, n)
    ex = [lab for lab in labels[1:] if len(lab) < m and lab[0] < n]
    return _labelled_seed(labels, ex, _rectangle_arrows(m, n))


def q_infty_window(max_height: int, max_width: int) -> Seed:
    """
    Restriction of the infinite rectangle quiver to rectangles within max_height x max_width.

    Only the empty partition is frozen. Rectangles on the last row or column of the window keep their arrows
    inside the window and refuse mutation.
    """
    if max_height < 1 or max_width < 1:
        raise ValueError('q_infty_window needs sides >= 1')

    labels = rectangles(max_height, max_width)
    boundary = [lab for lab in labels[1:] if len(lab) == max_height or lab[0] == max_width]
    return _labelled_seed(labels, labels[1:], _rectangle_arrows(max_height, max_width), locked=boundary)


def quad_quiver(m: int) -> Seed:
    """
    The quiver Q(m) on the labels (a, ..., a-k | b, ..., b-k) with r = a - b, |r| <= m - 1,
    0 <= k <= m - 1 - |r| and a = floor((m + r + k) / 2), plus the empty partition.

    A label is frozen when k = m - 1 - |r|. Every exchangeable vertex has exactly four neighbours.
    """
    if m < 2:
        raise ValueError('quad_quiver needs m >= 2')

    vertices: Dict[Tuple[int, int, int], Partition] = {}
    frozen: Set[Tuple[int, int, int]] = set()
    for r in range(-(m - 1), m):
        for k in range(0, m - abs(r)):
            a = (m + r + k) // 2
            b = a - r
            vertices[(a, b, k)] = FrobeniusForm(tuple(range(a, a - k - 1, -1)),
                                                tuple(range(b, b - k - 1, -1))).to_partition()
            if k == m - 1 - abs(r):
                frozen.add((a, b, k))

    def lookup(a: int, b: int, k: int) -> Optional[Partition]:
        if k == -1:
            return Partition()
        return vertices.get((a, b, k))

    arrows: Set[Tuple[Partition, Partition]] = set()
    for (a, b, k), here in vertices.items():
        if (a, b, k) in frozen:
            continue

        if (m + a - b + k) % 2:
            ins = [lookup(a + 1, b + 1, k + 1), lookup(a, b, k - 1)]
            outs = [lookup(a + 1, b, k), lookup(a, b + 1, k)]
        else:
            ins = [lookup(a, b - 1, k), lookup(a - 1, b, k)]
            outs = [lookup(a, b, k + 1), lookup(a - 1, b - 1, k - 1)]

        arrows.update((v, here) for v in ins if v is not None)
        arrows.update((here, v) for v in outs if v is not None)

    labels = [Partition()] + sorted(vertices.values(), key=lambda lab: (lab.size, [-p for p in lab.parts]))
    ex = [vertices[key] for key in vertices if key not in frozen]
    ordered_arrows = sorted(arrows, key=lambda arrow: (labels.index(arrow[0]), labels.index(arrow[1])))
    return _labelled_seed(labels, ex, ordered_arrows)


#
# r-maps
#

def r_map(m: int, n: int, m2: int, n2: int) -> MeltingMorphismSpec:
    """
    The map Q(m, n) -> Q(m2, n2) keeping every label.

    :raises BoxShrinksError: if the target box is smaller.
    """
    if m2 < m or n2 < n:
        raise BoxShrinksError(f'Cannot map the {m}x{n} box into the {m2}x{n2} box')

    return MeltingMorphismSpec({lab.name(): lab.name() for lab in rectangles(m, n)})


def r_map_indices(indices: Sequence[int], m: int, m2: int) -> Tuple[int, ...]:
    """
    Index form of the r-map: d_{j_1..j_m} goes to d_{-m2, ..., -m-1, j_1, ..., j_m}.
    """
    if m2 < m:
        raise BoxShrinksError(f'Cannot map Gr({m}, .) indices into Gr({m2}, .)')
    if len(indices) != m:
        raise ValueError(f'Expected {m} indices')

    return tuple(range(-m2, -m)) + tuple(indices)


#
# Plücker clusters
#

def label_set(seed: Seed) -> FrozenSet[Partition]:
    return frozenset(as_partition(v.label) for v in seed.vars)


def _square_neighbours(seed: Seed) -> List[Seed]:
    found = []
    for v in seed.vars:
        if v.id not in seed.ex or v.id in seed.locked:
            continue
        try:
            square_move(seed, v.id)
        except NotQuadrilateralError:
            continue
        found.append(mutate(seed, v.id, expressions=False))

    return found


def plucker_clusters(seed: Seed, depth: int, jobs: int = 1) -> List[Seed]:
    """
    Seeds reachable by at most `depth` square moves, one per label set, in breadth-first order.
    """
    if depth < 0:
        raise ValueError('depth must be non-negative')

    seen = {label_set(seed)}
    lock = threading.Lock()
    found = [seed]
    frontier = [seed]

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for level in range(depth):
            fresh = []
            for neighbours in pool.map(_square_neighbours, frontier):
                for candidate in neighbours:
                    key = label_set(candidate)
                    with lock:
                        if key in seen:
                            continue
                        seen.add(key)
                    fresh.append(candidate)

            logger.debug('Level %d: %d new clusters', level + 1, len(fresh))
            found.extend(fresh)
            frontier = fresh
            if not frontier:
                break

    return found
