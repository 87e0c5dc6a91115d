"""Built-in directed systems and example seeds."""
import json
import logging
from typing import List, Optional, Tuple

from .grassmann import PlueckerNamer, r_map, rect_seed
from .indseed import ClassStatus, ConstantSystem, DirectedSystem, StableClass
from .morphism import MeltingMorphismSpec
from .partition import Partition, as_partition
from .seed import Seed

logger = logging.getLogger(__name__)


class GrassmannChain(DirectedSystem):
    """
    Q(1, 1) -> Q(2, 2) -> Q(3, 3) -> ... joined by the r-maps, which keep every label.
    """

    name = 'grass-chain'
    start = 1
    probe_bound = 5

    def seed_at(self, n: int) -> Seed:
        return rect_seed(n, n)

    def morphism_at(self, n: int) -> MeltingMorphismSpec:
        return r_map(n, n, n + 1, n + 1)

    def stability_hint(self, name: str, n: int, bound: int) -> Optional[StableClass]:
        # labels persist along r-maps
        return StableClass(ClassStatus.STABLE, (name,) * (bound - n + 1))


def _name(stem: str, i: int) -> str:
    return f'{stem}{i}'


class MergingChain(DirectedSystem):
    """
    Level n has exchangeable x_1..x_{n-1} and y_1..y_{n-1}, frozen v_1..v_{n-1}, s, y_n, z_1..z_{n-1} and z'_{n-1},
    with i arrows x_i -> x_{i+1}, arrows x_{n-1} -> v_j, x_{n-1} -> s, x_i -> z_i, y_i -> y_{i+1},
    y_i -> z_i (i <= n - 2) and y_{n-1} -> z'_{n-1}.

    The morphism to level n + 1 merges every v_j into x_n, specialises s to 1 and sends z'_{n-1} to z_{n-1}.
    """

    name = 'merging-chain'
    start = 2
    probe_bound = 8

    def seed_at(self, n: int) -> Seed:
        x = [_name('x', i) for i in range(1, n)]
        v = [_name('v', i) for i in range(1, n)]
        y = [_name('y', i) for i in range(1, n + 1)]
        z = [_name('z', i) for i in range(1, n)]
        z_last = f"z'{n - 1}"

        arrows: List[Tuple[str, str, int]] = []
        for i in range(1, n - 1):
            arrows.append((_name('x', i), _name('x', i + 1), i))
        for j in range(1, n):
            arrows.append((_name('x', n - 1), _name('v', j), 1))
        arrows.append((_name('x', n - 1), 's', 1))
        for i in range(1, n):
            arrows.append((_name('x', i), _name('z', i), 1))
        for i in range(1, n - 1):
            arrows.append((_name('y', i), _name('z', i), 1))
        arrows.append((_name('y', n - 1), z_last, 1))
        for i in range(1, n):
            arrows.append((_name('y', i), _name('y', i + 1), 1))

        return Seed.from_arrows(x + v + ['s'] + y + z + [z_last], x + y[:-1], arrows)

    def morphism_at(self, n: int) -> MeltingMorphismSpec:
        image = {}
        for i in range(1, n):
            image[_name('x', i)] = _name('x', i)
            image[_name('v', i)] = _name('x', n)
            image[_name('z', i)] = _name('z', i)
        for i in range(1, n + 1):
            image[_name('y', i)] = _name('y', i)
        image['s'] = 1
        image[f"z'{n - 1}"] = _name('z', n - 1)

        return MeltingMorphismSpec(image)


def components_example_seed() -> Seed:
    """
    Twelve-vertex seed with four exchangeably connected components and the isolated frozen x12.
    """
    names = [_name('x', i) for i in range(1, 13)]
    frozen = {'x2', 'x4', 'x9', 'x11', 'x12'}
    arrows = [
        ('x1', 'x2', 1), ('x1', 'x3', 1), ('x1', 'x4', 1), ('x2', 'x3', 2), ('x3', 'x4', 1),
        ('x2', 'x5', 1), ('x4', 'x5', 1), ('x5', 'x6', 1), ('x2', 'x7', 1), ('x7', 'x8', 1),
        ('x9', 'x10', 1), ('x10', 'x11', 1),
    ]
    return Seed.from_arrows(names, [n for n in names if n not in frozen], arrows)


SYSTEMS = {
    GrassmannChain.name: GrassmannChain,
    MergingChain.name: MergingChain,
    'example-2-5': MergingChain,
}


def _label(text: str):
    label = as_partition(text)
    return text if label is None else label


def load_seed(path: str) -> Seed:
    """
    Read a seed file. Seeds labelled by partitions name their square moves after the new label.
    """
    with open(path, 'r', encoding='utf-8') as f:
        seed = Seed.from_json(json.load(f), label_parser=_label)

    if any(isinstance(v.label, Partition) for v in seed.vars):
        seed = seed.with_namer(PlueckerNamer())

    return seed


def get_system(spec: str) -> DirectedSystem:
    """
    Directed system by name: ``grass-chain``, ``merging-chain`` (alias ``example-2-5``) or ``constant:<seed file>``.

    :raises ValueError: for unknown names.
    """
    if spec.startswith('constant:'):
        return ConstantSystem(load_seed(spec[len('constant:'):]))

    try:
        return SYSTEMS[spec]()
    except KeyError:
        raise ValueError(f'Unknown system {spec!r}; choose one of {sorted(SYSTEMS)} or constant:<seed file>')
