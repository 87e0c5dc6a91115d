"""MeltingMorphismSpec class."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .exceptions import LaurentError
from .laurent import LaurentPoly
from .seed import Seed, mutate

logger = logging.getLogger(__name__)

Image = Union[str, int]


@dataclass
class MeltingMorphismSpec(object):
    """
    Values of a ring map on the initial cluster: each source variable name goes to a target name or an integer.
    """
    image: Dict[str, Image]

    @classmethod
    def identity(cls, seed: Seed) -> 'MeltingMorphismSpec':
        return cls({name: name for name in seed.names})

    def __call__(self, name: str) -> Optional[Image]:
        return self.image.get(name)

    def to_json(self) -> Dict[str, Image]:
        return dict(self.image)


@dataclass
class MorphismReport(object):
    """
    Outcome of :func:`check_melting_morphism`. Truthy iff every checked axiom holds.
    """
    failures: List[str] = field(default_factory=list)
    failing_sequence: Optional[Tuple[str, ...]] = None
    checked_sequences: int = 0

    def __bool__(self) -> bool:
        return not self.failures

    def fail(self, axiom: str, message: str) -> None:
        self.failures.append(f'{axiom}: {message}')


def _check_cluster_axioms(f: MeltingMorphismSpec, src: Seed, dst: Seed, report: MorphismReport) -> None:
    for v in src.vars:
        target = f(v.name)
        if target is None:
            report.fail('CM1', f'{v.name} has no image')
        elif not isinstance(target, int) and target not in dst.names:
            report.fail('CM1', f'{v.name} is sent to {target!r}, which is neither a variable nor an integer')

    for v in src.vars:
        if v.id not in src.ex:
            continue

        target = f(v.name)
        if isinstance(target, str) and target in dst.names and not dst.is_exchangeable(target):
            report.fail('MCM', f'exchangeable {v.name} is sent to frozen {target}')
        if target == 0:
            report.fail('iMCM', f'exchangeable {v.name} is sent to 0')


def _check_specialisation(f: MeltingMorphismSpec, src: Seed, dst: Seed, report: MorphismReport) -> None:
    for x in src.vars:
        target = f(x.name)
        if x.id not in src.ex or not isinstance(target, str) or not dst.is_exchangeable(target):
            continue

        products = {1: 1, -1: 1}
        for y_id, b in src.matrix.row(x.id).items():
            value = f(src.registry.name(y_id))
            if isinstance(value, int):
                products[1 if b > 0 else -1] *= value ** abs(b)

        for side, product in products.items():
            if product != 1:
                direction = 'positive' if side > 0 else 'negative'
                report.fail('specialisation',
                            f'integer images of the {direction} neighbours of {x.name} multiply to {product}')


def check_melting_morphism(f: MeltingMorphismSpec, src: Seed, dst: Seed, depth: int = 3) -> MorphismReport:
    """
    Check that the given values define a melting cluster morphism between the algebras rooted at two seeds.

    CM1, MCM, iMCM and the neighbour specialisation condition are checked directly. CM2 is checked for every
    f-biadmissible sequence of length at most `depth` by comparing the image of every mutated source variable
    with the corresponding mutated target variable.

    :param f: Values on the source cluster.
    :param src: Source seed, taken as root.
    :param dst: Target seed, taken as root.
    :param depth: Longest sequence checked.
    :return: Report naming every failed axiom and the first sequence breaking CM2.
    """
    if depth < 0:
        raise ValueError('depth must be non-negative')

    src = src.rerooted().unlocked()
    dst = dst.rerooted().unlocked()
    report = MorphismReport()

    _check_cluster_axioms(f, src, dst, report)
    if report.failures and any(failure.startswith('CM1') for failure in report.failures):
        return report

    _check_specialisation(f, src, dst, report)

    images: Dict[int, LaurentPoly] = {}
    slot_image: Dict[int, Image] = {}
    for slot, v in enumerate(src.vars):
        target = f(v.name)
        if isinstance(target, int):
            images[v.id] = LaurentPoly.constant(target)
            slot_image[slot] = target
        else:
            images[v.id] = dst.var(target).expr
            slot_image[slot] = dst.slot(target)

    def compare(s: Seed, d: Seed, steps: Tuple[str, ...]) -> bool:
        report.checked_sequences += 1
        for slot, v in enumerate(s.vars):
            try:
                mapped = v.expr.substitute(images)
            except LaurentError as e:
                report.fail('CM2', f'image of {v.name} after {list(steps)} is not defined: {e}')
                return False

            target = slot_image[slot]
            expected = LaurentPoly.constant(target) if isinstance(target, int) else d.vars[target].expr
            if mapped != expected:
                report.fail('CM2', f'after {list(steps)}, {v.name} maps to {mapped.to_fraction_text()} '
                                   f'instead of {expected.to_fraction_text()}')
                return False

        return True

    def explore(s: Seed, d: Seed, steps: Tuple[str, ...], last: Optional[int]) -> bool:
        if not compare(s, d, steps):
            report.failing_sequence = steps
            return False

        if len(steps) == depth:
            return True

        for slot, v in enumerate(s.vars):
            target = slot_image[slot]
            # mutating twice in a row at one slot is the identity
            if slot == last or v.id not in s.ex or isinstance(target, int) or d.vars[target].id not in d.ex:
                continue

            if not explore(mutate(s, v.id), mutate(d, d.vars[target].id), steps + (v.name,), slot):
                return False

        return True

    explore(src, dst, (), None)
    logger.debug('Checked %d biadmissible sequences up to length %d', report.checked_sequences, depth)
    return report
