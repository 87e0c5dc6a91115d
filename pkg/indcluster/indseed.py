"""Ind-seeds of directed systems of seeds."""
import abc
import enum
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .exceptions import (IndexOutOfRangeError, LiftFailedError, NotExchangeableError, UnknownVariableError,
                         UnstableWindowError)
from .laurent import LaurentPoly
from .morphism import MeltingMorphismSpec
from .seed import ClusterVar, ExchangeMatrix, Seed
from .similarity import Similarity, seeds_similar

logger = logging.getLogger(__name__)


class DirectedSystem(abc.ABC):
    """
    A chain of seeds seed(start) -> seed(start + 1) -> ... joined by melting cluster morphisms.

    Subclasses build the seed and the morphism of each level; both must depend on the level only.
    """

    name = 'system'
    start = 0
    probe_bound = 6

    def __init__(self) -> None:
        self._seeds: Dict[int, Seed] = {}
        self._morphisms: Dict[int, MeltingMorphismSpec] = {}
        self._lock = threading.Lock()

    @abc.abstractmethod
    def seed_at(self, n: int) -> Seed:
        """Build the seed of level n."""

    @abc.abstractmethod
    def morphism_at(self, n: int) -> MeltingMorphismSpec:
        """Build the morphism from level n to level n + 1."""

    def stability_hint(self, name: str, n: int, bound: int) -> Optional['StableClass']:
        """Analytic answer to :func:`stable_class`, when the system knows one."""
        return None

    def _check_level(self, n: int) -> None:
        if n < self.start:
            raise IndexOutOfRangeError(f'{self.name} starts at level {self.start}, got {n}')

    def seed(self, n: int) -> Seed:
        self._check_level(n)
        found = self._seeds.get(n)
        if found is None:
            found = self.seed_at(n)
            with self._lock:
                found = self._seeds.setdefault(n, found)

        return found

    def morphism(self, n: int) -> MeltingMorphismSpec:
        self._check_level(n)
        found = self._morphisms.get(n)
        if found is None:
            found = self.morphism_at(n)
            with self._lock:
                found = self._morphisms.setdefault(n, found)

        return found

    def images_at(self, level: int, bound: int) -> Dict[str, Union[str, int]]:
        """
        Image at level `bound` of every variable of level `level`: a variable name or an integer.
        """
        self._check_level(level)
        if bound < level:
            raise IndexOutOfRangeError(f'Bound {bound} lies below level {level}')

        current: Dict[str, Union[str, int]] = {name: name for name in self.seed(level).names}
        for k in range(level, bound):
            f = self.morphism(k)
            current = {name: (image if isinstance(image, int) else f(image)) for name, image in current.items()}

        return current


class ConstantSystem(DirectedSystem):
    """Every level is the same seed; every morphism is the identity."""

    name = 'constant'
    start = 0
    probe_bound = 3

    def __init__(self, seed: Seed) -> None:
        super().__init__()
        self.base = seed

    def seed_at(self, n: int) -> Seed:
        return self.base

    def morphism_at(self, n: int) -> MeltingMorphismSpec:
        return MeltingMorphismSpec.identity(self.base)

    def stability_hint(self, name: str, n: int, bound: int) -> Optional['StableClass']:
        return StableClass(ClassStatus.STABLE, (name,) * (bound - n + 1))


class MutatedSystem(DirectedSystem):
    """
    The system obtained by mutating every level from `start` on at the given slots.

    Morphisms are carried over slot by slot.
    """

    def __init__(self, base: DirectedSystem, start: int, slots: Dict[int, Sequence[int]]) -> None:
        """
        :param base: The system to mutate.
        :param start: First level of the mutated system.
        :param slots: Per level, the slots to mutate at, in order.
        """
        super().__init__()
        self.base = base
        self.start = start
        self.probe_bound = base.probe_bound
        self.name = f'mutated {base.name}'
        self._slots = slots

    def seed_at(self, n: int) -> Seed:
        seed = self.base.seed(n)
        for slot in self._slots[n]:
            seed = seed.mutate(seed.vars[slot].id, expressions=False)

        return seed

    def morphism_at(self, n: int) -> MeltingMorphismSpec:
        base_src, base_dst = self.base.seed(n), self.base.seed(n + 1)
        src, dst = self.seed(n), self.seed(n + 1)
        f = self.base.morphism(n)

        image: Dict[str, Union[str, int]] = {}
        for slot, v in enumerate(base_src.vars):
            target = f(v.name)
            image[src.vars[slot].name] = target if isinstance(target, int) else dst.vars[base_dst.slot(target)].name

        return MeltingMorphismSpec(image)


#
# Stable classes
#

class ClassStatus(enum.Enum):
    STABLE = 'stable'
    SPECIALIZED = 'specialized'
    UNSTABLE = 'unstable'


@dataclass(frozen=True)
class StableClass(object):
    """
    Fate of a variable along the chain: its names level by level, and the integer it specialises to, if any.
    """
    status: ClassStatus
    trace: Tuple[str, ...]
    value: Optional[int] = None

    @property
    def key(self) -> Optional[str]:
        """Name of the class at the last probed level."""
        return self.trace[-1] if self.status == ClassStatus.STABLE else None


def stable_class(system: DirectedSystem, n: int, x: str, bound: Optional[int] = None) -> StableClass:
    """
    Follow a variable of level n through the chain up to level `bound`.

    :raises IndexOutOfRangeError: if n precedes the chain or exceeds the bound.
    :raises UnknownVariableError: if x is not a variable of level n.
    """
    bound = system.probe_bound if bound is None else bound
    system._check_level(n)
    if bound < n:
        raise IndexOutOfRangeError(f'Bound {bound} lies below level {n}')

    name = system.seed(n).var(x).name
    hint = system.stability_hint(name, n, bound)
    if hint is not None:
        return hint

    trace = [name]
    for k in range(n, bound):
        image = system.morphism(k)(trace[-1])
        if image is None:
            raise UnknownVariableError(f'{trace[-1]} has no image at level {k + 1}')
        if isinstance(image, int):
            return StableClass(ClassStatus.SPECIALIZED, tuple(trace), image)
        trace.append(image)

    return StableClass(ClassStatus.STABLE, tuple(trace))


#
# Attainment
#

class EntryStatus(enum.Enum):
    ZERO = 'zero'
    ATTAINED = 'attained'
    UNSTABLE = 'unstable'


@dataclass(frozen=True)
class AttainmentCertificate(object):
    """
    How an entry of the ind-seed matrix was found: its magnitude, the first level from which it holds and the
    representatives realising it there. `sign` is the sign of the entry at the probe bound.
    """
    status: EntryStatus
    value: int = 0
    attained_at: Optional[int] = None
    witnesses: Optional[Tuple[str, str]] = None
    sign: int = 0

    def to_json(self) -> Dict[str, Any]:
        return {
            'status': self.status.value,
            'value': self.value,
            'attained_at': self.attained_at,
            'witnesses': list(self.witnesses) if self.witnesses else None,
            'sign': self.sign,
        }


class _Probe(object):
    """Class representatives of every level up to a bound."""

    def __init__(self, system: DirectedSystem, bound: int) -> None:
        self.system = system
        self.bound = bound
        self.levels = list(range(system.start, bound + 1))
        self._reps: Dict[int, Dict[str, List[str]]] = {}

    def reps(self, level: int) -> Dict[str, List[str]]:
        found = self._reps.get(level)
        if found is None:
            found = {}
            for name, image in self.system.images_at(level, self.bound).items():
                if isinstance(image, str):
                    found.setdefault(image, []).append(name)
            self._reps[level] = found

        return found

    def exchangeable_rep(self, level: int, key: str) -> Optional[str]:
        seed = self.system.seed(level)
        found = [name for name in self.reps(level).get(key, []) if seed.is_exchangeable(name)]
        return found[0] if len(found) == 1 else None

    def entry(self, level: int, x: str, y: str) -> Optional[Tuple[int, Optional[Tuple[str, str]]]]:
        """Entry (x, y) at a level with its witnesses, or None if it is not well defined there."""
        x_rep = self.exchangeable_rep(level, x)
        if x_rep is None:
            return None

        seed = self.system.seed(level)
        nonzero = [(seed.entry(x_rep, y_rep), y_rep) for y_rep in self.reps(level).get(y, [])
                   if seed.entry(x_rep, y_rep)]
        if len(nonzero) > 1:
            return None
        if not nonzero:
            return 0, None

        return nonzero[0][0], (x_rep, nonzero[0][1])


def _certify(probe: _Probe, x: str, y: str) -> Tuple[AttainmentCertificate, Dict[int, Tuple[int, Any]]]:
    entries = {}
    for level in reversed(probe.levels):
        found = probe.entry(level, x, y)
        if found is None:
            break
        if entries and abs(found[0]) != abs(entries[probe.bound][0]):
            break
        entries[level] = found

    if not entries:
        return AttainmentCertificate(EntryStatus.UNSTABLE), entries

    first = min(entries)
    value, _ = entries[probe.bound]
    if value == 0:
        return AttainmentCertificate(EntryStatus.ZERO, 0, first), entries

    return AttainmentCertificate(EntryStatus.ATTAINED, abs(value), first, entries[first][1],
                                 1 if value > 0 else -1), entries


def attained_entry(system: DirectedSystem, x: str, y: str, bound: Optional[int] = None) -> AttainmentCertificate:
    """
    Certify the entry (x, y) of the ind-seed matrix. Classes are named by their variable at the probe bound.

    The entry is attained at level l when, on every level from l to the bound, x has a unique exchangeable
    representative, exactly one representative of y meets it, and the magnitude does not change.
    """
    bound = system.probe_bound if bound is None else bound
    return _certify(_Probe(system, bound), x, y)[0]


#
# Windows
#

@dataclass
class IndSeedWindow(object):
    """
    Finite restriction of the ind-seed of a directed system, with the certificates of its entries.
    """
    seed: Seed
    certificates: Dict[Tuple[str, str], AttainmentCertificate]
    sign_choices: Dict[str, Optional[Tuple[str, str]]]
    uniform_level: int
    column_uniform_levels: Dict[str, int]
    bound: int
    system: str = ''
    classes: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return self.seed.to_json()

    def certificates_json(self) -> Dict[str, Any]:
        return {
            'system': self.system,
            'bound': self.bound,
            'uniform_level': self.uniform_level,
            'column_uniform_levels': dict(self.column_uniform_levels),
            'sign_choices': {k: list(v) if v else None for k, v in self.sign_choices.items()},
            'entries': [dict(row=r, col=c, **cert.to_json()) for (r, c), cert in self.certificates.items()],
        }


def _column_uniform_level(probe: _Probe, rows: List[str], y: str, per_row: Dict[str, Dict[int, Tuple[int, Any]]],
                          attained: Dict[str, int]) -> int:
    level = probe.bound
    for k in reversed(probe.levels):
        used = set()
        for x in rows:
            if k < attained.get(x, probe.bound + 1):
                return level
            witnesses = per_row[x].get(k, (0, None))[1]
            if witnesses is not None:
                used.add(witnesses[1])
        if len(used) > 1:
            return level
        level = k

    return level


def ind_seed_window(system: DirectedSystem, classes: Iterable[str], bound: Optional[int] = None,
                    jobs: int = 1) -> IndSeedWindow:
    """
    Materialise the ind-seed on finitely many classes, named by their variables at the probe bound.

    Every entry is certified; per exchangeably connected component, the smallest (row, column) pair by name
    with a nonzero entry fixes the orientation so that this entry is positive.

    :raises UnstableWindowError: carrying the first pair whose entry does not stabilise.
    """
    bound = system.probe_bound if bound is None else bound
    probe = _Probe(system, bound)
    top = system.seed(bound)
    keys = [top.var(c).name for c in classes]
    members = set(keys)
    ex_keys = [k for k in keys if top.is_exchangeable(k)]

    pairs = [(x, y) for x in ex_keys for y in keys if x != y]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda pair: _certify(probe, *pair), pairs))

    certificates: Dict[Tuple[str, str], AttainmentCertificate] = {}
    levels: Dict[Tuple[str, str], Dict[int, Tuple[int, Any]]] = {}
    for pair, (cert, entries) in zip(pairs, results):
        if cert.status == EntryStatus.UNSTABLE:
            raise UnstableWindowError(f'Entry {pair} does not stabilise up to level {bound}', pair=pair)
        levels[pair] = entries
        if cert.status == EntryStatus.ATTAINED:
            certificates[pair] = cert

    graph = nx.Graph()
    graph.add_nodes_from(ex_keys)
    graph.add_edges_from((x, y) for (x, y) in certificates if y in ex_keys)

    rows: Dict[str, Dict[str, int]] = {x: {} for x in ex_keys}
    sign_choices: Dict[str, Optional[Tuple[str, str]]] = {}
    for component in sorted(nx.connected_components(graph), key=lambda c: keys.index(min(c, key=keys.index))):
        component_pairs = sorted(pair for pair in certificates if pair[0] in component)
        label = min(component, key=keys.index)
        if not component_pairs:
            sign_choices[label] = None
            continue

        chosen = component_pairs[0]
        sign_choices[label] = chosen
        orientation = certificates[chosen].sign
        for pair in component_pairs:
            _check_alignment(levels, chosen, pair)
            cert = certificates[pair]
            rows[pair[0]][pair[1]] = orientation * cert.sign * cert.value

    column_levels = {}
    for y in keys:
        rows_here = [x for x in ex_keys if (x, y) in certificates]
        attained = {x: certificates[(x, y)].attained_at for x in rows_here}
        per_row = {x: levels[(x, y)] for x in rows_here}
        column_levels[y] = _column_uniform_level(probe, rows_here, y, per_row, attained) if rows_here else \
            system.start

    uniform = max([c.attained_at for c in certificates.values()] + list(column_levels.values()) + [system.start])

    locked = []
    for x in ex_keys:
        if any(top.registry.name(v) not in members for v in top.neighbours(x)):
            locked.append(x)

    registry = top.registry
    cluster = []
    for key in keys:
        v = top.var(key)
        cluster.append(ClusterVar(v.id, v.name, LaurentPoly.variable(v.id), key not in ex_keys, v.label))
    ex_ids = frozenset(registry.id(x) for x in ex_keys)
    matrix = ExchangeMatrix({registry.id(x): {registry.id(y): b for y, b in row.items()} for x, row in rows.items()})
    seed = Seed(tuple(cluster), ex_ids, matrix, initial_ex=ex_ids,
                locked=frozenset(registry.id(x) for x in locked), namer=top.namer, registry=registry)

    report = seed.validate()
    if not report:
        raise UnstableWindowError(f'Window is not a seed: {report.violations[0]}')

    logger.info('Window of %d classes on %s is uniformly attained at level %d', len(keys), system.name, uniform)
    return IndSeedWindow(seed, certificates, sign_choices, uniform, column_levels, bound, system.name, keys)


def _check_alignment(levels: Dict[Tuple[str, str], Dict[int, Tuple[int, Any]]], chosen: Tuple[str, str],
                     pair: Tuple[str, str]) -> None:
    common = set(levels[chosen]) & set(levels[pair])
    relative = {(levels[chosen][k][0] > 0) == (levels[pair][k][0] > 0) for k in common}
    if len(relative) > 1:
        raise UnstableWindowError(f'Sign of {pair} against {chosen} changes along the chain', pair=pair)


#
# Mutation
#

@dataclass
class CommutationReport(object):
    """
    Outcome of :func:`verify_mutation_commutes`. Truthy iff both routes give strongly similar seeds.
    """
    passed: bool
    direct: Optional[Seed] = None
    lifted: Optional[Seed] = None
    similarity: Optional[Similarity] = None
    lift_level: Optional[int] = None
    message: str = ''

    def __bool__(self) -> bool:
        return self.passed


def lift_steps(system: DirectedSystem, window: IndSeedWindow, steps: Sequence,
               bound: int) -> Tuple[int, Dict[int, List[int]]]:
    """
    Slots to mutate at on each level so that the chain follows a mutation sequence of the window.

    :return: The first level from which every step has a unique exchangeable representative, and the slots.
    :raises LiftFailedError: if no such level exists up to the bound.
    """
    probe = _Probe(system, bound)
    seed = window.seed
    keys = []
    for step in steps:
        slot = seed.slot(step)
        keys.append(window.classes[slot])
        seed = seed.mutate(step)

    start = None
    for level in reversed(probe.levels):
        if any(probe.exchangeable_rep(level, key) is None for key in keys):
            break
        start = level

    if start is None:
        raise LiftFailedError(f'The steps do not lift to level {bound}')

    slots = {}
    for level in range(start, bound + 1):
        base = system.seed(level)
        slots[level] = [base.slot(probe.exchangeable_rep(level, key)) for key in keys]

    return start, slots


def verify_mutation_commutes(system: DirectedSystem, window: IndSeedWindow, steps: Sequence,
                             bound: Optional[int] = None) -> CommutationReport:
    """
    Mutate a window directly, and separately mutate the chain and materialise the window again; both results
    must be strongly similar: the slot correspondence is the identity on names and signs may differ per component.

    :raises LiftFailedError: if a step has no unique representative along the chain.
    """
    bound = window.bound if bound is None else bound
    try:
        direct = window.seed.mutate_seq(steps)
    except NotExchangeableError as e:
        return CommutationReport(False, message=f'Direct mutation failed: {e}')

    if not steps:
        return CommutationReport(True, direct, window.seed, seeds_similar(direct, window.seed,
                                                                         {n: n for n in direct.names}))

    start, slots = lift_steps(system, window, steps, bound)
    mutated = MutatedSystem(system, start, slots)

    top, mutated_top = system.seed(bound), mutated.seed(bound)
    keys = [mutated_top.vars[top.slot(key)].name for key in window.classes]
    lifted = ind_seed_window(mutated, keys, bound).seed

    phi = {direct.vars[slot].name: lifted.vars[slot].name for slot in range(len(direct))}
    similarity = seeds_similar(direct, lifted, phi)
    if similarity is None:
        return CommutationReport(False, direct, lifted, None, start, 'Mutated window and mutated chain differ')
    if not similarity.strong:
        return CommutationReport(False, direct, lifted, similarity, start,
                                 'Mutated window and mutated chain disagree on variable names')

    logger.info('Mutation along %s commutes with the colimit (lifted from level %d)', list(steps), start)
    return CommutationReport(True, direct, lifted, similarity, start)
