"""Seed class."""
import hashlib
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .exceptions import (InvalidSeedError, NotExchangeableError, NotSkewSymmetricError, UnknownVariableError,
                         WindowBoundaryError)
from .laurent import LaurentPoly
from .registry import VariableRegistry, default_registry

logger = logging.getLogger(__name__)

# namer(seed, x_id) -> (name, label) of the variable replacing x, or None
Namer = Callable[['Seed', int], Optional[Tuple[str, Any]]]


@dataclass(frozen=True)
class ClusterVar(object):
    """
    ClusterVar object represents a cluster variable sitting in a slot of a seed.

    `expr` is the expression in the variables of the root seed. It is None for seeds mutated in label-only mode.
    """
    id: int
    name: str
    expr: Optional[LaurentPoly]
    frozen: bool = False
    label: Any = field(default=None, compare=False)


class ExchangeMatrix(object):
    """
    Sparse integer matrix with rows indexed by exchangeable variables. Zero entries are never stored.
    """

    __slots__ = ('_rows',)

    def __init__(self, rows: Optional[Mapping[int, Mapping[int, int]]] = None) -> None:
        self._rows: Dict[int, Dict[int, int]] = {}
        for row, cols in (rows or {}).items():
            cleaned = {col: int(value) for col, value in cols.items() if value}
            if cleaned:
                self._rows[row] = cleaned

    def entry(self, row: int, col: int) -> int:
        return self._rows.get(row, {}).get(col, 0)

    def row(self, row: int) -> Dict[int, int]:
        return dict(self._rows.get(row, {}))

    def row_ids(self) -> FrozenSet[int]:
        return frozenset(self._rows)

    def items(self) -> Iterator[Tuple[int, int, int]]:
        for row, cols in self._rows.items():
            for col, value in cols.items():
                yield row, col, value

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented

        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(frozenset(self.items()))

    def __repr__(self) -> str:
        return f'ExchangeMatrix({self._rows!r})'


@dataclass
class ValidationReport(object):
    """
    Outcome of :func:`Seed.validate`. Truthy iff the seed is valid. Warnings do not invalidate.
    """
    violations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Seed(object):
    """
    Seed object represents a seed (cluster, exchangeable subset, exchange matrix) of a rooted cluster algebra.

    Variables live in ordered slots; mutation replaces the variable of one slot and keeps the slot.
    Seeds are immutable and safe to share between threads.
    """
    vars: Tuple[ClusterVar, ...]
    ex: FrozenSet[int]
    matrix: ExchangeMatrix
    history: Tuple[str, ...] = field(default=(), compare=False)
    initial_ex: FrozenSet[int] = field(default=frozenset(), compare=False)
    locked: FrozenSet[int] = frozenset()
    namer: Optional[Namer] = field(default=None, compare=False, repr=False)
    registry: VariableRegistry = field(default=default_registry, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, '_by_id', {v.id: v for v in self.vars})
        object.__setattr__(self, '_by_name', {v.name: v for v in self.vars})
        object.__setattr__(self, '_slots', {v.id: slot for slot, v in enumerate(self.vars)})

    #
    # Construction
    #

    @classmethod
    def from_arrows(cls, names: Sequence[str], ex: Iterable[str], arrows: Iterable[Tuple[str, str, int]],
                    labels: Optional[Mapping[str, Any]] = None, locked: Iterable[str] = (),
                    namer: Optional[Namer] = None, registry: Optional[VariableRegistry] = None) -> 'Seed':
        """
        Build a root seed from an ice quiver.

        :param names: Variable names in slot order.
        :param ex: Names of the exchangeable variables.
        :param arrows: Triples (tail, head, multiplicity). Arrows between two frozen variables are ignored.
        :param labels: Optional structured labels by name.
        :param locked: Exchangeable variables that refuse mutation (window boundary).
        :param namer: Hook naming variables created by mutation.
        :param registry: Variable registry, the default one if omitted.
        :return: The seed.
        """
        registry = registry or default_registry
        ex_names = set(ex)
        ids = {name: registry.register(name) for name in names}

        missing = ex_names - set(ids)
        if missing:
            raise InvalidSeedError(f'Exchangeable variables not in the cluster: {sorted(missing)}')

        rows: Dict[int, Dict[int, int]] = {ids[name]: {} for name in ex_names}
        for tail, head, mult in arrows:
            if tail not in ids or head not in ids:
                raise InvalidSeedError(f'Arrow {tail} -> {head} leaves the cluster')

            if tail not in ex_names and head not in ex_names:
                logger.debug('Dropping frozen-frozen arrow %s -> %s', tail, head)
                continue

            if tail in ex_names:
                rows[ids[tail]][ids[head]] = rows[ids[tail]].get(ids[head], 0) + mult
            if head in ex_names:
                rows[ids[head]][ids[tail]] = rows[ids[head]].get(ids[tail], 0) - mult

        labels = labels or {}
        cluster = tuple(
            ClusterVar(ids[name], name, LaurentPoly.variable(ids[name]), name not in ex_names, labels.get(name))
            for name in names
        )
        ex_ids = frozenset(ids[name] for name in ex_names)

        return cls(cluster, ex_ids, ExchangeMatrix(rows), initial_ex=ex_ids,
                   locked=frozenset(ids[name] for name in locked), namer=namer, registry=registry)

    @classmethod
    def from_json(cls, data: Mapping[str, Any], label_parser: Optional[Callable[[str], Any]] = None,
                  namer: Optional[Namer] = None, registry: Optional[VariableRegistry] = None) -> 'Seed':
        """
        Read a seed from its JSON form ``{vars: [{name, label?, frozen, expr?}], ex: [names], B: [[row, col, int]]}``.
        """
        registry = registry or default_registry
        try:
            ex_names = set(data['ex'])
            cluster = []
            for item in data['vars']:
                var_id = registry.register(item['name'])
                expr = LaurentPoly.from_json(item['expr'], registry) if 'expr' in item else \
                    LaurentPoly.variable(var_id)
                label = item.get('label')
                if label is not None and label_parser is not None:
                    label = label_parser(label)
                frozen = bool(item.get('frozen', item['name'] not in ex_names))
                cluster.append(ClusterVar(var_id, item['name'], expr, frozen, label))

            rows: Dict[int, Dict[int, int]] = {}
            for row, col, value in data.get('B', []):
                rows.setdefault(registry.register(row), {})[registry.register(col)] = int(value)
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidSeedError(f'Malformed seed document: {e}')

        ex_ids = frozenset(registry.register(name) for name in ex_names)
        if 'initial_ex' in data:
            initial_ex = frozenset(registry.register(name) for name in data['initial_ex'])
        else:
            initial_ex = frozenset(v.id for v in cluster if v.id in ex_ids and v.expr == LaurentPoly.variable(v.id))

        return cls(tuple(cluster), ex_ids, ExchangeMatrix(rows), history=tuple(data.get('history', [])),
                   initial_ex=initial_ex, locked=frozenset(registry.register(n) for n in data.get('locked', [])),
                   namer=namer, registry=registry)

    def to_json(self) -> Dict[str, Any]:
        name = self.registry.name
        variables = []
        for v in self.vars:
            item: Dict[str, Any] = {'name': v.name, 'frozen': v.frozen}
            if v.label is not None:
                item['label'] = str(v.label)
            if v.expr is not None and v.expr != LaurentPoly.variable(v.id):
                item['expr'] = v.expr.to_json(self.registry)
            variables.append(item)

        data: Dict[str, Any] = {
            'vars': variables,
            'ex': [v.name for v in self.vars if v.id in self.ex],
            'B': [[name(r), name(c), b] for r, c, b in sorted(self.matrix.items(), key=self._entry_order)],
        }
        if self.history:
            data['history'] = list(self.history)
        if self.locked:
            data['locked'] = [v.name for v in self.vars if v.id in self.locked]
        if self.initial_ex != frozenset(v.id for v in self.vars if v.id in self.ex and v.expr is not None and
                                        v.expr == LaurentPoly.variable(v.id)):
            data['initial_ex'] = sorted(name(v) for v in self.initial_ex)

        return data

    def _entry_order(self, item: Tuple[int, int, int]) -> Tuple[int, int]:
        return self._slots.get(item[0], len(self.vars)), self._slots.get(item[1], len(self.vars))

    #
    # Lookup
    #

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.vars]

    def __len__(self) -> int:
        return len(self.vars)

    def __contains__(self, token) -> bool:
        try:
            self.resolve(token)
        except UnknownVariableError:
            return False

        return True

    def resolve(self, token) -> int:
        """
        VarId of a variable of this seed given by id, name, ClusterVar or label.

        :raises UnknownVariableError: if no variable matches.
        """
        if isinstance(token, ClusterVar):
            token = token.id

        if isinstance(token, int) and not isinstance(token, bool):
            if token in self._by_id:
                return token
        elif isinstance(token, str):
            if token in self._by_name:
                return self._by_name[token].id
        else:
            found = self.by_label(token)
            if found is not None:
                return found.id

        raise UnknownVariableError(f'{token!r} is not a variable of this seed')

    def var(self, token) -> ClusterVar:
        return self._by_id[self.resolve(token)]

    def slot(self, token) -> int:
        return self._slots[self.resolve(token)]

    def by_label(self, label) -> Optional[ClusterVar]:
        for v in self.vars:
            if v.label is not None and v.label == label:
                return v

        return None

    def is_exchangeable(self, token) -> bool:
        return self.resolve(token) in self.ex

    def entry(self, u, v) -> int:
        """
        Entry b_uv. Rows of frozen variables are read off the exchangeable columns by skew-symmetry.
        """
        u, v = self.resolve(u), self.resolve(v)
        if u in self.ex:
            return self.matrix.entry(u, v)
        if v in self.ex:
            return -self.matrix.entry(v, u)

        return 0

    def neighbours(self, token) -> List[int]:
        """Ids of the B-neighbours, in slot order."""
        x = self.resolve(token)
        found = {c for c in self.matrix.row(x)} if x in self.ex else set()
        found |= {r for r in self.ex if self.matrix.entry(r, x)}
        return sorted(found & set(self._by_id), key=self._slots.get)

    #
    # Validation
    #

    def validate(self) -> ValidationReport:
        """
        Check the seed axioms: dangling ids, rows of frozen variables, frozen-frozen entries and
        skew-symmetrizability of the exchangeable part.

        :return: A report that is empty iff the seed is valid.
        """
        report = ValidationReport()
        name = self._display_name
        known = set(self._by_id)

        if len(known) != len(self.vars):
            report.violations.append('Duplicate variables in the cluster')

        for x in sorted(self.ex - known):
            report.violations.append(f'Dangling exchangeable id {name(x)}')
        for x in sorted(self.locked - self.ex):
            report.violations.append(f'Locked variable {name(x)} is not exchangeable')

        for row, col, _ in self.matrix.items():
            if row not in known:
                report.violations.append(f'Dangling row id {name(row)}')
            elif col not in known:
                report.violations.append(f'Dangling column id {name(col)} in row {name(row)}')
            elif row not in self.ex:
                if col not in self.ex:
                    report.violations.append(f'Entry between frozen variables {name(row)} and {name(col)}')
                else:
                    report.violations.append(f'Row stored for frozen variable {name(row)}')
            elif row == col:
                report.violations.append(f'Nonzero diagonal entry at {name(row)}')

        symmetric = True
        for component in nx.connected_components(self._ex_graph()):
            scale: Dict[int, Fraction] = {}
            for start in component:
                if start in scale:
                    continue
                scale[start] = Fraction(1)
                queue = deque([start])
                while queue:
                    u = queue.popleft()
                    for v, b_uv in self.matrix.row(u).items():
                        if v not in self.ex or v not in known:
                            continue
                        b_vu = self.matrix.entry(v, u)
                        if b_vu == 0 or (b_uv > 0) == (b_vu > 0):
                            report.violations.append(
                                f'Entries at ({name(u)}, {name(v)}) are not sign-skew-symmetric: {b_uv}, {b_vu}')
                            continue
                        if b_uv != -b_vu:
                            symmetric = False

                        # d_u * b_uv = -d_v * b_vu
                        ratio = scale[u] * Fraction(b_uv, -b_vu)
                        if v not in scale:
                            scale[v] = ratio
                            queue.append(v)
                        elif scale[v] != ratio:
                            report.violations.append(
                                f'Exchangeable part is not skew-symmetrizable around ({name(u)}, {name(v)})')

        if not report.violations and not symmetric:
            report.warnings.append('Exchangeable part is skew-symmetrizable but not skew-symmetric')

        return report

    def check_laurent_phenomenon(self) -> List[str]:
        """
        Names of variables whose denominator involves anything but exchangeable root variables.
        """
        offenders = []
        for v in self.vars:
            if v.expr is None:
                continue
            if not v.expr.denominator().variables() <= self.initial_ex:
                offenders.append(v.name)

        return offenders

    def _display_name(self, var_id: int) -> str:
        try:
            return self.registry.name(var_id)
        except UnknownVariableError:
            return f'#{var_id}'

    def _ex_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(x for x in self.ex if x in self._by_id)
        for row, col, _ in self.matrix.items():
            if row in self.ex and col in self.ex and row in self._by_id and col in self._by_id:
                graph.add_edge(row, col)

        return graph

    def require_skew_symmetric(self) -> None:
        for row, col, value in self.matrix.items():
            if col in self.ex and self.matrix.entry(col, row) != -value:
                raise NotSkewSymmetricError(
                    f'b[{self._display_name(row)}, {self._display_name(col)}] = {value} but the transposed entry is '
                    f'{self.matrix.entry(col, row)}')

    #
    # Derived seeds
    #

    def restrict(self, names: Iterable, ex: Optional[Iterable] = None) -> 'Seed':
        """
        Full subseed on the given variables, keeping slot order.
        """
        keep = {self.resolve(n) for n in names}
        ex_ids = self.ex & keep if ex is None else {self.resolve(n) for n in ex}
        rows = {r: {c: b for c, b in self.matrix.row(r).items() if c in keep} for r in ex_ids}
        cluster = tuple(v if (v.id in ex_ids) != v.frozen else
                        ClusterVar(v.id, v.name, v.expr, v.id not in ex_ids, v.label)
                        for v in self.vars if v.id in keep)

        return Seed(cluster, frozenset(ex_ids), ExchangeMatrix(rows), history=self.history,
                    initial_ex=self.initial_ex, locked=self.locked & frozenset(ex_ids), namer=self.namer,
                    registry=self.registry)

    def rerooted(self) -> 'Seed':
        """
        The same seed taken as a new root: every expression becomes the variable itself.
        """
        cluster = tuple(ClusterVar(v.id, v.name, LaurentPoly.variable(v.id), v.frozen, v.label) for v in self.vars)
        return Seed(cluster, self.ex, self.matrix, initial_ex=self.ex, locked=self.locked, namer=self.namer,
                    registry=self.registry)

    def unlocked(self) -> 'Seed':
        return Seed(self.vars, self.ex, self.matrix, self.history, self.initial_ex, frozenset(), self.namer,
                    self.registry)

    def with_namer(self, namer: Optional[Namer]) -> 'Seed':
        return Seed(self.vars, self.ex, self.matrix, self.history, self.initial_ex, self.locked, namer,
                    self.registry)

    def mutate(self, x, expressions: bool = True) -> 'Seed':
        return mutate(self, x, expressions=expressions)

    def mutate_seq(self, steps: Sequence, expressions: bool = True) -> 'Seed':
        return mutate_seq(self, steps, expressions=expressions)


#
# Mutation
#

def _exchange_monomials(seed: Seed, x: int) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Exponents of the two exchange monomials of x: positive-entry neighbours and negative-entry neighbours."""
    row = seed.matrix.row(x)
    positive = {v: b for v, b in row.items() if b > 0}
    negative = {v: -b for v, b in row.items() if b < 0}
    return positive, negative


def _check_row_skew_symmetric(seed: Seed, x: int) -> None:
    for v, b in seed.matrix.row(x).items():
        if v in seed.ex and seed.matrix.entry(v, x) != -b:
            raise NotSkewSymmetricError(
                f'Cannot mutate at {seed.registry.name(x)}: entries with {seed.registry.name(v)} are not '
                f'skew-symmetric')


def mutate(seed: Seed, x, expressions: bool = True) -> Seed:
    """
    Mutate a seed at an exchangeable variable.

    The new variable x' satisfies x' * x = prod(u^b_xu, b_xu > 0) + prod(v^-b_xv, b_xv < 0); the matrix follows
    the Fomin-Zelevinsky rule.

    :param seed: The seed.
    :param x: The variable (id, name, ClusterVar or label).
    :param expressions: Compute the expression of x' in the root variables. With False, only labels and the
        matrix are tracked.
    :return: The mutated seed.
    :raises NotExchangeableError: if x is frozen.
    :raises WindowBoundaryError: if x is locked.
    """
    x_id = seed.resolve(x)
    old = seed.var(x_id)
    if x_id not in seed.ex:
        raise NotExchangeableError(f'{old.name} is frozen')
    if x_id in seed.locked:
        raise WindowBoundaryError(f'{old.name} lies on the window boundary')

    _check_row_skew_symmetric(seed, x_id)
    positive, negative = _exchange_monomials(seed, x_id)
    registry = seed.registry

    expr = None
    name = None
    label = None
    if expressions:
        numerator = LaurentPoly.one()
        for v, b in positive.items():
            numerator = numerator * _expr_of(seed, v) ** b
        rest = LaurentPoly.one()
        for v, b in negative.items():
            rest = rest * _expr_of(seed, v) ** b
        expr = (numerator + rest).div_exact(_expr_of(seed, x_id))

        if expr.is_monomial:
            mono, coeff = expr.single_term()
            if coeff == 1 and len(mono) == 1 and mono[0][1] == 1:
                # a root variable comes back
                name = registry.name(mono[0][0])
                label = _root_label(seed, old, name)

    if name is None and seed.namer is not None:
        named = seed.namer(seed, x_id)
        if named is not None:
            name, label = named

    if name is None:
        if expr is not None:
            digest = expr.fingerprint(registry)
        else:
            digest = hashlib.sha1('/'.join(seed.history + (old.name,)).encode('utf-8')).hexdigest()
        name = f'mu[{old.name}; {digest[:8]}]'

    new_id = registry.register(name)
    if new_id in seed._by_id:
        raise InvalidSeedError(f'Mutation at {old.name} produced {name}, which is already in the cluster')

    logger.debug('Mutated %s into %s', old.name, name)

    def rename(v: int) -> int:
        return new_id if v == x_id else v

    row_x = seed.matrix.row(x_id)
    rows: Dict[int, Dict[int, int]] = {new_id: {v: -b for v, b in row_x.items()}}
    for u in seed.ex:
        if u == x_id:
            continue

        row = seed.matrix.row(u)
        b_ux = row.get(x_id, 0)
        if b_ux:
            for v, b_xv in row_x.items():
                if v != u and b_ux * b_xv > 0:
                    row[v] = row.get(v, 0) + abs(b_ux) * b_xv
            row[x_id] = -b_ux

        rows[u] = {rename(c): b for c, b in row.items() if b}

    cluster = tuple(ClusterVar(new_id, name, expr, False, label) if v.id == x_id else v for v in seed.vars)
    ex_ids = frozenset(rename(v) for v in seed.ex)

    return Seed(cluster, ex_ids, ExchangeMatrix(rows), history=seed.history + (old.name,),
                initial_ex=seed.initial_ex, locked=seed.locked, namer=seed.namer, registry=registry)


def _expr_of(seed: Seed, var_id: int) -> LaurentPoly:
    expr = seed.var(var_id).expr
    if expr is None:
        raise ValueError(f'{seed.registry.name(var_id)} carries no expression; mutate with expressions=False')

    return expr


def _root_label(seed: Seed, old: ClusterVar, name: str) -> Any:
    if seed.namer is not None:
        named = seed.namer(seed, old.id)
        if named is not None and named[0] == name:
            return named[1]

    return None


def mutate_seq(seed: Seed, steps: Sequence, expressions: bool = True) -> Seed:
    """
    Apply an admissible sequence of mutations. Steps are resolved in the seed reached so far.

    :raises NotExchangeableError: carrying the index of the failing step.
    """
    for index, step in enumerate(steps):
        try:
            seed = mutate(seed, step, expressions=expressions)
        except UnknownVariableError:
            raise NotExchangeableError(f'Step {index}: {step!r} is not in the cluster', step=index)
        except NotExchangeableError as e:
            raise type(e)(f'Step {index}: {e}', step=index)

    return seed


def exchange_relation_text(seed: Seed, x) -> str:
    """
    The exchange relation at x in terms of the current cluster, e.g. ``d[2,1]*d[1] = d[2]*d[1,1] + d[]*d[2,2]``.
    """
    x_id = seed.resolve(x)
    mutated = mutate(seed, x_id, expressions=all(v.expr is not None for v in seed.vars))
    new = mutated.vars[seed.slot(x_id)]
    positive, negative = _exchange_monomials(seed, x_id)

    def side(exps: Dict[int, int]) -> str:
        if not exps:
            return '1'
        # factors in slot order
        factors = []
        for v in sorted(exps, key=seed.slot):
            name = seed.registry.name(v)
            factors.append(name if exps[v] == 1 else f'{name}^{exps[v]}')
        return '*'.join(factors)

    return f'{new.name}*{seed.registry.name(x_id)} = {side(positive)} + {side(negative)}'


#
# Components and rendering
#

@dataclass
class Components(object):
    """
    Exchangeably connected components (as restricted seeds) and isolated frozen variables.
    """
    components: List[Seed]
    isolated: List[str]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Seed]:
        return iter(self.components)


def exchangeable_components(seed: Seed) -> Components:
    """
    Decompose a seed into its exchangeably connected components.

    Each component is an exchangeably connected class of exchangeable variables together with all of their
    neighbours. Frozen variables may belong to several components; frozen variables without neighbours are
    reported as isolated.
    """
    graph = seed._ex_graph()
    groups = sorted((sorted(c, key=seed._slots.get) for c in nx.connected_components(graph)),
                    key=lambda c: seed._slots[c[0]])

    components = []
    touched = set()
    for group in groups:
        members = set(group)
        for x in group:
            members.update(seed.neighbours(x))
        touched |= members
        components.append(seed.restrict(members, ex=group))

    isolated = [v.name for v in seed.vars if v.id not in touched and not seed.neighbours(v.id)]
    logger.debug('Found %d components and %d isolated frozen variables', len(components), len(isolated))
    return Components(components, isolated)


def _dot_quote(name: str) -> str:
    return '"' + name.replace('\\', '\\\\').replace('"', '\\"') + '"'


def quiver_to_dot(seed: Seed, name: str = 'seed') -> str:
    """
    Render the ice quiver of a seed in DOT. Frozen vertices are boxed; multiplicities become edge labels.

    :raises NotSkewSymmetricError: if the exchangeable part is not skew-symmetric.
    """
    seed.require_skew_symmetric()

    lines = [f'digraph {_dot_quote(name)} {{']
    for v in seed.vars:
        lines.append(f'  {_dot_quote(v.name)} [shape=box];' if v.id not in seed.ex else f'  {_dot_quote(v.name)};')

    for u in seed.vars:
        for v in seed.vars:
            b = seed.entry(u.id, v.id)
            if b <= 0:
                continue
            edge = f'  {_dot_quote(u.name)} -> {_dot_quote(v.name)}'
            lines.append(f'{edge} [label={b}];' if b > 1 else f'{edge};')

    lines.append('}')
    return '\n'.join(lines) + '\n'
