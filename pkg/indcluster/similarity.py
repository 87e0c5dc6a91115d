"""Similarity class."""
import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import networkx as nx
from networkx.algorithms import isomorphism

from .exceptions import SearchTooLargeError
from .seed import Seed, exchangeable_components

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 12


@dataclass
class Similarity(object):
    """
    Witness of similarity: a bijection of variable names and a sign per exchangeably connected component,
    keyed by the first exchangeable variable of the component in the source seed. The witness is strong when
    the bijection is the identity; signs may still be -1.
    """
    mapping: Dict[str, str]
    signs: Dict[str, int] = field(default_factory=dict)

    @property
    def strong(self) -> bool:
        """True when the bijection is the identity."""
        return all(k == v for k, v in self.mapping.items())

    @property
    def positive(self) -> bool:
        """True when every component sign is +1."""
        return all(s == 1 for s in self.signs.values())


def _check_bijection(a: Seed, b: Seed, phi: Mapping[str, str]) -> Optional[Similarity]:
    if set(phi) != set(a.names) or sorted(phi.values()) != sorted(b.names):
        logger.debug('Not a bijection between the clusters')
        return None

    for v in a.vars:
        if (v.id in a.ex) != b.is_exchangeable(phi[v.name]):
            logger.debug('%s and %s differ in exchangeability', v.name, phi[v.name])
            return None

    signs = {}
    for component in exchangeable_components(a):
        sign = None
        for u in (w for w in component.vars if w.id in component.ex):
            for v in a.vars:
                b_uv = a.entry(u.id, v.id)
                b_image = b.entry(phi[u.name], phi[v.name])
                if b_uv == 0 and b_image == 0:
                    continue
                if abs(b_uv) != abs(b_image) or b_uv == 0:
                    logger.debug('Entry (%s, %s) is %d against %d', u.name, v.name, b_uv, b_image)
                    return None

                here = 1 if b_uv == b_image else -1
                if sign is None:
                    sign = here
                elif sign != here:
                    logger.debug('Sign changes inside the component of %s', u.name)
                    return None

        key = next(v.name for v in component.vars if v.id in component.ex)
        signs[key] = 1 if sign is None else sign

    return Similarity(dict(phi), signs)


def _signless_graph(seed: Seed) -> nx.Graph:
    graph = nx.Graph()
    for v in seed.vars:
        graph.add_node(v.name, frozen=v.id not in seed.ex)
    for u in seed.vars:
        for v in seed.vars:
            b = seed.entry(u.id, v.id)
            if b > 0:
                graph.add_edge(u.name, v.name, weight=b)

    return graph


def seeds_similar(a: Seed, b: Seed, phi: Optional[Mapping[str, str]] = None,
                  bound: int = DEFAULT_SEARCH_BOUND) -> Optional[Similarity]:
    """
    Decide whether two seeds are similar: a bijection of clusters preserving exchangeability and the exchange
    matrix up to a sign on each exchangeably connected component.

    :param a: Source seed.
    :param b: Target seed.
    :param phi: Bijection of variable names to verify. Without it, one is searched for.
    :param bound: Largest cluster size for which a search is attempted.
    :return: The witness, or None if the seeds are not similar (through phi).
    :raises SearchTooLargeError: if phi is omitted and the seeds exceed the bound.
    """
    if phi is not None:
        return _check_bijection(a, b, phi)

    if len(a) != len(b) or len(a.ex) != len(b.ex):
        return None

    if len(a) > bound:
        logger.warning('Seeds of %d variables exceed the similarity bound %d', len(a), bound)
        raise SearchTooLargeError(f'Similarity search is limited to {bound} variables, got {len(a)}')

    ga, gb = _signless_graph(a), _signless_graph(b)
    matcher = isomorphism.GraphMatcher(
        ga, gb,
        node_match=isomorphism.categorical_node_match('frozen', False),
        edge_match=isomorphism.numerical_edge_match('weight', 1),
    )

    tried = 0
    for candidate in matcher.isomorphisms_iter():
        tried += 1
        found = _check_bijection(a, b, candidate)
        if found is not None:
            logger.debug('Similarity found after %d candidates', tried)
            return found

    logger.debug('No similarity among %d candidates', tried)
    return None
