"""Laurent expansions of Plücker variables in the rectangle cluster."""
import logging
import random
import threading
from collections import deque
from typing import Dict, List, Optional, Tuple

from .exceptions import (DoesNotFitBoxError, NotQuadrilateralError, OracleMismatchError, SearchExhaustedError,
                         ZeroToNegativePowerError)
from .grassmann import label_set, rect_seed, square_move
from .laurent import LaurentPoly
from .partition import Partition, as_partition
from .pluecker import MinorsOracle
from .seed import Seed, mutate, mutate_seq

logger = logging.getLogger(__name__)

_cache: Dict[Tuple[Partition, int, int], LaurentPoly] = {}
_cache_lock = threading.Lock()


def _distance(label: Partition, target: Partition) -> int:
    rows = max(len(label), len(target))
    return sum(abs(label[i] - target[i]) for i in range(rows))


def find_path(target: Partition, m: int, n: int, max_states: int = 100000) -> List[str]:
    """
    Shortest sequence of square moves from Q(m, n) to a cluster containing the target label.

    Moves at vertices whose labels are closest to the target are tried first.

    :return: Names of the mutated variables, in order.
    :raises SearchExhaustedError: if no cluster contains the label.
    """
    start = rect_seed(m, n)
    if target in label_set(start):
        return []

    queue = deque([(start, [])])
    seen = {label_set(start)}
    while queue:
        seed, path = queue.popleft()
        candidates = []
        for v in seed.vars:
            if v.id not in seed.ex:
                continue
            try:
                new_label = square_move(seed, v.id)
            except NotQuadrilateralError:
                continue
            candidates.append((_distance(new_label, target), seed.slot(v.id), v, new_label))

        for _, _, v, new_label in sorted(candidates, key=lambda c: (c[0], c[1])):
            nxt = mutate(seed, v.id, expressions=False)
            if new_label == target:
                logger.debug('Found %s after %d square moves', target, len(path) + 1)
                return path + [v.name]

            key = label_set(nxt)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > max_states:
                logger.warning('Search for %s stopped at %d clusters', target, max_states)
                raise SearchExhaustedError(f'Gave up on {target} after {max_states} clusters')
            queue.append((nxt, path + [v.name]))

    raise SearchExhaustedError(f'No Plücker cluster of Q({m}, {n}) contains {target}')


def _root_values(oracle: MinorsOracle, seed: Seed) -> Dict[int, object]:
    return {v.id: oracle(as_partition(v.label)) for v in seed.vars}


def check_expansion(expr: LaurentPoly, label: Partition, m: int, n: int, trials: int = 3,
                    rng: Optional[random.Random] = None, bound: int = 10 ** 6) -> None:
    """
    Compare an expansion in the variables of Q(m, n) with the minor d_label of `trials` random integer matrices.
    Matrices with a vanishing rectangle minor are resampled.

    :raises OracleMismatchError: on the first disagreement.
    """
    start = rect_seed(m, n)
    rng = rng or random.Random(0)
    done = 0
    while done < trials:
        oracle = MinorsOracle.random(m, n, rng, bound)
        try:
            value = expr.evaluate(_root_values(oracle, start))
        except ZeroToNegativePowerError:
            logger.debug('Resampling: a rectangle minor vanished')
            continue

        if value != oracle(label):
            raise OracleMismatchError(f'Expansion of {label} disagrees with the minors: {value} != {oracle(label)}')
        done += 1


def laurent_expansion(label: Partition, m: int, n: int, trials: int = 3, rng: Optional[random.Random] = None,
                      bound: int = 10 ** 6) -> LaurentPoly:
    """
    The Laurent polynomial F_lambda expressing d_lambda in the variables of Q(m, n).

    The expansion is found by replaying a shortest square move path and is checked against the minors of
    `trials` random integer matrices before it is returned.

    :raises DoesNotFitBoxError: if the label does not fit the m x n box.
    :raises OracleMismatchError: if the expansion disagrees with the minors.
    """
    if not label.fits(m, n):
        raise DoesNotFitBoxError(f'{label} does not fit the {m}x{n} box')

    key = (label, m, n)
    found = _cache.get(key)
    if found is not None:
        return found

    path = find_path(label, m, n)
    expr = mutate_seq(rect_seed(m, n), path).by_label(label).expr
    check_expansion(expr, label, m, n, trials, rng, bound)

    logger.info('Laurent expansion of %s in Q(%d, %d) found after %d square moves', label, m, n, len(path))
    with _cache_lock:
        _cache[key] = expr

    return expr
