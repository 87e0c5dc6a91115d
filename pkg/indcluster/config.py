"""Settings class."""
import os
import logging
from dataclasses import dataclass, replace
from typing import Mapping, Optional

logger = logging.getLogger(__name__)

JOBS_ENV = 'INDCLUSTER_JOBS'


@dataclass(frozen=True)
class Settings(object):
    """
    Knobs shared by the library defaults and the command line front end.
    """
    jobs: int = 1
    rng_seed: int = 0
    morphism_depth: int = 3
    similarity_bound: int = 12
    oracle_trials: int = 3
    oracle_entry_bound: int = 10 ** 6
    probe_bound: Optional[int] = None

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError('jobs must be at least 1')

        if self.morphism_depth < 0:
            raise ValueError('morphism_depth must be non-negative')

        if self.oracle_trials < 1:
            raise ValueError('oracle_trials must be at least 1')

        if self.similarity_bound < 1:
            raise ValueError('similarity_bound must be at least 1')

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> 'Settings':
        """
        Build settings from the process environment.

        :param environ: Mapping to read instead of `os.environ`.
        :return: A Settings instance.
        """
        environ = os.environ if environ is None else environ

        jobs = 1
        raw = environ.get(JOBS_ENV)
        if raw:
            try:
                jobs = int(raw)
            except ValueError:
                raise ValueError(f'{JOBS_ENV} must be an integer, got {raw!r}')

            logger.debug('Using %d jobs from %s', jobs, JOBS_ENV)

        return cls(jobs=jobs)

    def updated(self, **changes) -> 'Settings':
        """
        Copy of these settings with the given fields replaced. `None` values are ignored.
        """
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
