"""Top-level package for indcluster."""

__author__ = """Marcell Pünkösd"""
__email__ = 'punkosdmarcell@rocketmail.com'
__version__ = '0.1.0'

import logging

from .laurent import LaurentPoly
from .registry import VariableRegistry, default_registry
from .seed import Seed, ClusterVar, ExchangeMatrix, mutate, mutate_seq, exchangeable_components, quiver_to_dot
from .similarity import Similarity, seeds_similar
from .morphism import MeltingMorphismSpec, MorphismReport, check_melting_morphism
from .indseed import DirectedSystem, ConstantSystem, IndSeedWindow, stable_class, attained_entry, ind_seed_window, \
    verify_mutation_commutes
from .partition import Partition, MayaSeq, FrobeniusForm, parse_partition, weakly_separated, partitions_in_box
from .pluecker import PlueckerRelation, MinorsOracle, pluecker_relation, hook_relation, diag_relation, \
    minors_oracle, verify_relation
from .grassmann import rect_seed, q_infty_window, quad_quiver, r_map, square_move, plucker_clusters
from .expansion import laurent_expansion
from .symfunc import SymFuncP, schur_in_p, hall_product, character
from .tau import Tau, PointW, tau_from_point, check_plucker, kp_residual, giambelli_check, positivity_certificate
from .config import Settings

from .exceptions import IndClusterError, LaurentError, SeedError, IndColimitError, GrassmannError, SchurError

logging.getLogger(__name__).addHandler(logging.NullHandler())
