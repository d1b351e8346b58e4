"""Capacity-achieving distributions of discrete memoryless channels.

Solvers for channel capacity, the 1 - 1/e bound on optimal input masses, and
a construction that makes a given input distribution capacity-achieving.
"""
from .construct import (
    ConstructionResult,
    ZChannel,
    construct_channel,
    find_subset,
    solve_delta_for_target,
    z_channel,
    z_optimal_clean_prob,
)
from .core import INV_E, THRESHOLD, Channel, Distribution, validate_channel, validate_distribution
from .errors import CapacityError
from .geom import KktReport, dual_radius, kkt_verify, mixture_coefficients
from .info import (
    FArgs,
    d_mutual_info_binary,
    f_eval,
    f_partials,
    kl_divergence,
    mixture,
    mutual_information,
)
from .solve import (
    CapacityResult,
    CostSpec,
    binary_optimal_input,
    blahut_arimoto,
    constrained_binary_capacity,
)
from .verify import BoundReport, EnsembleConfig, ensemble_run, f_surface, verify_bound

__version__ = "0.1.0"
