"""Random permutation laws, their couplings, and their limit objects.

Submodules:
    perms     one-line words, cycles, descents, monotone subsequences
    young     diagrams, insertion shapes, rotated height profiles
    sampling  exact samplers and mass functions for invariant laws
    coupling  the cycle-merging step and exact small-group analysis
    dpp       determinantal descent correlations and their kernel
    limits    limit curve, Airy kernel, Tracy-Widom edge law
    harness   seed-deterministic experiments, KS statistics, CSV
"""
from .perms import (
    Permutation,
    compose,
    conjugate,
    cycle_count,
    cycle_type,
    cycles,
    descent_count,
    descent_set,
    identity,
    inverse,
    lds_length,
    lis_length,
    project,
    reverse_values,
    transposition,
)
from .rng import RngStream
from .sampling import (
    CycleWeights,
    StickVector,
    central_pmf,
    ewens_pmf,
    sample_central,
    sample_diluted,
    sample_ewens,
    sample_gen_ewens,
    sample_poisson_dirichlet,
    sample_uniform,
)
from .young import YoungDiagram, greene_union_size, height_profile, rsk_shape
from .coupling import merge_step, merge_steps, merge_to_single_cycle, transition_matrix
from .dpp import block_correlation, correlation_determinant, descent_kernel
from .limits import airy_ai, airy_ai_prime, rescale_edge, tracy_widom_cdf, vkls_curve, vkls_sup_distance
from .harness import ExperimentSpec, run

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
