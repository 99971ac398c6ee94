"""Trap currents, scaling exponents and Fermionic entropy bounds.

A measure on the unit circle drives everything: its Fourier moments feed
the return-amplitude recursion, from which stepwise and Abel-regularized
currents follow; log-log fits extract their scaling exponents; explicit
matrix models verify the moment routes; and the quasi-free entropy
machinery ties the trapped count to a dynamical entropy lower bound.
"""

__version__ = "0.1.0"

from .baselines import WalkCurrentPoint, diffusion_current, rw_current, rw_first_passage
from .dynamics import (
    CurrentSeries,
    DiskSample,
    asymptotic_current_ac,
    bridge_mesh_size,
    current_from_measure,
    current_series,
    dyadic_ladder,
    g_on_circle,
    jtilde_integral,
    jtilde_series,
    k_sequence,
    required_k_length,
    required_moment_order,
)
from .entropy import (
    EntropyReport,
    Symbol,
    eta,
    evolved_defect,
    partition_symbol,
    purify,
    refined_entropy,
    state_entropy,
)
from .errors import (
    ArgumentError,
    InvalidMomentsError,
    ResourceError,
    SingularityError,
    ToleranceError,
    ValidationError,
)
from .exponents import (
    ExponentFit,
    TauberianResult,
    bernoulli_bound,
    fit_exponent,
    powerlaw_atomic_bound,
    relative_entropy,
    shannon_entropy,
    tauberian_check,
)
from .jacobi import hermitian_eig, hermitian_eigvals
from .measures import (
    AtomicMeasure,
    BernoulliMeasure,
    DensityMeasure,
    MomentSequence,
    SpectralMeasure,
    bernoulli_discretize,
    bernoulli_moment_product,
    hilbert_on_grid,
    hilbert_transform,
    moments,
    poisson_value,
)
from .oracle import (
    GramOracle,
    TrapSystem,
    haar_unitary,
    krylov_current,
    random_system,
    shift_system,
    shift_unitary,
    state_moments,
    trap_current,
    trap_current_series,
    trap_operator,
    trapped_number,
    trapped_number_series,
)
