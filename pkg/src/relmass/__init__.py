"""Heat kernels, relative mass, and non-monotonicity experiments on finite graphs."""

from .errors import (
    ConnectivityError,
    DomainError,
    EstimationError,
    NumericalError,
    NumericalIntegrityError,
    RelmassError,
    SizeError,
    ValidationError,
)
from .graphs import (
    BlowupParams,
    GroupTable,
    WeightedGeneratorSet,
    WeightedGraph,
    build_cayley,
    build_cycle,
    build_hypercube,
    build_pyramid_cube,
    clique_blowup,
)
from .heatkernel import (
    CurveSamples,
    SpectralDecomposition,
    kernel_matrix,
    relative_mass,
    sample_curve,
    spectral_decompose,
    transition_prob,
)
from .hypercube import (
    OriginTimeBounds,
    Witness,
    bridge_factor,
    figure1_table,
    find_witness,
    origin_time,
    origin_time_bounds,
    origin_time_closed,
    origin_time_quadrature,
    return_prob,
)
from .lamplighter import (
    LamplighterCoords,
    LamplighterParams,
    ToggleApproxReport,
    build_lamplighter,
    compare_first_order,
    rare_toggle_residuals,
    uv_vertices,
)
from .monotonicity import (
    BlowupDeviation,
    SpectralCriterionReport,
    blowup_convergence,
    find_r_exceeds_one,
    locate_r_crossing,
    monotonicity_scan,
    spectral_criterion_check,
)
from .montecarlo import (
    DemoReport,
    McEstimate,
    StructuredRun,
    Trajectory,
    chunk_generator,
    estimate_lamplighter_puv,
    estimate_origin_time,
    nonmonotonicity_demo,
    philox_key,
    simulate_ctrw,
    simulate_lamplighter_structured,
)

__version__ = "0.1.0"
