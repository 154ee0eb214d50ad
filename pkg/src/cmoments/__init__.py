"""Complex moments and cumulants of measures with Laurent-analytic tails.

The package models probability measures that split into a compactly
supported part plus a density ``sum(a_n x**-n)`` on ``|x| >= R``, computes
their complex moments by contour integration, converts moments to the four
cumulant species (tensor, free, boolean, monotone), convolves at moment
level, evaluates Stieltjes and Fourier transforms both by quadrature and by
moment series, and reproduces the convergence of scaled convolution powers
to Cauchy distributions.
"""

__version__ = "0.1.0"

from .errors import (
    DivergenceError,
    DomainError,
    MeasureFormatError,
    PoleError,
    QuadratureError,
    SizeLimitError,
)
from .sequences import ComplexSequence, CumulantKind, delta_moments, power_moments
from .measures import (
    CompactPart,
    DensityTable,
    LaurentTail,
    MeasureP1,
    ValidationReport,
    compact_mass,
    density_at,
    dumps_measure,
    load_measure,
    loads_measure,
    measure_from_dict,
    measure_to_dict,
    save_measure,
    tail_mass,
    total_mass,
    validate,
)
from .partitions import (
    OrderedNCPartition,
    SetPartition,
    enumerate_interval,
    enumerate_monotone,
    enumerate_noncrossing,
    enumerate_partitions,
    is_noncrossing,
)
from .moments import (
    compact_moment,
    moment,
    moment_sequence,
    radius_diagnostics,
    radius_estimate,
    semicircle_power_integral,
    tail_moment,
)
from .cumulants import (
    cumulants_by_n_extraction,
    cumulants_to_moments,
    moments_to_cumulants,
)
from .convolution import convolution_power, convolve_moments, dilate_moments
from .transforms import (
    OrderTypeEstimate,
    TransformPoint,
    evaluate_transform,
    fourier_numeric,
    fourier_series,
    order_and_type,
    reciprocal_stieltjes,
    stieltjes_numeric,
    stieltjes_series,
)
from .limits import (
    CauchyTarget,
    cauchy_target,
    fourier_convergence_check,
    limit_trajectory,
    scaled_power,
    stieltjes_convergence_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
