"""Gross domains for the planar Skorokhod embedding problem, their shape
functionals, and Brownian symmetrization at desk scale."""

__version__ = "0.1.0"

from .errors import DomainError, UnsupportedError
from .measure import (ArcsineShifted, Atomic, Empirical, Measure, PiecewiseDensity,
                      ShiftedDiskExit, Uniform, parse_measure)
from .rearrange import BoundaryTrace, equimeasurable, quantile_sdr, sdr
from .fourier import (CosineSeries, TraceSpectrum, evaluate_series, quantile_cosine_coeffs,
                      trace_spectrum)
from .gross import (PowerSeriesDomain, area, boundary_trace, expected_exit_time, gross_domain,
                    inner_circle_counterexample, skorokhod_energy, univalence_check)
from .sobolev import (eta_constant, fourier_seminorm, gagliardo_seminorm, polya_szego_check)
from .sampler import (Disk, Rectangle, SampleSet, ShiftedDisk, conformal_exit_samples,
                      empirical_measure, mobius_shifted_disk_samples, wos_exit_samples)
from .symmetrize import (RasterDomain, SymmetrizationReport, area_minimality_trial,
                         brownian_symmetrize, rho, steiner_raster, variance_collapse_sweep)
