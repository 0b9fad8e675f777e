"""dppdisc

Determinantal point processes on compact two-point homogeneous spaces:
spheres and projective spaces over the reals, complexes and quaternions,
and the octonionic plane.

Exact samplers for the harmonic and projective ensembles, ball discrepancy
over a finite net of balls, number variance (empirical, exact Monte Carlo
and integral bounds), Bernstein-type tails and scaling experiments.

"""
# flake8: noqa

from __future__ import absolute_import

from .core import *
from .discrepancy import (BallNet, DiscrepancyResult, Sandwich, build_net,
                          count_in_ball, covering_check, discrepancy_sup,
                          per_center_sup)
from .ensembles import (EnsembleKernel, gram, joint_intensity,
                        joint_intensity_2, kernel_eval, kernel_matrix,
                        projective_count)
from .errors import (ConfigError, DomainError, DppDiscError, NumericalError,
                     QuadratureError, SamplerBudgetError,
                     UnsupportedSpaceError, ValidationError)
from .factory import get_kernel, get_space, get_spaces
from .sampler import SampleSet, sample_dpp, sample_iid, sample_replicates
from .spaces import (Ball, Point, Space, ball_volume, distance,
                     pairwise_distances, radial_density, sample_uniform)
from .tails import (TailBoundInput, bernstein_tail, discrepancy_certificate,
                    empirical_tail_check, maintool_threshold, net_exponent)
from .tools import get_config_file, set_config_file, reset_config_file
from .variance import (RegionIntegrals, VarianceReport, count_stats,
                       region_integrals, variance_bound,
                       variance_bound_harmonic,
                       variance_bound_projective,
                       variance_bound_projective_gaussian,
                       variance_empirical, variance_exact_mc,
                       variance_report)
from .version import __version__


__docformat__ = 'restructuredtext'
