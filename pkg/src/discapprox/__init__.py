"""Approximate discrete probability measures on [0, 1]^d by N-point sets.

Exact total variation and star discrepancy, the floor-allocation
construction for finitely supported measures, gauge-driven truncation for
infinitely supported ones, and one-dimensional transport of low-discrepancy
sets through a distribution function.
"""
from .finite import AllocationPlan, allocate, approximate_finite, realize
from .gauge import (DecayProfile, Gauge, GaugeFamily, custom, double_exponential,
                    geometric, polynomial)
from .measure import (DiscreteMeasure, MeasureError, PointSet, decay_check,
                      random_measure, truncate_renormalize, validate_measure)
from .metrics import (DistanceResult, box_mass, dstar_boxsample, star_discrepancy,
                      total_variation, tv_bruteforce)
from .tail import (BoundReport, DecayError, approximate_infinite, bound_curve,
                   family_measure, generic_bound, h_function, tail_integral_check,
                   truncation_index)
from .transport import (Cdf1D, CdfError, Sequence1D, centered, compare_transport,
                        dstar_1d, generalized_inverse, kronecker, transport,
                        van_der_corput)

__version__ = "0.1.0"
