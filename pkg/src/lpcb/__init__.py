"""Renyi-divergence probability comparison bounds and the error-exponent,
rate-distortion and guessing bounds built on them, with independent
numeric verification of every closed form."""

from .backend import backend_name
from .divergence import (DiscreteDist, DivergenceOrder, GaussianScalar,
                         LpcbCheck, duality_maximizer,
                         equality_achiever_event, gaussian_product_integral,
                         kl_discrete, lpcb_event, lpcb_functional,
                         power_functional_check, renyi_discrete,
                         renyi_gaussian_scaled_shift, uniform)
from .erasure import (MarkovErasure, RateFunction, bounded_fraction_bounds,
                      delta_alpha, erasure_bounds, log_delta_alpha,
                      log_perron_root, perron_root, rate_function,
                      varadhan_sup)
from .errors import FeasibilityError
from .exponents import (BoundResult, DivergenceRate, ExponentPair,
                        iterated_lower_bound, optimize_ratio_plus_linear,
                        perturbation_upper_bound, two_sided_exponent_bounds)
from .fading import (ArSpectrum, FadingScene, FlatSpectrum, OuSpectrum,
                     TabulatedSpectrum, ar_closed_form, ct_fading_bounds,
                     dt_fading_bounds, ou_optimal_bounds, small_fading_upper)
from .gaussian import (ChannelScene, IsiScene, ReferenceFamilyDiscrete,
                       capacity_upper, interference_lower, interference_upper,
                       isi_zero_rate_band, memoryless_mismatch_upper,
                       mismatch_single_letter_divergence, robust_band,
                       very_noisy_reference_exponent, very_noisy_upper_e1,
                       zero_rate_optimum)
from .source_coding import (RdScene, binary_rd_upper, gaussian_rd_band,
                            guessing_lower, pair_sources_upper, phi)
from .verify import (McConfig, ToeplitzScene, closed_form_oracle_suite,
                     enumerate_lpcb, mc_finite_n_lpcb, run_suite, szego_check)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
