"""Log-moment integrals through moment generating functions.

The package computes expectations, variances and covariances of
logarithms of positive random variables from the integral
representation ln x = int_0^inf (e^{-u} - e^{-ux})/u du, replacing
density integrals by MGF evaluations, and applies it to four studies:
differential entropy of generalized Cauchy densities, Rayleigh SIMO
ergodic capacity, arbitrarily-varying-source redundancy, and
empirical-entropy moments with Krichevsky-Trofimov redundancy.
"""

from .cauchy import (GenCauchyModel, diff_entropy, gsum_mgf,
                     multivariate_cauchy_entropy, normalizer_cn, partition_z)
from .coding import (DmsModel, SameLetterError, avs_redundancy,
                     binary_entropy_integral, empirical_entropy_mean,
                     empirical_entropy_mean_direct, empirical_entropy_var,
                     expected_hb, expected_hb_mean_iid, kt_redundancy,
                     phi_kernel, psi_kernel)
from .errors import DomainError, NonConvergenceError
from .logmoments import (cov_ln, expect_ln, expect_ln1p, expect_ln_power_sum,
                         expect_ln_sum_iid, fractional_moment_sum_iid, var_ln,
                         var_ln1p)
from .mgf import (JointMgfSpec, MgfSpec, constant_mgf, exponential_mgf,
                  gaussian_square_mgf, product_mgf, scale_mgf, simo_gain_mgf,
                  uniform01_mgf)
from .oracles import (BudgetExceededError, McConfig, McEstimate, digamma,
                      enumerate_empirical_entropy, mc_expect_ln,
                      mc_kt_redundancy, mc_simo, trigamma)
from .quadrature import (NonFiniteIntegrandError, QuadConfig, QuadResult,
                         integrate_semi_infinite, integrate_semi_infinite_2d)
from .simo import (RepeatedSigmaError, SimoChannel, capacity_closed_form_example,
                   capacity_partial_fractions, capacity_variance,
                   ergodic_capacity)
from .special import (EULER_GAMMA, SpecialFnDomainError, exp_integral_e1,
                      exp_integral_e1_scaled, ln_factorial_integral, ln_gamma,
                      poisson_entropy)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "DmsModel", "DomainError", "EULER_GAMMA",
    "GenCauchyModel", "JointMgfSpec", "McConfig", "McEstimate", "MgfSpec",
    "NonConvergenceError", "NonFiniteIntegrandError", "QuadConfig",
    "QuadResult", "RepeatedSigmaError", "SameLetterError",
    "SpecialFnDomainError", "SimoChannel", "avs_redundancy",
    "binary_entropy_integral", "capacity_closed_form_example",
    "capacity_partial_fractions", "capacity_variance", "constant_mgf",
    "cov_ln", "diff_entropy", "digamma", "empirical_entropy_mean",
    "empirical_entropy_mean_direct", "empirical_entropy_var",
    "enumerate_empirical_entropy", "ergodic_capacity", "exp_integral_e1",
    "exp_integral_e1_scaled", "expect_ln", "expect_ln1p",
    "expect_ln_power_sum", "expect_ln_sum_iid", "expected_hb",
    "expected_hb_mean_iid", "exponential_mgf", "fractional_moment_sum_iid",
    "gaussian_square_mgf", "gsum_mgf", "integrate_semi_infinite",
    "integrate_semi_infinite_2d", "kt_redundancy", "ln_factorial_integral",
    "ln_gamma", "mc_expect_ln", "mc_kt_redundancy", "mc_simo",
    "multivariate_cauchy_entropy", "normalizer_cn", "partition_z",
    "phi_kernel", "poisson_entropy", "product_mgf", "psi_kernel",
    "scale_mgf", "simo_gain_mgf", "trigamma", "uniform01_mgf", "var_ln",
    "var_ln1p",
]
