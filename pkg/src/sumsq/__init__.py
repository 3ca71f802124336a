"""Exact representation numbers for sums of squares and the modular forms behind them."""

from .arith import Factorization, bernoulli, chi4, divisor_power_sum, euler_number, factorize, gen_bernoulli_chi4
from .gaussian import GaussianInt, enumerate_norm, norm_power_sum, split_prime, sqrt_minus_one_mod
from .qseries import cm_form, eisenstein_E, eisenstein_E1, eisenstein_E2, eta12_2z, theta_series
from .repnum import RepQuery, eisenstein_c, r12, r_bruteforce, r_elementary
from .series import TruncatedSeries, series_add, series_mul, series_pow, series_scale
from .verify import a3, a3_table, decompose_theta, det_test, dim_cm, dim_cusp, dim_modular, elementarity

__version__ = "0.1.0"
