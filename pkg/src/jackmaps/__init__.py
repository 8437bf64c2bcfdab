"""Exact structure coefficients of Jack characters over Q(b), b = alpha - 1.

Typical use::

    >>> from jackmaps import jack_polynomial, g_coefficient
    >>> print(jack_polynomial((2,)))
    p[1,1] + (b+1)*p[2]
    >>> print(g_coefficient((1, 1), (1,), (1,)))
    2
"""

__version__ = "0.1.0"

from .scalar import ALPHA, B, ONE, ZERO, Qb
from .partitions import Partition, partition, partitions_of, partitions_upto, z_factor
from .psym import Caps, CapError, MultiSeries, PExpr, hall_inner, parse_pexpr
from .jack import (
    JackCache,
    c_coefficient,
    jack_character,
    jack_norm,
    jack_polynomial,
    skew_character,
    tau_series,
)
from .catalytic import (
    b_n_apply,
    b_n_dual_apply,
    c_ell_apply,
    c_ell_dual_apply,
    c_ell_k,
    c_ell_k_closed,
    commutator_check,
)
from .structure import (
    CoeffTable,
    a_coefficient,
    a_mu_symfun,
    conjecture_scan,
    connected_series,
    constellation_g,
    d_coefficient,
    g_coefficient,
    g_explicit_sum,
    g_low_closed,
    g_operator_apply,
    g_series,
    g_via_c,
    g_via_recursion,
    ghat_coefficient,
    h_coefficient,
    verify_main_equation,
)
from .oracle import count_factorizations, hypermap_count_alpha1, marked_hypermap_count
