"""Computable shift-invariant measures on Cantor space whose ergodic limits
have no computable complexity bound, at a scale where everything is exact."""

from .core import Interval, PeriodicPoint, cyclic_shifts, in_cylinder, parse_point, parse_word
from .ergodic import ergodic_average, ergodic_limit, l1_error, limit_function
from .machines import Catalog, CatalogEntry, Clock, Loop, TuringMachine, load_catalog, run, save_catalog
from .measures import (
    FiniteSupportMeasure,
    check_shift_invariance,
    exact_mixture,
    mixture_eval,
    mu_e_closed_form,
    mu_e_eval,
    support_mu_e,
)
from .simplefn import SimpleFunction, linear_combination, rademacher

__version__ = "0.1.0"
