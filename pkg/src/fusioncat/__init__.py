"""Finite fusion-ring combinatorics for generalized symmetries of lattice models."""

from .catalog import CatalogEntry, build_named, build_psu2, build_pointed, build_ty, catalog_names, resolve_ring
from .center import (
    AbelianGroup,
    Lagrangian,
    MetricGroup,
    anomaly_verdict,
    boundary_count_group,
    center_of_pointed,
    enumerate_lagrangians,
    lagrangian_from_pair,
    lagrangians_from_pairs,
    orbit_fixed_point_forced,
    parse_group,
    ty_duality_auto,
)
from .channels import combo, combo_compose, composition_table, conditional_expectation, lambda_compose, vertex
from .errors import FusionCatError
from .fusion_ring import (
    FusionRing,
    check_multiplicativity,
    format_ring,
    fp_dimensions,
    is_integral,
    load_ring,
    parse_ring,
    regular_object,
    tensor_multiplicities,
    verify_ring,
)
from .lsm import duality_gapless_verdict, fiber_functor_verdict, lsm_verdict, realizability_report, vacua_count
from .spin_chain import chain_dims, embedding_dim_check, pauli_kw_check, regular_bigraded
from .temperley_lieb import jones_projection, jones_wenzl, kw_shift_check, loop_parameter, semisimple_dims, tl_dim

__version__ = "0.1.0"
