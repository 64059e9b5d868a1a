"""Pseudospectral laboratory for a peakon transport system.

The heavy lifting lives in the compiled extension ``peakonlab._core``:
grids and spectral derivatives, the nonlocal Helmholtz-type operators (with
an independent Green's-kernel route), both forms of the right-hand side, the
time steppers with blow-up detection, the blow-up certificate, Lagrangian
flow-map checks and the dyadic (Littlewood-Paley) norm diagnostics.
"""

try:
    from peakonlab import _core  # noqa: F401
except ImportError:  # in-tree runs: the extension sits on PYTHONPATH instead
    import sys

    import _core as _core_module

    sys.modules[__name__ + "._core"] = _core_module

from peakonlab._core import (  # noqa: F401
    ConfigError,
    Field,
    Grid,
    SamplingError,
    __version__,
    apply_p1,
    apply_p2,
    besov_norm,
    block_energies,
    blowup_threshold,
    bump,
    check_condition,
    check_condition_with_bounds,
    compute_b,
    compute_t1,
    compute_t2,
    consistency_residual,
    crest_position,
    dealias_two_thirds,
    derivative,
    exact_peakon,
    field,
    gradient_bound_residual,
    green_convolve,
    h1_beta_norm_sq,
    integrate,
    make_grid,
    n_from_v,
    parse_config,
    rhs_n,
    rhs_v,
    run_simulation,
    sample,
    second_derivative,
    seed_recipe,
    supersolution_ode,
    upwind_derivative,
    v_from_n,
    w1inf_norm,
)
