"""Computational laboratory for integer points in thin spherical shells.

The package enumerates shells |sqrt(Q(x)) - lam| < delta over Z^3 exactly,
decomposes them into curved caps with rank classification, and measures the
resulting censuses, additive energies, quasimode norms and oscillatory sums
against their conjectured and proven growth bounds.
"""

from .caps import (
    Cap,
    CapCensus,
    Rank2Ratios,
    assign_naive,
    build_cover,
    cap_metric,
    census,
    classify_cap,
    incidence_counts,
    lattice_basis,
    rank2_invariant_ratios,
)
from .energy import (
    GuardExceeded,
    RepCountTable,
    additive_energy,
    energy_conjecture_report,
    rep_counts,
    upper_shell,
    weighted_rep_sums,
    z_max,
)
from .expsum import (
    DyadicSumSpec,
    bump_psi,
    dyadic_sum,
    expsum_bound_report,
    guo_bound,
    mollified_symbol,
    mollified_symbol_physical,
    surface_ft_sphere,
    trivial_bound,
)
from .linalg import (
    QuadraticForm,
    extend_basis,
    gauss_reduce_2d,
    in_lattice_2d,
    primitive_of,
)
from .norms import (
    CoefficientVector,
    conjectured_bound,
    few_many_threshold,
    lp_norm_even,
    lp_norm_even_power,
    lp_norm_grid,
    make_quasimode,
    proven_region_threshold,
    regime_classify,
    region_breakpoints,
    split_few_many,
)
from .oracles import (
    BOUNDS,
    CurveSpec,
    annulus_report,
    bound_ratio_report,
    count_annulus,
    count_near_curve,
    fejer_kernel,
    fejer_majorant,
    huxley_bound,
    vdc_bound,
)
from .shell import (
    ShellCensus,
    ShellPointSet,
    brute_force_shell,
    enumerate_shell,
    shell_census,
)

__version__ = "0.1.0"
