"""Exact solvers for conjugacy, roots and centralizers in the group of
dyadic piecewise-linear homeomorphisms of [0,1] (Thompson's group F)."""

from .exactnum import Dyadic, Pow2, Rat, decompose, order2mod, solve_exponent
from .plmap import (
    Classification,
    FixedSet,
    Interval,
    LinearityBox,
    PLMap,
    Side,
    UNIT,
    classify,
    compose,
    conjugate_by,
    evaluate,
    extend_partial,
    final_box,
    fixed_set,
    from_partition,
    initial_box,
    invert,
    one_sided_slope,
    power,
)
from .reach import OrbitBounds, build_tuple_map, can_map, match_fixed_sets, orbit_bounds, orbit_search
from .stair import (
    AnchorKind,
    StairParams,
    conjugator_with_value,
    identification_step,
    rho,
    stair_below,
    stair_below_iterative,
    stair_pl20,
)
from .conj import ConjWitness, Obstruction, ObstructionKind, conjugate, conjugate_decide, conjugate_pl20, verify
from .central import (
    CentralizerDesc,
    CentralizerFactor,
    FactorKind,
    all_roots,
    centralizer,
    intersect_centralizers,
    membership,
    nth_root,
    reduce_to_two,
)
from .simconj import (
    PowerEquation,
    bound_K,
    conjugate_in_centralizer,
    match_fixed_sets_in,
    reduce_power_equation,
    simultaneous_conjugate,
    solve_in_cyclic,
    solve_power_equation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
