"""Exact arithmetic of eventually periodic sets, set-equation systems,
truncated power series, and the translation between the two."""

from .epset import (
    EMPTY,
    EVEN,
    NAT,
    ODD,
    POS,
    POS_EVEN,
    ZERO,
    EnumeratedSet,
    EPSet,
    IndexSet,
    PeriodicityParams,
    certify_doubling,
    format_epset,
    from_elements,
    is_eventual_period,
    member,
    nat_closure,
    normalize,
    nstar,
    params,
    scalar_mul,
    singleton,
    star,
    sumset,
    union,
)
from .setsys import (
    GammaTerm,
    SetSystem,
    SpectrumSolution,
    classify,
    dependency,
    min_vector,
    nonuniqueness_probe,
    q_vector,
    solve,
    solution_json,
)
from .pseries import (
    PSSystem,
    Series,
    fixed_point_solve,
    hat_transform,
    is_elementary,
    jacobian_at_origin,
    neumann_check,
    spectrum_extract,
    zero_components,
)
from .compile import compile_system, spectral_equivalence_check
from .dsl import ParseError, parse, print_system

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
