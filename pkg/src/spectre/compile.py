"""Translation of power-series systems into spectrally equivalent
set-equation systems, plus the end-to-end equivalence check."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import pseries, setsys
from .epset import (
    EMPTY,
    POS,
    ZERO,
    EPSet,
    EnumeratedSet,
    IndexSet,
    format_epset,
    singleton,
    star,
    sumset,
    union,
)
from .pseries import (
    Add,
    Const,
    Construct,
    Mul,
    Pow,
    PSSystem,
    SysExpr,
    Var,
    X,
)
from .setsys import GammaTerm, SetSystem, SystemClassification


class CompileUnsupported(ValueError):
    """Construction shape with no finite product-family translation."""


@dataclass(frozen=True)
class CompileReport:
    system: SetSystem
    notes: Tuple[str, ...]
    flags: Tuple[str, ...]  # enumerated-set usages
    classification: Optional[SystemClassification]


Family = Tuple[EPSet, Tuple[IndexSet, ...]]


def _zeros(k: int) -> Tuple[IndexSet, ...]:
    return (ZERO,) * k


def _exp_sum(a: IndexSet, b: IndexSet) -> IndexSet:
    if isinstance(a, EPSet) and a == ZERO:
        return b
    if isinstance(b, EPSet) and b == ZERO:
        return a
    if isinstance(a, EPSet) and isinstance(b, EPSet):
        return sumset(a, b)
    raise CompileUnsupported(
        "cannot combine an enumerated index set with another exponent"
    )


def _mul_families(fa: Sequence[Family], fb: Sequence[Family]) -> list[Family]:
    out = []
    for base_a, exps_a in fa:
        for base_b, exps_b in fb:
            out.append(
                (
                    sumset(base_a, base_b),
                    tuple(_exp_sum(x, y) for x, y in zip(exps_a, exps_b)),
                )
            )
    return out


def _is_pure_var(fams: Sequence[Family], k: int) -> Optional[int]:
    """If fams denote exactly one bare variable, return its index."""
    if len(fams) != 1:
        return None
    base, exps = fams[0]
    if base != ZERO:
        return None
    used = [
        j
        for j, e in enumerate(exps)
        if not (isinstance(e, EPSet) and e == ZERO)
    ]
    if len(used) != 1:
        return None
    e = exps[used[0]]
    if isinstance(e, EPSet) and e == singleton(1):
        return used[0]
    return None


def _compile_expr(
    expr: SysExpr, k: int, notes: list[str], flags: list[str]
) -> list[Family]:
    if isinstance(expr, Const):
        if expr.value == 0:
            return []
        return [(ZERO, _zeros(k))]
    if isinstance(expr, X):
        return [(singleton(1), _zeros(k))]
    if isinstance(expr, Var):
        exps = list(_zeros(k))
        exps[expr.index] = singleton(1)
        return [(ZERO, tuple(exps))]
    if isinstance(expr, Add):
        out: list[Family] = []
        for t in expr.terms:
            out.extend(_compile_expr(t, k, notes, flags))
        return out
    if isinstance(expr, Mul):
        out = [(ZERO, _zeros(k))]
        for f in expr.factors:
            out = _mul_families(out, _compile_expr(f, k, notes, flags))
        return out
    if isinstance(expr, Pow):
        base = _compile_expr(expr.base, k, notes, flags)
        out = [(ZERO, _zeros(k))]
        for _ in range(expr.exp):
            out = _mul_families(out, base)
        return out
    if isinstance(expr, Construct):
        return _compile_construct(expr, k, notes, flags)
    raise TypeError(repr(expr))


def _compile_construct(
    expr: Construct, k: int, notes: list[str], flags: list[str]
) -> list[Family]:
    j = expr.index
    if isinstance(j, EnumeratedSet):
        flags.append(f"{expr.kind}[{j.name}]")
    if expr.kind == "DCycle":
        notes.append("DCycle compiled as Cycle: identical spectrum")
    fams = _compile_expr(expr.arg, k, notes, flags)
    var = _is_pure_var(fams, k)
    if var is not None:
        exps = list(_zeros(k))
        exps[var] = j
        notes.append(f"{expr.kind} over a variable -> index-set exponent")
        return [(ZERO, tuple(exps))]
    if all(
        all(isinstance(e, EPSet) and e == ZERO for e in exps) for _, exps in fams
    ):
        total = EMPTY
        for base, _ in fams:
            total = union(total, base)
        if isinstance(j, EnumeratedSet):
            raise CompileUnsupported(
                "enumerated index set over a constant spectrum"
            )
        notes.append(f"{expr.kind} over a constant -> star of spectra")
        return [(star(j, total), _zeros(k))] if not star(j, total).is_empty else []
    if isinstance(j, EPSet) and j.period is None:
        out: list[Family] = []
        for n in j.finite_part:
            power = [(ZERO, _zeros(k))]
            for _ in range(n):
                power = _mul_families(power, fams)
            out.extend(power)
        notes.append(f"{expr.kind} with finite index set expanded termwise")
        return out
    raise CompileUnsupported(
        f"{expr.kind} with an infinite index set over a composite argument"
    )


def compile_system(sys: PSSystem) -> CompileReport:
    """Spectral set system of a series system."""
    k = sys.k
    notes: list[str] = []
    flags: list[str] = []
    equations = []
    for rhs in sys.right_sides:
        fams = _compile_expr(rhs, k, notes, flags)
        equations.append(tuple(GammaTerm(base, exps) for base, exps in fams))
    system = SetSystem(tuple(sys.variables), tuple(equations))
    try:
        cls = setsys.classify(system)
    except setsys.TrivialEquation:
        cls = None
    return CompileReport(system, tuple(notes), tuple(flags), cls)


@dataclass(frozen=True)
class EquivReport:
    ok: bool
    first_mismatch: Optional[Tuple[str, int]]
    hat_applied: bool
    degree: int


def spectral_equivalence_check(sys: PSSystem, n: int) -> EquivReport:
    """Spectrum of the series solution vs. the set-system solution on [0,n]."""
    hat_applied = False
    work = sys
    ok, _ = pseries.is_elementary(sys)
    if not ok:
        work = pseries.hat_transform(sys)
        hat_applied = True
    series_sol = pseries.fixed_point_solve(work, n)
    supports = [pseries.spectrum_extract(s).support for s in series_sol]
    report = compile_system(work)
    set_sol = setsys.solve(report.system, horizon=n)
    for i, v in enumerate(set_sol.variables):
        trunc_support = {d for d in range(n + 1) if v.truncation[d]}
        if trunc_support != supports[i]:
            diff = sorted(trunc_support ^ supports[i])
            return EquivReport(False, (v.name, diff[0]), hat_applied, n)
    return EquivReport(True, None, hat_applied, n)
