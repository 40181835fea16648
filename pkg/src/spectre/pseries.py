"""Truncated exact power series, fixed points of non-negative systems
y = G(x,y), Jacobian and Neumann tests, the hat transform, and spectrum
extraction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .epset import EPSet, EnumeratedSet, IndexSet, POS, member, enumerate_range


class NotElementary(ValueError):
    """System has a non-zero constant term or origin Jacobian."""


class CompositionAtNonzeroConstant(ValueError):
    """Construction applied to a series with non-zero constant term."""


class UnsupportedCoefficients(ValueError):
    """Node carries no coefficient semantics (Cycle / DCycle)."""


class MixedSigns(ValueError):
    """Spectrum requested of a series not tracked as non-negative."""


class NotApplicable(ValueError):
    """Hat transform is not available for this system."""


# ---------------------------------------------------------------------------
# series values


@dataclass(frozen=True)
class Series:
    """Power series truncated at degree len(coeffs)-1, exact coefficients."""

    coeffs: Tuple[Fraction, ...]
    nonneg: bool = True

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}")
        return "Series(" + (" + ".join(terms) if terms else "0") + f"; N={self.trunc})"


def s_zero(n: int) -> Series:
    return Series((Fraction(0),) * (n + 1))


def s_const(c, n: int) -> Series:
    f = Fraction(c)
    return Series((f,) + (Fraction(0),) * n, nonneg=f >= 0)


def s_x(n: int) -> Series:
    cs = [Fraction(0)] * (n + 1)
    if n >= 1:
        cs[1] = Fraction(1)
    return Series(tuple(cs))


def s_from(coeffs: Sequence, n: Optional[int] = None) -> Series:
    cs = [Fraction(c) for c in coeffs]
    if n is not None:
        cs = (cs + [Fraction(0)] * (n + 1))[: n + 1]
    return Series(tuple(cs), nonneg=all(c >= 0 for c in cs))


def s_add(a: Series, b: Series) -> Series:
    n = min(a.trunc, b.trunc)
    return Series(
        tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)),
        nonneg=a.nonneg and b.nonneg,
    )


def s_mul(a: Series, b: Series) -> Series:
    n = min(a.trunc, b.trunc)
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a.coeffs[: n + 1]):
        if not ca:
            continue
        for j in range(n + 1 - i):
            cb = b.coeffs[j]
            if cb:
                out[i + j] += ca * cb
    return Series(tuple(out), nonneg=a.nonneg and b.nonneg)


def s_scale(c, a: Series) -> Series:
    f = Fraction(c)
    return Series(
        tuple(f * x for x in a.coeffs), nonneg=a.nonneg and f >= 0
    )


def s_pow(a: Series, n: int) -> Series:
    result = s_const(1, a.trunc)
    power = a
    while n:
        if n & 1:
            result = s_mul(result, power)
        n >>= 1
        if n:
            power = s_mul(power, power)
    return result


def s_eq(a: Series, b: Series) -> bool:
    n = min(a.trunc, b.trunc)
    return a.coeffs[: n + 1] == b.coeffs[: n + 1]


# ---------------------------------------------------------------------------
# system syntax


@dataclass(frozen=True)
class Const:
    value: Fraction

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("constants must be non-negative")


@dataclass(frozen=True)
class X:
    pass


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Add:
    terms: Tuple["SysExpr", ...]


@dataclass(frozen=True)
class Mul:
    factors: Tuple["SysExpr", ...]


@dataclass(frozen=True)
class Pow:
    base: "SysExpr"
    exp: int


@dataclass(frozen=True)
class Construct:
    kind: str  # Seq | MSet | Cycle | DCycle
    index: IndexSet  # POS means unrestricted
    arg: "SysExpr"

    def __post_init__(self):
        if self.kind not in ("Seq", "MSet", "Cycle", "DCycle"):
            raise ValueError(f"unknown construction {self.kind}")


SysExpr = Union[Const, X, Var, Add, Mul, Pow, Construct]


@dataclass(frozen=True)
class PSSystem:
    variables: Tuple[str, ...]
    right_sides: Tuple[SysExpr, ...]

    def __post_init__(self):
        if len(self.variables) != len(self.right_sides):
            raise ValueError("need one right side per variable")

    @property
    def k(self) -> int:
        return len(self.variables)


def _index_members_upto(j: IndexSet, hi: int) -> list[int]:
    if isinstance(j, EnumeratedSet):
        return j.members_upto(hi)
    return enumerate_range(j, 0, hi)


# ---------------------------------------------------------------------------
# evaluation


def evaluate(expr: SysExpr, env: Sequence[Series], n: int) -> Series:
    """Exact coefficients of expr under env up to degree n."""
    if isinstance(expr, Const):
        return s_const(expr.value, n)
    if isinstance(expr, X):
        return s_x(n)
    if isinstance(expr, Var):
        s = env[expr.index]
        if s.trunc < n:
            raise ValueError("environment series truncated below target degree")
        return Series(s.coeffs[: n + 1], s.nonneg)
    if isinstance(expr, Add):
        out = s_zero(n)
        for t in expr.terms:
            out = s_add(out, evaluate(t, env, n))
        return out
    if isinstance(expr, Mul):
        out = s_const(1, n)
        for f in expr.factors:
            out = s_mul(out, evaluate(f, env, n))
        return out
    if isinstance(expr, Pow):
        return s_pow(evaluate(expr.base, env, n), expr.exp)
    if isinstance(expr, Construct):
        a = evaluate(expr.arg, env, n)
        if a.coeffs[0] != 0:
            raise CompositionAtNonzeroConstant(
                f"{expr.kind} argument has constant term {a.coeffs[0]}"
            )
        if expr.kind == "Seq":
            return _seq_eval(a, expr.index, n)
        if expr.kind == "MSet":
            return _mset_eval(a, expr.index, n)
        raise UnsupportedCoefficients(
            f"{expr.kind} has spectrum-only semantics; no coefficient evaluation"
        )
    raise TypeError(f"not a system expression: {expr!r}")


def _seq_eval(a: Series, j: IndexSet, n: int) -> Series:
    if isinstance(j, EPSet) and j == POS:
        # unrestricted: S = a*(1 + S), solved by the convolution recurrence
        out = [Fraction(0)] * (n + 1)
        for d in range(1, n + 1):
            acc = a.coeffs[d]
            for i in range(1, d):
                if a.coeffs[i]:
                    acc += a.coeffs[i] * out[d - i]
            out[d] = acc
        return Series(tuple(out), nonneg=a.nonneg)
    out = s_zero(n)
    js = _index_members_upto(j, n)
    if not js:
        return out
    power = s_pow(a, js[0])
    prev = js[0]
    for jj in js:
        if jj != prev:
            power = s_mul(power, s_pow(a, jj - prev))
            prev = jj
        out = s_add(out, power)
    return out


def _mset_eval(a: Series, j: IndexSet, n: int) -> Series:
    """Multisets with part-count in j, by the bivariate marker method.

    h[t] below is the series counting multisets with exactly t parts; it
    satisfies the exponential recurrence of exp(sum_m t^m A(x^m)/m).
    """
    if isinstance(j, EPSet) and j == POS:
        # unrestricted: exp(sum_m a(x^m)/m) - 1 via the log-derivative
        # recurrence k*b_k = sum_j j*p_j*b_{k-j}
        p = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            for i, c in enumerate(a.coeffs):
                if c and i * m <= n:
                    p[i * m] += c / m
        b = [Fraction(0)] * (n + 1)
        b[0] = Fraction(1)
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if p[i]:
                    acc += i * p[i] * b[k - i]
            b[k] = acc / k
        b[0] = Fraction(0)
        return Series(tuple(b), nonneg=a.nonneg)
    if isinstance(j, EPSet) and j.period is not None:
        t_max = n
    elif isinstance(j, EnumeratedSet):
        t_max = n
    else:
        js = _index_members_upto(j, n)
        t_max = max(js) if js else 0
    t_max = min(t_max, n)
    # substituted series a(x^m), sparse by degree
    subs: Dict[int, Dict[int, Fraction]] = {}
    for m in range(1, t_max + 1):
        d = {}
        for i, c in enumerate(a.coeffs):
            if c and i * m <= n:
                d[i * m] = c / m
        subs[m] = d
    h: list[Dict[int, Fraction]] = [{0: Fraction(1)}]
    for t in range(1, t_max + 1):
        acc: Dict[int, Fraction] = {}
        for m in range(1, t + 1):
            sm = subs[m]
            if not sm:
                continue
            prev = h[t - m]
            for d1, c1 in sm.items():
                for d2, c2 in prev.items():
                    d = d1 + d2
                    if d <= n:
                        acc[d] = acc.get(d, Fraction(0)) + m * c1 * c2
        h.append({d: c / t for d, c in acc.items()})
    wanted = set(_index_members_upto(j, t_max))
    out = [Fraction(0)] * (n + 1)
    for t in range(1, t_max + 1):
        if t in wanted:
            for d, c in h[t].items():
                out[d] += c
    return Series(tuple(out), nonneg=a.nonneg)


# ---------------------------------------------------------------------------
# origin data: constant terms and Jacobian


def _const_at_origin(expr: SysExpr) -> Fraction:
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, (X, Var)):
        return Fraction(0)
    if isinstance(expr, Add):
        return sum((_const_at_origin(t) for t in expr.terms), Fraction(0))
    if isinstance(expr, Mul):
        out = Fraction(1)
        for f in expr.factors:
            out *= _const_at_origin(f)
        return out
    if isinstance(expr, Pow):
        return _const_at_origin(expr.base) ** expr.exp
    if isinstance(expr, Construct):
        if _const_at_origin(expr.arg) != 0:
            raise CompositionAtNonzeroConstant(
                f"{expr.kind} argument has a non-zero constant term"
            )
        return Fraction(0)
    raise TypeError(repr(expr))


def _dy_at_origin(expr: SysExpr, j: int) -> Fraction:
    """d expr / d y_j evaluated at x=0, y=0."""
    if isinstance(expr, (Const, X)):
        return Fraction(0)
    if isinstance(expr, Var):
        return Fraction(1) if expr.index == j else Fraction(0)
    if isinstance(expr, Add):
        return sum((_dy_at_origin(t, j) for t in expr.terms), Fraction(0))
    if isinstance(expr, Mul):
        out = Fraction(0)
        for i, f in enumerate(expr.factors):
            part = _dy_at_origin(f, j)
            if part:
                for l, g in enumerate(expr.factors):
                    if l != i:
                        part *= _const_at_origin(g)
            out += part
        return out
    if isinstance(expr, Pow):
        if expr.exp == 0:
            return Fraction(0)
        b0 = _const_at_origin(expr.base)
        return expr.exp * b0 ** (expr.exp - 1) * _dy_at_origin(expr.base, j)
    if isinstance(expr, Construct):
        if _const_at_origin(expr.arg) != 0:
            raise CompositionAtNonzeroConstant(
                f"{expr.kind} argument has a non-zero constant term"
            )
        weight_one = (
            isinstance(expr.index, EPSet) and member(expr.index, 1)
        )
        if not weight_one:
            return Fraction(0)
        return _dy_at_origin(expr.arg, j)
    raise TypeError(repr(expr))


RatMatrix = Tuple[Tuple[Fraction, ...], ...]


def jacobian_at_origin(sys: PSSystem) -> RatMatrix:
    return tuple(
        tuple(_dy_at_origin(rhs, j) for j in range(sys.k))
        for rhs in sys.right_sides
    )


def is_elementary(sys: PSSystem) -> Tuple[bool, list[str]]:
    """(verdict, diagnostics): constant terms and origin Jacobian all zero."""
    diags = []
    for name, rhs in zip(sys.variables, sys.right_sides):
        c = _const_at_origin(rhs)
        if c != 0:
            diags.append(f"{name}: constant term {c}")
    jac = jacobian_at_origin(sys)
    for i, row in enumerate(jac):
        for j, v in enumerate(row):
            if v != 0:
                diags.append(
                    f"{sys.variables[i]}: linear term {v}*{sys.variables[j]}"
                    " with constant coefficient"
                )
    return (not diags, diags)


def fixed_point_solve(sys: PSSystem, n: int) -> Tuple[Series, ...]:
    """Unique solution of an elementary system, truncated at degree n."""
    ok, diags = is_elementary(sys)
    if not ok:
        raise NotElementary("; ".join(diags))
    # each iteration advances the valid degree by at least one, so iterate
    # i only needs to be evaluated at degree min(i+1, n)
    env: Tuple[Series, ...] = tuple(s_zero(0) for _ in range(sys.k))
    for i in range(n + 1):
        d = min(i + 1, n)
        padded = tuple(
            s
            if s.trunc >= d
            else Series(s.coeffs + (Fraction(0),) * (d - s.trunc), s.nonneg)
            for s in env
        )
        new = tuple(evaluate(rhs, padded, d) for rhs in sys.right_sides)
        if d == n and all(
            s.trunc == n and s_eq(a, s) for a, s in zip(new, env)
        ):
            return new
        env = new
    return env


# ---------------------------------------------------------------------------
# matrices and the hat transform


def mat_identity(k: int) -> RatMatrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(k)) for i in range(k)
    )


def mat_sub(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_inverse(m: RatMatrix) -> Optional[RatMatrix]:
    """Exact inverse by Gauss-Jordan elimination, or None if singular."""
    k = len(m)
    a = [list(row) + [Fraction(1 if i == j else 0) for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(tuple(row[k:]) for row in a)


def spectral_radius_estimate(m: RatMatrix, iters: int = 500) -> float:
    """Advisory float estimate of the largest eigenvalue magnitude of a
    non-negative matrix (power iteration on M + I, shifted back)."""
    k = len(m)
    mf = [[float(v) for v in row] for row in m]
    v = [1.0] * k
    lam = 0.0
    for _ in range(iters):
        w = [sum(mf[i][j] * v[j] for j in range(k)) + v[i] for i in range(k)]
        norm = max(abs(x) for x in w)
        if norm == 0:
            return 0.0
        lam = norm
        v = [x / norm for x in w]
    return max(lam - 1.0, 0.0)


@dataclass(frozen=True)
class NeumannResult:
    verdict: str  # NonnegInverse | Singular | NegativeEntries
    inverse: Optional[RatMatrix]
    rho_estimate: float


def neumann_check(m: RatMatrix) -> NeumannResult:
    """Is (I - M) invertible with an entrywise non-negative inverse?"""
    for row in m:
        for v in row:
            if v < 0:
                raise ValueError("matrix must be entrywise non-negative")
    rho = spectral_radius_estimate(m)
    inv = mat_inverse(mat_sub(mat_identity(len(m)), m))
    if inv is None:
        return NeumannResult("Singular", None, rho)
    if any(v < 0 for row in inv for v in row):
        return NeumannResult("NegativeEntries", inv, rho)
    return NeumannResult("NonnegInverse", inv, rho)


# polynomial expansion: dict (xdeg, ytuple) -> coefficient


def _poly_expand(expr: SysExpr, k: int) -> Dict[Tuple[int, Tuple[int, ...]], Fraction]:
    zero_y = (0,) * k
    if isinstance(expr, Const):
        return {(0, zero_y): expr.value} if expr.value else {}
    if isinstance(expr, X):
        return {(1, zero_y): Fraction(1)}
    if isinstance(expr, Var):
        u = [0] * k
        u[expr.index] = 1
        return {(0, tuple(u)): Fraction(1)}
    if isinstance(expr, Add):
        out: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
        for t in expr.terms:
            for key, c in _poly_expand(t, k).items():
                out[key] = out.get(key, Fraction(0)) + c
        return {key: c for key, c in out.items() if c}
    if isinstance(expr, Mul):
        out = {(0, zero_y): Fraction(1)}
        for f in expr.factors:
            out = _poly_mul(out, _poly_expand(f, k))
        return out
    if isinstance(expr, Pow):
        pb = _poly_expand(expr.base, k)
        out = {(0, zero_y): Fraction(1)}
        for _ in range(expr.exp):
            out = _poly_mul(out, pb)
        return out
    if isinstance(expr, Construct):
        raise NotApplicable(
            "hat transform supports polynomial right sides only"
        )
    raise TypeError(repr(expr))


def _poly_mul(a, b):
    out: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
    for (d1, u1), c1 in a.items():
        for (d2, u2), c2 in b.items():
            key = (d1 + d2, tuple(x + y for x, y in zip(u1, u2)))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {key: c for key, c in out.items() if c}


def poly_to_ast(poly: Dict[Tuple[int, Tuple[int, ...]], Fraction], k: int) -> SysExpr:
    """Canonical AST for a polynomial: terms sorted by total degree, then
    x-degree, then exponent vector."""
    keys = sorted(poly, key=lambda key: (key[0] + sum(key[1]), key[0], key[1]))
    terms = []
    for d, u in keys:
        c = poly[(d, u)]
        if not c:
            continue
        factors: list[SysExpr] = []
        if c != 1 or (d == 0 and not any(u)):
            factors.append(Const(c))
        if d == 1:
            factors.append(X())
        elif d > 1:
            factors.append(Pow(X(), d))
        for j, e in enumerate(u):
            if e == 1:
                factors.append(Var(j))
            elif e > 1:
                factors.append(Pow(Var(j), e))
        if len(factors) == 1:
            terms.append(factors[0])
        else:
            terms.append(Mul(tuple(factors)))
    if not terms:
        return Const(Fraction(0))
    if len(terms) == 1:
        return terms[0]
    return Add(tuple(terms))


def hat_transform(sys: PSSystem) -> PSSystem:
    """Equivalent elementary system (I-J)^{-1} (G - J y)."""
    jac = jacobian_at_origin(sys)
    if all(v == 0 for row in jac for v in row):
        return sys
    res = neumann_check(jac)
    if res.verdict != "NonnegInverse":
        raise NotApplicable(f"origin Jacobian check failed: {res.verdict}")
    k = sys.k
    polys = []
    for i, rhs in enumerate(sys.right_sides):
        p = dict(_poly_expand(rhs, k))
        for j in range(k):
            if jac[i][j]:
                u = [0] * k
                u[j] = 1
                key = (0, tuple(u))
                p[key] = p.get(key, Fraction(0)) - jac[i][j]
                if not p[key]:
                    del p[key]
        polys.append(p)
    inv = res.inverse
    new_rhs = []
    for i in range(k):
        acc: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
        for j in range(k):
            f = inv[i][j]
            if not f:
                continue
            for key, c in polys[j].items():
                acc[key] = acc.get(key, Fraction(0)) + f * c
        acc = {key: c for key, c in acc.items() if c}
        if any(c < 0 for c in acc.values()):
            raise NotApplicable("hat transform produced a negative coefficient")
        new_rhs.append(poly_to_ast(acc, k))
    out = PSSystem(sys.variables, tuple(new_rhs))
    ok, diags = is_elementary(out)
    if not ok:
        raise AssertionError("hat transform failed to produce an elementary system")
    return out


# ---------------------------------------------------------------------------
# zero components and spectra


def _min_degree(expr: SysExpr, d: Sequence[Optional[int]]) -> Optional[int]:
    """Lowest degree of expr when variable j has lowest degree d[j]
    (None meaning the zero series)."""
    if isinstance(expr, Const):
        return 0 if expr.value else None
    if isinstance(expr, X):
        return 1
    if isinstance(expr, Var):
        return d[expr.index]
    if isinstance(expr, Add):
        vals = [v for v in (_min_degree(t, d) for t in expr.terms) if v is not None]
        return min(vals) if vals else None
    if isinstance(expr, Mul):
        total = 0
        for f in expr.factors:
            v = _min_degree(f, d)
            if v is None:
                return None
            total += v
        return total
    if isinstance(expr, Pow):
        v = _min_degree(expr.base, d)
        if v is None:
            return None if expr.exp else 0
        return v * expr.exp
    if isinstance(expr, Construct):
        va = _min_degree(expr.arg, d)
        jmin = (
            expr.index.first()
            if isinstance(expr.index, EnumeratedSet)
            else (
                expr.index.finite_part[0]
                if expr.index.finite_part
                else expr.index.threshold
            )
        )
        if va is None:
            return 0 if jmin == 0 else None
        return jmin * va
    raise TypeError(repr(expr))


def zero_components(sys: PSSystem) -> set[int]:
    """Indices whose solution series is identically zero."""
    ok, diags = is_elementary(sys)
    if not ok:
        raise NotElementary("; ".join(diags))
    d: list[Optional[int]] = [None] * sys.k
    for _ in range(sys.k):
        d = [_min_degree(rhs, d) for rhs in sys.right_sides]
    return {i for i in range(sys.k) if d[i] is None}


@dataclass(frozen=True)
class SpectrumReport:
    support: frozenset[int]
    trunc: int


def spectrum_extract(s: Series) -> SpectrumReport:
    """Support of the coefficient sequence, with its truncation degree."""
    if not s.nonneg:
        raise MixedSigns("spectrum requires a non-negative series")
    return SpectrumReport(
        frozenset(i for i, c in enumerate(s.coeffs) if c), s.trunc
    )


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
