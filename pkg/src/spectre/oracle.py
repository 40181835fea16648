"""Brute-force reference implementations, used only by the tests.

Everything here works on plain membership lists / integer sets with direct
double loops, sharing no code with the exact engines.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

BoolVec = list  # membership array on [0, H]


def vec_of(members, h: int) -> BoolVec:
    v = [False] * (h + 1)
    for n in members:
        if 0 <= n <= h:
            v[n] = True
    return v


def vec_members(v: BoolVec) -> set[int]:
    return {n for n, b in enumerate(v) if b}


def _ind(v: BoolVec) -> np.ndarray:
    return np.asarray(v, dtype=bool)


def _conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Indicator of the elementwise sumset, truncated to len(a)."""
    return np.convolve(a.astype(np.int64), b.astype(np.int64))[: len(a)] > 0


def _nstar_ind(n: int, b: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(b), dtype=bool)
    acc[0] = True
    for _ in range(n):
        acc = _conv(acc, b)
    return acc


def _star_ind(a_members, b: np.ndarray) -> np.ndarray:
    out = np.zeros(len(b), dtype=bool)
    power = np.zeros(len(b), dtype=bool)
    power[0] = True
    cur = 0
    h = len(b) - 1
    for n in sorted(a_members):
        if n > h:
            break
        for _ in range(n - cur):
            power = _conv(power, b)
        cur = n
        out |= power
    return out


def brute_set_op(op: str, a, b, h: int) -> BoolVec:
    """Direct evaluation of a set operation, truncated to [0, h].

    `a` and `b` are membership arrays; for scalar_mul and nstar, `a`
    is the integer scalar instead.
    """
    bv = _ind(b) if b is not None else np.zeros(h + 1, dtype=bool)
    if op == "union":
        return list(_ind(a) | bv)
    if op == "sum":
        return list(_conv(_ind(a), bv))
    if op == "scalar_mul":
        out = np.zeros(h + 1, dtype=bool)
        for x in vec_members(b):
            if a * x <= h:
                out[a * x] = True
        return list(out)
    if op == "nstar":
        return list(_nstar_ind(a, bv))
    if op == "star":
        return list(_star_ind(vec_members(a), bv))
    if op == "natstar":
        v = bv.copy()
        v[0] = True
        while True:
            nxt = v | _conv(v, v)
            if (nxt == v).all():
                return list(v)
            v = nxt
    raise ValueError(op)


def brute_fixpoint(system, h: int) -> list[BoolVec]:
    """Kleene iteration of a set-equation system on [0, h] by naive
    term expansion."""
    k = system.k
    vals = [np.zeros(h + 1, dtype=bool) for _ in range(k)]
    while True:
        nxt = []
        for eq in system.equations:
            acc = np.zeros(h + 1, dtype=bool)
            for t in eq:
                piece = np.zeros(h + 1, dtype=bool)
                for n in _epset_members(t.base, h):
                    piece[n] = True
                for j, e in enumerate(t.exponents):
                    if not piece.any():
                        break
                    idx = _index_set_members(e, h)
                    if idx == {0}:
                        continue
                    piece = _conv(piece, _star_ind(idx, vals[j]))
                acc |= piece
            nxt.append(acc)
        if all((x == y).all() for x, y in zip(nxt, vals)):
            return [list(v) for v in vals]
        vals = nxt


def _epset_members(s, h: int) -> set[int]:
    out = set(n for n in s.finite_part if n <= h)
    if s.period is not None:
        res = set(s.residues)
        out |= {n for n in range(s.threshold, h + 1) if n % s.period in res}
    return out


def _index_set_members(e, h: int) -> set[int]:
    if hasattr(e, "members_upto"):  # enumerated
        return set(e.members_upto(h))
    return _epset_members(e, h)


# ---------------------------------------------------------------------------
# schoolbook power series


def naive_add(a: Sequence, b: Sequence, n: int) -> list[Fraction]:
    return [
        Fraction(a[i] if i < len(a) else 0) + Fraction(b[i] if i < len(b) else 0)
        for i in range(n + 1)
    ]


def naive_mul(a: Sequence, b: Sequence, n: int) -> list[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if i > n or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > n:
                break
            out[i + j] += Fraction(x) * Fraction(y)
    return out


def naive_compose(a: Sequence, b: Sequence, n: int) -> list[Fraction]:
    """a(b(x)); requires b(0) = 0."""
    if len(b) and Fraction(b[0]) != 0:
        raise ValueError("inner series must vanish at 0")
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for coeff in a[: n + 1]:
        c = Fraction(coeff)
        if c:
            out = naive_add(out, [c * p for p in power], n)
        power = naive_mul(power, b, n)
    return out


def naive_euler(a: Sequence, n: int, sizes=None) -> list[Fraction]:
    """Multiset construction over integer counts a_m >= 0:
    product over m of (1 - x^m)^(-a_m), optionally restricted to
    multisets whose total number of parts lies in `sizes`.

    Computed by explicit enumeration of part multiplicities.
    """
    counts = [int(c) for c in a[: n + 1]]
    if any(Fraction(c) != Fraction(int(c)) or c < 0 for c in a[: n + 1]):
        raise ValueError("integer non-negative coefficients required")
    # dp[(weight, parts)] = number of multisets
    dp = {(0, 0): 1}
    for m in range(1, n + 1):
        am = counts[m] if m <= len(counts) - 1 else 0
        if am == 0:
            continue
        # choose a multiset of atoms of size m: combinations with repetition
        ways = {0: 1}  # parts chosen of this size -> count
        # number of multisets of j atoms from am types: C(am+j-1, j)
        j = 1
        while m * j <= n:
            ways[j] = comb(am + j - 1, j)
            j += 1
        ndp = {}
        for (w, p), cnt in dp.items():
            for j2, wcnt in ways.items():
                if w + m * j2 > n:
                    continue
                key = (w + m * j2, p + j2)
                ndp[key] = ndp.get(key, 0) + cnt * wcnt
        dp = ndp
    out = [Fraction(0)] * (n + 1)
    for (w, p), cnt in dp.items():
        if sizes is None or p in sizes:
            out[w] += cnt
    return out


def naive_seq(a: Sequence, n: int, sizes=None) -> list[Fraction]:
    """Sequence construction: sum over j in sizes of a(x)^j."""
    if sizes is None:
        sizes = range(1, n + 2)
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    top = max((j for j in sizes if j <= n + 1), default=0)
    j = 0
    while j <= top:
        if j in sizes:
            out = naive_add(out, power, n)
        power = naive_mul(power, a, n)
        j += 1
    return out


def naive_series(op: str, *args) -> list[Fraction]:
    n = args[-1]
    if op == "add":
        return naive_add(args[0], args[1], n)
    if op == "mul":
        return naive_mul(args[0], args[1], n)
    if op == "compose":
        return naive_compose(args[0], args[1], n)
    if op == "euler":
        return naive_euler(args[0], n)
    if op == "seq":
        return naive_seq(args[0], n)
    raise ValueError(op)
