"""Exact algebra of eventually periodic subsets of the naturals.

The central value type is EPSet: a canonical representation of a set of
naturals as a finite part together with a union of residue classes past a
threshold.  All operations are pure and return canonical values, so
structural equality decides set equality.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Tuple, Union


class EmptyOrZeroOnly(ValueError):
    """Raised when a closure argument has no positive element."""


class HypothesisFails(ValueError):
    """Raised when a doubling-certificate containment check fails."""


@dataclass(frozen=True)
class EPSet:
    """Canonical eventually periodic subset of the naturals.

    Denotes finite_part ∪ {n >= threshold : n mod period in residues}.
    Finite sets carry no period/residues and threshold = max+1 (0 when
    empty).  Instances must be built through normalize(); direct
    construction bypasses canonicalization.
    """

    finite_part: Tuple[int, ...]
    threshold: int
    period: Optional[int] = None
    residues: Optional[Tuple[int, ...]] = None

    @property
    def is_empty(self) -> bool:
        return not self.finite_part and self.period is None

    @property
    def is_finite(self) -> bool:
        return self.period is None

    def __repr__(self) -> str:
        return f"EPSet[{format_epset(self)}]"


@dataclass(frozen=True)
class PeriodicityParams:
    """The four periodicity parameters of an eventually periodic set.

    m: minimum element (math.inf for the empty set)
    q: gcd of the set shifted down by its minimum (gcd of empty = 0)
    p: minimal eventual period (0 for finite sets)
    c: least member from which p is a period of the tail (max+1 for
       finite sets, 0 for the empty set)
    """

    m: Union[int, float]
    q: int
    p: int
    c: int


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def normalize(finite: Iterable[int], blocks: Iterable[Tuple[int, int]] = ()) -> EPSet:
    """Canonical EPSet denoting finite ∪ ⋃ (start_i + step_i·ℕ)."""
    fin = set()
    for n in finite:
        n = int(n)
        if n < 0:
            raise ValueError(f"negative element {n}")
        fin.add(n)
    best: dict[Tuple[int, int], int] = {}
    for s, p in blocks:
        s, p = int(s), int(p)
        if s < 0 or p <= 0:
            raise ValueError(f"bad progression ({s},{p})")
        key = (p, s % p)
        if key not in best or s < best[key]:
            best[key] = s
    blist = [(s, p) for (p, _), s in best.items()]

    if not blist:
        fp = tuple(sorted(fin))
        return EPSet(fp, fp[-1] + 1 if fp else 0)

    big = 1
    for _, p in blist:
        big = big * p // math.gcd(big, p)
    start_m = max(max(s for s, _ in blist), max(fin) + 1 if fin else 0)
    size = start_m + big
    mem = bytearray(size)
    for n in fin:
        mem[n] = 1
    for s, p in blist:
        for n in range(s, size, p):
            mem[n] = 1

    occupied = {n % big for n in range(start_m, start_m + big) if mem[n]}
    period = big
    for d in _divisors(big):
        if all(((r + d) % big) in occupied for r in occupied):
            period = d
            break
    res = frozenset(r % period for r in occupied)

    # minimal point from which the residue pattern describes membership
    t0 = start_m
    while t0 > 0:
        n = t0 - 1
        if bool(mem[n]) == ((n % period) in res):
            t0 = n
        else:
            break
    # advance to the first member of the periodic tail
    thr = t0
    while (thr % period) not in res:
        thr += 1
    fp = tuple(n for n in range(thr) if mem[n])
    return EPSet(fp, thr, period, tuple(sorted(res)))


EMPTY = normalize(())
ZERO = normalize((0,))
NAT = normalize((), [(0, 1)])
POS = normalize((), [(1, 1)])
EVEN = normalize((), [(0, 2)])
POS_EVEN = normalize((), [(2, 2)])
ODD = normalize((), [(1, 2)])

BUILTIN_SETS = {
    "N": NAT,
    "P": POS,
    "Even": EVEN,
    "PosEven": POS_EVEN,
    "Odd": ODD,
}


def singleton(n: int) -> EPSet:
    return normalize((n,))


def from_elements(elems: Iterable[int]) -> EPSet:
    return normalize(elems)


def member(a: EPSet, n: int) -> bool:
    """Membership test."""
    if n < 0:
        return False
    if n < a.threshold:
        return n in a.finite_part
    if a.period is None:
        return False
    return (n % a.period) in a.residues


def enumerate_range(a: EPSet, lo: int, hi: int) -> list[int]:
    """All members of a in [lo, hi], sorted."""
    if lo > hi:
        raise ValueError("lo > hi")
    out = [n for n in a.finite_part if lo <= n <= hi]
    if a.period is not None:
        res = set(a.residues)
        start = max(lo, a.threshold)
        out.extend(n for n in range(start, hi + 1) if (n % a.period) in res)
    return out


def iter_members(a: EPSet) -> Iterator[int]:
    """Members in increasing order (infinite iterator for infinite sets)."""
    yield from a.finite_part
    if a.period is not None:
        res = set(a.residues)
        n = a.threshold
        while True:
            if (n % a.period) in res:
                yield n
            n += 1


def decompose(a: EPSet) -> Tuple[list[int], list[Tuple[int, int]]]:
    """Split into explicit elements and full arithmetic progressions."""
    fins = list(a.finite_part)
    blocks = []
    if a.period is not None:
        p = a.period
        for r in a.residues:
            start = a.threshold + ((r - a.threshold) % p)
            blocks.append((start, p))
    return fins, blocks


def shift(a: EPSet, t: int) -> EPSet:
    """a + t elementwise."""
    if a.is_empty or t == 0:
        return a
    fins, blocks = decompose(a)
    return normalize([n + t for n in fins], [(s + t, p) for s, p in blocks])


def union(a: EPSet, b: EPSet) -> EPSet:
    fa, ba = decompose(a)
    fb, bb = decompose(b)
    return normalize(fa + fb, ba + bb)


@lru_cache(maxsize=None)
def _pair_step_closure(p1: int, p2: int) -> EPSet:
    """p1·ℕ + p2·ℕ as an EPSet (a two-generator numerical semigroup)."""
    return _natstar(normalize((p1, p2)))


def sumset(a: EPSet, b: EPSet) -> EPSet:
    """Elementwise sums {x+y}; empty if either side is empty."""
    if a.is_empty or b.is_empty:
        return EMPTY
    fa, ba = decompose(a)
    fb, bb = decompose(b)
    # pairwise sums of the finite parts via bitmask shifts
    fins: set[int] = set()
    if fa and fb:
        abits = 0
        for x in fa:
            abits |= 1 << x
        acc = 0
        for y in fb:
            acc |= abits << y
        while acc:
            low = acc & -acc
            fins.add(low.bit_length() - 1)
            acc ^= low
    blocks = []
    for x in fa:
        blocks.extend((x + s, p) for s, p in bb)
    for y in fb:
        blocks.extend((s + y, p) for s, p in ba)
    for s1, p1 in ba:
        for s2, p2 in bb:
            clo = _pair_step_closure(p1, p2)
            cf, cb = decompose(clo)
            off = s1 + s2
            fins.update(c + off for c in cf)
            blocks.extend((s + off, p) for s, p in cb)
    return normalize(fins, blocks)


def scalar_mul(n: int, b: EPSet) -> EPSet:
    """{n·x : x in b}; scaling the empty set stays empty."""
    if n < 0:
        raise ValueError("negative scalar")
    if b.is_empty:
        return EMPTY
    if n == 0:
        return ZERO
    fins, blocks = decompose(b)
    return normalize([n * x for x in fins], [(n * s, n * p) for s, p in blocks])


def nstar(n: int, b: EPSet) -> EPSet:
    """n-fold sumset b + ... + b, with 0-fold = {0}."""
    if n < 0:
        raise ValueError("negative repeat count")
    result = ZERO
    power = b
    while n:
        if n & 1:
            result = sumset(result, power)
        n >>= 1
        if n:
            power = sumset(power, power)
    return result


def has_positive(a: EPSet) -> bool:
    return any(n > 0 for n in a.finite_part) or a.period is not None


def gcd_of(a: EPSet) -> int:
    """gcd of all elements (0 for the empty set)."""
    g = 0
    for n in a.finite_part:
        g = math.gcd(g, n)
    if a.period is not None:
        _, blocks = decompose(a)
        for s, p in blocks:
            g = math.gcd(g, math.gcd(s, p))
    return g


@lru_cache(maxsize=4096)
def _natstar(b: EPSet) -> EPSet:
    """ℕ⋆b without preconditions: {0} for empty or zero-only arguments.

    Computed by an exact reachability bitmask over the gcd-reduced scale.
    The window grows until the top of the window carries a certified run
    of consecutive members: for finite generators, a run of n1 values
    (n1 the least reduced generator, so adding n1·g covers everything
    later); for infinite arguments, a run long enough that a nearby
    large member can be subtracted from any later value.
    """
    if not has_positive(b):
        return ZERO
    g = gcd_of(b)
    n1 = next(x for x in iter_members(b) if x > 0) // g
    if b.period is None:
        nk = b.finite_part[-1] // g
        run_needed = n1
        limit = 2 * max(n1, nk) + 2
    else:
        # infinite argument: members beyond the threshold recur with gaps
        # at most delta, so a covered stretch of tstart + delta values
        # certifies every later value (subtract a nearby large member)
        tail = [
            x // g
            for x in enumerate_range(b, b.threshold, b.threshold + 2 * b.period)
        ]
        delta = max((y - x for x, y in zip(tail, tail[1:])), default=1)
        run_needed = tail[0] + delta + 1
        limit = 2 * max(n1, run_needed) + 2
    while True:
        gens = sorted(
            {
                x // g
                for x in itertools.takewhile(
                    lambda m: m <= limit * g, iter_members(b)
                )
                if x > 0
            }
        )
        mask = (1 << (limit + 1)) - 1
        reach = 1
        for x in gens:
            if (reach >> x) & 1:
                continue  # already a sum of smaller members
            # close under adding any multiple of x by doubling shifts
            s = x
            while s <= limit:
                reach |= (reach << s) & mask
                s *= 2
        zeros = ~reach & mask
        cond = zeros.bit_length()  # one past the largest non-member
        if limit + 1 - cond >= n1:
            elems = [n * g for n in range(cond) if (reach >> n) & 1]
            return normalize(elems, [(cond * g, g)])
        limit *= 2


def nat_closure(b: EPSet) -> EPSet:
    """ℕ⋆b: all finite sums of elements of b (with the empty sum 0)."""
    if not has_positive(b):
        raise EmptyOrZeroOnly("closure argument has no positive element")
    return _natstar(b)


def star(a: EPSet, b: EPSet) -> EPSet:
    """⋃_{x in a} x-fold sumset of b."""
    if a.is_empty:
        return EMPTY
    if b.is_empty:
        return ZERO if member(a, 0) else EMPTY
    fins, blocks = decompose(a)
    acc = EMPTY
    for x in fins:
        acc = union(acc, nstar(x, b))
    for s, r in blocks:
        piece = sumset(nstar(s, b), _natstar(nstar(r, b)))
        acc = union(acc, piece)
    return acc


def is_subset(a: EPSet, b: EPSet) -> bool:
    return union(a, b) == b


def params(a: EPSet) -> PeriodicityParams:
    """The periodicity parameters (m, q, p, c) of a."""
    if a.is_empty:
        return PeriodicityParams(math.inf, 0, 0, 0)
    m = a.finite_part[0] if a.finite_part else a.threshold
    q = 0
    for n in a.finite_part:
        q = math.gcd(q, n - m)
    fins, blocks = decompose(a)
    for s, p in blocks:
        q = math.gcd(q, math.gcd(s - m, p))
    if a.period is None:
        return PeriodicityParams(m, q, 0, a.finite_part[-1] + 1)
    c = a.threshold
    for k in a.finite_part:
        if _period_holds_from(a, k):
            c = k
            break
    return PeriodicityParams(m, q, a.period, c)


def _period_holds_from(a: EPSet, k: int) -> bool:
    """True iff the canonical period shifts every member >= k back into a."""
    p = a.period
    for x in a.finite_part:
        if x < k:
            continue
        n = x + p
        while n < a.threshold + p:
            if not member(a, n):
                return False
            n += p
    return True


def is_eventual_period(a: EPSet, p: int) -> bool:
    """True iff x + p is eventually in a for all large x in a."""
    if p <= 0:
        return False
    if a.period is None:
        return True
    return p % a.period == 0


def certify_doubling(a: EPSet, r: int, s: int) -> PeriodicityParams:
    """Certify periodicity of a from the containment a ⊇ r + s-fold(a).

    Requires s >= 2 and a positive element in a.  On success the returned
    parameters satisfy p = q and the tail of a past c is the single
    progression c + p·ℕ.
    """
    if s < 2:
        raise ValueError("doubling certificate needs s >= 2")
    if not has_positive(a):
        raise HypothesisFails("set has no positive element")
    rhs = shift(nstar(s, a), r)
    if not is_subset(rhs, a):
        raise HypothesisFails(
            f"containment {r} + {s}-fold(A) ⊆ A fails"
        )
    pp = params(a)
    if pp.p != pp.q or (a.residues is not None and len(a.residues) != 1):
        raise AssertionError("doubling hypothesis held but tail is not a single progression")
    return pp


def format_epset(a: EPSet) -> str:
    """Canonical textual form, e.g. '{1,2} | 4+3*N'."""
    if a.is_empty:
        return "{}"
    parts = []
    if a.finite_part:
        parts.append("{" + ",".join(str(n) for n in a.finite_part) + "}")
    _, blocks = decompose(a)
    for s, p in sorted(blocks):
        parts.append(f"{s}+{p}*N")
    return " | ".join(parts)


def _primes() -> Iterator[int]:
    yield 2
    known = [2]
    n = 3
    while True:
        if all(n % p for p in known if p * p <= n):
            known.append(n)
            yield n
        n += 2


_GENERATORS = {"Primes": _primes}


@dataclass(frozen=True)
class EnumeratedSet:
    """A strictly increasing set of naturals given only by a generator.

    Used for index sets (like the primes) that are not eventually
    periodic.  Results that consume the generator are flagged
    enumeration-based and uncertified by callers.
    """

    name: str

    def members_upto(self, hi: int, cap: Optional[int] = None) -> list[int]:
        gen = _GENERATORS[self.name]()
        if cap is not None:
            gen = itertools.islice(gen, cap)
        return list(itertools.takewhile(lambda n: n <= hi, gen))

    def first(self) -> int:
        return next(_GENERATORS[self.name]())

    def __repr__(self) -> str:
        return f"EnumeratedSet({self.name})"


IndexSet = Union[EPSet, EnumeratedSet]

ENUMERATED_SETS = {"Primes": EnumeratedSet("Primes")}
