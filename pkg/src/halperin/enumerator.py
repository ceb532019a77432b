"""Complete search procedures over (m, n, l) triples.

`enumerate_solutions` finds every solution inside a box exactly: for
fixed (m, l) the defining equation is linear in n, so each column is
solved in O(1) instead of scanning n. `solve_fixed_l` is the complete
solver for a frozen off-diagonal l, built on the factorization

    (p*m - q*t1^2) * (p*n - q*t2^2) = (p*l - q*t1*t2)^2

which holds exactly on solutions (expanding both sides leaves p times
the Diophantine residual). A zero right-hand side is the one degenerate
case, where a vanishing factor frees one diagonal entry and the
solution set is an infinite one-parameter family.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .kmatrix import (
    ChargeVector,
    KMatrix,
    Solution,
    check_filling,
    determinant,
    filling_numerator,
    is_valid_state,
    make_solution,
)


def _scan_m_range(
    p: int, q: int, t1: int, t2: int, m_lo: int, m_hi: int, n_max: int
) -> list[tuple[int, int, int]]:
    """All solution triples with m in [m_lo, m_hi], n in [1, n_max].

    Writing the residual as n*(p*m - q*t1^2) - (p*l^2 + q*m*t2^2 -
    2*q*l*t1*t2) shows n is determined linearly once (m, l) are fixed;
    a vanishing coefficient with vanishing constant frees n entirely.
    """
    out = []
    qt1sq = q * t1 * t1
    qt2sq = q * t2 * t2
    two_qt1t2 = 2 * q * t1 * t2
    for m in range(m_lo, m_hi + 1):
        a = p * m - qt1sq
        for l in range(isqrt(m * n_max - 1) + 1):
            b = p * l * l + qt2sq * m - two_qt1t2 * l
            if a == 0:
                if b == 0:
                    n_lo = (l * l) // m + 1  # smallest n with m*n - l^2 >= 1
                    for n in range(n_lo, n_max + 1):
                        out.append((m, n, l))
            elif b % a == 0:
                n = b // a
                if 1 <= n <= n_max and m * n - l * l >= 1:
                    out.append((m, n, l))
    return out


def _scan_chunk(args: tuple[int, int, int, int, int, int, int]) -> list[tuple[int, int, int]]:
    return _scan_m_range(*args)


def enumerate_solutions(
    nu: Fraction,
    t: ChargeVector,
    m_max: int,
    n_max: int,
    workers: int = 1,
) -> list[Solution]:
    """Every valid solution with m <= m_max, n <= n_max, complete within
    the box and sorted lexicographically by (m, n, l).

    With workers > 1 the m-range is partitioned across processes; each
    worker is pure and the merged output is sorted, so parallel and
    serial runs are identical.
    """
    check_filling(nu)
    if m_max < 1 or n_max < 1:
        raise ValueError(f"bounds must be positive, got {(m_max, n_max)}")
    p, q = nu.numerator, nu.denominator
    if workers > 1 and m_max > workers:
        step = -(-m_max // workers)
        chunks = [
            (p, q, t.t1, t.t2, lo, min(lo + step - 1, m_max), n_max)
            for lo in range(1, m_max + 1, step)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, chunks))
        triples = [triple for part in parts for triple in part]
    else:
        triples = _scan_m_range(p, q, t.t1, t.t2, 1, m_max, n_max)
    triples.sort()
    return [make_solution(KMatrix(*triple), nu, t) for triple in triples]


class OutcomeKind(enum.Enum):
    FINITE = "finite"
    INFINITE_FAMILY = "infinite_family"
    EMPTY = "empty"


@dataclass(frozen=True)
class FixedLFamily:
    """One-parameter family at fixed l: one diagonal entry is pinned and
    the other ranges over every value keeping the determinant positive."""

    fixed_side: str  # "m" or "n"
    fixed_value: int
    free_min: int
    l: int

    def describe(self) -> str:
        if self.fixed_side == "m":
            return f"({self.fixed_value}, n, {self.l}) for all n >= {self.free_min}"
        return f"(m, {self.fixed_value}, {self.l}) for all m >= {self.free_min}"

    def members_in_box(self, m_max: int, n_max: int) -> list[tuple[int, int, int]]:
        if self.fixed_side == "m":
            if self.fixed_value > m_max:
                return []
            return [(self.fixed_value, n, self.l) for n in range(self.free_min, n_max + 1)]
        if self.fixed_value > n_max:
            return []
        return [(m, self.fixed_value, self.l) for m in range(self.free_min, m_max + 1)]


@dataclass(frozen=True)
class FixedLOutcome:
    kind: OutcomeKind
    solutions: tuple[Solution, ...] = ()
    families: tuple[FixedLFamily, ...] = ()

    @property
    def family_description(self) -> str | None:
        if not self.families:
            return None
        return "; ".join(f.describe() for f in self.families)

    def members_in_box(self, m_max: int, n_max: int) -> set[tuple[int, int, int]]:
        members = {s.kmatrix.as_tuple() for s in self.solutions
                   if s.kmatrix.m <= m_max and s.kmatrix.n <= n_max}
        for fam in self.families:
            members.update(fam.members_in_box(m_max, n_max))
        return members


def _divisors(n: int) -> list[int]:
    out = []
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            if f != n // f:
                out.append(n // f)
        f += 1
    return sorted(out)


def solve_fixed_l(nu: Fraction, t: ChargeVector, l0: int) -> FixedLOutcome:
    """The complete solution set of the filling equation at fixed l = l0.

    Solutions correspond to divisor pairs d1*d2 = (p*l0 - q*t1*t2)^2 via
    m = (d1 + q*t1^2)/p, n = (d2 + q*t2^2)/p, keeping only integral,
    positive, det >= 1 candidates; both signs of the divisor pair are
    scanned. When the right-hand side vanishes, a factor may vanish
    identically and free the other diagonal entry, giving an infinite
    family instead of a list.
    """
    check_filling(nu)
    if l0 < 0:
        raise ValueError(f"l0 must be nonnegative, got {l0}")
    p, q = nu.numerator, nu.denominator
    t1, t2 = t.t1, t.t2
    qt1sq = q * t1 * t1
    qt2sq = q * t2 * t2
    rhs_root = p * l0 - q * t1 * t2
    rhs = rhs_root * rhs_root

    if rhs == 0:
        families = []
        if qt1sq % p == 0 and qt1sq // p >= 1:
            m0 = qt1sq // p
            families.append(FixedLFamily("m", m0, (l0 * l0) // m0 + 1, l0))
        if qt2sq % p == 0 and qt2sq // p >= 1:
            n0 = qt2sq // p
            families.append(FixedLFamily("n", n0, (l0 * l0) // n0 + 1, l0))
        if not families:
            return FixedLOutcome(OutcomeKind.EMPTY)
        return FixedLOutcome(OutcomeKind.INFINITE_FAMILY, families=tuple(families))

    triples = []
    for d in _divisors(rhs):
        for d1 in (d, -d):
            d2 = rhs // d1
            if (d1 + qt1sq) % p != 0 or (d2 + qt2sq) % p != 0:
                continue
            m = (d1 + qt1sq) // p
            n = (d2 + qt2sq) // p
            if m >= 1 and n >= 1 and m * n - l0 * l0 >= 1:
                triples.append((m, n, l0))
    if not triples:
        return FixedLOutcome(OutcomeKind.EMPTY)
    triples.sort()
    solutions = tuple(make_solution(KMatrix(*tr), nu, t) for tr in triples)
    return FixedLOutcome(OutcomeKind.FINITE, solutions=solutions)


@dataclass(frozen=True)
class BoundCertificate:
    """Proof that fillings at fixed l0 are bounded.

    Splitting the (m, n) plane at m*n = 2*l0^2 bounds the outer part by
    2*t1^2 + 2*t2^2 (there the numerator is at most t1^2*n + t2^2*m and
    the determinant at least m*n/2) while the inner part is a finite set
    scanned directly; the certified bound is the larger of the two. The
    empirical maximum comes from a full scan of the recorded box and is
    a witness, not a claimed supremum.
    """

    l0: int
    charge: ChargeVector
    certified_upper_bound: Fraction
    empirical_max: Fraction
    scan_m_max: int
    scan_n_max: int


def max_filling_fixed_l(t: ChargeVector, l0: int) -> BoundCertificate:
    if l0 < 0:
        raise ValueError(f"l0 must be nonnegative, got {l0}")
    analytic = Fraction(2 * t.t1 * t.t1 + 2 * t.t2 * t.t2)
    inner_cap = 2 * l0 * l0

    region_max = Fraction(0)
    for m in range(1, inner_cap + 1):
        for n in range(1, inner_cap // m + 1):
            k = KMatrix(m, n, l0)
            if is_valid_state(k):
                value = Fraction(filling_numerator(k, t), determinant(k))
                region_max = max(region_max, value)
    certified = max(analytic, region_max)

    box = max(inner_cap, int(analytic), 4)
    empirical = Fraction(0)
    for m in range(1, box + 1):
        for n in range(1, box + 1):
            k = KMatrix(m, n, l0)
            if is_valid_state(k):
                value = Fraction(filling_numerator(k, t), determinant(k))
                empirical = max(empirical, value)
    return BoundCertificate(l0, t, certified, empirical, box, box)


def union_gap_check(
    t: ChargeVector,
    l_set: set[int] | list[int],
    candidate_nus: list[Fraction],
) -> list[Fraction]:
    """Candidates unattainable at every l in l_set.

    A candidate above every certified bound is rejected outright, with
    no search; the rest are settled by running the complete fixed-l
    solver at each l.
    """
    ls = sorted(set(l_set))
    bounds = [max_filling_fixed_l(t, l).certified_upper_bound for l in ls]
    overall = max(bounds, default=Fraction(0))
    unattainable = []
    for nu in candidate_nus:
        check_filling(nu)
        if nu > overall:
            unattainable.append(nu)
            continue
        if all(solve_fixed_l(nu, t, l).kind == OutcomeKind.EMPTY for l in ls):
            unattainable.append(nu)
    return unattainable
