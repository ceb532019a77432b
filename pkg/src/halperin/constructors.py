"""Closed-form K-matrix families for every charge-vector case.

Each constructor returns a verified Solution carrying a
ConstructionTrace of the intermediate values, and each family has an
exact determinant law (q*(p*m - q), q*t^2, u*q*t^2, (p-1)*t1^2*beta^2,
t1^2*beta^2, and the *q^2 / *alpha^2 scaling rules), which is what makes
the solution set provably unbounded: the growth dial (m, t_index, beta,
alpha) can always be turned until the determinant exceeds any threshold.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .kmatrix import (
    ChargeVector,
    ConstructionTrace,
    KMatrix,
    Solution,
    check_filling,
    format_filling,
    make_solution,
    verify_solution,
)
from .ntheory import is_perfect_square, quadratic_residue_witness

T10 = ChargeVector(1, 0)
T11 = ChargeVector(1, 1)


def construct_t10(nu: Fraction, m: int) -> Solution:
    """Charge (1,0) family (m, p*(p*m - q), p*m - q); det = q*(p*m - q).

    Requires p*m - q >= 1 so the state is valid.
    """
    check_filling(nu)
    p, q = nu.numerator, nu.denominator
    w = p * m - q
    if w < 1:
        raise ValueError(f"need p*m - q >= 1, got {w} for nu={format_filling(nu)}, m={m}")
    k = KMatrix(m, p * w, w)
    return make_solution(k, nu, T10, ConstructionTrace(family="t10"))


def amplify_t10(s: Solution, alpha: int) -> Solution:
    """Turn a charge-(1,0) solution (m, n, l) into (m, alpha^2*n, alpha*l):
    the filling is unchanged and det picks up a factor alpha^2."""
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if s.charge != T10:
        raise ValueError(f"amplification needs charge (1, 0), got {s.charge}")
    if not verify_solution(s):
        raise ValueError(f"input solution {s} does not verify")
    k = s.kmatrix
    out = KMatrix(k.m, alpha * alpha * k.n, alpha * k.l)
    return make_solution(out, s.nu, T10, ConstructionTrace(family="t10-amplified", alpha=alpha))


def construct_t11(nu: Fraction, t_index: int = 1) -> Solution:
    """Charge (1,1) family at filling p/q, with t_index as the growth dial.

    When -q is a square mod p (witness b = smallest positive root, which
    also covers p = 1) the member is

        a = b + p*t, l = (a*b + q)/p, m = t*a + l, n = (b^2 + q)/p

    with det = q*t^2. Otherwise take the smallest l0 with
    u = p*l0 - q >= 1 and use

        m = l0 + t*u*(p*t + 2), n = l0, l = l0 + t*u

    with det = u*q*t^2. The branch and all intermediates are recorded in
    the trace.
    """
    check_filling(nu)
    if t_index < 1:
        raise ValueError(f"t_index must be positive, got {t_index}")
    p, q = nu.numerator, nu.denominator
    t = t_index

    witness = quadratic_residue_witness(-q, p)
    if witness is not None:
        b = witness.h if witness.h > 0 else witness.h + p
        a = b + p * t
        l = (a * b + q) // p
        m = t * a + l
        n = (b * b + q) // p
        trace = ConstructionTrace(
            family="t11-residue",
            a=a,
            b=b,
            t=t,
            h=b,
            l0=n,
            k=t * t,
            s=t * (a + b),
            x=a * a + b * b,
            rho=t * (a + b),
        )
        return make_solution(KMatrix(m, n, l), nu, T11, trace)

    l0 = (q + p) // p
    u = p * l0 - q
    m = l0 + t * u * (p * t + 2)
    n = l0
    l = l0 + t * u
    trace = ConstructionTrace(family="t11-nonresidue", t=t, u=u, l0=l0)
    return make_solution(KMatrix(m, n, l), nu, T11, trace)


def construct_nu1_t11(d1: int, d2: int) -> Solution:
    """Filling-1 member (1 + d1, 1 + d2, 1 + sqrt(d1*d2)) at charge (1,1),
    from a factorization d1*d2 of a perfect square.

    Solutions at nu = 1 are exactly (m - 1)*(n - 1) = (l - 1)^2; the
    determinant works out to d1 + d2 - 2*sqrt(d1*d2), so d1 == d2 is
    rejected (degenerate matrix).
    """
    if d1 < 1 or d2 < 1:
        raise ValueError(f"divisors must be positive, got {(d1, d2)}")
    if not is_perfect_square(d1 * d2):
        raise ValueError(f"d1*d2 = {d1 * d2} is not a perfect square")
    r = isqrt(d1 * d2)
    k = KMatrix(1 + d1, 1 + d2, 1 + r)
    if d1 + d2 - 2 * r < 1:
        raise ValueError(f"degenerate factorization {(d1, d2)}: determinant would be 0")
    return make_solution(k, Fraction(1), T11, ConstructionTrace(family="t11-unit-factorization"))


def construct_integer_general(p: int, t: ChargeVector, beta: int) -> Solution:
    """Integer filling p >= 2 at any charge with t1 >= 1:

        K = [[t1^2,                    (p-1)*t1*beta + t1*t2],
             [(p-1)*t1*beta + t1*t2,   (p-1)*p*beta^2 + 2*(p-1)*t2*beta + t2^2]]

    with det = (p-1)*t1^2*beta^2.
    """
    if p < 2:
        raise ValueError(f"integer filling must be >= 2, got {p}")
    if t.t1 < 1:
        raise ValueError(f"need t1 >= 1 (swap the charge first), got {t}")
    if beta < 1:
        raise ValueError(f"beta must be positive, got {beta}")
    t1, t2 = t.t1, t.t2
    m = t1 * t1
    l = (p - 1) * t1 * beta + t1 * t2
    n = (p - 1) * p * beta * beta + 2 * (p - 1) * t2 * beta + t2 * t2
    trace = ConstructionTrace(family="integer-general", beta=beta, x=t1 * beta)
    return make_solution(KMatrix(m, n, l), Fraction(p), t, trace)


def construct_unity_general(t: ChargeVector, beta: int) -> Solution:
    """Filling 1 at any charge with t1 >= 1:

        K = [[2*t1^2,              t1*beta + 2*t1*t2],
             [t1*beta + 2*t1*t2,   beta^2 + 2*t2*beta + 2*t2^2]]

    with det = t1^2*beta^2.
    """
    if t.t1 < 1:
        raise ValueError(f"need t1 >= 1 (swap the charge first), got {t}")
    if beta < 1:
        raise ValueError(f"beta must be positive, got {beta}")
    t1, t2 = t.t1, t.t2
    m = 2 * t1 * t1
    l = t1 * beta + 2 * t1 * t2
    n = beta * beta + 2 * t2 * beta + 2 * t2 * t2
    trace = ConstructionTrace(family="unity-general", beta=beta, u=t1 * beta)
    return make_solution(KMatrix(m, n, l), Fraction(1), t, trace)


def scale_to_rational(s: Solution, q: int) -> Solution:
    """(m, n, l) producing integer filling p becomes (q*m, q*n, q*l)
    producing p/q; det picks up a factor q^2."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    if s.nu.denominator != 1:
        raise ValueError(f"input filling must be an integer, got {format_filling(s.nu)}")
    if not verify_solution(s):
        raise ValueError(f"input solution {s} does not verify")
    return make_solution(s.kmatrix.scaled(q), s.nu / q, s.charge, s.trace)


def _swap_in(t: ChargeVector) -> tuple[ChargeVector, bool]:
    # The filling formula is symmetric under (m <-> n, t1 <-> t2), so a
    # zero first entry is handled by working with the swapped charge.
    if t.t1 == 0:
        return t.swapped(), True
    return t, False


def _swap_out(s: Solution, t: ChargeVector) -> Solution:
    return make_solution(s.kmatrix.swapped(), s.nu, t, s.trace)


def _min_beta(unit: int, min_det: int) -> int:
    # Smallest beta >= 1 with unit*beta^2 > min_det.
    return isqrt(min_det // unit) + 1


def construct(
    nu: Fraction, t: ChargeVector, min_det: int = 0, beta: int | None = None
) -> Solution:
    """A verified solution at any filling and charge with det > min_det.

    For p >= 2 this is the integer-general family scaled by q (det =
    (p-1)*t1^2*beta^2*q^2), for p = 1 the unity family scaled by q (det
    = t1^2*beta^2*q^2), with beta the smallest value clearing min_det
    unless given explicitly. Always succeeds for the derived beta.
    """
    check_filling(nu)
    if min_det < 0:
        raise ValueError(f"min_det must be nonnegative, got {min_det}")
    work_t, swapped = _swap_in(t)
    p, q = nu.numerator, nu.denominator
    t1sq = work_t.t1 * work_t.t1
    unit = ((p - 1) if p >= 2 else 1) * t1sq * q * q
    if beta is None:
        beta = _min_beta(unit, min_det)
    inner = (
        construct_integer_general(p, work_t, beta)
        if p >= 2
        else construct_unity_general(work_t, beta)
    )
    sol = scale_to_rational(inner, q)
    if swapped:
        sol = _swap_out(sol, t)
    if sol.det <= min_det:
        raise ValueError(f"beta={beta} gives det {sol.det}, not above {min_det}")
    return sol


def bosonic_construct(
    nu: Fraction, t: ChargeVector, min_det: int = 0, alpha: int = 2, beta: int | None = None
) -> Solution:
    """A verified all-even solution (bosonic parity) with det > min_det.

    Build the integer-general family at filling p*alpha, then scale by
    q*alpha: every entry carries the even factor alpha and the filling
    drops back to p/q. det = (q*alpha)^2*(p*alpha - 1)*t1^2*beta^2.
    """
    check_filling(nu)
    if alpha < 2 or alpha % 2 != 0:
        raise ValueError(f"alpha must be even and >= 2, got {alpha}")
    if min_det < 0:
        raise ValueError(f"min_det must be nonnegative, got {min_det}")
    work_t, swapped = _swap_in(t)
    p, q = nu.numerator, nu.denominator
    t1sq = work_t.t1 * work_t.t1
    scale = q * alpha
    if beta is None:
        beta = _min_beta(scale * scale * (p * alpha - 1) * t1sq, min_det)
    inner = construct_integer_general(p * alpha, work_t, beta)
    k = inner.kmatrix.scaled(scale)
    trace = dataclasses.replace(inner.trace, family="bosonic", alpha=alpha)
    sol = make_solution(k, nu, work_t, trace)
    if swapped:
        sol = _swap_out(sol, t)
    if sol.det <= min_det:
        raise ValueError(f"beta={beta} gives det {sol.det}, not above {min_det}")
    return sol


def construct_t10_exceeding(nu: Fraction, min_det: int = 0) -> Solution:
    """Smallest-m member of the charge-(1,0) family with det > min_det."""
    p, q = nu.numerator, nu.denominator
    m = max((q + p) // p, (min_det + q * q) // (p * q) + 1)
    sol = construct_t10(nu, m)
    assert sol.det > min_det
    return sol


def construct_t11_exceeding(nu: Fraction, min_det: int = 0) -> Solution:
    """Smallest-t_index member of the charge-(1,1) family with det > min_det."""
    probe = construct_t11(nu, 1)
    unit = probe.det  # q or u*q times t^2 at t = 1
    t_index = isqrt(min_det // unit) + 1
    sol = construct_t11(nu, t_index) if t_index > 1 else probe
    assert sol.det > min_det
    return sol


class ObstructionStatus(enum.Enum):
    OBSTRUCTED = "obstructed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ObstructionReport:
    status: ObstructionStatus
    nu: Fraction
    charge: ChargeVector
    reason: str


def fermionic_obstruction(nu: Fraction, t: ChargeVector) -> ObstructionReport:
    """Decide whether an all-odd-diagonal (fermionic) solution is ruled out.

    At charge (1,0) the filling is n/(m*n - l^2) with the numerator n on
    the odd diagonal, so its reduced numerator p inherits n's parity:
    p even forces n even and no fermionic solution exists. Anything
    beyond (1,0) and its swap is left undecided.
    """
    check_filling(nu)
    p = nu.numerator
    if (t.t1, t.t2) in ((1, 0), (0, 1)):
        if p % 2 == 0:
            return ObstructionReport(
                ObstructionStatus.OBSTRUCTED,
                nu,
                t,
                "reduced numerator is even but an odd diagonal forces an odd numerator",
            )
        return ObstructionReport(
            ObstructionStatus.UNKNOWN, nu, t, "no parity obstruction at odd numerator"
        )
    return ObstructionReport(
        ObstructionStatus.UNKNOWN, nu, t, "parity argument only covers charge (1,0) and its swap"
    )
