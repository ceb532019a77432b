"""Core domain types for bilayer quantum Hall states.

A state is a symmetric integer matrix [[m, l], [l, n]] together with a
nonnegative integer charge vector (t1, t2). Its filling fraction is

    nu = (n*t1^2 + m*t2^2 - 2*l*t1*t2) / (m*n - l^2)

and det = m*n - l^2 counts the inequivalent quasiparticle excitations,
so two states at the same filling with different determinants are
different topological phases. Fillings are plain `fractions.Fraction`
values, always positive and implicitly in lowest terms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction


class InvalidState(ValueError):
    """The (m, n, l) triple violates m, n >= 1, l >= 0 or det >= 1."""


def check_filling(nu: Fraction) -> Fraction:
    if nu <= 0:
        raise ValueError(f"filling fraction must be positive, got {nu}")
    return nu


def parse_filling(text: str) -> Fraction:
    """Parse 'p/q' or a bare integer as a positive reduced fraction."""
    nu = Fraction(text.strip())
    return check_filling(nu)


def format_filling(nu: Fraction) -> str:
    """Canonical 'p/q' form, including the denominator when it is 1."""
    return f"{nu.numerator}/{nu.denominator}"


@dataclass(frozen=True)
class ChargeVector:
    t1: int
    t2: int

    def __post_init__(self):
        if self.t1 < 0 or self.t2 < 0:
            raise ValueError(f"charge entries must be nonnegative, got {(self.t1, self.t2)}")
        if self.t1 == 0 and self.t2 == 0:
            raise ValueError("charge vector must not be (0, 0)")

    def swapped(self) -> "ChargeVector":
        return ChargeVector(self.t2, self.t1)


@dataclass(frozen=True)
class KMatrix:
    """Raw (m, n, l) data; any integers are allowed at construction,
    validity is a separate check."""

    m: int
    n: int
    l: int

    def swapped(self) -> "KMatrix":
        return KMatrix(self.n, self.m, self.l)

    def scaled(self, c: int) -> "KMatrix":
        return KMatrix(c * self.m, c * self.n, c * self.l)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.l)


class ParityClass(enum.Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"
    MIXED = "mixed"


def determinant(k: KMatrix) -> int:
    return k.m * k.n - k.l * k.l


def is_valid_state(k: KMatrix) -> bool:
    return k.m >= 1 and k.n >= 1 and k.l >= 0 and determinant(k) >= 1


def filling_numerator(k: KMatrix, t: ChargeVector) -> int:
    return k.n * t.t1 * t.t1 + k.m * t.t2 * t.t2 - 2 * k.l * t.t1 * t.t2


def filling_fraction(k: KMatrix, t: ChargeVector) -> Fraction:
    """Evaluate the filling fraction, reduced to lowest terms.

    Only valid states with a positive numerator have a filling; anything
    else raises (InvalidState / ValueError).
    """
    if not is_valid_state(k):
        raise InvalidState(f"not a valid state: {k.as_tuple()}")
    num = filling_numerator(k, t)
    if num < 1:
        raise ValueError(f"nonpositive filling numerator {num} for {k.as_tuple()} at {t}")
    return Fraction(num, determinant(k))


def diophantine_residual(k: KMatrix, t: ChargeVector, nu: Fraction) -> int:
    """p*(mn - l^2) - q*(n*t1^2 + m*t2^2 - 2*l*t1*t2); zero exactly when
    (k, t) produces nu."""
    p, q = nu.numerator, nu.denominator
    return p * determinant(k) - q * filling_numerator(k, t)


def parity_class(k: KMatrix) -> ParityClass:
    """Both diagonal entries even -> bosonic, both odd -> fermionic,
    otherwise mixed. The off-diagonal parity is irrelevant."""
    m_even = k.m % 2 == 0
    n_even = k.n % 2 == 0
    if m_even and n_even:
        return ParityClass.BOSONIC
    if not m_even and not n_even:
        return ParityClass.FERMIONIC
    return ParityClass.MIXED


@dataclass(frozen=True)
class ConstructionTrace:
    """Intermediate values recorded by a constructor, for auditing.

    Only the symbols the producing family actually used are set; the
    rest stay None.
    """

    family: str
    k: int | None = None
    s: int | None = None
    x: int | None = None
    rho: int | None = None
    a: int | None = None
    b: int | None = None
    t: int | None = None
    u: int | None = None
    l0: int | None = None
    h: int | None = None
    alpha: int | None = None
    beta: int | None = None

    def present_fields(self) -> dict[str, int | str]:
        out: dict[str, int | str] = {"family": self.family}
        for name in ("k", "s", "x", "rho", "a", "b", "t", "u", "l0", "h", "alpha", "beta"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


@dataclass(frozen=True)
class Solution:
    """A K-matrix bundled with its determinant, filling and charge.

    Renders as the 4-tuple (m, n, l, det).
    """

    kmatrix: KMatrix
    det: int
    nu: Fraction
    charge: ChargeVector
    trace: ConstructionTrace | None = field(default=None, compare=False)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.kmatrix.m, self.kmatrix.n, self.kmatrix.l, self.det)

    def __str__(self) -> str:
        return "({}, {}, {}, {})".format(*self.as_tuple())


def verify_solution(s: Solution) -> bool:
    """Validity, stored determinant and a zero residual, all exact."""
    return (
        is_valid_state(s.kmatrix)
        and determinant(s.kmatrix) == s.det
        and diophantine_residual(s.kmatrix, s.charge, s.nu) == 0
    )


def make_solution(
    k: KMatrix,
    nu: Fraction,
    t: ChargeVector,
    trace: ConstructionTrace | None = None,
) -> Solution:
    """Bundle and check a solution; raises if it does not verify."""
    s = Solution(k, determinant(k), check_filling(nu), t, trace)
    if not verify_solution(s):
        raise ValueError(f"solution {s} does not produce filling {format_filling(nu)} at {t}")
    return s
