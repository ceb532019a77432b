"""Exact integer number theory used by the K-matrix constructions.

Everything here is arbitrary-precision and pure: gcd/coprimality,
integer square roots, quadratic residue witnesses, Legendre symbols,
Pythagorean triples, and residue scans for a few fixed Diophantine
shapes. Moduli are desk-scale, so exhaustive residue scans are fine
and we never need Tonelli-Shanks or real primality proving.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


class NoResidueWitness(ValueError):
    """Neither q nor -q is a square modulo p, so the residue-based
    family construction does not apply."""


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def isqrt(n: int) -> int:
    """Floor of the square root. Negative input raises ValueError."""
    return math.isqrt(n)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _is_prime(n: int) -> bool:
    # Trial division; inputs are desk-scale.
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ResidueWitness:
    """Smallest h in [0, modulus) with h*h congruent to target."""

    h: int
    modulus: int
    target: int

    def __post_init__(self):
        if not (0 <= self.h < self.modulus):
            raise ValueError(f"witness {self.h} out of range for modulus {self.modulus}")
        if (self.h * self.h - self.target) % self.modulus != 0:
            raise ValueError(f"{self.h}^2 is not {self.target} mod {self.modulus}")


def quadratic_residue_witness(target: int, modulus: int) -> ResidueWitness | None:
    """Return the smallest h in [0, modulus) with h^2 = target (mod modulus),
    or None if target is not a square residue.

    The modulus need not be prime; this is an exhaustive scan.
    """
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    t = target % modulus
    for h in range(modulus):
        if (h * h) % modulus == t:
            return ResidueWitness(h, modulus, t)
    return None


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) via Euler's criterion: 0 if p divides a,
    +1 if a is a nonzero square mod p, -1 otherwise.

    p must be an odd prime (checked by trial division); for composite
    moduli use quadratic_residue_witness instead.
    """
    if p < 3 or p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


@dataclass(frozen=True)
class PythTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.c < 1:
            raise ValueError(f"triple entries must be positive: {(self.a, self.b, self.c)}")
        if self.a * self.a + self.b * self.b != self.c * self.c:
            raise ValueError(f"{(self.a, self.b, self.c)} is not a Pythagorean triple")

    @property
    def is_primitive(self) -> bool:
        return math.gcd(self.a, math.gcd(self.b, self.c)) == 1


def euclid_triple(m: int, n: int, k: int = 1) -> PythTriple:
    """Scaled Euclid parametrization (k(m^2-n^2), 2kmn, k(m^2+n^2)).

    Requires m > n > 0 and k >= 1. With the scale factor k this reaches
    every triple, e.g. (9, 12, 15) which the k=1 form misses; the result
    is primitive exactly when k == 1, gcd(m, n) == 1 and m, n are not
    both odd.
    """
    if n < 1 or m <= n:
        raise ValueError(f"need m > n > 0, got m={m}, n={n}")
    if k < 1:
        raise ValueError(f"scale factor must be positive, got k={k}")
    return PythTriple(k * (m * m - n * n), 2 * k * m * n, k * (m * m + n * n))


# --- residue scans for the supported obstruction-equation shapes ---

# c1 x^2 + c2 = y^2   |  c1 x^2 + c2 = y^3  |  c1 x^2 + c2 y^2 + c3 z^2 = 0
_TWO_VAR_RE = re.compile(
    r"^\s*(?P<c1>[+-]?\d*)\s*x\^2\s*(?P<c2>[+-]\s*\d+)\s*=\s*y\^(?P<pow>[23])\s*$"
)
_TERNARY_RE = re.compile(
    r"^\s*(?P<c1>[+-]?\d*)\s*x\^2\s*(?P<c2>[+-]\s*\d*)\s*y\^2\s*(?P<c3>[+-]\s*\d*)\s*z\^2\s*=\s*0\s*$"
)


def _coeff(text: str) -> int:
    text = text.replace(" ", "")
    if text in ("", "+"):
        return 1
    if text == "-":
        return -1
    return int(text)


@dataclass(frozen=True)
class ObstructionEquation:
    """One of the supported quadratic shapes, kept as (kind, coefficients).

    kind "square":  c1*x^2 + c2 = y^2
    kind "cube":    c1*x^2 + c2 = y^3
    kind "ternary": c1*x^2 + c2*y^2 + c3*z^2 = 0
    """

    kind: str
    coeffs: tuple[int, ...]

    def residual(self, values: tuple[int, ...]) -> int:
        if self.kind == "square":
            x, y = values
            return self.coeffs[0] * x * x + self.coeffs[1] - y * y
        if self.kind == "cube":
            x, y = values
            return self.coeffs[0] * x * x + self.coeffs[1] - y * y * y
        x, y, z = values
        c1, c2, c3 = self.coeffs
        return c1 * x * x + c2 * y * y + c3 * z * z

    @property
    def arity(self) -> int:
        return 3 if self.kind == "ternary" else 2

    def __str__(self) -> str:
        if self.kind == "ternary":
            c1, c2, c3 = self.coeffs
            return f"{c1}x^2{c2:+}y^2{c3:+}z^2=0"
        c1, c2 = self.coeffs
        power = 2 if self.kind == "square" else 3
        return f"{c1}x^2{c2:+}=y^{power}"


def parse_equation(text: str) -> ObstructionEquation:
    """Parse an equation string into one of the supported shapes."""
    m = _TWO_VAR_RE.match(text)
    if m:
        kind = "square" if m.group("pow") == "2" else "cube"
        return ObstructionEquation(kind, (_coeff(m.group("c1")), _coeff(m.group("c2"))))
    m = _TERNARY_RE.match(text)
    if m:
        return ObstructionEquation(
            "ternary", (_coeff(m.group("c1")), _coeff(m.group("c2")), _coeff(m.group("c3")))
        )
    raise ValueError(f"unsupported equation shape: {text!r}")


@dataclass(frozen=True)
class ModReport:
    equation: ObstructionEquation
    modulus: int
    solvable: bool
    witness: tuple[int, ...] | None


def mod_solvable(equation: ObstructionEquation | str, modulus: int) -> ModReport:
    """Exhaustively scan residue tuples mod `modulus` for the equation.

    For the ternary shape only not-all-zero residue tuples count, since
    (0, 0, 0) satisfies any homogeneous form. Returns the first witness
    in lexicographic scan order when one exists.
    """
    if isinstance(equation, str):
        equation = parse_equation(equation)
    if modulus < 2:
        raise ValueError(f"modulus must be at least 2, got {modulus}")
    if equation.arity == 2:
        for x in range(modulus):
            for y in range(modulus):
                if equation.residual((x, y)) % modulus == 0:
                    return ModReport(equation, modulus, True, (x, y))
    else:
        for x in range(modulus):
            for y in range(modulus):
                for z in range(modulus):
                    if (x, y, z) == (0, 0, 0):
                        continue
                    if equation.residual((x, y, z)) % modulus == 0:
                        return ModReport(equation, modulus, True, (x, y, z))
    return ModReport(equation, modulus, False, None)


def qr_lemma_family(p: int, q: int, index: int = 0) -> tuple[int, int, int]:
    """Index-th member (a, b, l) of the infinite family with
    p | (a^2 - b^2) and l*p - q = a*b, for coprime p, q where q or -q
    is a square mod p.

    Stepping rule (the source construction only asserts "infinitely
    many", so the indexing is fixed here and tested for monotone l):

    * p == 1: (a, b) = (2 + index, 1), l = a*b + q.
    * -q is a square mod p: h = (smallest positive root of -q) + index*p,
      then a = h + p, b = h, l = (h*h + q)/p + h. Here p | (a - b).
    * only +q is a square mod p: h = smallest positive root of q,
      l0 = (q - h*h)/p, and with n = n_min + index (n_min the smallest
      n >= 1 making l positive) take a = h*(p*n - 1), b = h,
      l = l0 + n*h*h. Here p | (a + b).

    Raises NoResidueWitness when neither sign is a residue.
    """
    if p < 1 or q < 1:
        raise ValueError(f"p and q must be positive, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p and q must be coprime, got p={p}, q={q}")
    if index < 0:
        raise ValueError(f"index must be nonnegative, got {index}")

    if p == 1:
        a = 2 + index
        return a, 1, a + q

    neg = quadratic_residue_witness(-q, p)
    if neg is not None:
        # gcd(p, q) = 1 rules out h = 0 for p >= 2
        h = neg.h + index * p
        l0 = (h * h + q) // p
        return h + p, h, l0 + h

    pos = quadratic_residue_witness(q, p)
    if pos is not None:
        h = pos.h
        l0 = (q - h * h) // p
        n_min = 1
        while l0 + n_min * h * h < 1:
            n_min += 1
        n = n_min + index
        return h * (p * n - 1), h, l0 + n * h * h

    raise NoResidueWitness(f"neither {q} nor {-q} is a quadratic residue mod {p}")
