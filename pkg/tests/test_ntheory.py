import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halperin import ntheory
from halperin.ntheory import (
    NoResidueWitness,
    euclid_triple,
    gcd,
    isqrt,
    legendre_symbol,
    mod_solvable,
    parse_equation,
    qr_lemma_family,
    quadratic_residue_witness,
)
from oracles import quadratic_residues


def test_gcd_known_values():
    assert gcd(0, 7) == 7
    assert gcd(12, 18) == 6
    assert gcd(13, 17) == 1
    assert gcd(0, 0) == 0


def test_isqrt_known_values():
    assert isqrt(0) == 0
    assert isqrt(255) == 15
    assert isqrt(16) == 4
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**18))
def test_isqrt_floor_contract(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


def test_residue_witness_known_values():
    assert quadratic_residue_witness(-5, 3).h == 1  # -5 = 1 mod 3
    assert quadratic_residue_witness(3, 5) is None
    assert quadratic_residue_witness(2, 5) is None
    assert quadratic_residue_witness(0, 7).h == 0
    with pytest.raises(ValueError):
        quadratic_residue_witness(1, 0)


@given(st.integers(-50, 50), st.integers(1, 60))
def test_residue_witness_is_smallest_root(target, modulus):
    witness = quadratic_residue_witness(target, modulus)
    roots = [h for h in range(modulus) if (h * h - target) % modulus == 0]
    if witness is None:
        assert roots == []
    else:
        assert witness.h == roots[0]
        assert (witness.h**2 - target) % modulus == 0


def test_legendre_known_values():
    assert legendre_symbol(3, 5) == -1
    assert legendre_symbol(2, 5) == -1
    assert legendre_symbol(0, 5) == 0
    assert legendre_symbol(4, 5) == 1


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, -7])
def test_legendre_rejects_non_odd_prime(bad):
    with pytest.raises(ValueError):
        legendre_symbol(3, bad)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
def test_legendre_matches_residue_scan(p):
    residues = quadratic_residues(p)
    for a in range(p):
        expected = 0 if a == 0 else (1 if a in residues else -1)
        assert legendre_symbol(a, p) == expected


def test_euclid_triple_known_values():
    assert euclid_triple(2, 1, 1).a == 3
    assert euclid_triple(2, 1, 1) == ntheory.PythTriple(3, 4, 5)
    assert euclid_triple(2, 1, 1).is_primitive
    # (9, 12, 15) needs the scale factor, the k=1 form cannot reach it
    assert euclid_triple(2, 1, 3) == ntheory.PythTriple(9, 12, 15)
    assert not euclid_triple(2, 1, 3).is_primitive


def test_euclid_triple_rejects_bad_input():
    with pytest.raises(ValueError):
        euclid_triple(1, 1, 1)
    with pytest.raises(ValueError):
        euclid_triple(3, 5, 1)
    with pytest.raises(ValueError):
        euclid_triple(2, 1, 0)


@given(st.integers(1, 200), st.integers(1, 200), st.integers(1, 20))
def test_euclid_triple_properties(n, delta, k):
    m = n + delta
    triple = euclid_triple(m, n, k)
    assert triple.a**2 + triple.b**2 == triple.c**2
    doubled = euclid_triple(m, n, 2 * k)
    assert (doubled.a, doubled.b, doubled.c) == (2 * triple.a, 2 * triple.b, 2 * triple.c)
    primitive_params = k == 1 and math.gcd(m, n) == 1 and not (m % 2 == 1 and n % 2 == 1)
    assert triple.is_primitive == primitive_params


def test_parse_equation_shapes():
    eq = parse_equation("3x^2+2=y^2")
    assert (eq.kind, eq.coeffs) == ("square", (3, 2))
    eq = parse_equation("7x^2+2=y^3")
    assert (eq.kind, eq.coeffs) == ("cube", (7, 2))
    eq = parse_equation("3x^2-7y^2-17z^2=0")
    assert (eq.kind, eq.coeffs) == ("ternary", (3, -7, -17))
    eq = parse_equation("x^2-11y^2+z^2=0")
    assert eq.coeffs == (1, -11, 1)
    with pytest.raises(ValueError):
        parse_equation("x^3+y^3=z^3")


def test_mod_solvable_obstructed_equations():
    # squares mod 3 are only 0 or 1, never 2
    report = mod_solvable("3x^2+2=y^2", 3)
    assert not report.solvable and report.witness is None
    # cubes mod 7 are only 0, 1 or 6, never 2
    report = mod_solvable("7x^2+2=y^3", 7)
    assert not report.solvable


def test_mod_solvable_ternary_witness():
    report = mod_solvable("3x^2-7y^2-17z^2=0", 7)
    assert report.solvable
    assert report.witness is not None and report.witness != (0, 0, 0)
    assert report.equation.residual(report.witness) % 7 == 0
    # the known integer solution reduces to a valid witness as well
    assert report.equation.residual((5, 1, 2)) == 0


def test_mod_solvable_rejects_tiny_modulus():
    with pytest.raises(ValueError):
        mod_solvable("3x^2+2=y^2", 1)


_EQS = st.sampled_from(
    ["3x^2+2=y^2", "7x^2+2=y^3", "3x^2-7y^2-11z^2=0", "3x^2-7y^2-17z^2=0", "2x^2-3=y^2"]
)


@given(_EQS, st.integers(2, 8), st.integers(2, 8))
@settings(max_examples=40, deadline=None)
def test_mod_solvable_projection(eq, m1, m2):
    # a witness mod m1*m2 reduces to a witness mod m1
    if mod_solvable(eq, m1 * m2).solvable:
        assert mod_solvable(eq, m1).solvable


def test_qr_lemma_family_known_members():
    assert qr_lemma_family(3, 5, 0) == (4, 1, 3)
    with pytest.raises(NoResidueWitness):
        qr_lemma_family(5, 3, 0)
    # p = 1: everything is a residue, members are (2 + j, 1, q + 2 + j)
    assert qr_lemma_family(1, 4, 0) == (2, 1, 6)
    assert qr_lemma_family(1, 4, 3) == (5, 1, 9)


def test_qr_lemma_family_positive_residue_branch():
    # mod 3 only +7 is a residue (7 = 1, -7 = 2, squares are {0, 1})
    a, b, l = qr_lemma_family(3, 7, 0)
    assert (a * a - b * b) % 3 == 0
    assert 3 * l - 7 == a * b


def test_qr_lemma_family_rejects_bad_input():
    with pytest.raises(ValueError):
        qr_lemma_family(4, 6, 0)
    with pytest.raises(ValueError):
        qr_lemma_family(3, 5, -1)


def test_qr_lemma_family_equations_and_monotone_l():
    import random

    rng = random.Random(20240817)
    checked = 0
    while checked < 100:
        p = rng.randint(1, 40)
        q = rng.randint(1, 40)
        if math.gcd(p, q) != 1:
            continue
        try:
            members = [qr_lemma_family(p, q, j) for j in range(10)]
        except NoResidueWitness:
            continue
        ls = []
        for a, b, l in members:
            assert a > 0 and b > 0 and l > 0
            assert (a * a - b * b) % p == 0
            assert l * p - q == a * b
            ls.append(l)
        assert all(x < y for x, y in zip(ls, ls[1:]))
        checked += 1
