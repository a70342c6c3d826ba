from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st
from sympy import isprime

from bpilab.primes import PrimeSet, dixon_prime, prime_divisors, prime_one_mod, root_of_unity_mod


@pytest.mark.parametrize("n, pi, expected", [(48, {2}, 16), (48, set(), 1), (216, {3}, 27), (1, {5}, 1)])
def test_pi_part_examples(n, pi, expected):
    assert PrimeSet(frozenset(pi)).pi_part(n) == expected


@given(st.integers(1, 10**6), st.sets(st.sampled_from([2, 3, 5, 7, 11, 13]), max_size=4))
def test_pi_parts_multiply(n, primes):
    pi = PrimeSet(frozenset(primes))
    a, b = pi.pi_part(n), pi.complement().pi_part(n)
    assert a * b == n
    assert pi.is_pi_number(a) and pi.complement().is_pi_number(b)
    assert math.gcd(a, b) == 1


def test_parse_and_render():
    pi = PrimeSet.parse("3, 2")
    assert pi.primes == {2, 3}
    assert str(pi) == "{2,3}"
    assert str(pi.complement()) == "{2,3}'"
    assert 5 in pi.complement() and 5 not in pi
    assert PrimeSet.parse("") == PrimeSet()


@pytest.mark.parametrize("text", ["4", "2,2", "x", "2,,3"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        PrimeSet.parse(text)


def test_prime_divisors():
    assert prime_divisors(93312) == (2, 3)
    assert prime_divisors(1) == ()


@given(st.integers(1, 200), st.integers(0, 10**5))
def test_prime_one_mod(modulus, lower):
    q = prime_one_mod(modulus, lower)
    assert isprime(q) and q > lower and (q - 1) % modulus == 0


@pytest.mark.parametrize("order, q", [(4, 13), (12, 13), (7, 29)])
def test_root_of_unity(order, q):
    z = root_of_unity_mod(order, q)
    assert pow(z, order, q) == 1
    assert all(pow(z, d, q) != 1 for d in range(1, order))


def test_dixon_prime_bound():
    q = dixon_prime(12, 216)
    assert q % 12 == 1 and q > 2 * math.sqrt(216)
