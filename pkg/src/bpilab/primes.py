"""Prime sets and small number-theory helpers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from sympy import isprime, primefactors, primitive_root


@lru_cache(maxsize=4096)
def prime_divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return tuple(primefactors(n))


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes, or the complement of one.

    ``PrimeSet({2, 3})`` is pi = {2, 3}; ``.complement()`` is pi' (every prime
    outside the set). Membership, pi-parts and pi-number tests work for both.
    """

    primes: frozenset[int] = frozenset()
    complemented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "primes", frozenset(int(p) for p in self.primes))
        bad = [p for p in self.primes if not isprime(p)]
        if bad:
            raise ValueError(f"not prime: {sorted(bad)}")

    @classmethod
    def of(cls, *primes: int) -> PrimeSet:
        return cls(frozenset(primes))

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        """Parse ``"2,3"``; an empty string is the empty set."""
        text = text.strip()
        if not text:
            return cls()
        items = [t.strip() for t in text.split(",")]
        try:
            values = [int(t) for t in items]
        except ValueError:
            raise ValueError(f"cannot parse prime set {text!r}") from None
        if len(set(values)) != len(values):
            raise ValueError(f"repeated prime in {text!r}")
        return cls(frozenset(values))

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.complemented

    def complement(self) -> PrimeSet:
        return PrimeSet(self.primes, not self.complemented)

    def pi_part(self, n: int) -> int:
        """Largest divisor of ``n`` built from primes in the set."""
        if n < 1:
            raise ValueError(f"expected a positive integer, got {n}")
        part = 1
        for p in prime_divisors(n):
            if p in self:
                while n % p == 0:
                    n //= p
                    part *= p
        return part

    def is_pi_number(self, n: int) -> bool:
        return self.pi_part(n) == n

    def is_pi_prime_number(self, n: int) -> bool:
        return self.pi_part(n) == 1

    def restrict(self, n: int) -> tuple[int, ...]:
        """Primes dividing ``n`` that lie in the set."""
        return tuple(p for p in prime_divisors(n) if p in self)

    def __str__(self) -> str:
        body = "{" + ",".join(str(p) for p in sorted(self.primes)) + "}"
        return body + "'" if self.complemented else body

    def label(self) -> str:
        """Comma form used by the CLI and report files."""
        body = ",".join(str(p) for p in sorted(self.primes))
        return f"!{body}" if self.complemented else body


def pi_part(n: int, pi: PrimeSet) -> int:
    return pi.pi_part(n)


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@lru_cache(maxsize=None)
def prime_one_mod(modulus: int, lower: int) -> int:
    """Smallest prime q with q = 1 (mod modulus) and q > lower."""
    q = (lower // modulus + 1) * modulus + 1
    while not isprime(q):
        q += modulus
    return q


@lru_cache(maxsize=None)
def root_of_unity_mod(order: int, q: int) -> int:
    """Fixed primitive ``order``-th root of unity modulo the prime ``q``."""
    if (q - 1) % order:
        raise ValueError(f"{order} does not divide {q} - 1")
    return pow(int(primitive_root(q)), (q - 1) // order, q)


def dixon_prime(exponent: int, order: int) -> int:
    """Smallest prime q = 1 (mod exponent) with q > 2 sqrt(order)."""
    return prime_one_mod(exponent, 2 * isqrt(order) + 1)
