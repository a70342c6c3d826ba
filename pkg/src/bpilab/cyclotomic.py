"""Exact cyclotomic numbers.

Elements of Q(zeta_n) are written in the Zumbroich basis: for each prime power
p^a exactly dividing n, the exponents j = j0 + p^(a-1) j1 (0 <= j0 < p^(a-1))
with j1 in {1, ..., p-1} for odd p and j1 = 0 for p = 2, combined across primes
by the Chinese remainder theorem.  Other powers of zeta_n are rewritten with
the relations

    sum_{t=0}^{p-1} zeta_{p^a}^{j0 + t p^(a-1)} = 0        (p odd)
    zeta_{2^a}^{j0 + 2^(a-1)} = -zeta_{2^a}^{j0}           (p = 2)

applied to each prime component in turn.  A scalar :class:`Cyclotomic` is
further reduced to its smallest conductor (never 2 mod 4), so equality of
field elements is equality of stored data.

Tables store values as integer coordinate arrays over the basis of one fixed
conductor; the helpers at the bottom of the module work on those arrays.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import Matrix, factorint

# ---------------------------------------------------------------------------
# basis bookkeeping


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """(p, a, p^a, n / p^a) for each prime power exactly dividing n."""
    return tuple((p, a, p**a, n // p**a) for p, a in sorted(factorint(n).items()))


def _component_terms(j: int, p: int, a: int) -> list[tuple[int, int]]:
    top = p ** (a - 1)
    j0, j1 = j % top, j // top
    if p == 2:
        return [(j, 1)] if j1 == 0 else [(j0, -1)]
    if j1 >= 1:
        return [(j, 1)]
    return [(j0 + t * top, -1) for t in range(1, p)]


@lru_cache(maxsize=None)
def power_terms(n: int, k: int) -> tuple[tuple[int, int], ...]:
    """zeta_n^k expanded in the basis, as (basis exponent, +-1) pairs."""
    terms = [(0, 1)]
    for p, a, q, m in _factor(n):
        kp = (k % n) * pow(m, -1, q) % q
        comp = _component_terms(kp, p, a)
        terms = [((e + j * m) % n, s * t) for e, s in terms for j, t in comp]
    return tuple(sorted(terms))


@lru_cache(maxsize=None)
def basis(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(n) if power_terms(n, k) == ((k, 1),))


@lru_cache(maxsize=None)
def basis_index(n: int) -> dict[int, int]:
    return {k: i for i, k in enumerate(basis(n))}


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """(n, phi(n)) integer matrix: row k holds the coordinates of zeta_n^k."""
    idx = basis_index(n)
    mat = np.zeros((n, len(idx)), dtype=np.int64)
    for k in range(n):
        for e, s in power_terms(n, k):
            mat[k, idx[e]] += s
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=None)
def lift_matrix(n: int, m: int) -> np.ndarray:
    """Coordinates over conductor n -> coordinates over a multiple m."""
    if m % n:
        raise ValueError(f"{n} does not divide {m}")
    red = reduction_matrix(m)
    rows = [red[(k * (m // n)) % m] for k in basis(n)]
    mat = np.array(rows, dtype=np.int64).reshape(len(rows), red.shape[1])
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=None)
def _descend_data(m: int, n: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Columns J and an integer matrix P/den with lift[:, J] @ (P/den) = I."""
    lift = lift_matrix(n, m)
    sub = Matrix(lift.tolist())
    cols = list(sub.rref()[1])  # independent columns of lift
    square = sub[:, cols]
    inv = square.inv()
    den = 1
    for v in inv:
        den = den * v.q // gcd(den, v.q)
    scaled = np.array([[int(v * den) for v in row] for row in inv.tolist()], dtype=object)
    return np.array(cols, dtype=np.int64), scaled, den


def totient(n: int) -> int:
    return len(basis(n))


# ---------------------------------------------------------------------------
# scalar type


def _reduce_expanded(n: int, terms: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for k, c in terms.items():
        if not c:
            continue
        for e, s in power_terms(n, k):
            out[e] = out.get(e, 0) + s * c
    return {k: c for k, c in out.items() if c}


def _minimize(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    if not coeffs:
        return 1, {}
    changed = True
    while changed and n > 1:
        changed = False
        for p, a, q, m in _factor(n):
            if p == 2 and a == 1:
                coeffs = {k // 2: c for k, c in coeffs.items()}
                n //= 2
                changed = True
                break
            if a >= 2:
                if all(k % p == 0 for k in coeffs):
                    coeffs = {k // p: c for k, c in coeffs.items()}
                    n //= p
                    changed = True
                    break
                continue
            inv = pow(m, -1, p)
            groups: dict[int, dict[int, Fraction]] = {}
            for k, c in coeffs.items():
                kp = k * inv % p
                groups.setdefault((k - kp * m) % n, {})[kp] = c
            if all(len(g) == p - 1 and len(set(g.values())) == 1 for g in groups.values()):
                coeffs = {rest // p: -next(iter(g.values())) for rest, g in groups.items()}
                n //= p
                changed = True
                break
    return n, coeffs


class Cyclotomic:
    """Exact element of a cyclotomic field.

    Stored as (conductor, sorted (exponent, Fraction) pairs) in the Zumbroich
    basis of the smallest cyclotomic field containing the element.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int = 1, terms: dict[int, Fraction | int] | None = None):
        terms = {k % n: Fraction(c) for k, c in (terms or {}).items() if c}
        n, red = _minimize(n, _reduce_expanded(n, terms))
        self.n = n
        self.coeffs = tuple(sorted(red.items()))

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.n, obj.coeffs = n, coeffs
        return obj

    @classmethod
    def rational(cls, q) -> Cyclotomic:
        q = Fraction(q)
        return cls._raw(1, ((0, q),) if q else ())

    @classmethod
    def from_coords(cls, coords, n: int, denominator: int = 1) -> Cyclotomic:
        b = basis(n)
        terms = {b[i]: Fraction(int(c), denominator) for i, c in enumerate(coords) if c}
        m, red = _minimize(n, terms)
        return cls._raw(m, tuple(sorted(red.items())))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.n == 1

    def to_rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _lifted(self, m: int) -> dict[int, Fraction]:
        step = m // self.n
        return _reduce_expanded(m, {k * step: c for k, c in self.coeffs})

    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.n * other.n // gcd(self.n, other.n)
        acc = self._lifted(m)
        for k, c in other._lifted(m).items():
            acc[k] = acc.get(k, 0) + c
        return Cyclotomic(m, acc)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.n, tuple((k, -c) for k, c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.n == 1:
            q = other.to_rational()
            if not q:
                return Cyclotomic._raw(1, ())
            return Cyclotomic._raw(self.n, tuple((k, c * q) for k, c in self.coeffs))
        m = self.n * other.n // gcd(self.n, other.n)
        s1, s2 = m // self.n, m // other.n
        acc: dict[int, Fraction] = {}
        for k1, c1 in self.coeffs:
            for k2, c2 in other.coeffs:
                k = (k1 * s1 + k2 * s2) % m
                acc[k] = acc.get(k, 0) + c1 * c2
        return Cyclotomic(m, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            other = other.to_rational()
        return self * (1 / Fraction(other))

    def conjugate(self) -> Cyclotomic:
        return Cyclotomic(self.n, {-k: c for k, c in self.coeffs})

    def galois(self, k: int) -> Cyclotomic:
        """Image under zeta -> zeta^k (k coprime to the conductor)."""
        if gcd(k, self.n) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.n}")
        return Cyclotomic(self.n, {e * k: c for e, c in self.coeffs})

    def coords(self, n: int) -> np.ndarray:
        """Integer-or-Fraction coordinates over the basis of conductor ``n``."""
        if n % self.n:
            raise ValueError(f"conductor {self.n} does not divide {n}")
        lifted = self._lifted(n)
        idx = basis_index(n)
        out = np.zeros(len(idx), dtype=object)
        for k, c in lifted.items():
            out[idx[k]] = c
        return out

    def __complex__(self) -> complex:
        z = np.exp(2j * np.pi / self.n)
        return complex(sum(float(c) * z**k for k, c in self.coeffs))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self.n == 1:
            return hash(self.to_rational())
        return hash((self.n, self.coeffs))

    def sort_key(self):
        """Total order: rationals first (larger values first), then by data."""
        if self.n == 1:
            return (0, -self.to_rational(), ())
        return (1, Fraction(self.n), self.coeffs)

    def __repr__(self):
        if self.n == 1:
            return str(self.to_rational())
        parts = []
        for k, c in self.coeffs:
            z = f"E({self.n})" if k == 1 else f"E({self.n})^{k}"
            if c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}*{z}")
        return "+".join(parts).replace("+-", "-")

    __str__ = __repr__


def E(n: int) -> Cyclotomic:
    """Primitive n-th root of unity exp(2 pi i / n)."""
    return Cyclotomic(n, {1: 1})


# ---------------------------------------------------------------------------
# coordinate arrays (last axis = basis of a fixed conductor)


def expand(coords: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(coords.shape[:-1] + (n,), dtype=coords.dtype)
    out[..., list(basis(n))] = coords
    return out


def reduce_expanded(arr: np.ndarray, n: int) -> np.ndarray:
    return arr @ reduction_matrix(n)


def multiply(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Pointwise product of two coordinate arrays of the same shape."""
    ea, eb = expand(a, n), expand(b, n)
    out = np.zeros(np.broadcast_shapes(ea.shape, eb.shape), dtype=np.result_type(ea, eb))
    for i in basis(n):
        col = ea[..., i : i + 1]
        if np.any(col):
            out += col * np.roll(eb, i, axis=-1)
    return reduce_expanded(out, n)


def conjugate(a: np.ndarray, n: int) -> np.ndarray:
    e = expand(a, n)
    return reduce_expanded(e[..., (-np.arange(n)) % n], n)


def lift(a: np.ndarray, n: int, m: int) -> np.ndarray:
    if n == m:
        return a
    return a @ lift_matrix(n, m)


def descend(a: np.ndarray, m: int, n: int) -> np.ndarray:
    """Inverse of :func:`lift` on values that lie in Q(zeta_n)."""
    if n == m:
        return a
    cols, scaled, den = _descend_data(m, n)
    num = np.asarray(a, dtype=object)[..., cols] @ scaled
    if np.any(num % den):
        raise ValueError(f"values do not lie in the field of conductor {n}")
    out = (num // den).astype(np.int64)
    if not np.array_equal(lift(out, n, m), np.asarray(a)):
        raise ValueError(f"values do not lie in the field of conductor {n}")
    return out


def unit_coords(n: int) -> np.ndarray:
    return reduction_matrix(n)[0].copy()


def to_scalar(coords, n: int) -> Cyclotomic:
    return Cyclotomic.from_coords(coords, n)


def from_scalar(x: Cyclotomic, n: int) -> np.ndarray:
    c = x.coords(n)
    if any(Fraction(v).denominator != 1 for v in c):
        raise ValueError(f"{x!r} is not an algebraic integer in this basis")
    return np.array([int(v) for v in c], dtype=np.int64)


@lru_cache(maxsize=None)
def power_vector(n: int, q: int, z: int) -> np.ndarray:
    """z^b mod q for each basis exponent b of conductor n (z of order n)."""
    return np.array([pow(z, b, q) for b in basis(n)], dtype=np.int64)


def evaluate_mod(coords: np.ndarray, n: int, q: int, z: int) -> np.ndarray:
    """Image of coordinate arrays under zeta_n -> z in GF(q)."""
    return ((np.asarray(coords, dtype=np.int64) % q) @ power_vector(n, q, z)) % q
