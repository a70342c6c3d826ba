"""Exact ordinary character tables.

Tables are computed by the Dixon-Schneider method: simultaneous eigenvectors
of the class-multiplication matrices over GF(p) give the central characters,
which are lifted to exact cyclotomic values through eigenvalue multiplicities.
Direct products and wreath products with C2 are assembled from the tables of
their factors.  Every table is verified before it is returned (see
:func:`verify_table`).

Character values are stored as integer coordinate arrays of shape
``(classes, phi(e))`` over the cyclotomic basis of conductor ``e``, the group
exponent; :class:`~bpilab.cyclotomic.Cyclotomic` scalars are produced on
demand.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt, lcm

import numpy as np

from . import cyclotomic as cyc
from .cyclotomic import Cyclotomic
from .linalg_mod import eigenspaces, rref
from .permgrp import (
    ClassData,
    GroupInputError,
    PermGroup,
    Permutation,
    derived_subgroup,
    direct_product_group,
    quotient_group,
    wreath_c2_group,
)
from .primes import dixon_prime, prime_one_mod, root_of_unity_mod

log = logging.getLogger(__name__)

DIXON_SEED = 20240613


class TableError(RuntimeError):
    """A computed table failed an internal consistency check."""


# ---------------------------------------------------------------------------
# characters


class Character:
    """A class function on a table's classes with cyclotomic-integer values.

    Irreducible characters carry their position in the table as ``index``.
    """

    __slots__ = ("table", "coords", "index", "label", "__dict__")

    def __init__(self, table: CharacterTable, coords: np.ndarray, index: int | None = None,
                 label: str | None = None):
        coords = np.asarray(coords, dtype=np.int64)
        if coords.shape != (len(table.classes), cyc.totient(table.conductor)):
            raise ValueError(f"coordinate array of shape {coords.shape} does not fit the table")
        coords.setflags(write=False)
        self.table = table
        self.coords = coords
        self.index = index
        self.label = label

    @cached_property
    def values(self) -> tuple[Cyclotomic, ...]:
        e = self.table.conductor
        return tuple(Cyclotomic.from_coords(c, e) for c in self.coords)

    def __call__(self, k: int) -> Cyclotomic:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.coords)

    @cached_property
    def degree(self) -> int:
        unit = cyc.unit_coords(self.table.conductor)
        i = int(np.flatnonzero(unit)[0])
        d, rem = divmod(int(self.coords[0, i]), int(unit[i]))
        if rem or not np.array_equal(self.coords[0], d * unit):
            raise TableError("value at the identity is not an integer")
        return d

    def is_irreducible(self) -> bool:
        return self.index is not None or inner_product(self, self) == 1

    def _same(self, other: Character):
        if other.table is not self.table:
            raise GroupInputError("characters belong to different tables")

    def __add__(self, other: Character) -> Character:
        self._same(other)
        return Character(self.table, self.coords + other.coords)

    def __sub__(self, other: Character) -> Character:
        self._same(other)
        return Character(self.table, self.coords - other.coords)

    def __mul__(self, other):
        if isinstance(other, Character):
            return tensor(self, other)
        if isinstance(other, int):
            return Character(self.table, self.coords * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> Character:
        return Character(self.table, cyc.conjugate(self.coords, self.table.conductor))

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and other.table is self.table
            and np.array_equal(other.coords, self.coords)
        )

    def __hash__(self):
        return hash((id(self.table), self.coords.tobytes()))

    def __repr__(self):
        name = f"X.{self.index}" if self.index is not None else "chi"
        return f"<{name} of degree {self.degree} on {self.table.name}>"

    def value_strings(self) -> list[str]:
        return [repr(v) for v in self.values]


# ---------------------------------------------------------------------------
# tables


@dataclass(eq=False)
class CharacterTable:
    group: PermGroup
    classes: ClassData
    conductor: int
    irreducibles: tuple[Character, ...] = ()
    labels: tuple[str, ...] = ()
    embeddings: dict = field(default_factory=dict)
    method: str = "dixon"
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return self.group.name or f"group of order {self.order}"

    @property
    def order(self) -> int:
        return self.classes.group_order

    @property
    def exponent(self) -> int:
        return self.classes.exponent

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> Character:
        return self.irreducibles[i]

    def __iter__(self):
        return iter(self.irreducibles)

    @cached_property
    def values(self) -> np.ndarray:
        """(irreducible, class, coordinate) integer array."""
        return np.stack([x.coords for x in self.irreducibles])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(x.degree for x in self.irreducibles)

    @property
    def trivial(self) -> Character:
        return self.irreducibles[0]

    def class_function(self, coords: np.ndarray) -> Character:
        return Character(self, coords)

    def from_values(self, values) -> Character:
        """Class function from one scalar per class."""
        return Character(self, np.stack([cyc.from_scalar(Cyclotomic.rational(v) if not isinstance(v, Cyclotomic) else v, self.conductor) for v in values]))

    def index_of(self, chi: Character) -> int:
        if chi.table is not self:
            raise GroupInputError("character from another table")
        if chi.index is not None:
            return chi.index
        for x in self.irreducibles:
            if np.array_equal(x.coords, chi.coords):
                return x.index
        raise ValueError("not an irreducible character of this table")

    # -- modular evaluation helpers ------------------------------------

    def _mod_setup(self, bound: int) -> tuple[int, int, int]:
        q = prime_one_mod(self.conductor, max(2 * bound + 1, 1 << 12))
        z = root_of_unity_mod(self.conductor, q)
        return q, z, pow(z, -1, q)

    def decompose(self, chi: Character) -> list[tuple[int, int]]:
        """(irreducible index, multiplicity) pairs of a character, verified exactly."""
        if chi.table is not self:
            raise GroupInputError("character from another table")
        deg = chi.degree
        if deg <= 0:
            raise ValueError("not a character: nonpositive degree")
        e = self.conductor
        q, z, zinv = self._mod_setup(deg)
        X = cyc.evaluate_mod(self.values, e, q, zinv)  # conj(X)
        f = cyc.evaluate_mod(chi.coords, e, q, z)
        w = np.array(self.classes.sizes, dtype=np.int64) % q
        acc = (X * (f * w % q)[None, :] % q).sum(axis=1) % q
        m = acc * pow(self.order, -1, q) % q
        m = np.where(m > q // 2, m - q, m)
        if (m < 0).any():
            raise ValueError("not a character: negative multiplicity")
        recon = np.tensordot(m, self.values, axes=1)
        if not np.array_equal(recon, chi.coords):
            raise ValueError("class function is not a combination of irreducibles")
        return [(i, int(k)) for i, k in enumerate(m) if k]

    def fusion_from(self, sub: CharacterTable) -> np.ndarray:
        """Class of this table containing each class of a subgroup's table."""
        key = ("fusion", id(sub))
        if key not in self.cache:
            reps = np.array([r.images for r in sub.classes.representatives], dtype=np.int32)
            if reps.shape[1] != self.group.degree:
                raise GroupInputError("subgroup acts on a different number of points")
            self.cache[key] = self.classes.classes_of(reps)
        return self.cache[key]


# ---------------------------------------------------------------------------
# Dixon-Schneider


def _central_characters(cd: ClassData, p: int, seed: int) -> list[np.ndarray]:
    r = len(cd)
    if r == 1:
        return [np.ones(1, dtype=np.int64)]
    a = cd.structure_constants % p
    rng = np.random.default_rng(seed)
    weights = rng.integers(1, p, size=r)
    mats = [np.einsum("ijk,j->ik", a, weights) % p] + [a[:, j, :] for j in range(1, r)]
    todo = [(np.eye(r, dtype=np.int64), list(range(r)), 0)]
    found = []
    while todo:
        V, piv, start = todo.pop()
        if len(V) == 1:
            found.append(V[0])
            continue
        for idx in range(start, len(mats)):
            B = (mats[idx] @ V.T % p)[piv, :]
            pieces = eigenspaces(B, p)
            if len(pieces) > 1:
                for _, C in pieces:
                    W, wpiv = rref(C @ V % p, p)
                    todo.append((W, wpiv, idx + 1))
                break
        else:
            raise TableError("class algebra did not split into one-dimensional spaces")
    if len(found) != r:
        raise TableError(f"found {len(found)} central characters for {r} classes")
    return found


@lru_cache(maxsize=4096)
def _dft_matrix(o: int, zo: int, p: int) -> np.ndarray:
    """M[l, t] = zo^(-l t) mod p for an element zo of order o."""
    powers = [pow(zo, -t % o, p) for t in range(o)]
    M = np.array([[powers[(l * t) % o] for t in range(o)] for l in range(o)], dtype=np.int64)
    M.setflags(write=False)
    return M


def _lift_row(chi_mod: np.ndarray, cd: ClassData, d: int, e: int, p: int, z: int) -> np.ndarray:
    """Exact coordinates of a character from its values modulo p."""
    red = cyc.reduction_matrix(e)
    out = np.zeros((len(cd), red.shape[1]), dtype=np.int64)
    for k, o in enumerate(cd.orders):
        zo = pow(z, e // o, p)
        vals = chi_mod[list(cd.powers[k])]
        m = (_dft_matrix(o, zo, p) @ vals % p) * pow(o, -1, p) % p
        if (m > d).any() or int(m.sum()) != d:
            raise TableError(f"eigenvalue multiplicities out of range on class {k}")
        expanded = np.zeros(e, dtype=np.int64)
        expanded[(np.arange(o) * (e // o)) % e] += m
        out[k] = expanded @ red
    return out


def _dixon_rows(cd: ClassData, seed: int = DIXON_SEED) -> list[np.ndarray]:
    N = cd.group_order
    e = cd.exponent
    p = dixon_prime(e, N)
    z = root_of_unity_mod(e, p)
    sizes = np.array(cd.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    inv_cls = list(cd.inverse_classes)
    rows = []
    for v in _central_characters(cd, p, seed):
        if v[0] % p == 0:
            raise TableError("central character vanishes at the identity")
        omega = v * pow(int(v[0]), -1, p) % p
        s = int((omega * omega[inv_cls] % p * inv_sizes % p).sum() % p)
        if s == 0:
            raise TableError("degenerate norm in central character")
        d2 = N * pow(s, -1, p) % p
        d = next((x for x in range(1, isqrt(N) + 1) if x * x % p == d2 and N % x == 0), None)
        if d is None:
            raise TableError("no admissible degree for a central character")
        chi_mod = d * omega % p * inv_sizes % p
        rows.append(_lift_row(chi_mod, cd, d, e, p, z))
    return rows


def _character_sort_key(x: Character):
    return (x.degree, tuple(v.sort_key() for v in x.values))


def _assemble(group: PermGroup, cd: ClassData, rows, labels=None, method="dixon",
              embeddings=None, sort: bool = True) -> CharacterTable:
    T = CharacterTable(group=group, classes=cd, conductor=cd.exponent, method=method,
                       embeddings=embeddings or {})
    chars = [Character(T, c, label=(labels[i] if labels else None)) for i, c in enumerate(rows)]
    if sort:
        chars.sort(key=_character_sort_key)
    for i, x in enumerate(chars):
        x.index = i
    T.irreducibles = tuple(chars)
    T.labels = tuple(x.label or f"X.{x.index}" for x in chars)
    verify_table(T)
    return T


def character_table(G: PermGroup, seed: int = DIXON_SEED) -> CharacterTable:
    """Verified character table of G (cached on the group)."""
    if "table" not in G.cache:
        cd = G.classes
        log.debug("Dixon-Schneider for order %d with %d classes", G.order, len(cd))
        G.cache["table"] = _assemble(G, cd, _dixon_rows(cd, seed))
    return G.cache["table"]


# ---------------------------------------------------------------------------
# exact verification


def verify_table(T: CharacterTable) -> None:
    """Exact check of both orthogonality relations and the degree equation.

    The relations are tested modulo primes q = 1 (mod e) at every primitive
    e-th root of unity in GF(q).  A discrepancy is an algebraic integer lying
    in q Z[zeta_e] for each such q; once the product of the primes exceeds a
    bound on the absolute values of all its conjugates, it must be zero.
    """
    cd = T.classes
    r = len(cd)
    N = T.order
    if len(T.irreducibles) != r:
        raise TableError(f"{len(T.irreducibles)} irreducibles for {r} classes")
    degrees = [x.degree for x in T.irreducibles]
    if any(d <= 0 or N % d for d in degrees):
        raise TableError(f"degrees {degrees} do not divide the group order")
    if sum(d * d for d in degrees) != N:
        raise TableError("sum of squared degrees differs from the group order")
    e = T.conductor
    X = T.values
    units = [k for k in range(1, e + 1) if gcd(k, e) == 1]
    bound = N * (max(degrees) ** 2 + 1)
    sizes = np.array(cd.sizes, dtype=np.int64)
    cent = np.array(cd.centralizer_orders, dtype=np.int64)
    basis = np.array(cyc.basis(e), dtype=np.int64)
    modulus, lower = 1, 1 << 16
    while modulus <= bound:
        q = prime_one_mod(e, lower)
        if q >= 1 << 20:
            raise TableError("ran out of verification primes")
        lower = q
        z = root_of_unity_mod(e, q)
        PV = np.array([[pow(z, int(k * b % e), q) for k in units] for b in basis], dtype=np.int64)
        vals = np.tensordot(X % q, PV, axes=([2], [0])) % q  # (irr, class, unit)
        w = sizes % q
        eye_n = (np.eye(r, dtype=np.int64) * (N % q)) % q
        diag_c = np.diag(cent % q)
        for ui, k in enumerate(units):
            uj = units.index((-k) % e if e > 1 else 1)
            A = vals[:, :, ui].astype(np.float64)
            Ab = vals[:, :, uj].astype(np.float64)
            Aw = (vals[:, :, ui] * w % q).astype(np.float64)
            rows = np.fmod(Aw @ Ab.T, q)
            if not np.array_equal(rows.astype(np.int64) % q, eye_n):
                raise TableError("row orthogonality fails")
            cols = np.fmod(A.T @ Ab, q)
            if not np.array_equal(cols.astype(np.int64) % q, diag_c):
                raise TableError("column orthogonality fails")
        modulus *= q


# ---------------------------------------------------------------------------
# operations on characters


def inner_product(chi: Character, psi: Character) -> Cyclotomic:
    """(1/|G|) sum over g of chi(g) conj(psi(g)), computed exactly."""
    chi._same(psi)
    T = chi.table
    e = T.conductor
    prod = cyc.multiply(chi.coords, cyc.conjugate(psi.coords, e), e)
    total = (prod * np.array(T.classes.sizes, dtype=np.int64)[:, None]).sum(axis=0)
    return Cyclotomic.from_coords(total, e, denominator=T.order)


def tensor(chi: Character, psi: Character) -> Character:
    chi._same(psi)
    T = chi.table
    return Character(T, cyc.multiply(chi.coords, psi.coords, T.conductor))


def table_of(M: PermGroup) -> CharacterTable:
    return character_table(M)


def restrict(chi: Character, M: PermGroup | CharacterTable) -> Character:
    """Restriction of chi to a subgroup M (a class function of M's table)."""
    T = chi.table
    S = M if isinstance(M, CharacterTable) else character_table(M)
    if not S.group.is_subgroup_of(T.group):
        raise GroupInputError("not a subgroup")
    fus = T.fusion_from(S)
    coords = cyc.descend(chi.coords[fus], T.conductor, S.conductor)
    return Character(S, coords)


def restrict_constituents(chi: Character, M: PermGroup | CharacterTable) -> list[tuple[Character, int]]:
    S = M if isinstance(M, CharacterTable) else character_table(M)
    key = ("constituents", chi.index, id(S))
    cache = chi.table.cache
    if chi.index is not None and key in cache:
        return cache[key]
    res = restrict(chi, S)
    out = [(S[i], m) for i, m in S.decompose(res)]
    if chi.index is not None:
        cache[key] = out
    return out


def induce(theta: Character, G: PermGroup | CharacterTable) -> Character:
    """theta^G for theta a class function of a subgroup of G."""
    S = theta.table
    T = G if isinstance(G, CharacterTable) else character_table(G)
    if not S.group.is_subgroup_of(T.group):
        raise GroupInputError("not a subgroup")
    fus = T.fusion_from(S)
    lifted = cyc.lift(theta.coords, S.conductor, T.conductor)
    weights = np.array(S.classes.sizes, dtype=np.int64)
    acc = np.zeros((len(T.classes), lifted.shape[1]), dtype=np.int64)
    np.add.at(acc, fus, lifted * weights[:, None])
    acc *= np.array(T.classes.centralizer_orders, dtype=np.int64)[:, None]
    if np.any(acc % S.order):
        raise TableError("induced class function is not integral")
    return Character(T, acc // S.order)


def kernel_of(chi: Character) -> PermGroup:
    """{g : chi(g) = chi(1)} as a subgroup of the table's group."""
    T = chi.table
    ker = [k for k in range(len(chi)) if np.array_equal(chi.coords[k], chi.coords[0])]
    return T.group.subgroup_from_classes(ker)


def eigenvalue_multiplicities(chi: Character, k: int) -> np.ndarray:
    """m[l] = multiplicity of exp(2 pi i l / o) as an eigenvalue at class k (o its order)."""
    T = chi.table
    cd = T.classes
    e, o, d = T.conductor, cd.orders[k], chi.degree
    q, z, _ = T._mod_setup(d)
    vals = cyc.evaluate_mod(chi.coords[list(cd.powers[k])], e, q, z)
    zo = pow(z, e // o, q)
    m = (_dft_matrix(o, zo, q) @ vals % q) * pow(o, -1, q) % q
    if (m > d).any() or int(m.sum()) != d:
        raise ValueError("not a character: eigenvalue multiplicities out of range")
    return m


def determinant_character(chi: Character) -> Character:
    T = chi.table
    cd = T.classes
    e = T.conductor
    red = cyc.reduction_matrix(e)
    rows = []
    for k, o in enumerate(cd.orders):
        m = eigenvalue_multiplicities(chi, k)
        s = int((np.arange(o) * m).sum()) % o
        rows.append(red[(s * (e // o)) % e])
    return Character(T, np.array(rows))


def determinant_order(chi: Character) -> int:
    """Order of det(chi) as a linear character."""
    if chi.index is None and not chi.is_irreducible():
        raise ValueError("determinant order is defined here for irreducible characters")
    return _det_order(chi)


def _det_order(chi: Character) -> int:
    cached = chi.__dict__.get("_det_order")
    if cached is not None:
        return cached
    cd = chi.table.classes
    out = 1
    for k, o in enumerate(cd.orders):
        if o == 1:
            continue
        m = eigenvalue_multiplicities(chi, k)
        s = int((np.arange(o) * m).sum()) % o
        out = lcm(out, o // gcd(o, s))
    chi.__dict__["_det_order"] = out
    return out


def linear_characters(G: PermGroup | CharacterTable) -> list[Character]:
    """Degree-one characters, pulled back from the abelianization."""
    T = G if isinstance(G, CharacterTable) else character_table(G)
    grp = T.group
    Q, proj = quotient_group(grp, derived_subgroup(grp))
    TQ = character_table(Q)
    reps = np.array([r.images for r in T.classes.representatives], dtype=np.int32)
    qcls = TQ.classes.classes_of(proj.images(reps))
    out = []
    for x in TQ.irreducibles:
        coords = cyc.lift(x.coords[qcls], TQ.conductor, T.conductor)
        out.append(T.irreducibles[T.index_of(Character(T, coords))])
    if len(out) != grp.order // derived_subgroup(grp).order:
        raise TableError("wrong number of linear characters")
    return sorted(out, key=lambda x: x.index)


def cd_set(T: CharacterTable) -> list[int]:
    return sorted(set(T.degrees))


# ---------------------------------------------------------------------------
# compositional tables


def _class_key(order: int, size: int, rep: tuple) -> tuple:
    return (order, size, rep)


def direct_product_table(T1: CharacterTable, T2: CharacterTable, name: str | None = None) -> CharacterTable:
    """Table of G1 x G2 on the disjoint union of the point sets."""
    G1, G2 = T1.group, T2.group
    n1 = G1.degree
    c1, c2 = T1.classes, T2.classes
    G = direct_product_group(G1, G2, name=name or f"{G1.name}x{G2.name}")
    pairs = []
    for i in range(len(c1)):
        for j in range(len(c2)):
            rep = c1.representatives[i].images + tuple(n1 + x for x in c2.representatives[j].images)
            pairs.append((_class_key(lcm(c1.orders[i], c2.orders[j]), c1.sizes[i] * c2.sizes[j], rep), i, j))
    pairs.sort()
    index = {(i, j): t for t, (_, i, j) in enumerate(pairs)}
    powers = []
    for key, i, j in pairs:
        o = key[0]
        powers.append(tuple(index[(c1.power_class(i, t), c2.power_class(j, t))] for t in range(o)))
    cd = ClassData(
        group=G,
        representatives=tuple(Permutation(key[2]) for key, _, _ in pairs),
        sizes=tuple(key[1] for key, _, _ in pairs),
        orders=tuple(key[0] for key, _, _ in pairs),
        powers=tuple(powers),
    )
    e = cd.exponent
    I = np.array([i for _, i, _ in pairs])
    J = np.array([j for _, _, j in pairs])
    rows, labels = [], []
    for a, x in enumerate(T1.irreducibles):
        xa = cyc.lift(x.coords, T1.conductor, e)[I]
        for b, y in enumerate(T2.irreducibles):
            yb = cyc.lift(y.coords, T2.conductor, e)[J]
            rows.append(cyc.multiply(xa, yb, e))
            labels.append(f"{a}x{b}")
    T = _assemble(G, cd, rows, labels, method="direct-product",
                  embeddings={"pairs": tuple((i, j) for _, i, j in pairs)})
    G.cache["table"] = T
    return T


def wreath_c2_table(T: CharacterTable, name: str | None = None) -> CharacterTable:
    """Table of G wr C2 built from the table of G.

    Elements are (a, b) followed by the swap of the two point copies.  Base
    classes are unordered pairs of G-classes; classes outside the base are
    indexed by the G-class of a*b.  Irreducibles are the induced characters
    (theta x eta)^Gamma for theta != eta and the two extensions of
    theta x theta, the extension positive on the swap first.
    """
    G = T.group
    n = G.degree
    c = T.classes
    k = len(c)
    W = wreath_c2_group(G, name=name or f"{G.name}wrC2")
    reps = [r.images for r in c.representatives]
    entries = []
    for i in range(k):
        for j in range(i, k):
            a, b = (i, j) if reps[i] <= reps[j] else (j, i)
            rep = reps[a] + tuple(n + x for x in reps[b])
            size = 2 * c.sizes[i] * c.sizes[j] if i != j else c.sizes[i] ** 2
            entries.append((_class_key(lcm(c.orders[i], c.orders[j]), size, rep), ("base", i, j)))
    shift = tuple(range(n, 2 * n))
    for i in range(k):
        rep = shift + reps[i]
        entries.append((_class_key(2 * c.orders[i], G.order * c.sizes[i], rep), ("swap", i, i)))
    entries.sort()
    index = {tag: t for t, (_, tag) in enumerate(entries)}

    def base_idx(i, j):
        return index[("base", min(i, j), max(i, j))]

    powers = []
    for key, (kind, i, j) in entries:
        o = key[0]
        if kind == "base":
            powers.append(tuple(base_idx(c.power_class(i, t), c.power_class(j, t)) for t in range(o)))
        else:
            pw = []
            for t in range(o):
                if t % 2 == 0:
                    h = c.power_class(i, t // 2)
                    pw.append(base_idx(h, h))
                else:
                    pw.append(index[("swap", c.power_class(i, t), c.power_class(i, t))])
            powers.append(tuple(pw))
    cd = ClassData(
        group=W,
        representatives=tuple(Permutation(key[2]) for key, _ in entries),
        sizes=tuple(key[1] for key, _ in entries),
        orders=tuple(key[0] for key, _ in entries),
        powers=tuple(powers),
    )
    e = cd.exponent
    X = [cyc.lift(x.coords, T.conductor, e) for x in T.irreducibles]
    r = len(entries)
    rows, labels = [], []
    kinds = [tag for _, tag in entries]

    base_t = np.array([t for t, (kind, _, _) in enumerate(kinds) if kind == "base"])
    swap_t = np.array([t for t, (kind, _, _) in enumerate(kinds) if kind == "swap"])
    BI = np.array([kinds[t][1] for t in base_t])
    BJ = np.array([kinds[t][2] for t in base_t])
    SI = np.array([kinds[t][1] for t in swap_t])

    def build(a, b, sign):
        out = np.zeros((r, cyc.totient(e)), dtype=np.int64)
        v = cyc.multiply(X[a][BI], X[b][BJ], e)
        if a != b:
            v = v + cyc.multiply(X[b][BI], X[a][BJ], e)
        out[base_t] = v
        if a == b:
            out[swap_t] = sign * X[a][SI]
        return out

    for a in range(k):
        for b in range(a + 1, k):
            rows.append(build(a, b, 0))
            labels.append(f"ind({a},{b})")
    for a in range(k):
        for sign in (1, -1):
            rows.append(build(a, a, sign))
            labels.append(f"ext({a},{'+' if sign > 0 else '-'})")
    base_map = {}
    for i in range(k):
        for j in range(k):
            base_map[(i, j)] = base_idx(i, j)
    Tw = _assemble(W, cd, rows, labels, method="wreath-c2", embeddings={"base": base_map})
    W.cache["table"] = Tw
    return Tw


def base_subgroup(W: PermGroup, base_degree: int) -> PermGroup:
    """The base group G x G of a wreath product built by :func:`wreath_c2_table`."""
    gens = [g for g in W.generators if all(x < base_degree for x in g[:base_degree])]
    return W.subgroup(gens)
