"""Permutation groups: stabilizer chains, classes, characteristic subgroups.

Points are 0..n-1 internally; :class:`Permutation` converts from the 1-based
notation used in files and on the command line.  Products compose left to
right: ``p * q`` applies ``p`` first, then ``q``.

Every group carries a deterministic Schreier-Sims stabilizer chain.  Sifting
through the chain gives each element a mixed-radix *rank*, a perfect hash
that indexes the element arrays and the class map.  Element enumeration is
refused above ``order_cap`` (default 10**5).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .primes import PrimeSet, prime_divisors

log = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 100_000
MAX_NORMAL_SUBGROUPS = 5000


class GroupInputError(ValueError):
    """Malformed permutation or group input."""


class BoundExceeded(RuntimeError):
    """An enumeration would exceed the configured order cap."""


class NotPiSeparable(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations


def _check_images(images: Sequence[int], degree: int | None = None) -> tuple[int, ...]:
    t = tuple(int(x) for x in images)
    if degree is not None and len(t) != degree:
        raise GroupInputError(f"permutation has length {len(t)}, expected degree {degree}")
    if sorted(t) != list(range(len(t))):
        raise GroupInputError(f"not a bijection on {len(t)} points: {list(t)}")
    return t


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    o = 1
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            o = lcm(o, n)
    return o


class Permutation:
    """Immutable permutation of {0, ..., n-1}; ``images[i]`` is the image of i."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        self.images = _check_images(images)
        self._hash = hash(self.images)

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Permutation:
        return cls([x - 1 for x in images])

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        """Build from 1-based cycles, e.g. ``from_cycles(4, (1, 2), (3, 4))``."""
        img = list(range(degree))
        for cyc in cycles:
            cyc = [c - 1 for c in cyc]
            if len(set(cyc)) != len(cyc) or any(not 0 <= c < degree for c in cyc):
                raise GroupInputError(f"bad cycle {cycles}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise GroupInputError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def __invert__(self) -> Permutation:
        return Permutation(_inv(self.images))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else ~self
        out = tuple(range(self.degree))
        cur = base.images
        k = abs(k)
        while k:
            if k & 1:
                out = _mul(out, cur)
            cur = _mul(cur, cur)
            k >>= 1
        return Permutation(out)

    def order(self) -> int:
        return _perm_order(self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def one_based(self) -> list[int]:
        return [x + 1 for x in self.images]

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


def _as_images(g, degree: int) -> tuple[int, ...]:
    if isinstance(g, Permutation):
        if g.degree != degree:
            raise GroupInputError(f"permutation of degree {g.degree} in a group of degree {degree}")
        return g.images
    return _check_images(g, degree)


# ---------------------------------------------------------------------------
# stabilizer chains


@dataclass(frozen=True)
class StabChain:
    degree: int
    base: tuple[int, ...]
    transversals: tuple[dict, ...]  # point -> coset rep mapping the base point there
    strong_gens: tuple[tuple[int, ...], ...]

    @cached_property
    def order(self) -> int:
        return reduce(lambda a, t: a * len(t), self.transversals, 1)

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for level in range(start, len(self.base)):
            pt = g[self.base[level]]
            u = self.transversals[level].get(pt)
            if u is None:
                return g, level
            g = _mul(g, _inv(u))
        return g, len(self.base)

    def contains(self, g: tuple) -> bool:
        h, _ = self.sift(g)
        return all(i == x for i, x in enumerate(h))

    @cached_property
    def arrays(self):
        """(base, pos, tinv, strides) for the rank kernels."""
        n, L = self.degree, len(self.base)
        sizes = [len(t) for t in self.transversals]
        width = max(sizes, default=1)
        pos = np.full((L, n), -1, dtype=np.int32)
        tinv = np.zeros((L, width, n), dtype=np.int32)
        for level, trans in enumerate(self.transversals):
            for idx, pt in enumerate(sorted(trans)):
                pos[level, pt] = idx
                tinv[level, idx] = _inv(trans[pt])
        strides = np.ones(L, dtype=np.int64)
        for level in range(L - 2, -1, -1):
            strides[level] = strides[level + 1] * sizes[level + 1]
        return np.array(self.base, dtype=np.int64), pos, tinv, strides

    def enumerate(self) -> np.ndarray:
        """All elements, row i being the element of rank i."""
        n = self.degree
        block = np.arange(n, dtype=np.int32)[None, :]
        for level in range(len(self.base) - 1, -1, -1):
            trans = self.transversals[level]
            parts = [np.asarray(trans[pt], dtype=np.int32)[block] for pt in sorted(trans)]
            block = np.concatenate(parts, axis=0)
        return block


def _orbit_transversal(point: int, gens: list[tuple], n: int) -> dict:
    trans = {point: tuple(range(n))}
    queue = [point]
    for pt in queue:
        u = trans[pt]
        for s in gens:
            q = s[pt]
            if q not in trans:
                trans[q] = _mul(u, s)
                queue.append(q)
    return trans


def schreier_sims(gens: Iterable[Sequence[int]], degree: int) -> StabChain:
    """Deterministic Schreier-Sims: base, transversals and strong generators."""
    ident = tuple(range(degree))
    strong = [tuple(g) for g in dict.fromkeys(tuple(g) for g in gens) if tuple(g) != ident]
    base: list[int] = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(next(x for x in range(degree) if g[x] != x))
    S = [[g for g in strong if all(g[b] == b for b in base[:i])] for i in range(len(base))]
    T = [_orbit_transversal(base[i], S[i], degree) for i in range(len(base))]

    def sift(g, start):
        for level in range(start, len(base)):
            u = T[level].get(g[base[level]])
            if u is None:
                return g, level
            g = _mul(g, _inv(u))
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        restart = False
        b0 = base[i]
        for pt in list(T[i]):
            u = T[i][pt]
            for s in S[i]:
                us = _mul(u, s)
                sch = _mul(us, _inv(T[i][us[b0]]))
                h, j = sift(sch, i + 1)
                if h == ident:
                    continue
                if j == len(base):
                    base.append(next(x for x in range(degree) if h[x] != x))
                    S.append([])
                    T.append({})
                strong.append(h)
                for level in range(i + 1, j + 1):
                    S[level].append(h)
                    T[level] = _orbit_transversal(base[level], S[level], degree)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return StabChain(degree, tuple(base), tuple(T), tuple(strong))


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators on ``degree`` points.

    Subgroups built through the methods of a group share its *root*, which
    keeps one canonical object per element set so that cached character
    tables are reused.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable = (),
        *,
        name: str | None = None,
        order_cap: int = DEFAULT_ORDER_CAP,
        _root: PermGroup | None = None,
    ):
        if degree < 1:
            raise GroupInputError("degree must be positive")
        self.degree = degree
        ident = tuple(range(degree))
        gens = (_as_images(g, degree) for g in generators)
        self.generators: tuple[tuple[int, ...], ...] = tuple(
            g for g in dict.fromkeys(gens) if g != ident
        )
        self.name = name
        self.order_cap = order_cap
        self.root = _root if _root is not None else self
        if self.root is self:
            self._registry: dict[int, PermGroup] = {}
        self.cache: dict = {}

    def __repr__(self):
        label = self.name or f"<{len(self.generators)} gens>"
        return f"PermGroup({label}, degree={self.degree}, order={self.order})"

    # -- chain ------------------------------------------------------------

    @cached_property
    def chain(self) -> StabChain:
        return schreier_sims(self.generators, self.degree)

    @property
    def order(self) -> int:
        return self.chain.order

    def contains(self, g) -> bool:
        return self.chain.contains(_as_images(g, self.degree))

    def rank(self, perms: np.ndarray) -> np.ndarray:
        """Ranks of the rows of ``perms`` (-1 for non-members)."""
        perms = np.asarray(perms, dtype=np.int32).reshape(-1, self.degree)
        return kernels.sift_ranks(perms, *self.chain.arrays)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_trivial(self) -> bool:
        return not self.generators

    # -- enumeration ------------------------------------------------------

    def check_cap(self, what: str = "enumeration"):
        if self.order > self.order_cap:
            raise BoundExceeded(f"{what} of a group of order {self.order} exceeds cap {self.order_cap}")

    @cached_property
    def elements(self) -> np.ndarray:
        self.check_cap()
        els = self.chain.enumerate()
        els.setflags(write=False)
        return els

    @cached_property
    def inverse_ranks(self) -> np.ndarray:
        return self.rank(np.argsort(self.elements, axis=1))

    @cached_property
    def element_orders(self) -> np.ndarray:
        E = self.elements
        n = self.degree
        orders = np.ones(len(E), dtype=np.int64)
        cur = E.copy()
        ident = np.arange(n, dtype=np.int32)
        done = (cur == ident).all(axis=1)
        k = 1
        while not done.all():
            k += 1
            cur = np.take_along_axis(E, cur, axis=1)  # g^k = g^(k-1) * g
            now = (cur == ident).all(axis=1) & ~done
            orders[now] = k
            done |= now
        return orders

    def element(self, rank: int) -> Permutation:
        return Permutation(self.elements[rank])

    # -- root registry ----------------------------------------------------

    @cached_property
    def root_ranks(self) -> np.ndarray:
        if self.root is self:
            return np.arange(self.order, dtype=np.int64)
        return np.sort(self.root.rank(self.elements))

    @cached_property
    def mask(self) -> int:
        bits = np.zeros(self.root.order, dtype=bool)
        bits[self.root_ranks] = True
        return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")

    def _register(self, group: PermGroup) -> PermGroup:
        root = self.root
        if root.order > root.order_cap:
            return group
        return root._registry.setdefault(group.mask, group)

    def subgroup(self, gens: Iterable, name: str | None = None) -> PermGroup:
        """Subgroup generated by ``gens`` (members of this group)."""
        gens = [_as_images(g, self.degree) for g in gens]
        for g in gens:
            if not self.contains(g):
                raise GroupInputError(f"{Permutation(g)!r} is not in the group")
        sub = PermGroup(self.degree, gens, name=name, order_cap=self.order_cap, _root=self.root)
        return self._register(sub)

    def adopt(self, other: PermGroup) -> PermGroup:
        """Canonical subgroup object of this group with the same elements."""
        if other.root is self.root:
            return other
        if not other.is_subgroup_of(self):
            raise GroupInputError("not a subgroup")
        return self.subgroup(other.generators, name=other.name)

    def subgroup_from_ranks(self, ranks: Iterable[int], name: str | None = None) -> PermGroup:
        """Subgroup whose elements are the given ranks of this group."""
        ranks = np.unique(np.asarray(list(ranks) if not isinstance(ranks, np.ndarray) else ranks))
        target = len(ranks)
        if target == self.order:
            return self
        E = self.elements
        orders = self.element_orders[ranks]
        cand = ranks[np.lexsort((ranks, -orders))]
        gens: list[tuple] = []
        chain = schreier_sims([], self.degree)
        for r in cand:
            if chain.order == target:
                break
            g = tuple(int(x) for x in E[r])
            if chain.contains(g):
                continue
            gens.append(g)
            chain = schreier_sims(gens, self.degree)
        if chain.order != target:
            raise GroupInputError("element set is not a subgroup")
        sub = PermGroup(self.degree, gens, name=name, order_cap=self.order_cap, _root=self.root)
        sub.__dict__["chain"] = chain
        return self._register(sub)

    def trivial_subgroup(self) -> PermGroup:
        return self.subgroup([])

    # -- classes ----------------------------------------------------------

    @cached_property
    def classes(self) -> ClassData:
        return _compute_classes(self)

    def subgroup_from_classes(self, class_indices: Iterable[int], name: str | None = None) -> PermGroup:
        idx = np.fromiter(class_indices, dtype=np.int64)
        ranks = np.flatnonzero(np.isin(self.classes.ids, idx))
        return self.subgroup_from_ranks(ranks, name=name)

    def class_indices_of(self, sub: PermGroup) -> tuple[int, ...]:
        """Classes of this group meeting ``sub`` (all of them for normal ``sub``)."""
        ranks = self.rank(sub.elements)
        return tuple(sorted(set(self.classes.ids[ranks].tolist())))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(_mul(a, b) == _mul(b, a) for a in gens for b in gens)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(eq=False)
class ClassData:
    """Conjugacy classes in canonical order.

    Canonical order is ascending (element order, class size, smallest
    representative image sequence); ``representatives`` are those smallest
    elements.  ``powers[k][t]`` is the class of ``rep_k ** t`` for
    ``t < orders[k]``.  ``ids`` maps element ranks to class indices; tables
    built compositionally fill it lazily.
    """

    group: PermGroup
    representatives: tuple[Permutation, ...]
    sizes: tuple[int, ...]
    orders: tuple[int, ...]
    powers: tuple[tuple[int, ...], ...]
    _ids: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def ids(self) -> np.ndarray:
        if self._ids is None:
            direct = self.group.classes
            if direct is self:
                raise RuntimeError("class map missing")
            mapping = np.full(len(direct), -1, dtype=np.int64)
            for k, rep in enumerate(self.representatives):
                mapping[direct.class_of(rep)] = k
            if (mapping < 0).any():
                raise RuntimeError("compositional classes do not match the direct classes")
            self._ids = mapping[direct.ids]
        return self._ids

    def class_of(self, g) -> int:
        r = self.group.rank(np.asarray(_as_images(g, self.group.degree))[None, :])[0]
        if r < 0:
            raise GroupInputError(f"{g!r} is not in the group")
        return int(self.ids[r])

    def classes_of(self, perms: np.ndarray) -> np.ndarray:
        r = self.group.rank(perms)
        if (r < 0).any():
            raise GroupInputError("element outside the group")
        return self.ids[r]

    @property
    def group_order(self) -> int:
        return sum(self.sizes)

    @property
    def centralizer_orders(self) -> tuple[int, ...]:
        n = self.group_order
        return tuple(n // s for s in self.sizes)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders)

    @property
    def inverse_classes(self) -> tuple[int, ...]:
        return tuple(p[-1] if len(p) > 1 else p[0] for p in self.powers)

    def power_class(self, k: int, t: int) -> int:
        return self.powers[k][t % self.orders[k]]

    @property
    def power_maps(self) -> dict[int, tuple[int, ...]]:
        return {
            p: tuple(self.power_class(k, p) for k in range(len(self)))
            for p in prime_divisors(self.exponent)
        } if self.exponent > 1 else {}

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """a[i, j, k] = #{(x, y) in C_i x C_j : x y = rep_k}."""
        G = self.group
        reps = np.array([G.rank(np.asarray(r.images)[None, :])[0] for r in self.representatives])
        return kernels.structure_constants(
            G.elements, G.inverse_ranks, self.ids, reps, len(self), *G.chain.arrays
        )

    @cached_property
    def product_support(self) -> np.ndarray:
        return self.structure_constants > 0

    def close(self, classes: Iterable[int]) -> tuple[int, ...]:
        """Smallest normal subgroup (as class indices) containing the classes."""
        mask = np.zeros(len(self), dtype=bool)
        mask[0] = True
        mask[list(classes)] = True
        sup = self.product_support
        while True:
            idx = np.flatnonzero(mask)
            new = mask | sup[np.ix_(idx, idx)].any(axis=(0, 1))
            if (new == mask).all():
                return tuple(np.flatnonzero(mask).tolist())
            mask = new

    def subgroup_order(self, classes: Iterable[int]) -> int:
        return sum(self.sizes[k] for k in classes)


def _compute_classes(G: PermGroup) -> ClassData:
    E = G.elements
    n = G.degree
    gens = np.array(G.generators, dtype=np.int32).reshape(-1, n)
    raw = kernels.conjugacy_class_ids(E, gens, *G.chain.arrays)
    r = int(raw.max()) + 1
    lex = np.lexsort(E.T[::-1])
    first: dict[int, int] = {}
    for rk in lex:
        c = int(raw[rk])
        if c not in first:
            first[c] = int(rk)
            if len(first) == r:
                break
    sizes = np.bincount(raw, minlength=r)
    orders = G.element_orders
    keys = sorted(range(r), key=lambda c: (int(orders[first[c]]), int(sizes[c]), tuple(E[first[c]])))
    relabel = np.empty(r, dtype=np.int64)
    relabel[keys] = np.arange(r)
    ids = relabel[raw]
    ids.setflags(write=False)
    reps = [first[c] for c in keys]
    powers = []
    for rk in reps:
        o = int(orders[rk])
        g = E[rk]
        block = [np.arange(n, dtype=np.int32)]
        for _ in range(o - 1):
            block.append(g[block[-1]])
        powers.append(tuple(int(x) for x in ids[G.rank(np.array(block))]))
    return ClassData(
        group=G,
        representatives=tuple(Permutation(E[rk]) for rk in reps),
        sizes=tuple(int(sizes[c]) for c in keys),
        orders=tuple(int(orders[rk]) for rk in reps),
        powers=tuple(powers),
        _ids=ids,
    )


# ---------------------------------------------------------------------------
# public operations


def group_from_generators(degree: int, gens: Iterable, name: str | None = None, **kw) -> PermGroup:
    return PermGroup(degree, gens, name=name, **kw)


def order(G: PermGroup) -> int:
    return G.order


def contains(G: PermGroup, g) -> bool:
    return G.contains(g)


def conjugacy_classes(G: PermGroup) -> ClassData:
    return G.classes


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    if not H.is_subgroup_of(G):
        return False
    for g in G.generators:
        gi = _inv(g)
        for h in H.generators:
            if not H.contains(_mul(_mul(gi, h), g)):
                return False
    return True


def normal_closure(G: PermGroup, elements: Iterable) -> PermGroup:
    """Smallest normal subgroup of G containing the elements."""
    gens = [_as_images(x, G.degree) for x in elements]
    gens = [g for g in gens if any(i != x for i, x in enumerate(g))]
    chain = schreier_sims(gens, G.degree)
    queue = list(gens)
    while queue:
        h = queue.pop()
        for g in G.generators:
            c = _mul(_mul(_inv(g), h), g)
            if not chain.contains(c):
                gens.append(c)
                queue.append(c)
                chain = schreier_sims(gens, G.degree)
    return G.subgroup(gens)


def derived_subgroup(G: PermGroup) -> PermGroup:
    """Normal closure of the commutators of the generators."""
    if "derived" not in G.cache:
        comms = []
        for a in G.generators:
            for b in G.generators:
                comms.append(_mul(_mul(_inv(a), _inv(b)), _mul(a, b)))
        G.cache["derived"] = normal_closure(G, comms)
    return G.cache["derived"]


def same_subgroup(A: PermGroup, B: PermGroup) -> bool:
    return A.order == B.order and A.is_subgroup_of(B)


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """N_G(H) by testing every element of G."""
    if not H.is_subgroup_of(G):
        raise GroupInputError("H is not a subgroup of G")
    H = G.adopt(H)
    key = ("normalizer", H.mask if G.root.order <= G.order_cap else id(H))
    if key in G.cache:
        return G.cache[key]
    E = G.elements
    Einv = np.argsort(E, axis=1).astype(np.int32)
    ok = np.ones(len(E), dtype=bool)
    for h in H.generators:
        h = np.asarray(h, dtype=np.int32)
        conj = np.take_along_axis(E, h[Einv], axis=1)  # g^-1 h g
        ok &= H.rank(conj) >= 0
    N = G.subgroup_from_ranks(np.flatnonzero(ok))
    G.cache[key] = N
    return N


def subgroup_intersection(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    if not (A.is_subgroup_of(G) and B.is_subgroup_of(G)):
        raise GroupInputError("arguments are not subgroups of G")
    small, big = (A, B) if A.order <= B.order else (B, A)
    els = small.elements
    keep = els[big.rank(els) >= 0]
    return G.subgroup_from_ranks(G.rank(keep))


def normal_subgroups(G: PermGroup) -> list[tuple[int, ...]]:
    """All normal subgroups of G as sorted tuples of class indices.

    Ordered by (order, class tuple).
    """
    if "normal_subgroups" in G.cache:
        return G.cache["normal_subgroups"]
    cd = G.classes
    atoms = {cd.close([c]) for c in range(len(cd))}
    found = set(atoms) | {(0,)}
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for a in atoms:
                if set(a) <= set(A):
                    continue
                J = cd.close(set(A) | set(a))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        if len(found) > MAX_NORMAL_SUBGROUPS:
            raise BoundExceeded(f"more than {MAX_NORMAL_SUBGROUPS} normal subgroups")
        frontier = nxt
    out = sorted(found, key=lambda s: (cd.subgroup_order(s), s))
    G.cache["normal_subgroups"] = out
    return out


def minimal_normal_subgroups(G: PermGroup) -> list[tuple[int, ...]]:
    cd = G.classes
    nontriv = [cd.close([c]) for c in range(1, len(cd))]
    out = []
    for A in sorted(set(nontriv), key=lambda s: (cd.subgroup_order(s), s)):
        if not any(set(B) < set(A) for B in nontriv):
            out.append(A)
    return out


def chief_series(G: PermGroup) -> list[PermGroup]:
    """1 = G_0 < G_1 < ... < G_k = G with each G_i / G_(i-1) a chief factor."""
    if "chief_series" in G.cache:
        return G.cache["chief_series"]
    cd = G.classes
    current: tuple[int, ...] = (0,)
    terms = [current]
    while len(current) < len(cd):
        cands = {cd.close(set(current) | {c}) for c in range(len(cd)) if c not in current}
        current = min(cands, key=lambda s: (cd.subgroup_order(s), s))
        terms.append(current)
    series = [G.subgroup_from_classes(t) for t in terms]
    G.cache["chief_series"] = series
    return series


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Projection G -> G/K realised on the right cosets of K."""

    source: PermGroup
    kernel: PermGroup
    image: PermGroup
    coset_of: np.ndarray  # coset index by rank in source
    coset_reps: np.ndarray  # one source rank per coset

    def images(self, perms: np.ndarray) -> np.ndarray:
        """Image permutations (rows) of source elements (rows)."""
        G = self.source
        perms = np.asarray(perms, dtype=np.int32).reshape(-1, G.degree)
        reps = G.elements[self.coset_reps]
        out = np.empty((len(perms), len(reps)), dtype=np.int32)
        for i, g in enumerate(perms):
            out[i] = self.coset_of[G.rank(g[reps])]
        return out

    def __call__(self, g) -> Permutation:
        return Permutation(self.images(np.asarray(_as_images(g, self.source.degree)))[0])


def quotient_group(G: PermGroup, K: PermGroup) -> tuple[PermGroup, QuotientMap]:
    """G/K acting on the right cosets of K, with the projection map."""
    if not is_normal(G, K):
        raise GroupInputError("K is not a normal subgroup of G")
    key = ("quotient", K.mask)
    if key in G.cache:
        return G.cache[key]
    E = G.elements
    Kel = K.elements
    coset_of = np.full(len(E), -1, dtype=np.int64)
    reps = []
    for r in range(len(E)):
        if coset_of[r] >= 0:
            continue
        members = G.rank(E[r][Kel])  # k * x for k in K
        coset_of[members] = len(reps)
        reps.append(r)
    reps = np.array(reps, dtype=np.int64)
    proj = QuotientMap(G, K, None, coset_of, reps)  # type: ignore[arg-type]
    m = len(reps)
    gens = proj.images(np.array(G.generators, dtype=np.int32).reshape(-1, G.degree)) if G.generators else []
    Q = PermGroup(m, [tuple(int(x) for x in g) for g in gens], order_cap=G.order_cap)
    proj = QuotientMap(G, K, Q, coset_of, reps)
    G.cache[key] = (Q, proj)
    return Q, proj


def pi_core(G: PermGroup, pi: PrimeSet) -> PermGroup:
    """Largest normal pi-subgroup O_pi(G)."""
    cd = G.classes
    good = [c for c in range(len(cd)) if pi.is_pi_number(cd.subgroup_order(cd.close([c])))]
    return G.subgroup_from_classes(cd.close(good))


def is_pi_separable(G: PermGroup, pi: PrimeSet) -> bool:
    series = chief_series(G)
    for lo, hi in zip(series, series[1:]):
        f = hi.order // lo.order
        if not (pi.is_pi_number(f) or pi.is_pi_prime_number(f)):
            return False
    return True


def hall_subgroup(G: PermGroup, pi: PrimeSet) -> PermGroup:
    """A Hall pi-subgroup of a pi-separable group.

    Grows a pi-subgroup one pi-element at a time.  In a pi-separable group
    every pi-subgroup lies in a Hall pi-subgroup, so the growth never stalls;
    the order is still verified before returning.
    """
    key = ("hall", pi)
    if key in G.cache:
        return G.cache[key]
    if not is_pi_separable(G, pi):
        raise NotPiSeparable(f"group is not {pi}-separable")
    target = pi.pi_part(G.order)
    if target == G.order:
        H = G
    elif target == 1:
        H = G.trivial_subgroup()
    else:
        H = _grow_pi_subgroup(G, pi, target)
    if H.order != target or gcd(H.order, G.order // H.order) != 1:
        raise RuntimeError(f"Hall search failed: order {H.order}, expected {target}")
    G.cache[key] = H
    return H


def _orbit_lengths(gens: list[tuple], n: int) -> list[int]:
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orbit = [s]
        seen[s] = True
        for x in orbit:
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        out.append(len(orbit))
    return out


def _grow_pi_subgroup(G: PermGroup, pi: PrimeSet, target: int) -> PermGroup:
    E = G.elements
    orders = G.element_orders
    ranks = np.array([r for r in range(len(E)) if orders[r] > 1 and pi.is_pi_number(int(orders[r]))])
    ranks = ranks[np.lexsort((ranks, -orders[ranks]))]
    gens: list[tuple] = []
    chain = schreier_sims([], G.degree)
    for r in ranks:
        g = tuple(int(x) for x in E[r])
        if chain.contains(g):
            continue
        trial = gens + [g]
        if not all(pi.is_pi_number(k) for k in _orbit_lengths(trial, G.degree)):
            continue
        c = schreier_sims(trial, G.degree)
        if pi.is_pi_number(c.order):
            gens, chain = trial, c
            if chain.order == target:
                break
    H = G.subgroup(gens)
    return H


def subnormal_subgroups(G: PermGroup) -> list[PermGroup]:
    """Every subnormal subgroup of G (exhaustive; small groups only)."""
    seen: dict[int, PermGroup] = {}
    stack = [G]
    while stack:
        X = stack.pop()
        if X.mask in seen:
            continue
        seen[X.mask] = X
        for cls in normal_subgroups(X):
            stack.append(X.subgroup_from_classes(cls))
    return sorted(seen.values(), key=lambda H: (H.order, H.mask))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return ~a * ~b * a * b


def direct_product_group(A: PermGroup, B: PermGroup, name: str | None = None) -> PermGroup:
    """A x B acting on the disjoint union of the point sets."""
    n, m = A.degree, B.degree
    gens = [tuple(g) + tuple(range(n, n + m)) for g in A.generators]
    gens += [tuple(range(n)) + tuple(n + x for x in g) for g in B.generators]
    return PermGroup(n + m, gens, name=name, order_cap=max(A.order_cap, B.order_cap))


def wreath_c2_group(A: PermGroup, name: str | None = None) -> PermGroup:
    """A wr C2 on two copies of the points: (a, b) on the copies, then the swap."""
    n = A.degree
    gens = [tuple(g) + tuple(range(n, 2 * n)) for g in A.generators]
    gens += [tuple(range(n)) + tuple(n + x for x in g) for g in A.generators]
    gens.append(tuple(range(n, 2 * n)) + tuple(range(n)))
    return PermGroup(2 * n, gens, name=name, order_cap=A.order_cap)
