"""pi-special characters, nuclei and B_pi sets of pi-separable groups."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .chartab import (
    Character,
    CharacterTable,
    TableError,
    character_table,
    induce,
    restrict_constituents,
    tensor,
    _det_order,
)
from .permgrp import (
    BoundExceeded,
    GroupInputError,
    PermGroup,
    chief_series,
    is_pi_separable,
    normal_subgroups,
    subnormal_subgroups,
)
from .primes import PrimeSet, prime_divisors

log = logging.getLogger(__name__)

EXHAUSTIVE_ORDER_CAP = 200
CHIEF = "chief-series"
EXHAUSTIVE = "exhaustive"


class NucleusError(RuntimeError):
    """The Clifford descent produced inconsistent data."""


def pi_part(n: int, pi: PrimeSet) -> int:
    return pi.pi_part(n)


def _table(G: PermGroup | CharacterTable) -> CharacterTable:
    return G if isinstance(G, CharacterTable) else character_table(G)


def _owner(G, chi: Character) -> CharacterTable:
    T = chi.table if G is None else _table(G)
    if chi.table is not T:
        raise GroupInputError("character does not belong to the given group")
    return T


def _require_separable(G: PermGroup, pi: PrimeSet):
    if not is_pi_separable(G, pi):
        raise GroupInputError(f"{G.name or 'group'} is not {pi}-separable")


# ---------------------------------------------------------------------------
# pi-special characters


def _constituents_ok(chi: Character, S: PermGroup, pi: PrimeSet, check_degree: bool) -> bool:
    for theta, _ in restrict_constituents(chi, S):
        if check_degree and not pi.is_pi_number(theta.degree):
            return False
        if not pi.is_pi_number(_det_order(theta)):
            return False
    return True


def is_pi_special(G, chi: Character, pi: PrimeSet, mode: str = CHIEF) -> bool:
    """Whether chi is pi-special.

    The default test needs chi(1) to be a pi-number and the determinantal
    orders of the constituents of chi on every term of one chief series to
    be pi-numbers.  ``mode="exhaustive"`` applies the definition over all
    subnormal subgroups instead (small groups only).
    """
    T = _owner(G, chi)
    grp = T.group
    if not pi.is_pi_number(chi.degree):
        return False
    if mode == CHIEF:
        key = ("pi_special", pi, chi.index)
        if chi.index is not None and key in grp.cache:
            return grp.cache[key]
        ok = all(_constituents_ok(chi, S, pi, False) for S in chief_series(grp)[1:])
        if chi.index is not None:
            grp.cache[key] = ok
        return ok
    if mode == EXHAUSTIVE:
        if grp.order > EXHAUSTIVE_ORDER_CAP:
            raise BoundExceeded(f"exhaustive test limited to order {EXHAUSTIVE_ORDER_CAP}")
        return all(_constituents_ok(chi, S, pi, True) for S in subnormal_subgroups(grp) if S.order > 1)
    raise ValueError(f"unknown mode {mode!r}")


def pi_special_set(G, pi: PrimeSet, mode: str = CHIEF) -> list[Character]:
    T = _table(G)
    key = ("pi_special_set", pi, mode)
    if key not in T.cache:
        T.cache[key] = [x for x in T if is_pi_special(T, x, pi, mode)]
    return T.cache[key]


def factor_pi_factored(theta: Character, pi: PrimeSet) -> tuple[Character, Character] | None:
    """The pair (alpha, beta) with theta = alpha * beta, alpha pi-special and beta pi'-special."""
    T = theta.table
    d = theta.degree
    alphas = [a for a in pi_special_set(T, pi) if a.degree == pi.pi_part(d)]
    if not alphas:
        return None
    betas = [b for b in pi_special_set(T, pi.complement()) if b.degree == d // pi.pi_part(d)]
    found = [(a, b) for a in alphas for b in betas if tensor(a, b) == theta]
    if len(found) > 1:
        raise NucleusError(f"{len(found)} factorizations of {theta!r}")
    return found[0] if found else None


# ---------------------------------------------------------------------------
# nucleus


@dataclass(eq=False)
class NucleusData:
    """The subgroup W and the factored character alpha*beta inducing to chi."""

    chi: Character
    pi: PrimeSet
    W: PermGroup
    alpha: Character
    beta: Character
    chain: list[tuple[PermGroup, Character]] = field(default_factory=list)

    @property
    def is_bpi(self) -> bool:
        return self.beta == self.beta.table.trivial

    def summary(self) -> dict:
        return {
            "W_order": self.W.order,
            "alpha_degree": self.alpha.degree,
            "beta_degree": self.beta.degree,
            "steps": [(N.order, th.degree) for N, th in self.chain],
        }


def inertia_group(W: PermGroup, theta: Character) -> PermGroup:
    """Stabilizer in W of a character theta of a normal subgroup N."""
    S = theta.table
    N = S.group
    E = W.elements
    Einv = np.argsort(E, axis=1).astype(np.int32)
    perm = np.empty((len(E), len(S.classes)), dtype=np.int64)
    for k, rep in enumerate(S.classes.representatives):
        x = np.asarray(rep.images, dtype=np.int32)
        conj = np.take_along_axis(E, x[Einv], axis=1)  # g^-1 x g
        perm[:, k] = S.classes.classes_of(conj)
    fixed = (theta.coords[perm] == theta.coords[None, :, :]).all(axis=(1, 2))
    if not N.is_subgroup_of(W):
        raise GroupInputError("theta does not live on a subgroup of W")
    return W.subgroup_from_ranks(np.flatnonzero(fixed))


def _descent_step(W: PermGroup, psi: Character, pi: PrimeSet):
    for cls in reversed(normal_subgroups(W)[:-1]):
        N = W.subgroup_from_classes(cls)
        parts = restrict_constituents(psi, N)
        theta = min((t for t, _ in parts), key=lambda t: t.index)
        if factor_pi_factored(theta, pi) is not None:
            return N, theta
    raise NucleusError("no normal subgroup with factored constituents")


def nucleus(G, chi: Character, pi: PrimeSet) -> NucleusData:
    """Clifford descent of chi to a pi-factored character alpha*beta of W."""
    T = _owner(G, chi)
    grp = T.group
    key = ("nucleus", pi, chi.index)
    if chi.index is not None and key in grp.cache:
        return grp.cache[key]
    W, psi = grp, chi
    chain: list[tuple[PermGroup, Character]] = []
    while True:
        fac = factor_pi_factored(psi, pi)
        if fac is not None:
            break
        N, theta = _descent_step(W, psi, pi)
        I = inertia_group(W, theta)
        if I.order == W.order:
            raise NucleusError(f"constituent of degree {theta.degree} is invariant but psi is not factored")
        index = W.order // I.order
        cands = []
        for eta, _ in restrict_constituents(psi, I):
            if eta.degree * index != psi.degree:
                continue
            if any(t.index == theta.index for t, _ in restrict_constituents(eta, N)):
                cands.append(eta)
        if len(cands) != 1:
            raise NucleusError(f"{len(cands)} Clifford correspondents for a degree {psi.degree} character")
        eta = cands[0]
        if induce(eta, W) != psi:
            raise NucleusError("Clifford correspondent does not induce back")
        chain.append((N, theta))
        W, psi = I, eta
    alpha, beta = fac
    data = NucleusData(chi=chi, pi=pi, W=W, alpha=alpha, beta=beta, chain=chain)
    if chi.index is not None:
        grp.cache[key] = data
    return data


# ---------------------------------------------------------------------------
# B_pi sets


def pi_class_count(G, pi: PrimeSet) -> int:
    cd = _table(G).classes
    return sum(1 for o in cd.orders if pi.is_pi_number(o))


def bpi_set(G, pi: PrimeSet) -> list[Character]:
    """Irreducibles whose nucleus has trivial pi'-part."""
    T = _table(G)
    grp = T.group
    key = ("bpi", pi)
    if key in grp.cache:
        return grp.cache[key]
    primes = prime_divisors(T.order)
    if not any(p in pi for p in primes):
        out = [T.trivial]
    elif all(p in pi for p in primes):
        out = list(T)
    else:
        _require_separable(grp, pi)
        out = [x for x in T if nucleus(T, x, pi).is_bpi]
    count = pi_class_count(T, pi)
    if len(out) != count:
        raise NucleusError(f"|B_pi| = {len(out)} but there are {count} classes of {pi}-elements")
    grp.cache[key] = out
    return out


def irr_pi_prime_set(G, pi: PrimeSet) -> list[Character]:
    """Irreducibles of pi'-degree."""
    return [x for x in _table(G) if pi.pi_part(x.degree) == 1]


def bcd_sets(G, pi: PrimeSet) -> tuple[list[int], list[int]]:
    b = sorted({x.degree for x in bpi_set(G, pi)})
    bp = sorted({x.degree for x in bpi_set(G, pi.complement())})
    return b, bp


def fong_constituents(chi: Character, H: PermGroup, pi: PrimeSet) -> list[Character]:
    """Constituents of chi_H of degree chi(1)_pi (H a Hall pi-subgroup)."""
    G = chi.table.group
    if H.order != pi.pi_part(G.order):
        raise GroupInputError("H is not a Hall subgroup")
    target = pi.pi_part(chi.degree)
    found = [(phi, m) for phi, m in restrict_constituents(chi, H) if phi.degree == target]
    if not found:
        raise NucleusError(f"no Fong constituent for a degree {chi.degree} character")
    if any(m != 1 for _, m in found):
        raise NucleusError("Fong constituent with multiplicity other than 1")
    return [phi for phi, _ in found]


@dataclass(eq=False)
class PiAnalysis:
    group: PermGroup
    pi: PrimeSet
    table: CharacterTable
    x_pi: list[Character]
    x_pi_prime: list[Character]
    b_pi: list[Character]
    b_pi_prime: list[Character]
    pi_class_count: int
    pi_prime_class_count: int

    def check(self) -> None:
        if len(self.b_pi) != self.pi_class_count or len(self.b_pi_prime) != self.pi_prime_class_count:
            raise NucleusError("B_pi count invariant violated")
        if not set(self.x_pi) <= set(self.b_pi) or not set(self.x_pi_prime) <= set(self.b_pi_prime):
            raise NucleusError("pi-special characters outside B_pi")


def analyze(G: PermGroup, pi: PrimeSet) -> PiAnalysis:
    T = character_table(G)
    pp = pi.complement()
    out = PiAnalysis(
        group=G,
        pi=pi,
        table=T,
        x_pi=pi_special_set(T, pi),
        x_pi_prime=pi_special_set(T, pp),
        b_pi=bpi_set(T, pi),
        b_pi_prime=bpi_set(T, pp),
        pi_class_count=pi_class_count(T, pi),
        pi_prime_class_count=pi_class_count(T, pp),
    )
    out.check()
    return out


__all__ = [
    "pi_part", "is_pi_special", "pi_special_set", "factor_pi_factored", "nucleus",
    "NucleusData", "bpi_set", "irr_pi_prime_set", "bcd_sets", "fong_constituents",
    "PiAnalysis", "analyze", "pi_class_count", "inertia_group", "NucleusError", "TableError",
]
