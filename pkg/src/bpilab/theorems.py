"""Executable checks of the B_pi character-degree results.

Each check evaluates both sides of a statement independently and records
the verdicts with witnesses in a :class:`VerificationReport`.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .chartab import (
    Character,
    CharacterTable,
    character_table,
    induce,
    linear_characters,
    restrict_constituents,
    tensor,
)
from .permgrp import (
    BoundExceeded,
    GroupInputError,
    PermGroup,
    _inv,
    _mul,
    derived_subgroup,
    hall_subgroup,
    is_pi_separable,
    minimal_normal_subgroups,
    normal_subgroups,
    normalizer,
    pi_core,
    quotient_group,
    same_subgroup,
    subgroup_intersection,
)
from .pichar import (
    bpi_set,
    fong_constituents,
    irr_pi_prime_set,
    is_pi_special,
    nucleus,
    pi_special_set,
)
from .primes import PrimeSet, prime_divisors

log = logging.getLogger(__name__)

MAX_NUCLEUS_INDEX = 12

# how lhs and rhs combine into the verdict
EQUIVALENCE = "equivalence"  # lhs <=> rhs
IDENTITY = "identity"  # both sides must hold
IMPLICATION = "implication"  # lhs => rhs
COMPOSITE = "composite"  # every sub-equivalence holds


@dataclass
class Side:
    holds: bool
    statement: str
    witness: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {"holds": self.holds, "statement": self.statement, "witness": self.witness}


@dataclass
class VerificationReport:
    check: str
    group: str
    pi: PrimeSet | None
    lhs: Side
    rhs: Side
    kind: str = EQUIVALENCE
    p: int | None = None
    status: str = ""
    detail: str = ""
    parts: list[VerificationReport] = field(default_factory=list)
    seconds: float = 0.0

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.equivalence_holds else "fail"

    @property
    def equivalence_holds(self) -> bool:
        if self.status == "error":
            return False
        if self.kind == EQUIVALENCE:
            return self.lhs.holds == self.rhs.holds
        if self.kind == IDENTITY:
            return self.lhs.holds and self.rhs.holds
        if self.kind == IMPLICATION:
            return (not self.lhs.holds) or self.rhs.holds
        return all(p.equivalence_holds for p in self.parts)

    @property
    def failed(self) -> bool:
        return self.status in ("fail", "error")

    def to_doc(self, timings: bool = False) -> dict:
        doc = {
            "check": self.check,
            "group": self.group,
            "pi": sorted(self.pi.primes) if self.pi is not None else None,
            "pi_complement": self.pi.complemented if self.pi is not None else False,
            "p": self.p,
            "kind": self.kind,
            "lhs": self.lhs.to_doc(),
            "rhs": self.rhs.to_doc(),
            "equivalence_holds": self.equivalence_holds,
            "status": self.status,
            "detail": self.detail,
        }
        if self.parts:
            doc["parts"] = [p.to_doc(timings) for p in self.parts]
        if timings:
            doc["seconds"] = round(self.seconds, 4)
        return doc

    @classmethod
    def from_doc(cls, doc: dict) -> VerificationReport:
        pi = None
        if doc.get("pi") is not None:
            pi = PrimeSet(frozenset(doc["pi"]), bool(doc.get("pi_complement", False)))
        side = lambda d: Side(bool(d["holds"]), d["statement"], dict(d.get("witness", {})))
        return cls(
            check=doc["check"], group=doc["group"], pi=pi, lhs=side(doc["lhs"]), rhs=side(doc["rhs"]),
            kind=doc["kind"], p=doc.get("p"), status=doc["status"], detail=doc.get("detail", ""),
            parts=[cls.from_doc(x) for x in doc.get("parts", [])], seconds=doc.get("seconds", 0.0),
        )


def _chi(x: Character) -> dict:
    return {"index": x.index, "degree": x.degree, "label": x.label}


def _sub(**groups: PermGroup) -> dict:
    return {f"{k}_order": v.order for k, v in groups.items()}


def _name(G: PermGroup) -> str:
    return G.name or f"group of order {G.order}"


class _Data:
    """Per (G, pi) quantities shared by the checks."""

    def __init__(self, G: PermGroup, pi: PrimeSet):
        if not is_pi_separable(G, pi):
            raise GroupInputError(f"{_name(G)} is not {pi}-separable")
        self.G = G
        self.pi = pi
        self.pp = pi.complement()
        self.T = character_table(G)
        self.B = bpi_set(self.T, pi)
        self.Bp = bpi_set(self.T, self.pp)
        self.irr_pp = irr_pi_prime_set(self.T, pi)
        self.lin = set(linear_characters(self.T))
        self.H = hall_subgroup(G, pi)
        self.N = normalizer(G, self.H)
        self.Gd = derived_subgroup(G)
        self.Hd = derived_subgroup(self.H)

    @classmethod
    def of(cls, G: PermGroup, pi: PrimeSet) -> _Data:
        key = ("theorem_data", pi)
        if key not in G.cache:
            G.cache[key] = cls(G, pi)
        return G.cache[key]

    def nonlinear(self, chars: Iterable[Character]) -> list[Character]:
        return [x for x in chars if x not in self.lin]


def _subset_of_lin(d: _Data, chars, statement: str) -> Side:
    bad = d.nonlinear(chars)
    return Side(not bad, statement, {"nonlinear": _chi(bad[0])} if bad else {})


# ---------------------------------------------------------------------------
# checks


def check_ito_michler(G: PermGroup, pi: PrimeSet, p: int) -> VerificationReport:
    d = _Data.of(G, pi)
    P = pi_core(G, PrimeSet.of(p))
    sylow = PrimeSet.of(p).pi_part(G.order)
    normal = P.order == sylow
    lhs = Side(normal and P.is_abelian(), "normal abelian Sylow subgroup",
               {"normal_p_core_order": P.order, "sylow_order": sylow,
                "abelian": bool(normal and P.is_abelian())})
    hit = [x for x in d.B + d.Bp if x.degree % p == 0]
    rhs = Side(not hit, "p divides no degree in B_pi or B_pi'", {"divisible": _chi(hit[0])} if hit else {})
    return VerificationReport("ito-michler", _name(G), pi, lhs, rhs, p=p)


def check_degree_prime_corollary(G: PermGroup, pi: PrimeSet, p: int) -> VerificationReport:
    d = _Data.of(G, pi)
    a = [x for x in d.T if x.degree % p == 0]
    b = [x for x in d.B + d.Bp if x.degree % p == 0]
    lhs = Side(bool(a), "p divides some degree of Irr(G)", {"character": _chi(a[0])} if a else {})
    rhs = Side(bool(b), "p divides some degree in B_pi or B_pi'", {"character": _chi(b[0])} if b else {})
    return VerificationReport("degree-prime", _name(G), pi, lhs, rhs, p=p)


def check_thompson_equiv(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    lhs = _subset_of_lin(d, d.irr_pp, "Irr_pi'(G) = Lin(G)")
    union = set(d.B) | set(d.Bp)
    rhs = _subset_of_lin(d, [x for x in d.irr_pp if x in union], "Irr_pi'(G) within B_pi or B_pi' is linear")
    return VerificationReport("thompson-equiv", _name(G), pi, lhs, rhs)


def check_thompson_a(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    B = set(d.B)
    lhs = _subset_of_lin(d, [x for x in d.irr_pp if x in B], "Irr_pi'(G) within B_pi is linear")
    I = subgroup_intersection(G, d.Gd, d.H)
    rhs = Side(same_subgroup(I, d.Hd), "G' meets H in H'", _sub(intersection=I, H_derived=d.Hd))
    return VerificationReport("thompson-a", _name(G), pi, lhs, rhs)


def check_thompson_b(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    X = pi_special_set(d.T, d.pp)
    lhs = _subset_of_lin(d, X, "X_pi'(G) is linear")
    I = subgroup_intersection(G, d.Gd, d.N)
    rhs = Side(I.is_subgroup_of(d.H), "G' meets N_G(H) inside H", _sub(intersection=I, H=d.H))
    return VerificationReport("thompson-b", _name(G), pi, lhs, rhs)


def check_nw_corollary(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    lhs = _subset_of_lin(d, d.irr_pp, "Irr_pi'(G) = Lin(G)")
    I = subgroup_intersection(G, d.Gd, d.N)
    rhs = Side(same_subgroup(I, d.Hd), "G' meets N_G(H) in H'", _sub(intersection=I, H_derived=d.Hd))
    return VerificationReport("nw-corollary", _name(G), pi, lhs, rhs)


def _only_trivial(d: _Data, chars, statement: str) -> Side:
    other = [x for x in chars if x.index != 0]
    return Side(not other, statement, {"character": _chi(other[0])} if other else {})


def check_four_point_corollary(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    name = _name(G)
    union = set(d.B) | set(d.Bp)
    B = set(d.B)
    perfect = Side(same_subgroup(d.H, d.Hd), "H = H'", _sub(H=d.H, H_derived=d.Hd))
    selfnorm = Side(d.N.order == d.H.order, "N_G(H) = H", _sub(normalizer=d.N, H=d.H))
    irr_triv = _only_trivial(d, d.irr_pp, "Irr_pi'(G) = {1}")
    parts = [
        VerificationReport("four-point-i", name, pi, irr_triv,
                           _only_trivial(d, [x for x in d.irr_pp if x in union], "Irr_pi'(G) within B_pi or B_pi' is {1}")),
        VerificationReport("four-point-ii", name, pi,
                           _only_trivial(d, [x for x in d.irr_pp if x in B], "Irr_pi'(G) within B_pi is {1}"), perfect),
        VerificationReport("four-point-iii", name, pi,
                           _only_trivial(d, pi_special_set(d.T, d.pp), "X_pi'(G) = {1}"), selfnorm),
        VerificationReport("four-point-iv", name, pi, irr_triv,
                           Side(perfect.holds and selfnorm.holds, "H = H' and N_G(H) = H",
                                {**perfect.witness, **selfnorm.witness})),
    ]
    lhs = Side(all(x.lhs.holds for x in parts), "all left-hand sides",
               {x.check: x.lhs.holds for x in parts})
    rhs = Side(all(x.rhs.holds for x in parts), "all right-hand sides",
               {x.check: x.rhs.holds for x in parts})
    return VerificationReport("four-point", name, pi, lhs, rhs, kind=COMPOSITE, parts=parts)


def check_normal_pi_complement(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    X = set(pi_special_set(d.T, pi))
    extra = [x for x in d.B if x not in X] + [x for x in X if x not in set(d.B)]
    lhs = Side(not extra, "B_pi(G) = X_pi(G)", {"character": _chi(extra[0])} if extra else {})
    K = pi_core(G, d.pp)
    target = d.pp.pi_part(G.order)
    rhs = Side(K.order == target, "normal Hall pi'-subgroup exists",
               {"pi_prime_core_order": K.order, "hall_order": target})
    return VerificationReport("normal-pi-complement", _name(G), pi, lhs, rhs)


def check_wolf_count(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    TN = character_table(d.N)
    TQ = character_table(quotient_group(d.N, d.H)[0])
    bg = sum(1 for x in d.B if d.pi.pi_part(x.degree) == 1)
    bn = sum(1 for x in bpi_set(TN, pi) if d.pi.pi_part(x.degree) == 1)
    lhs = Side(bg == bn, "pi'-degree B_pi counts of G and N_G(H) agree", {"G": bg, "N": bn})
    xg = len(pi_special_set(d.T, d.pp))
    xn = len(pi_special_set(TN, d.pp))
    rhs = Side(xg == xn == len(TQ), "|X_pi'(G)| = |X_pi'(N)| = |Irr(N/H)|",
               {"X_G": xg, "X_N": xn, "Irr_N_mod_H": len(TQ)})
    return VerificationReport("wolf-count", _name(G), pi, lhs, rhs, kind=IDENTITY)


def check_extension_lemma(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    B = set(d.B)
    lhs = _subset_of_lin(d, [x for x in d.irr_pp if x in B], "Irr_pi'(G) within B_pi is linear")
    TH = character_table(d.H)
    linH = linear_characters(TH)
    got = set()
    for lam in d.lin:
        (phi, _), = restrict_constituents(lam, TH)
        got.add(phi.index)
    missing = [x for x in linH if x.index not in got]
    rhs = Side(not missing, "every linear character of H extends to G",
               {"linear_H": len(linH), "restrictions": len(got),
                **({"missing": _chi(missing[0])} if missing else {})})
    return VerificationReport("extension-lemma", _name(G), pi, lhs, rhs)


def vanish_pairs(G: PermGroup, pi: PrimeSet) -> list[tuple[PermGroup, PermGroup]]:
    """Pairs (N, M) with N minimal normal pi', M/N abelian pi and O_pi(M) = 1."""
    pp = pi.complement()
    normals = normal_subgroups(G)
    out = []
    for nc in minimal_normal_subgroups(G):
        N = G.subgroup_from_classes(nc)
        if not pp.is_pi_number(N.order):
            continue
        for mc in normals:
            if not set(nc) < set(mc):
                continue
            M = G.subgroup_from_classes(mc)
            if not pi.is_pi_number(M.order // N.order):
                continue
            if not derived_subgroup(M).is_subgroup_of(N):
                continue
            if pi_core(M, pi).order != 1:
                continue
            out.append((N, M))
    return out


def check_lemma_vanish(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    pairs = vanish_pairs(G, pi)
    bad = None
    for N, M in pairs:
        idx = M.order // N.order
        if not any(x.degree % idx == 0 for x in d.Bp):
            bad = (N, M)
            break
    lhs = Side(bool(pairs), "a qualifying (N, M) pair exists", {"pairs": [[N.order, M.order] for N, M in pairs]})
    rhs = Side(bad is None, "for each pair some B_pi' degree is divisible by |M:N|",
               _sub(N=bad[0], M=bad[1]) if bad else {})
    r = VerificationReport("lemma-vanish", _name(G), pi, lhs, rhs, kind=IMPLICATION)
    if not pairs:
        r.status = "skip"
        r.detail = "no qualifying pair"
    return r


def check_bpi_union_size(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    n = len(d.T)
    lhs = Side(len(d.B) + len(d.Bp) - 1 == n, "|B_pi| + |B_pi'| - 1 = number of classes",
               {"B_pi": len(d.B), "B_pi_prime": len(d.Bp), "classes": n})
    mixed = [o for o in d.T.classes.orders if not (pi.is_pi_number(o) or d.pp.is_pi_number(o))]
    rhs = Side(not mixed, "every element is a pi-element or a pi'-element",
               {"mixed_order": mixed[0]} if mixed else {})
    return VerificationReport("bpi-union-size", _name(G), pi, lhs, rhs)


def _conjugator(G: PermGroup, K: PermGroup, H: PermGroup) -> tuple:
    """Some g in G with g^-1 K g = H (K, H of equal order)."""
    E = G.elements
    Einv = np.argsort(E, axis=1).astype(np.int32)
    ok = np.ones(len(E), dtype=bool)
    for k in K.generators:
        k = np.asarray(k, dtype=np.int32)
        ok &= H.rank(np.take_along_axis(E, k[Einv], axis=1)) >= 0
    hits = np.flatnonzero(ok)
    if not hits.size:
        raise GroupInputError("subgroups are not conjugate")
    return tuple(int(x) for x in E[hits[0]])


def _conjugate_character(x: Character, TW: CharacterTable, g: tuple) -> Character:
    """x^g on W^g, where TW is the table of W^g."""
    ginv = _inv(g)
    src = x.table.classes
    cls = [src.class_of(_mul(_mul(g, r.images), ginv)) for r in TW.classes.representatives]
    if x.table.conductor != TW.conductor:
        raise GroupInputError("conjugate tables disagree")
    return TW[TW.index_of(Character(TW, x.coords[cls]))]


def nucleus_witness(G: PermGroup, chi: Character, pi: PrimeSet, H: PermGroup):
    """(W, alpha, beta) with H <= W and chi = (alpha beta)^G."""
    nd = nucleus(G, chi, pi)
    W0 = nd.W
    K = hall_subgroup(W0, pi)
    if K.order != H.order:
        return None
    g = _conjugator(G, K, H)
    ginv = _inv(g)
    W = G.subgroup([_mul(_mul(ginv, w), g) for w in W0.generators])
    TW = character_table(W)
    return W, _conjugate_character(nd.alpha, TW, g), _conjugate_character(nd.beta, TW, g)


def check_maximal_nucleus(G: PermGroup, pi: PrimeSet, bound: int = MAX_NUCLEUS_INDEX) -> VerificationReport:
    d = _Data.of(G, pi)
    found, skipped, missing, bad = [], [], None, None
    for chi in d.irr_pp:
        wit = nucleus_witness(G, chi, pi, d.H)
        if wit is None:
            missing = missing or {"character": _chi(chi)}
            continue
        W, alpha, beta = wit
        index = G.order // W.order
        if index > bound:
            skipped.append({"character": _chi(chi), "index": index})
            continue
        ok = (
            d.H.is_subgroup_of(W)
            and alpha.degree == 1
            and is_pi_special(W, alpha, pi)
            and is_pi_special(W, beta, d.pp)
            and induce(tensor(alpha, beta), G) == chi
        )
        entry = {"character": _chi(chi), "W_order": W.order, "beta_degree": beta.degree}
        if ok:
            found.append(entry)
        elif bad is None:
            bad = entry
    lhs = Side(missing is None, "each pi'-degree character comes from a subgroup containing H",
               {"found": found, "skipped": skipped, **({"missing": missing} if missing else {})})
    rhs = Side(bad is None, "every witness has alpha linear pi-special, beta pi'-special, (alpha beta)^G = chi",
               {"failure": bad} if bad else {})
    r = VerificationReport("maximal-nucleus", _name(G), pi, lhs, rhs, kind=IDENTITY)
    if r.equivalence_holds and skipped:
        r.status = "skip"
        r.detail = f"{len(skipped)} character(s) need index above {bound}"
    return r


# ---------------------------------------------------------------------------
# structural identities


def check_x_identity(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    X = set(pi_special_set(d.T, d.pp))
    Y = set(d.irr_pp) & set(d.Bp)
    diff = sorted(X ^ Y, key=lambda x: x.index)
    lhs = Side(not diff, "X_pi'(G) = Irr_pi'(G) within B_pi'(G)", {"character": _chi(diff[0])} if diff else {})
    rhs = Side(X <= set(d.Bp), "X_pi'(G) lies in B_pi'(G)", {"X": len(X)})
    return VerificationReport("x-identity", _name(G), pi, lhs, rhs, kind=IDENTITY)


def check_special_degree(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    bad = [x for x in d.B if is_pi_special(d.T, x, pi) != pi.is_pi_number(x.degree)]
    bad_p = [x for x in d.Bp if is_pi_special(d.T, x, d.pp) != d.pp.is_pi_number(x.degree)]
    lhs = Side(not bad, "in B_pi, pi-special iff pi-degree", {"character": _chi(bad[0])} if bad else {})
    rhs = Side(not bad_p, "in B_pi', pi'-special iff pi'-degree", {"character": _chi(bad_p[0])} if bad_p else {})
    return VerificationReport("special-degree", _name(G), pi, lhs, rhs, kind=IDENTITY)


def check_normal_restriction(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    """B_pi behaviour under restriction to and induction from normal subgroups."""
    d = _Data.of(G, pi)
    B = set(d.B)
    down, up = None, None
    for cls in normal_subgroups(G):
        M = G.subgroup_from_classes(cls)
        TM = character_table(M)
        BM = set(bpi_set(TM, pi))
        for chi in d.B:
            for theta, _ in restrict_constituents(chi, TM):
                if theta not in BM and down is None:
                    down = {"character": _chi(chi), "M_order": M.order, "constituent": _chi(theta)}
        index = G.order // M.order
        for psi in BM:
            over = [x for x, _ in d.T.decompose(induce(psi, d.T))]
            inb = [i for i in over if d.T[i] in B]
            if pi.is_pi_number(index):
                ok = len(inb) == len(over)
            elif d.pp.is_pi_number(index):
                ok = len(inb) == 1
            else:
                ok = len(inb) >= 1
            if not ok and up is None:
                up = {"M_order": M.order, "psi": _chi(psi), "in_B": len(inb), "constituents": len(over)}
    lhs = Side(down is None, "restrictions of B_pi(G) to normal subgroups stay in B_pi", down or {})
    rhs = Side(up is None, "induction from normal subgroups meets B_pi(G) as predicted", up or {})
    return VerificationReport("bpi-normal", _name(G), pi, lhs, rhs, kind=IDENTITY)


def check_fong(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    TH = character_table(d.H)
    owners: dict[int, int] = {}
    bad = None
    for chi in d.B:
        try:
            for phi in fong_constituents(chi, d.H, pi):
                owners[phi.index] = chi.index
        except Exception as exc:  # noqa: BLE001 - recorded as a witness
            bad = bad or {"character": _chi(chi), "error": str(exc)}
    lhs = Side(bad is None, "Fong constituents exist with multiplicity 1", bad or {"fong": len(owners)})
    clash = None
    for chi in d.B:
        for phi, _ in restrict_constituents(chi, TH):
            if owners.get(phi.index, chi.index) != chi.index:
                clash = {"character": _chi(chi), "fong_of": owners[phi.index], "phi": _chi(phi)}
                break
        if clash:
            break
    rhs = Side(clash is None, "no Fong character lies under two members of B_pi", clash or {})
    return VerificationReport("fong", _name(G), pi, lhs, rhs, kind=IDENTITY)


def _linear_orbits(N: PermGroup, TH: CharacterTable, lin: list[Character]) -> dict[int, int]:
    """Orbit label of each linear character of H under conjugation by N."""
    parent = {x.index: x.index for x in lin}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in N.generators:
        ginv = _inv(g)
        cls = [TH.classes.class_of(_mul(_mul(g, r.images), ginv)) for r in TH.classes.representatives]
        for x in lin:
            y = TH.index_of(Character(TH, x.coords[cls]))
            parent[find(x.index)] = find(y)
    return {i: find(i) for i in parent}


def check_fong_linear(G: PermGroup, pi: PrimeSet) -> VerificationReport:
    d = _Data.of(G, pi)
    TH = character_table(d.H)
    lin = linear_characters(TH)
    owner: dict[int, int] = {}
    for chi in d.B:
        for phi in fong_constituents(chi, d.H, pi):
            if phi.degree == 1:
                owner[phi.index] = chi.index
    missing = [x for x in lin if x.index not in owner]
    lhs = Side(not missing, "every linear character of H is a Fong character",
               {"missing": _chi(missing[0])} if missing else {"linear_H": len(lin)})
    orbit = _linear_orbits(d.N, TH, lin)
    bad = None
    for a in lin:
        for b in lin:
            if a.index in owner and b.index in owner:
                same = owner[a.index] == owner[b.index]
                if same != (orbit[a.index] == orbit[b.index]) and bad is None:
                    bad = {"phi": _chi(a), "phi1": _chi(b), "same_owner": same}
    rhs = Side(bad is None, "same B_pi owner iff N_G(H)-conjugate", bad or {})
    return VerificationReport("fong-linear", _name(G), pi, lhs, rhs, kind=IDENTITY)


# ---------------------------------------------------------------------------
# registry and corpus runner


CHECKS: dict[str, Callable] = {
    "ito-michler": check_ito_michler,
    "degree-prime": check_degree_prime_corollary,
    "thompson-equiv": check_thompson_equiv,
    "thompson-a": check_thompson_a,
    "thompson-b": check_thompson_b,
    "nw-corollary": check_nw_corollary,
    "four-point": check_four_point_corollary,
    "normal-pi-complement": check_normal_pi_complement,
    "wolf-count": check_wolf_count,
    "extension-lemma": check_extension_lemma,
    "lemma-vanish": check_lemma_vanish,
    "bpi-union-size": check_bpi_union_size,
    "maximal-nucleus": check_maximal_nucleus,
    "x-identity": check_x_identity,
    "special-degree": check_special_degree,
    "bpi-normal": check_normal_restriction,
    "fong": check_fong,
    "fong-linear": check_fong_linear,
}
PRIME_CHECKS = {"ito-michler", "degree-prime"}


def run_check(name: str, G: PermGroup, pi: PrimeSet, p: int | None = None) -> VerificationReport:
    """Run one named check, recording internal aborts as an error report."""
    fn = CHECKS[name]
    t0 = time.perf_counter()
    try:
        r = fn(G, pi, p) if name in PRIME_CHECKS else fn(G, pi)
    except (GroupInputError, BoundExceeded):
        raise
    except Exception as exc:  # noqa: BLE001 - surfaced in the report
        log.exception("check %s aborted", name)
        empty = Side(False, "not evaluated")
        r = VerificationReport(name, _name(G), pi, empty, empty, p=p, status="error",
                               detail=f"{type(exc).__name__}: {exc}")
    r.seconds = time.perf_counter() - t0
    return r


@dataclass
class RunConfig:
    checks: list[str] | None = None
    seed: int = 20240613
    timings: bool = False
    progress: Callable[[str], None] | None = None


@dataclass
class CorpusReport:
    results: list[VerificationReport] = field(default_factory=list)
    rejected: list[dict] = field(default_factory=list)
    seed: int = 20240613
    timings: bool = False

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0, "error": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return not any(r.failed or not r.equivalence_holds for r in self.results)

    def to_doc(self) -> dict:
        return {
            "run": {"seed": self.seed, "counts": self.counts(), "rejected": self.rejected},
            "results": [r.to_doc(self.timings) for r in self.results],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> CorpusReport:
        run = doc.get("run", {})
        return cls(results=[VerificationReport.from_doc(x) for x in doc.get("results", [])],
                   rejected=list(run.get("rejected", [])), seed=run.get("seed", 20240613))


def run_corpus(corpus, config: RunConfig | None = None) -> CorpusReport:
    """Run every applicable check on each (group, pi list) entry.

    ``corpus`` holds :class:`~bpilab.corpus.GroupSpec` objects or
    ``(group, pis)`` / ``(group, pis, primes)`` tuples.
    """
    config = config or RunConfig()
    names = config.checks or list(CHECKS)
    report = CorpusReport(seed=config.seed, timings=config.timings)
    for entry in corpus:
        primes = None
        if isinstance(entry, tuple):
            G, pis = entry[0], list(entry[1])
            if len(entry) > 2:
                primes = list(entry[2])
        else:
            G = entry.to_group()
            pis = entry.pi_sets(G.order)
        name = _name(G)
        try:
            G.check_cap("corpus entry")
        except BoundExceeded as exc:
            report.rejected.append({"group": name, "pi": None, "reason": str(exc)})
            continue
        for pi in pis:
            if not is_pi_separable(G, pi):
                report.rejected.append({"group": name, "pi": sorted(pi.primes), "reason": f"not {pi}-separable"})
                continue
            if config.progress:
                config.progress(f"{name} pi={pi}")
            for check in names:
                if check in PRIME_CHECKS:
                    for p in (primes or prime_divisors(G.order) or (2,)):
                        report.results.append(run_check(check, G, pi, p))
                else:
                    report.results.append(run_check(check, G, pi))
    return report


__all__ = [
    "VerificationReport", "Side", "CorpusReport", "RunConfig", "CHECKS", "run_check", "run_corpus",
    "check_ito_michler", "check_degree_prime_corollary", "check_thompson_equiv", "check_thompson_a",
    "check_thompson_b", "check_nw_corollary", "check_four_point_corollary", "check_normal_pi_complement",
    "check_wolf_count", "check_extension_lemma", "check_lemma_vanish", "check_bpi_union_size",
    "check_maximal_nucleus", "check_x_identity", "check_special_degree", "check_normal_restriction",
    "check_fong", "check_fong_linear", "vanish_pairs", "nucleus_witness",
]
