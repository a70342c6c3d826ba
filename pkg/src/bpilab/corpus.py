"""Group specifications, builders for the example groups, and JSON persistence.

Documents on disk use 1-based permutation images.  Serialization is
canonical (sorted keys, fixed indentation), so ``dumps(load(dumps(x)))`` is
byte-identical to ``dumps(x)``.

Formats::

    group   {"name", "degree", "generators": [[images...]], "tags": [...],
             "suggested_pi": [[p, ...], ...]}            (suggested_pi optional)
    corpus  {"groups": [group, ...]}
    table   {"format": "bpilab-table", "group": group, "order", "conductor",
             "classes": {"representatives", "sizes", "orders", "powers",
                         "power_maps"},
             "irreducibles": [{"label", "values": [cyclotomic, ...]}]}
    cyclotomic  {"n": conductor, "coeffs": [[k, "num/den"], ...]}
    report  {"run": {"seed", "counts", "rejected"}, "results": [check, ...]}

Integers above 2**53 are written as decimal strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any

import numpy as np
from sympy import isprime, n_order

from . import cyclotomic as cyc
from .chartab import CharacterTable, TableError, _assemble
from .cyclotomic import Cyclotomic
from .permgrp import ClassData, GroupInputError, PermGroup, Permutation
from .primes import PrimeSet, prime_divisors

MAX_SAFE_INT = 2**53


class SpecError(ValueError):
    """Schema violation in a group, corpus or table document."""


# ---------------------------------------------------------------------------
# JSON helpers


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _int_out(x: int):
    return str(x) if abs(x) > MAX_SAFE_INT else int(x)


def _int_in(x, where: str) -> int:
    if isinstance(x, bool):
        raise SpecError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and x.lstrip("-").isdigit():
        return int(x)
    raise SpecError(f"{where}: expected an integer, got {x!r}")


def cyclotomic_to_doc(x: Cyclotomic) -> dict:
    return {"n": x.n, "coeffs": [[k, str(c)] for k, c in x.coeffs]}


def cyclotomic_from_doc(doc, where: str = "value") -> Cyclotomic:
    if not isinstance(doc, dict) or set(doc) != {"n", "coeffs"}:
        raise SpecError(f"{where}: expected an object with keys n and coeffs")
    n = _int_in(doc["n"], f"{where}.n")
    if n < 1:
        raise SpecError(f"{where}.n: conductor must be positive")
    terms = {}
    if not isinstance(doc["coeffs"], list):
        raise SpecError(f"{where}.coeffs: expected a list")
    for i, item in enumerate(doc["coeffs"]):
        if not isinstance(item, list) or len(item) != 2:
            raise SpecError(f"{where}.coeffs[{i}]: expected [exponent, \"num/den\"]")
        k = _int_in(item[0], f"{where}.coeffs[{i}][0]")
        try:
            c = Fraction(str(item[1]))
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"{where}.coeffs[{i}][1]: bad rational {item[1]!r}") from None
        terms[k] = terms.get(k, 0) + c
    return Cyclotomic(n, terms)


# ---------------------------------------------------------------------------
# group specifications


@dataclass
class GroupSpec:
    name: str
    degree: int
    generators: list[list[int]]
    tags: list[str] = field(default_factory=list)
    suggested_pi: list[list[int]] | None = None

    def to_group(self, **kw) -> PermGroup:
        gens = [Permutation.from_one_based(g) for g in self.generators]
        return PermGroup(self.degree, gens, name=self.name, **kw)

    def pi_sets(self, order: int | None = None) -> list[PrimeSet]:
        if self.suggested_pi is not None:
            return [PrimeSet(frozenset(p)) for p in self.suggested_pi]
        return default_pi_sets(order if order is not None else self.to_group().order)

    def to_doc(self) -> dict:
        doc = {
            "name": self.name,
            "degree": self.degree,
            "generators": [list(g) for g in self.generators],
            "tags": list(self.tags),
        }
        if self.suggested_pi is not None:
            doc["suggested_pi"] = [sorted(p) for p in self.suggested_pi]
        return doc


def default_pi_sets(order: int) -> list[PrimeSet]:
    """Each prime divisor of the order alone, then the two smallest together."""
    primes = prime_divisors(order) if order > 1 else ()
    out = [PrimeSet.of(p) for p in primes]
    if len(primes) >= 2:
        out.append(PrimeSet.of(primes[0], primes[1]))
    return out or [PrimeSet.of(2)]


def load_group_spec(doc) -> GroupSpec:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecError("group document must be an object")
    missing = {"name", "degree", "generators"} - set(doc)
    if missing:
        raise SpecError(f"missing field(s): {', '.join(sorted(missing))}")
    extra = set(doc) - {"name", "degree", "generators", "tags", "suggested_pi"}
    if extra:
        raise SpecError(f"unknown field(s): {', '.join(sorted(extra))}")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise SpecError("name: expected a nonempty string")
    degree = _int_in(doc["degree"], "degree")
    if degree < 1:
        raise SpecError("degree: must be positive")
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise SpecError("generators: expected a list")
    out_gens = []
    for i, g in enumerate(gens):
        where = f"generators[{i}]"
        if not isinstance(g, list):
            raise SpecError(f"{where}: expected a list of images")
        imgs = [_int_in(x, f"{where}") for x in g]
        if len(imgs) != degree:
            raise SpecError(f"{where}: length {len(imgs)} differs from degree {degree}")
        if sorted(imgs) != list(range(1, degree + 1)):
            dup = sorted({x for x in imgs if imgs.count(x) > 1})
            detail = f"repeated image(s) {dup}" if dup else "images outside 1..degree"
            raise SpecError(f"{where}: not a permutation ({detail})")
        out_gens.append(imgs)
    tags = doc.get("tags", [])
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise SpecError("tags: expected a list of strings")
    pis = doc.get("suggested_pi")
    if pis is not None:
        if not isinstance(pis, list):
            raise SpecError("suggested_pi: expected a list of prime lists")
        clean = []
        for i, p in enumerate(pis):
            if not isinstance(p, list):
                raise SpecError(f"suggested_pi[{i}]: expected a list")
            vals = [_int_in(x, f"suggested_pi[{i}]") for x in p]
            if len(set(vals)) != len(vals) or not all(isprime(v) for v in vals):
                raise SpecError(f"suggested_pi[{i}]: expected distinct primes")
            clean.append(sorted(vals))
        pis = clean
    return GroupSpec(name=name, degree=degree, generators=out_gens, tags=list(tags), suggested_pi=pis)


def save_group_spec(spec: GroupSpec) -> str:
    return dumps(spec.to_doc())


def load_corpus(doc) -> list[GroupSpec]:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("groups"), list):
        raise SpecError("corpus document must be {\"groups\": [...]}")
    specs = []
    for i, g in enumerate(doc["groups"]):
        try:
            specs.append(load_group_spec(g))
        except SpecError as exc:
            raise SpecError(f"groups[{i}]: {exc}") from None
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise SpecError("group names must be unique within a corpus")
    return specs


def save_corpus(specs: list[GroupSpec]) -> str:
    return dumps({"groups": [s.to_doc() for s in specs]})


# ---------------------------------------------------------------------------
# builders (0-based internally, 1-based in the specs)


def _spec(name, degree, gens0, tags=(), pis=None) -> GroupSpec:
    gens = [[x + 1 for x in g] for g in gens0]
    return GroupSpec(name=name, degree=degree, generators=gens, tags=list(tags), suggested_pi=pis)


def build_cyclic(n: int) -> GroupSpec:
    gens = [[(i + 1) % n for i in range(n)]] if n > 1 else []
    return _spec(f"C{n}", n, gens, ["solvable", "abelian"])


def build_dihedral(n: int) -> GroupSpec:
    """Dihedral group of order 2n on n points."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return _spec(f"D{2 * n}", n, [rot, ref], ["solvable"])


def build_symmetric(n: int) -> GroupSpec:
    gens = [[1, 0] + list(range(2, n)), [(i + 1) % n for i in range(n)]] if n > 1 else []
    return _spec(f"S{n}", n, gens, ["solvable"] if n <= 4 else [])


def build_alternating(n: int) -> GroupSpec:
    gens = [[(i + 1) % 3 if i < 3 else i for i in range(n)]]
    if n > 3:
        if n % 2:
            gens.append([(i + 1) % n for i in range(n)])
        else:
            gens.append([0] + [1 + (i % (n - 1)) for i in range(1, n)])
    return _spec(f"A{n}", n, gens, ["solvable"] if n <= 4 else [])


def build_frobenius(p: int, q: int) -> GroupSpec:
    """x -> x + 1 and x -> a x on Z/p with a of order q."""
    if not (isprime(p) and isprime(q)) or (p - 1) % q:
        raise GroupInputError(f"need primes q | p - 1, got p={p}, q={q}")
    return _affine(p, q)


def _affine(p: int, q: int) -> GroupSpec:
    a = next(x for x in range(2, p) if n_order(x, p) == q)
    return _spec(f"F{p * q}", p, [[(i + 1) % p for i in range(p)], [(a * i) % p for i in range(p)]],
                 ["solvable", "frobenius"])


def _vectors(p: int, dim: int = 2) -> list[tuple[int, ...]]:
    return list(product(range(p), repeat=dim))


def _matrix_action(mats, p: int, translations=(), nonzero_only=False):
    pts = _vectors(p)
    if nonzero_only:
        pts = [v for v in pts if any(v)]
    idx = {v: i for i, v in enumerate(pts)}
    gens = []
    for M in mats:
        gens.append([idx[tuple((M[r][0] * v[0] + M[r][1] * v[1]) % p for r in range(2))] for v in pts])
    for t in translations:
        gens.append([idx[((v[0] + t[0]) % p, (v[1] + t[1]) % p)] for v in pts])
    return len(pts), gens


def build_sl23() -> GroupSpec:
    n, gens = _matrix_action([((1, 1), (0, 1)), ((1, 0), (1, 1))], 3, nonzero_only=True)
    return _spec("SL(2,3)", n, gens, ["solvable"])


def build_gl23() -> GroupSpec:
    n, gens = _matrix_action([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))], 3, nonzero_only=True)
    return _spec("GL(2,3)", n, gens, ["solvable"])


def build_sl23_on_z3sq() -> GroupSpec:
    """SL(2,3) acting affinely on the plane over GF(3): order 216, degree 9."""
    n, gens = _matrix_action([((1, 1), (0, 1)), ((1, 0), (1, 1))], 3, translations=[(1, 0)])
    return _spec("SL(2,3):3^2", n, gens, ["solvable", "paper-example"])


def build_quaternion() -> GroupSpec:
    """Q8 in its regular representation (elements +-1, +-i, +-j, +-k)."""
    # encode a = sign * unit, unit in (1, i, j, k) -> index 2 * unit + (sign < 0)
    table = {("1", u): (1, u) for u in "1ijk"}
    table.update({(u, "1"): (1, u) for u in "1ijk"})
    for u in "ijk":
        table[(u, u)] = (-1, "1")
    table.update({("i", "j"): (1, "k"), ("j", "i"): (-1, "k"), ("j", "k"): (1, "i"),
                  ("k", "j"): (-1, "i"), ("k", "i"): (1, "j"), ("i", "k"): (-1, "j")})
    units = "1ijk"

    def idx(sign, u):
        return 2 * units.index(u) + (0 if sign > 0 else 1)

    gens = []
    for g in "ij":
        img = []
        for u in units:
            for sign in (1, -1):
                s, w = table[(u, g)]
                img.append(idx(sign * s, w))
        gens.append(img)
    return _spec("Q8", 8, gens, ["solvable"])


def build_direct_product(a: GroupSpec, b: GroupSpec, name: str | None = None) -> GroupSpec:
    n, m = a.degree, b.degree
    gens = [list(g) + list(range(n + 1, n + m + 1)) for g in a.generators]
    gens += [list(range(1, n + 1)) + [n + x for x in g] for g in b.generators]
    tags = sorted(set(a.tags) & set(b.tags) & {"solvable"})
    return GroupSpec(name or f"{a.name}x{b.name}", n + m, gens, tags)


def build_wreath_c2(spec: GroupSpec, name: str | None = None) -> GroupSpec:
    """Base group on two copies of the points, then the swap of the copies."""
    n = spec.degree
    gens = [list(g) + list(range(n + 1, 2 * n + 1)) for g in spec.generators]
    gens += [list(range(1, n + 1)) + [n + x for x in g] for g in spec.generators]
    gens.append(list(range(n + 1, 2 * n + 1)) + list(range(1, n + 1)))
    tags = sorted(set(spec.tags) & {"solvable", "paper-example"})
    return GroupSpec(name or f"{spec.name}wrC2", 2 * n, gens, tags)


def builtin_corpus() -> list[GroupSpec]:
    c1 = GroupSpec("C1", 1, [], ["solvable", "abelian"], [[2]])
    v4 = _spec("V4", 4, [[1, 0, 3, 2], [2, 3, 0, 1]], ["solvable", "abelian"])
    s3 = build_symmetric(3)
    f21 = build_frobenius(7, 3)
    d8 = build_dihedral(4)
    specs = [
        c1,
        build_cyclic(2),
        build_cyclic(6),
        build_cyclic(12),
        v4,
        s3,
        d8,
        build_quaternion(),
        build_dihedral(5),
        build_alternating(4),
        _affine(5, 4),
        f21,
        build_symmetric(4),
        build_sl23(),
        build_gl23(),
        build_direct_product(s3, s3),
        build_wreath_c2(s3),
        build_direct_product(d8, f21, name="D8xF21"),
        build_frobenius(11, 5),
        build_sl23_on_z3sq(),
        build_wreath_c2(f21),
    ]
    for s in specs:
        if "solvable" not in s.tags:
            s.tags.insert(0, "solvable")
        s.tags = sorted(set(s.tags))
    specs[-1].tags = sorted(set(specs[-1].tags) | {"paper-example"})
    return specs


def builtin_names() -> list[str]:
    return [s.name for s in builtin_corpus()]


def builtin(name: str) -> GroupSpec:
    for s in builtin_corpus():
        if s.name == name:
            return s
    extra = {
        "A5": lambda: build_alternating(5),
        "S5": lambda: build_symmetric(5),
        "SL(2,3):3^2wrC2": lambda: build_wreath_c2(build_sl23_on_z3sq()),
        "D8xF21wrC2": lambda: build_wreath_c2(build_direct_product(build_dihedral(4), build_frobenius(7, 3), name="D8xF21")),
    }
    if name in extra:
        return extra[name]()
    raise GroupInputError(f"unknown builtin group {name!r}; known: {', '.join(builtin_names())}")


# ---------------------------------------------------------------------------
# tables


def save_table(T: CharacterTable) -> str:
    cd = T.classes
    G = T.group
    group_doc = {
        "name": G.name or "G",
        "degree": G.degree,
        "generators": [[x + 1 for x in g] for g in G.generators],
        "tags": [],
    }
    doc = {
        "format": "bpilab-table",
        "group": group_doc,
        "order": _int_out(T.order),
        "conductor": T.conductor,
        "classes": {
            "representatives": [r.one_based() for r in cd.representatives],
            "sizes": [_int_out(s) for s in cd.sizes],
            "orders": list(cd.orders),
            "powers": [list(p) for p in cd.powers],
            "power_maps": {str(p): list(m) for p, m in sorted(cd.power_maps.items())},
        },
        "irreducibles": [
            {"label": lab, "values": [cyclotomic_to_doc(v) for v in x.values]}
            for lab, x in zip(T.labels, T.irreducibles)
        ],
    }
    return dumps(doc)


def load_table(doc) -> CharacterTable:
    """Rebuild and re-verify a table document."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != "bpilab-table":
        raise SpecError("not a table document")
    for key in ("group", "order", "conductor", "classes", "irreducibles"):
        if key not in doc:
            raise SpecError(f"missing field: {key}")
    spec = load_group_spec(doc["group"])
    G = spec.to_group()
    c = doc["classes"]
    for key in ("representatives", "sizes", "orders", "powers"):
        if key not in c:
            raise SpecError(f"classes: missing field {key}")
    reps = [Permutation.from_one_based(r) for r in c["representatives"]]
    sizes = tuple(_int_in(s, "classes.sizes") for s in c["sizes"])
    orders = tuple(_int_in(o, "classes.orders") for o in c["orders"])
    powers = tuple(tuple(_int_in(x, "classes.powers") for x in p) for p in c["powers"])
    r = len(reps)
    if not (len(sizes) == len(orders) == len(powers) == r):
        raise SpecError("classes: field lengths disagree")
    order = _int_in(doc["order"], "order")
    if sum(sizes) != order or G.order != order:
        raise SpecError("class sizes do not add up to the group order")
    for k, (rep, o) in enumerate(zip(reps, orders)):
        if not G.contains(rep) or rep.order() != o or len(powers[k]) != o:
            raise SpecError(f"classes: inconsistent data for class {k}")
        if any(not 0 <= x < r for x in powers[k]):
            raise SpecError(f"classes.powers[{k}]: index out of range")
    cd = ClassData(group=G, representatives=tuple(reps), sizes=sizes, orders=orders, powers=powers)
    e = _int_in(doc["conductor"], "conductor")
    if e != cd.exponent:
        raise SpecError("conductor differs from the group exponent")
    rows, labels = [], []
    for i, item in enumerate(doc["irreducibles"]):
        vals = item.get("values") if isinstance(item, dict) else None
        if not isinstance(vals, list) or len(vals) != r:
            raise SpecError(f"irreducibles[{i}]: expected {r} values")
        scalars = [cyclotomic_from_doc(v, f"irreducibles[{i}].values[{k}]") for k, v in enumerate(vals)]
        try:
            rows.append(np.stack([cyc.from_scalar(v, e) for v in scalars]))
        except ValueError as exc:
            raise SpecError(f"irreducibles[{i}]: {exc}") from None
        labels.append(str(item.get("label", f"X.{i}")))
    try:
        T = _assemble(G, cd, rows, labels, method="loaded", sort=False)
    except TableError as exc:
        raise SpecError(f"table failed verification: {exc}") from None
    G.cache["table"] = T
    return T


# ---------------------------------------------------------------------------
# verification reports


def save_report(report) -> str:
    return dumps(report.to_doc())


def load_report(doc):
    """Parse a report document back into a :class:`~bpilab.theorems.CorpusReport`."""
    from .theorems import CorpusReport

    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "results" not in doc or "run" not in doc:
        raise SpecError("not a report document")
    try:
        return CorpusReport.from_doc(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed report entry: {exc}") from None
