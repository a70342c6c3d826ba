from __future__ import annotations

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bpilab.corpus import builtin, builtin_corpus
from bpilab.permgrp import (
    BoundExceeded,
    GroupInputError,
    NotPiSeparable,
    PermGroup,
    Permutation,
    chief_series,
    conjugacy_classes,
    contains,
    derived_subgroup,
    group_from_generators,
    hall_subgroup,
    is_normal,
    is_pi_separable,
    minimal_normal_subgroups,
    normal_closure,
    normal_subgroups,
    normalizer,
    order,
    pi_core,
    quotient_group,
    same_subgroup,
    subgroup_intersection,
)
from bpilab.primes import PrimeSet, prime_divisors

from . import oracles

cyc = Permutation.from_cycles
SMALL = [s for s in builtin_corpus() if s.to_group().order <= 216]


def S(n):
    return group_from_generators(n, [cyc(n, (1, 2)), cyc(n, tuple(range(1, n + 1)))], name=f"S{n}")


def elements(G: PermGroup) -> set[tuple]:
    return {tuple(int(x) for x in row) for row in G.elements}


# -- permutations


def test_permutation_convention():
    p, q = cyc(3, (1, 2)), cyc(3, (2, 3))
    # p first, then q
    assert (p * q).one_based() == [3, 1, 2]
    assert (p * ~p).is_identity()
    assert (cyc(4, (1, 2, 3, 4)) ** 4).is_identity()
    assert cyc(6, (1, 2), (3, 4, 5)).order() == 6


@pytest.mark.parametrize("images", [[1, 1, 2], [0, 1, 2], [1, 2, 4]])
def test_bad_permutations(images):
    with pytest.raises(GroupInputError):
        Permutation.from_one_based(images)


@given(st.permutations(range(7)), st.permutations(range(7)), st.permutations(range(7)))
def test_group_axioms(a, b, c):
    a, b, c = Permutation(a), Permutation(b), Permutation(c)
    assert (a * b) * c == a * (b * c)
    assert (a * ~a).is_identity() and (~a * a).is_identity()
    assert tuple((a * b).images) == oracles.compose(tuple(a.images), tuple(b.images))


# -- construction and order


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_symmetric_order(n):
    assert order(S(n)) == math.factorial(n)


def test_trivial_group():
    G = group_from_generators(3, [])
    assert G.order == 1 and G.is_trivial()


def test_frobenius_21_matches_closure():
    gens = [cyc(7, tuple(range(1, 8))), Permutation([0, 2, 4, 6, 1, 3, 5])]
    G = group_from_generators(7, gens)
    assert G.order == 21 == len(oracles.closure([g.images for g in gens], 7))


@pytest.mark.parametrize("spec", SMALL, ids=lambda s: s.name)
def test_order_matches_closure(spec):
    G = spec.to_group()
    closure = oracles.closure([tuple(x - 1 for x in g) for g in spec.generators], spec.degree)
    assert G.order == len(closure)
    assert elements(G) == closure


def test_sl23_z3sq_order():
    assert builtin("SL(2,3):3^2").to_group().order == 216


def test_order_cap_enforced():
    G = PermGroup(8, S(8).generators, order_cap=1000)
    assert G.order == 40320
    with pytest.raises(BoundExceeded):
        G.elements


def test_membership():
    G = S(4)
    A4 = derived_subgroup(G)
    D8 = G.subgroup([cyc(4, (1, 2, 3, 4)), cyc(4, (1, 3))])
    assert contains(G, Permutation.identity(4))
    assert not contains(A4, cyc(4, (1, 2)))
    assert contains(D8, cyc(4, (1, 3), (2, 4)))
    with pytest.raises(GroupInputError):
        G.contains(cyc(5, (1, 2)))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(range(6)), min_size=1, max_size=3))
def test_random_groups_against_closure(gens):
    G = group_from_generators(6, [Permutation(g) for g in gens])
    closure = oracles.closure(gens, 6)
    assert G.order == len(closure)
    rng = random.Random(len(closure))
    sample = rng.sample(sorted(closure), min(10, len(closure)))
    for a in sample:
        for b in sample:
            assert G.contains(oracles.compose(a, b))


# -- classes


@pytest.mark.parametrize("spec", SMALL, ids=lambda s: s.name)
def test_classes_match_brute_force(spec):
    G = spec.to_group()
    cd = conjugacy_classes(G)
    brute = oracles.classes(elements(G))
    assert sorted(cd.sizes) == sorted(len(c) for c in brute)
    ids = {tuple(int(x) for x in row): int(i) for row, i in zip(G.elements, cd.ids)}
    for c in brute:
        assert len({ids[x] for x in c}) == 1
    for k, rep in enumerate(cd.representatives):
        assert cd.class_of(rep) == k
        assert cd.orders[k] == rep.order()
        assert cd.sizes[k] * cd.centralizer_orders[k] == G.order
    assert sum(cd.sizes) == G.order


def test_class_examples():
    assert sorted(S(4).classes.sizes) == [1, 3, 6, 6, 8]
    assert sorted(builtin("F21").to_group().classes.sizes) == [1, 3, 3, 7, 7]
    C12 = builtin("C12").to_group()
    assert len(C12.classes) == 12


def test_canonical_class_order():
    cd = builtin("S4").to_group().classes
    keys = [(o, s, r.images) for o, s, r in zip(cd.orders, cd.sizes, cd.representatives)]
    assert keys == sorted(keys)
    G = builtin("S4").to_group()
    for r, c in zip(cd.representatives, sorted(oracles.classes(elements(G)), key=lambda c: (oracles.element_order(min(c)), len(c), min(c)))):
        assert r.images == min(c)


@pytest.mark.parametrize("name", ["S4", "F21", "SL(2,3)", "GL(2,3)"])
def test_power_maps(name):
    G = builtin(name).to_group()
    cd = G.classes
    for k, rep in enumerate(cd.representatives):
        for t in range(cd.orders[k]):
            assert cd.power_class(k, t) == cd.class_of(rep ** t)


@pytest.mark.parametrize("name", ["S3", "Q8", "A4"])
def test_structure_constants_brute(name):
    G = builtin(name).to_group()
    cd = G.classes
    els = elements(G)
    ids = {tuple(int(x) for x in row): int(i) for row, i in zip(G.elements, cd.ids)}
    a = cd.structure_constants
    for k, rep in enumerate(cd.representatives):
        counts = np.zeros((len(cd), len(cd)), dtype=int)
        for x in els:
            y = oracles.compose(oracles.inverse(x), rep.images)  # x y = rep
            counts[ids[x], ids[y]] += 1
        assert np.array_equal(a[:, :, k], counts)


# -- subgroups


@pytest.mark.parametrize("name, expected", [("S4", 12), ("D8", 2), ("V4", 1), ("SL(2,3)", 8)])
def test_derived_subgroup(name, expected):
    G = builtin(name).to_group()
    D = derived_subgroup(G)
    assert D.order == expected
    assert elements(D) == oracles.derived(elements(G))
    assert is_normal(G, D)
    Q, _ = quotient_group(G, D)
    assert Q.is_abelian()


def test_normalizer_examples():
    G = S(4)
    D8 = G.subgroup([cyc(4, (1, 2, 3, 4)), cyc(4, (1, 3))])
    assert normalizer(G, D8).order == 8
    A4 = derived_subgroup(G)
    assert normalizer(G, A4).order == 24
    F = builtin("F21").to_group()
    C3 = hall_subgroup(F, PrimeSet.of(3))
    assert normalizer(F, C3).order == 3


@pytest.mark.parametrize("name, pi", [("S4", 2), ("S4", 3), ("GL(2,3)", 3), ("S3xS3", 2), ("D10", 2)])
def test_normalizer_brute(name, pi):
    G = builtin(name).to_group()
    H = hall_subgroup(G, PrimeSet.of(pi))
    assert elements(normalizer(G, H)) == oracles.normalizer(elements(G), elements(H))


def test_intersection_examples():
    G = S(4)
    A4 = derived_subgroup(G)
    D8 = G.subgroup([cyc(4, (1, 2, 3, 4)), cyc(4, (1, 3))])
    assert subgroup_intersection(G, A4, D8).order == 4
    assert same_subgroup(subgroup_intersection(G, A4, A4), A4)
    S3 = S(3)
    A3 = derived_subgroup(S3)
    C2 = S3.subgroup([cyc(3, (1, 2))])
    assert subgroup_intersection(S3, A3, C2).order == 1


def test_subgroup_registry_is_canonical():
    G = S(4)
    a = G.subgroup([cyc(4, (1, 2, 3))])
    b = G.subgroup([cyc(4, (1, 3, 2))])
    assert a is b


def test_normal_subgroups_brute():
    G = builtin("S4").to_group()
    orders = sorted(G.classes.subgroup_order(c) for c in normal_subgroups(G))
    assert orders == [1, 4, 12, 24]
    for cls in normal_subgroups(G):
        N = G.subgroup_from_classes(cls)
        assert oracles.is_normal(elements(G), elements(N))
    assert [G.classes.subgroup_order(c) for c in minimal_normal_subgroups(G)] == [4]


def test_normal_closure():
    G = S(4)
    N = normal_closure(G, [cyc(4, (1, 2), (3, 4))])
    assert N.order == 4


@pytest.mark.parametrize("name, orders", [("S4", [1, 4, 12, 24]), ("S3", [1, 3, 6]), ("C2", [1, 2])])
def test_chief_series_examples(name, orders):
    assert [H.order for H in chief_series(builtin(name).to_group())] == orders


@pytest.mark.parametrize("spec", builtin_corpus(), ids=lambda s: s.name)
def test_chief_series_properties(spec):
    G = spec.to_group()
    series = chief_series(G)
    assert series[0].order == 1 and series[-1].order == G.order
    for lo, hi in zip(series, series[1:]):
        assert is_normal(G, hi) and lo.is_subgroup_of(hi)
        f = hi.order // lo.order
        assert len(prime_divisors(f)) == 1  # solvable: prime power


def test_quotients():
    G = S(4)
    V4 = pi_core(G, PrimeSet.of(2))
    Q, proj = quotient_group(G, V4)
    assert Q.order == 6 and not Q.is_abelian()
    assert quotient_group(G, G)[0].order == 1
    S3 = S(3)
    assert quotient_group(S3, derived_subgroup(S3))[0].order == 2
    with pytest.raises(GroupInputError):
        quotient_group(G, G.subgroup([cyc(4, (1, 2))]))
    a, b = cyc(4, (1, 2)), cyc(4, (2, 3, 4))
    assert proj(a * b) == proj(a) * proj(b)


def test_pi_core_examples():
    assert pi_core(S(3), PrimeSet.of(2)).order == 1
    assert pi_core(S(4), PrimeSet.of(2)).order == 4
    Q8 = builtin("Q8").to_group()
    assert pi_core(Q8, PrimeSet.of(2)).order == 8


def test_separability():
    assert not is_pi_separable(builtin("A5").to_group(), PrimeSet.of(2))
    assert is_pi_separable(builtin("A5").to_group(), PrimeSet.of(2, 3, 5))
    assert is_pi_separable(S(4), PrimeSet.of(2))
    with pytest.raises(NotPiSeparable):
        hall_subgroup(builtin("A5").to_group(), PrimeSet.of(2))


@pytest.mark.parametrize("spec", builtin_corpus(), ids=lambda s: s.name)
def test_hall_subgroups(spec):
    G = spec.to_group()
    for pi in spec.pi_sets(G.order):
        H = hall_subgroup(G, pi)
        assert H.order == pi.pi_part(G.order)
        assert math.gcd(H.order, G.order // H.order) == 1
        assert H.is_subgroup_of(G)


def test_hall_examples():
    G = S(4)
    assert hall_subgroup(G, PrimeSet.of(2, 3)).order == 24
    assert hall_subgroup(G, PrimeSet.of(3)).order == 3
    F = builtin("F21").to_group()
    assert same_subgroup(hall_subgroup(F, PrimeSet.of(7)), pi_core(F, PrimeSet.of(7)))
