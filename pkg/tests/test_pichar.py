from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from bpilab.chartab import character_table, induce, linear_characters, restrict_constituents, tensor
from bpilab.corpus import builtin, builtin_corpus
from bpilab.permgrp import BoundExceeded, GroupInputError, derived_subgroup, hall_subgroup, is_pi_separable
from bpilab.pichar import (
    analyze,
    bcd_sets,
    bpi_set,
    factor_pi_factored,
    fong_constituents,
    irr_pi_prime_set,
    is_pi_special,
    nucleus,
    pi_part,
    pi_special_set,
)
from bpilab.primes import PrimeSet, prime_divisors

from . import oracles

P2, P3 = PrimeSet.of(2), PrimeSet.of(3)
CASES = [(s, pi) for s in builtin_corpus() if s.to_group().order <= 216 for pi in s.pi_sets()]
SMALL = [(s, pi) for s in builtin_corpus() if s.to_group().order <= 100 for pi in s.pi_sets()]


def _case_id(case):
    return f"{case[0].name}-{case[1]}"


def s3():
    T = character_table(builtin("S3").to_group())
    return T, T[0], T[1], T[2]


@pytest.mark.parametrize("n, primes, want", [(48, (2,), 16), (48, (), 1), (216, (3,), 27), (1, (5,), 1)])
def test_pi_part(n, primes, want):
    assert pi_part(n, PrimeSet.of(*primes)) == want


@settings(max_examples=50)
@given(st.integers(1, 10_000), st.sets(st.sampled_from([2, 3, 5, 7])))
def test_pi_part_is_complementary(n, primes):
    pi = PrimeSet.of(*primes)
    a, b = pi_part(n, pi), pi_part(n, pi.complement())
    assert a * b == n
    assert all(p in pi for p in prime_divisors(a))


def test_s3_pi_special():
    T, one, eps, chi2 = s3()
    assert is_pi_special(T, one, P2) and is_pi_special(T, one, P3)
    assert not is_pi_special(T, chi2, P2)
    assert is_pi_special(T, eps, P2)
    assert pi_special_set(T, P3) == [one]
    assert pi_special_set(T, P2) == [one, eps]
    assert pi_special_set(T, PrimeSet.of(2, 3)) == list(T)


def test_s3_factorization():
    T, one, eps, chi2 = s3()
    assert factor_pi_factored(one, P2) == (one, one)
    assert factor_pi_factored(eps, P2) == (eps, one)
    assert factor_pi_factored(chi2, P2) is None


def test_s3_nucleus():
    T, one, eps, chi2 = s3()
    N = nucleus(T, chi2, P3)
    assert N.W.order == 3 and N.is_bpi
    assert N.alpha.degree == 1 and N.alpha != N.W and N.alpha != N.alpha.table.trivial
    assert not nucleus(T, chi2, P2).is_bpi
    lin = nucleus(T, eps, P3)
    assert lin.W.order == 6 and lin.alpha == one and lin.beta == eps


def test_s3_bpi_sets():
    T, one, eps, chi2 = s3()
    assert bpi_set(T, P3) == [one, chi2]
    assert bpi_set(T, P2) == [one, eps]
    assert bcd_sets(T, P3) == ([1, 2], [1])


def test_sl23_z3sq_bcd_sets():
    G = builtin("SL(2,3):3^2").to_group()
    assert bcd_sets(G, P3) == ([1, 8], [1, 2, 3])


def test_abelian_bcd():
    assert bcd_sets(builtin("C12").to_group(), P2) == ([1], [1])


def test_s3_fong():
    T, one, eps, chi2 = s3()
    G = T.group
    A3 = hall_subgroup(G, P3)
    phis = fong_constituents(chi2, A3, P3)
    assert len(phis) == 2 and all(p.degree == 1 for p in phis)
    assert phis[0] == phis[1].conjugate()
    C2 = hall_subgroup(G, P2)
    (phi,) = fong_constituents(eps, C2, P2)
    assert phi != phi.table.trivial
    assert fong_constituents(one, C2, P2) == [phi.table.trivial]
    with pytest.raises(GroupInputError):
        fong_constituents(one, derived_subgroup(G), P2)


def test_irr_pi_prime():
    S4 = character_table(builtin("S4").to_group())
    odd = irr_pi_prime_set(S4, P2)
    assert sorted(x.degree for x in odd) == [1, 1, 3, 3]
    T, one, eps, chi2 = s3()
    assert irr_pi_prime_set(T, PrimeSet.of(2, 3)) == [one, eps]
    C6 = character_table(builtin("C6").to_group())
    assert irr_pi_prime_set(C6, P3) == list(C6)


def test_non_separable_rejected():
    A5 = builtin("A5").to_group()
    assert not is_pi_separable(A5, P2)
    with pytest.raises(GroupInputError):
        bpi_set(A5, P2)


def test_exhaustive_cap():
    G = builtin("SL(2,3):3^2").to_group()
    with pytest.raises(BoundExceeded):
        is_pi_special(G, character_table(G)[1], P2, mode="exhaustive")


def _pi_class_count_brute(G, pi):
    els = {tuple(int(v) for v in row) for row in G.elements}
    return sum(1 for c in oracles.classes(els) if pi.is_pi_number(oracles.element_order(next(iter(c)))))


@pytest.mark.parametrize("case", CASES, ids=_case_id)
def test_bpi_count(case):
    spec, pi = case
    G = spec.to_group()
    for sigma in (pi, pi.complement()):
        assert len(bpi_set(G, sigma)) == _pi_class_count_brute(G, sigma)


@pytest.mark.parametrize("case", CASES, ids=_case_id)
def test_nucleus_invariants(case):
    spec, pi = case
    G = spec.to_group()
    T = character_table(G)
    for chi in T:
        N = nucleus(T, chi, pi)
        assert is_pi_special(N.W, N.alpha, pi)
        assert is_pi_special(N.W, N.beta, pi.complement())
        assert induce(tensor(N.alpha, N.beta), G) == chi
        assert N.is_bpi == (chi in bpi_set(T, pi))
        again = nucleus(T, chi, pi)
        assert (again.W.order, again.alpha.values, again.beta.values) == (N.W.order, N.alpha.values, N.beta.values)


@pytest.mark.parametrize("case", CASES, ids=_case_id)
def test_special_degree_criterion(case):
    spec, pi = case
    T = character_table(spec.to_group())
    for chi in bpi_set(T, pi):
        assert is_pi_special(T, chi, pi) == pi.is_pi_number(chi.degree)


@pytest.mark.parametrize("case", CASES, ids=_case_id)
def test_analysis(case):
    spec, pi = case
    A = analyze(spec.to_group(), pi)
    assert set(A.x_pi) <= set(A.b_pi)
    pp = set(irr_pi_prime_set(A.table, pi)) & set(A.b_pi_prime)
    assert set(A.x_pi_prime) == pp


@pytest.mark.parametrize("case", CASES, ids=_case_id)
def test_fong_multiplicity_and_uniqueness(case):
    spec, pi = case
    G = spec.to_group()
    T = character_table(G)
    H = hall_subgroup(G, pi)
    owners = {}
    for chi in bpi_set(T, pi):
        for phi in fong_constituents(chi, H, pi):
            owners.setdefault(phi.index, set()).add(chi.index)
            others = [x for x in bpi_set(T, pi) if x is not chi]
            for x in others:
                assert all(t.index != phi.index for t, _ in restrict_constituents(x, H))
    lin = {x.index for x in linear_characters(character_table(H))}
    assert lin <= set(owners)


@pytest.mark.parametrize("case", SMALL, ids=_case_id)
def test_chief_matches_exhaustive(case):
    spec, pi = case
    T = character_table(spec.to_group())
    for sigma in (pi, pi.complement()):
        assert pi_special_set(T, sigma) == pi_special_set(T, sigma, mode="exhaustive")


@pytest.mark.parametrize("spec", builtin_corpus(), ids=lambda s: s.name)
def test_degenerate_pi(spec):
    G = spec.to_group()
    if G.order > 2000:
        pytest.skip("large table covered by acceptance")
    T = character_table(G)
    primes = prime_divisors(G.order)
    assert bpi_set(T, PrimeSet.of(*primes)) == list(T)
    outside = PrimeSet.of(*[p for p in (2, 3, 5, 7, 11, 13) if p not in primes] or [17])
    assert bpi_set(T, outside) == [T.trivial]
