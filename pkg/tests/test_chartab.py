from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bpilab.chartab import (
    TableError,
    cd_set,
    character_table,
    determinant_order,
    direct_product_table,
    induce,
    inner_product,
    kernel_of,
    linear_characters,
    restrict,
    restrict_constituents,
    tensor,
    verify_table,
    wreath_c2_table,
)
from bpilab.corpus import builtin, builtin_corpus, build_wreath_c2
from bpilab.cyclotomic import Cyclotomic
from bpilab.permgrp import Permutation, derived_subgroup, hall_subgroup, is_normal, quotient_group
from bpilab.primes import PrimeSet

from . import oracles

MEDIUM = [s for s in builtin_corpus() if s.to_group().order <= 216]


def table(name):
    return character_table(builtin(name).to_group())


def ints(chi):
    return [int(v.to_rational()) for v in chi.values]


def test_c2_table():
    T = table("C2")
    assert [ints(x) for x in T] == [[1, 1], [1, -1]]


def test_s3_table():
    T = table("S3")
    assert T.degrees == (1, 1, 2)
    assert T.classes.orders == (1, 2, 3)
    assert ints(T[2]) == [2, 0, -1]
    assert oracles.orthogonality_defect(T) < 1e-9


@pytest.mark.parametrize("spec", MEDIUM, ids=lambda s: s.name)
def test_tables_satisfy_orthogonality_numerically(spec):
    T = character_table(spec.to_group())
    assert len(T) == len(T.classes)
    assert sum(d * d for d in T.degrees) == T.order
    assert all(T.order % d == 0 for d in T.degrees)
    assert oracles.orthogonality_defect(T) < 1e-8


@pytest.mark.parametrize("spec", MEDIUM, ids=lambda s: s.name)
def test_canonical_character_order(spec):
    T = character_table(spec.to_group())
    keys = [(x.degree, tuple(v.sort_key() for v in x.values)) for x in T]
    assert keys == sorted(keys)
    assert T[0] == T.trivial


def test_sl23_z3sq_degrees():
    T = table("SL(2,3):3^2")
    assert cd_set(T) == [1, 2, 3, 8]


def test_inner_products():
    T = table("S3")
    one, eps, chi2 = T
    assert inner_product(one, one) == Cyclotomic.rational(1)
    assert inner_product(tensor(chi2, chi2), one) == Cyclotomic.rational(1)
    assert inner_product(eps, chi2).is_zero()
    assert tensor(eps, chi2) == chi2
    assert tensor(eps, eps) == one
    assert tensor(chi2, one) == chi2


def test_restriction_examples():
    G = builtin("S3").to_group()
    T = character_table(G)
    chi2 = T[2]
    A3 = derived_subgroup(G)
    parts = restrict_constituents(chi2, A3)
    assert [(x.degree, m) for x, m in parts] == [(1, 1), (1, 1)]
    assert parts[0][0] == parts[1][0].conjugate()
    C2 = hall_subgroup(G, PrimeSet.of(2))
    parts = restrict_constituents(chi2, C2)
    assert sorted(ints(x) for x, _ in parts) == [[1, -1], [1, 1]]
    assert restrict_constituents(chi2, G) == [(chi2, 1)]


def _brute_restriction(chi, M):
    """Values of chi on each class representative of M, looked up element-wise."""
    G = chi.table.group
    return [oracles.value(chi.values[G.classes.class_of(r)]) for r in character_table(M).classes.representatives]


@pytest.mark.parametrize("name, pi", [("S4", 2), ("S4", 3), ("GL(2,3)", 2), ("F21", 3), ("SL(2,3):3^2", 2)])
def test_restriction_matches_direct_evaluation(name, pi):
    G = builtin(name).to_group()
    H = hall_subgroup(G, PrimeSet.of(pi))
    for chi in character_table(G):
        got = oracles.class_function_values(restrict(chi, H))
        want = _brute_restriction(chi, H)
        assert np.allclose(got, want)
        assert sum(m * x.degree for x, m in restrict_constituents(chi, H)) == chi.degree


def _brute_induce(theta, G):
    """theta^G(g) = (1/|H|) sum over x in G with x g x^-1 in H of theta(x g x^-1)."""
    H = theta.table.group
    Hels = {tuple(int(v) for v in row) for row in H.elements}
    Gels = [tuple(int(v) for v in row) for row in G.elements]
    out = []
    for rep in character_table(G).classes.representatives:
        total = 0
        for x in Gels:
            y = oracles.conj(rep.images, x)
            if y in Hels:
                total += oracles.value(theta.values[H.classes.class_of(Permutation(y))])
        out.append(total / H.order)
    return out


@pytest.mark.parametrize("name, pi", [("S3", 3), ("S4", 2), ("F21", 7), ("Q8", 2), ("A4", 2)])
def test_induction_matches_formula(name, pi):
    G = builtin(name).to_group()
    H = hall_subgroup(G, PrimeSet.of(pi))
    T = character_table(G)
    for theta in character_table(H):
        ind = induce(theta, G)
        assert ind.degree == G.order // H.order * theta.degree
        assert np.allclose(oracles.class_function_values(ind), _brute_induce(theta, G))
        for chi in T:
            # Frobenius reciprocity, exactly
            lhs = inner_product(ind, chi)
            rhs = inner_product(theta, restrict(chi, H))
            assert lhs == rhs


def test_induction_examples():
    G = builtin("S3").to_group()
    T = character_table(G)
    A3 = derived_subgroup(G)
    TA = character_table(A3)
    assert induce(TA[1], G) == T[2]
    perm = induce(TA.trivial, G)
    assert inner_product(perm, T.trivial) == Cyclotomic.rational(1)


def test_kernels():
    G = builtin("S4").to_group()
    T = character_table(G)
    assert kernel_of(T.trivial).order == 24
    sign = [x for x in T if x.degree == 1 and x != T.trivial][0]
    assert kernel_of(sign).order == 12
    faithful = [x for x in T if kernel_of(x).order == 1]
    assert faithful and all(x.degree == 3 for x in faithful)
    for x in T:
        assert is_normal(G, kernel_of(x))


@pytest.mark.parametrize("spec", MEDIUM, ids=lambda s: s.name)
def test_determinant_order_divides_abelianization_exponent(spec):
    G = spec.to_group()
    T = character_table(G)
    Q, _ = quotient_group(G, derived_subgroup(G))
    exp = T.classes.exponent if Q.order == 1 else character_table(Q).classes.exponent
    for x in T:
        assert exp % determinant_order(x) == 0
    for lam in linear_characters(T):
        assert determinant_order(lam) == max(oracles.element_order_of_value(v) for v in lam.values)


def test_determinant_examples():
    T = table("S3")
    assert [determinant_order(x) for x in T] == [1, 2, 2]


@pytest.mark.parametrize("name, count", [("S4", 2), ("SL(2,3)", 3), ("C12", 12), ("Q8", 4), ("F21", 3)])
def test_linear_characters(name, count):
    lin = linear_characters(table(name))
    assert len(lin) == count
    assert all(x.degree == 1 for x in lin)


def test_cd_sets():
    assert cd_set(table("C6")) == [1]
    assert cd_set(table("S3")) == [1, 2]


def test_direct_product_examples():
    s3 = table("S3")
    T = direct_product_table(s3, s3)
    assert cd_set(T) == [1, 2, 4]
    verify_table(T)
    T = direct_product_table(table("D8"), table("F21"))
    assert len(T) == 25
    one = direct_product_table(s3, table("C1"))
    assert sorted(one.degrees) == sorted(s3.degrees)


def _value_multisets(T):
    """Per class (order, size), the sorted numeric column of the table."""
    cols = {}
    X = oracles.numeric_table(T)
    for k in range(len(T)):
        key = (T.classes.orders[k], T.classes.sizes[k])
        col = tuple(sorted((round(X[i][k].real, 6), round(X[i][k].imag, 6)) for i in range(len(T))))
        cols.setdefault(key, []).append(col)
    return {k: sorted(v) for k, v in cols.items()}


@pytest.mark.parametrize("name", ["C2", "S3", "F21"])
def test_wreath_agrees_with_dixon(name):
    base = table(name)
    W = wreath_c2_table(base)
    k = len(base)
    assert len(W) == k * (k - 1) // 2 + 2 * k
    direct = character_table(build_wreath_c2(builtin(name)).to_group())
    assert W.order == direct.order
    assert sorted(W.degrees) == sorted(direct.degrees)
    assert _value_multisets(W) == _value_multisets(direct)


def test_wreath_c2_base_c2_is_d8_like():
    W = wreath_c2_table(table("C2"))
    assert sorted(W.degrees) == [1, 1, 1, 1, 2]


def test_product_agrees_with_dixon():
    T = direct_product_table(table("S3"), table("S3"))
    direct = table("S3xS3")
    assert _value_multisets(T) == _value_multisets(direct)


def test_wreath_extension_order():
    W = wreath_c2_table(table("S3"))
    swap = [k for k, r in enumerate(W.classes.representatives) if r.images[0] >= 3]
    for a in range(3):
        plus = W[W.labels.index(f"ext({a},+)")]
        minus = W[W.labels.index(f"ext({a},-)")]
        k = min(swap)
        assert plus.values[k] == -minus.values[k]


def test_sl23_z3sq_wreath_contains_48():
    W = wreath_c2_table(table("SL(2,3):3^2"))
    assert W.order == 93312
    assert 48 in cd_set(W)


def test_tampered_table_is_rejected():
    T = table("S3")
    T2 = type(T)(group=T.group, classes=T.classes, conductor=T.conductor, irreducibles=T.irreducibles,
                 labels=T.labels)
    bad = T.irreducibles[2].coords.copy()
    bad[1] += 1
    from bpilab.chartab import Character

    T2.irreducibles = T.irreducibles[:2] + (Character(T2, bad, 2),)
    with pytest.raises(TableError):
        verify_table(T2)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["S4", "GL(2,3)", "F20", "D8xF21"]), st.data())
def test_tensor_decomposes_nonnegatively(name, data):
    T = table(name)
    a = data.draw(st.sampled_from(T.irreducibles))
    b = data.draw(st.sampled_from(T.irreducibles))
    parts = T.decompose(tensor(a, b))
    assert all(m > 0 for _, m in parts)
    assert sum(m * T[i].degree for i, m in parts) == a.degree * b.degree


def test_seed_does_not_change_table():
    G = builtin("GL(2,3)").to_group()
    T1 = character_table(G)
    from bpilab.chartab import _assemble, _dixon_rows

    rows = _dixon_rows(G.classes, seed=7)
    T2 = _assemble(G, G.classes, rows)
    assert [x.values for x in T1] == [x.values for x in T2]
