from __future__ import annotations

import pytest

from bpilab.corpus import builtin, builtin_corpus, load_report, save_report
from bpilab.permgrp import BoundExceeded, GroupInputError
from bpilab.primes import PrimeSet
from bpilab.theorems import (
    CHECKS,
    IDENTITY,
    IMPLICATION,
    CorpusReport,
    RunConfig,
    Side,
    VerificationReport,
    check_bpi_union_size,
    check_degree_prime_corollary,
    check_extension_lemma,
    check_four_point_corollary,
    check_ito_michler,
    check_lemma_vanish,
    check_maximal_nucleus,
    check_normal_pi_complement,
    check_nw_corollary,
    check_thompson_a,
    check_thompson_b,
    check_thompson_equiv,
    check_wolf_count,
    run_check,
    run_corpus,
)

P2, P3, P7 = PrimeSet.of(2), PrimeSet.of(3), PrimeSet.of(7)


def G(name):
    return builtin(name).to_group()


def sides(r):
    return r.lhs.holds, r.rhs.holds


@pytest.mark.parametrize("p", [2, 3])
def test_ito_michler_abelian(p):
    r = check_ito_michler(G("C12"), P2, p)
    assert sides(r) == (True, True) and r.status == "pass"


def test_ito_michler_examples():
    r = check_ito_michler(G("S4"), P2, 3)
    assert sides(r) == (False, False)
    assert r.rhs.witness["divisible"]["degree"] % 3 == 0
    assert r.lhs.witness["sylow_order"] == 3 and r.lhs.witness["normal_p_core_order"] == 1
    r = check_ito_michler(G("SL(2,3)"), P2, 2)
    assert sides(r) == (False, False)
    assert r.rhs.witness["divisible"]["degree"] % 2 == 0
    assert r.lhs.witness["abelian"] is False


def test_degree_prime_examples():
    assert sides(check_degree_prime_corollary(G("C12"), P2, 2)) == (False, False)
    assert sides(check_degree_prime_corollary(G("S3"), P2, 2)) == (True, True)
    assert sides(check_degree_prime_corollary(G("S4"), P3, 2)) == (True, True)


def test_thompson_equiv_examples():
    assert sides(check_thompson_equiv(G("C12"), P2)) == (True, True)
    assert sides(check_thompson_equiv(G("S3"), P2)) == (True, True)
    r = check_thompson_equiv(G("S4"), P2)
    assert sides(r) == (False, False)


def test_thompson_a_examples():
    assert sides(check_thompson_a(G("C12"), P3)) == (True, True)
    r = check_thompson_a(G("S4"), P2)
    assert sides(r) == (False, False)
    assert r.lhs.witness["nonlinear"]["degree"] == 3
    assert r.rhs.witness == {"intersection_order": 4, "H_derived_order": 2}
    r = check_thompson_a(G("F21"), P7)
    assert sides(r) == (False, False) and r.lhs.witness["nonlinear"]["degree"] == 3


def test_thompson_b_examples():
    assert sides(check_thompson_b(G("F21"), P3)) == (True, True)
    assert sides(check_thompson_b(G("C12"), P2)) == (True, True)
    assert check_thompson_b(G("D8xF21"), PrimeSet.of(2, 3)).equivalence_holds


def test_nw_examples():
    assert sides(check_nw_corollary(G("F21"), P3)) == (True, True)
    assert sides(check_nw_corollary(G("S4"), P2)) == (False, False)
    assert sides(check_nw_corollary(G("C6"), P3)) == (True, True)


def test_four_point_examples():
    r = check_four_point_corollary(G("S3"), P2)
    parts = {p.check: p for p in r.parts}
    assert len(parts) == 4 and r.status == "pass"
    assert sides(parts["four-point-ii"]) == (False, False)
    r = check_four_point_corollary(G("S4"), P2)
    assert sides({p.check: p for p in r.parts}["four-point-iii"]) == (True, True)
    r = check_four_point_corollary(G("C6"), P2)
    assert sides({p.check: p for p in r.parts}["four-point-iv"]) == (False, False)


def test_normal_complement_examples():
    assert sides(check_normal_pi_complement(G("S3"), P2)) == (True, True)
    assert sides(check_normal_pi_complement(G("S3"), P3)) == (False, False)
    assert sides(check_normal_pi_complement(G("S3"), PrimeSet.of(2, 3))) == (True, True)


@pytest.mark.parametrize("name, pi, count", [("S4", P2, 1), ("F21", P7, 3), ("C12", P2, 3)])
def test_wolf_count_examples(name, pi, count):
    r = check_wolf_count(G(name), pi)
    assert r.kind == IDENTITY and r.status == "pass"
    assert set(r.rhs.witness.values()) == {count}


def test_extension_lemma_examples():
    assert sides(check_extension_lemma(G("S3"), P3)) == (False, False)
    assert sides(check_extension_lemma(G("S3"), P2)) == (True, True)
    assert sides(check_extension_lemma(G("C12"), P3)) == (True, True)


def test_lemma_vanish_examples():
    r = check_lemma_vanish(G("S3"), P2)
    assert r.kind == IMPLICATION and r.status == "pass"
    assert [6 // 3 == m // n for n, m in r.lhs.witness["pairs"]] == [True]
    r = check_lemma_vanish(G("C6"), P2)
    assert r.status == "skip" and r.equivalence_holds
    assert check_lemma_vanish(G("S4"), P3).equivalence_holds


def test_union_size_examples():
    assert sides(check_bpi_union_size(G("S3"), P2)) == (True, True)
    r = check_bpi_union_size(G("C6"), P2)
    assert sides(r) == (False, False)
    assert r.rhs.witness == {"mixed_order": 6}
    assert sides(check_bpi_union_size(G("D8"), P2)) == (True, True)


def test_maximal_nucleus_examples():
    r = check_maximal_nucleus(G("S4"), P2)
    assert r.status == "pass"
    r = check_maximal_nucleus(G("C6"), P3)
    assert r.status == "pass"


def test_report_shapes():
    a = VerificationReport("x", "G", P2, Side(True, "a"), Side(False, "b"))
    assert a.status == "fail" and not a.equivalence_holds and a.failed
    b = VerificationReport("x", "G", P2, Side(False, "a"), Side(False, "b"), kind=IMPLICATION)
    assert b.status == "pass"
    c = VerificationReport("x", "G", P2, Side(True, "a"), Side(False, "b"), kind=IDENTITY)
    assert c.status == "fail"
    doc = a.to_doc()
    assert "seconds" not in doc
    assert VerificationReport.from_doc(doc).to_doc() == doc


def test_run_check_rejects_unknown():
    with pytest.raises(KeyError):
        run_check("no-such-check", G("S3"), P2)


def test_run_check_input_errors_propagate():
    with pytest.raises(GroupInputError):
        run_check("thompson-a", G("A5"), P2)


def test_empty_corpus():
    rep = run_corpus([])
    assert rep.results == [] and rep.ok
    assert rep.counts() == {"pass": 0, "fail": 0, "skip": 0, "error": 0}


def test_non_separable_entry_rejected():
    rep = run_corpus([builtin("A5"), builtin("S3")], RunConfig(checks=["thompson-equiv"]))
    assert any(x["group"] == "A5" for x in rep.rejected)
    assert {r.group for r in rep.results} == {"S3"}
    assert rep.ok


SMALL = [s for s in builtin_corpus() if s.to_group().order <= 216]


@pytest.mark.parametrize("spec", SMALL, ids=lambda s: s.name)
def test_all_checks_hold(spec):
    rep = run_corpus([spec])
    bad = [r.to_doc() for r in rep.results if not r.equivalence_holds or r.failed]
    assert not bad
    assert {r.check for r in rep.results} == set(CHECKS)


def test_witnesses_are_sound():
    rep = run_corpus(SMALL, RunConfig(checks=["ito-michler", "degree-prime"]))
    for r in rep.results:
        for side in (r.lhs, r.rhs):
            for w in side.witness.values():
                if isinstance(w, dict) and "degree" in w:
                    assert w["degree"] % r.p == 0


def test_report_determinism_and_round_trip():
    specs = [builtin("S3"), builtin("F21")]
    a = save_report(run_corpus(specs))
    b = save_report(run_corpus(specs))
    assert a == b
    assert save_report(load_report(a)) == a
    assert isinstance(load_report(a), CorpusReport)
