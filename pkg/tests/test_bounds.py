import pytest
from hypothesis import given, strategies as st

from frobsharp.arith import p_sum
from frobsharp.bounds import (
    NonAdmissibleError,
    NonSharp,
    SeparabilityQuery,
    Sharp,
    is_admissible,
    is_nonsharp_witness,
    lambda_p,
    lemma_lower_bound,
    report,
    sep_bound,
    tau_log,
    tau_piecewise,
)

PRIMES = [2, 3, 5, 7]


def admissible_pairs(d_max, primes=PRIMES):
    return [(p, d) for p in primes for d in range(1, d_max + 1) if d % p != p - 1]


@pytest.mark.parametrize("p, d, expected", [(3, 2, False), (2, 3, False), (5, 6, True), (3, 5, False)])
def test_is_admissible(p, d, expected):
    assert is_admissible(p, d) is expected


@pytest.mark.parametrize("p, d, expected", [(3, 4, 2), (3, 16, 3), (2, 1, 1), (3, 7, 2), (3, 13, 3)])
def test_tau_piecewise(p, d, expected):
    assert tau_piecewise(p, d) == expected


@pytest.mark.parametrize("p, d, expected", [(3, 16, 3), (3, 4, 2), (3, 7, 2)])
def test_tau_log(p, d, expected):
    assert tau_log(p, d) == expected


def test_tau_closed_forms_agree():
    for p in PRIMES:
        for d in range(1, 5001):
            assert tau_piecewise(p, d) == tau_log(p, d), (p, d)


def test_lambda_spot_values():
    rep = lambda_p(3, 16)
    assert (rep.tau, rep.lam, rep.classification, rep.r) == (3, 2, NonSharp(3), 1)
    rep = lambda_p(3, 22)
    assert (rep.tau, rep.lam, rep.classification) == (3, 3, Sharp())
    rep = lambda_p(3, 15)
    assert (rep.tau, rep.lam, rep.classification) == (3, 3, Sharp())
    rep = lambda_p(2, 6)
    assert rep.lam == rep.tau == 3


def test_lambda_rejects_non_admissible():
    with pytest.raises(NonAdmissibleError):
        lambda_p(3, 2)


def test_report_is_total():
    rep = report(3, 5)
    assert not rep.admissible
    assert rep.r is None and rep.lam is None and rep.classification is None
    assert rep.tau == tau_piecewise(3, 5)


def test_lambda_invariants():
    for p, d in admissible_pairs(1500):
        rep = lambda_p(p, d)
        assert rep.r == d % p < p - 1
        assert rep.lam >= 1 and rep.tau >= 1
        assert rep.tau - rep.lam in (0, 1)
        assert (rep.lam == rep.tau - 1) == isinstance(rep.classification, NonSharp)
        if isinstance(rep.classification, NonSharp):
            assert is_nonsharp_witness(p, d, rep.classification.i)
        if d % p == 0 or p == 2:
            assert rep.classification == Sharp()


def test_nonsharp_values_for_p3_are_the_window_gaps():
    # between 13 and 26 the excluded values are 22 and 25, and 14, 17, 20, 23 are inadmissible
    nonsharp = [d for d in range(1, 41) if d % 3 != 2 and lambda_p(3, d).lam < lambda_p(3, d).tau]
    assert nonsharp == [16, 19]


def test_p_forms_are_sharp():
    for p in (2, 3, 5, 7):
        for i in range(9):
            for j in range(i + 1):
                d = p_sum(p, j, i)
                if not is_admissible(p, d):
                    # only P_0^i for p = 2, which is odd
                    continue
                rep = lambda_p(p, d)
                assert rep.lam == rep.tau == i + 1


@given(st.sampled_from([3, 5, 7, 11]), st.integers(1, 10**12))
def test_lambda_big_d(p, d):
    if d % p == p - 1:
        return
    rep = lambda_p(p, d)
    assert rep.tau == tau_log(p, d)
    assert rep.tau - rep.lam in (0, 1)
    assert lemma_lower_bound(p, d) <= rep.lam


@pytest.mark.parametrize("p, d, expected", [(3, 16, 2), (3, 25, 3), (3, 1, 1)])
def test_lemma_lower_bound(p, d, expected):
    assert lemma_lower_bound(p, d) == expected


def test_lemma_lower_bound_below_lambda():
    for p, d in admissible_pairs(1500):
        assert lemma_lower_bound(p, d) <= lambda_p(p, d).lam


@pytest.mark.parametrize(
    "delta, sep_degree, p, expected",
    [(16, 1, 3, 2), (32, 2, 3, 2), (25, 1, 3, 3), (0, 1, 3, 0), (32, 1, 5, 2)],
)
def test_sep_bound(delta, sep_degree, p, expected):
    assert sep_bound(SeparabilityQuery(delta, sep_degree, p)) == expected


def test_sep_bound_rejects_bad_queries():
    with pytest.raises(ValueError, match="divisible"):
        SeparabilityQuery(delta=3, sep_degree=1, p=5)
    with pytest.raises(NonAdmissibleError):
        sep_bound(SeparabilityQuery(delta=2, sep_degree=1, p=3))
