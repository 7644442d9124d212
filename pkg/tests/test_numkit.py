import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticeqm.errors import DomainError
from latticeqm.numkit import Accumulator, compensated_sum, ln_binomial, ln_gamma, log_sum_exp, safe_exp


def test_ln_gamma_examples():
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(2.0) == 0.0
    assert ln_gamma(11.0) == pytest.approx(math.log(3628800), rel=1e-15)


@pytest.mark.parametrize("z", [0.0, -1.0, -0.5])
def test_ln_gamma_rejects_non_positive(z):
    with pytest.raises(DomainError):
        ln_gamma(z)


def test_ln_gamma_relative_accuracy_against_mpmath():
    mp.mp.dps = 40
    zs = np.concatenate([
        np.linspace(0.5, 3.0, 251),
        [0.999999, 1.000001, 1.1, 1.9, 1.999999, 2.000001, 2.2],
        np.geomspace(3.0, 1e6, 200),
    ])
    worst = 0.0
    for z in zs:
        ref = mp.loggamma(mp.mpf(float(z)))
        if ref == 0:
            continue
        worst = max(worst, abs(float((mp.mpf(ln_gamma(float(z))) - ref) / ref)))
    assert worst <= 1e-14


def test_ln_gamma_vectorized_matches_scalar():
    zs = np.array([0.5, 1.0, 1.3, 2.0, 7.5, 1e5])
    vec = ln_gamma(zs)
    assert np.all(vec == np.array([ln_gamma(float(z)) for z in zs]))


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.5, max_value=1e5))
def test_ln_gamma_recurrence(z):
    lhs = ln_gamma(z + 1.0)
    rhs = ln_gamma(z) + math.log(z)
    assert abs(lhs - rhs) <= 1e-13 * max(abs(lhs), 1e-300) + 1e-15


def test_ln_binomial_examples():
    assert ln_binomial(4, 2) == pytest.approx(math.log(6), rel=1e-15)
    assert ln_binomial(17, 0) == 0.0
    assert ln_binomial(60, 30) == pytest.approx(math.log(118264581564861424), rel=1e-15)


def test_ln_binomial_rejects_k_above_n():
    with pytest.raises(DomainError):
        ln_binomial(3, 4)


def test_ln_binomial_relative_accuracy_large_n():
    mp.mp.dps = 40
    for n in (1001, 5000, 123457, 10**6):
        for k in (1, 2, 17, n // 3, n // 2, n - 5):
            ref = mp.log(mp.binomial(n, k))
            got = ln_binomial(n, k)
            assert abs(float((mp.mpf(got) - ref) / ref)) <= 1e-13, (n, k)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.data())
def test_ln_binomial_symmetric_exactly(n, data):
    k = data.draw(st.integers(min_value=0, max_value=n))
    assert ln_binomial(n, k) == ln_binomial(n, n - k)


def test_compensated_sum_examples():
    assert compensated_sum([1.0, -1.0]) == 0.0
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert abs(compensated_sum([0.1] * 10**6) - 100000.0) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(min_value=-1e12, max_value=1e12, allow_nan=False), min_size=1, max_size=60),
       st.randoms(use_true_random=False))
def test_accumulator_order_independent_within_bound(terms, rnd):
    exact = sum(Fraction(t) for t in terms)
    bound = 4 * np.finfo(float).eps * sum(abs(t) for t in terms)
    for _ in range(3):
        shuffled = list(terms)
        rnd.shuffle(shuffled)
        acc = Accumulator()
        acc.extend(shuffled)
        assert abs(Fraction(acc.value) - exact) <= Fraction(bound) + Fraction(1, 10**300)


def test_log_sum_exp_and_safe_exp():
    assert log_sum_exp([0.0, 0.0]) == pytest.approx(math.log(2.0), rel=1e-15)
    assert log_sum_exp([-1000.0, -1000.0]) == pytest.approx(-1000.0 + math.log(2.0), rel=1e-15)
    assert safe_exp(-1e5) == 0.0
    assert safe_exp(0.0) == 1.0
