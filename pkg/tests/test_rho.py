from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspkit.analysis.rho import (
    ConstantRho,
    PowerRho,
    SqrtRho,
    SublinearEstimate,
    Verdict,
    contraction_threshold,
    kappa,
    kappa_prime,
    sublinearity_verdict,
)
from cuspkit.errors import NotSublinearWithinRange, WindowTooLarge


@pytest.mark.parametrize(
    "rho,L,A,k",
    [(ConstantRho(0), 1, 0, 3), (ConstantRho(0), 2, 1, 12), (SqrtRho(), 1, 0, 10), (ConstantRho(2), 1, 0, 7)],
)
def test_kappa_closed_forms(rho, L, A, k):
    assert kappa(rho, L, A) == k


def test_kappa_with_irrational_threshold():
    # 3 r^(1/3) <= r  iff  r >= 3^(3/2)
    assert abs(float(kappa(PowerRho(1, Fraction(1, 3)))) - (1 + 3**1.5)) < 1e-9


def test_kappa_prime_follows_its_formula():
    for rho, L, A in [(ConstantRho(0), 1, 0), (ConstantRho(0), 2, 1), (SqrtRho(), 1, 0)]:
        L_, A_ = Fraction(L), Fraction(A)
        assert kappa_prime(rho, L, A) == (L_ * L_ + 2) * (2 * kappa(rho, L, A) + A_)
    assert kappa_prime(ConstantRho(0), 2, 1) == 150
    assert kappa_prime(SqrtRho(), 1, 0) == 60
    assert kappa_prime(ConstantRho(0), 1, 0) == 18


def test_rational_L_and_A():
    assert kappa(ConstantRho(0), Fraction(3, 2), Fraction(5, 2)) == Fraction(15, 2)
    assert kappa(SqrtRho(), 2, 0) == 1 + 144


def test_not_sublinear():
    with pytest.raises(NotSublinearWithinRange):
        kappa(PowerRho(1, 1))
    with pytest.raises(NotSublinearWithinRange):
        kappa(SublinearEstimate({r: r for r in range(1, 11)}, 10))
    with pytest.raises(ValueError):
        kappa(ConstantRho(0), Fraction(1, 2), 0)


@st.composite
def tables(draw):
    r_max = draw(st.integers(1, 40))
    steps = draw(st.lists(st.integers(0, 2), min_size=r_max, max_size=r_max))
    vals, acc = {}, 0
    for r, s in zip(range(1, r_max + 1), steps):
        acc += s if draw(st.booleans()) else 0
        vals[r] = acc
    return SublinearEstimate(vals, r_max)


@given(tables(), st.sampled_from([1, 2]))
def test_table_threshold_against_grid_scan(rho, L):
    """The infimum by a 1/4-grid scan of the step function, checked up to r_max."""
    K = 3 * L * L
    grid = [Fraction(j, 4) for j in range(0, 4 * rho.r_max + 1)]
    ok = [K * rho(r) <= r for r in grid]
    if not ok[-1]:
        with pytest.raises(NotSublinearWithinRange):
            contraction_threshold(rho, L)
        return
    first = len(ok)
    while first > 0 and ok[first - 1]:
        first -= 1
    brute = grid[first] if first < len(grid) else None
    got = contraction_threshold(rho, L)
    # K * rho is an integer, so the true infimum is an integer and lands on the grid
    assert got == brute


def test_estimate_is_cumulative_maxed():
    e = SublinearEstimate({1: 2, 2: 0, 3: 5, 4: 1}, 4)
    assert e.table == {1: 2, 2: 2, 3: 5, 4: 5}
    assert e(0.5) == 0 and e(3.9) == 5 and e(100) == 5
    assert SublinearEstimate.from_dict(e.as_dict()) == e


def test_verdicts():
    zero = SublinearEstimate({}, 20)
    assert sublinearity_verdict(zero, 5) is Verdict.CONTRACTING
    linear = SublinearEstimate({r: r - 1 for r in range(1, 101)}, 100)
    assert sublinearity_verdict(linear, 10) is Verdict.NON_CONTRACTING
    sqrt = SublinearEstimate({r: math.ceil(math.sqrt(r)) for r in range(1, 101)}, 100)
    assert sublinearity_verdict(sqrt, 10) is Verdict.CONTRACTING
    # decays but still too steep at the end
    steep = SublinearEstimate({r: min(r, 6) for r in range(1, 13)}, 12)
    assert sublinearity_verdict(steep, 3) is Verdict.INCONCLUSIVE
    with pytest.raises(WindowTooLarge):
        sublinearity_verdict(sqrt, 51)
