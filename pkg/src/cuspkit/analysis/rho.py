"""Contraction functions, the fellow-travelling constants kappa and kappa', and the sublinearity verdict."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from ..errors import NotSublinearWithinRange, WindowTooLarge

Number = Union[int, Fraction]


@dataclass(frozen=True)
class SublinearEstimate:
    """Empirical contraction function on ``1..r_max`` (cumulative-maxed on construction).

    Evaluated as a step function ``rho(r) = table[floor(r)]`` with
    ``rho(r) = 0`` below 1.
    """

    table: dict[int, int]
    r_max: int
    samples_per_r: int = 0
    exhausted: bool = True

    def __post_init__(self) -> None:
        if self.r_max < 1:
            raise ValueError("r_max must be at least 1")
        running = 0
        table = {}
        for r in range(1, self.r_max + 1):
            v = int(self.table.get(r, 0))
            if v < 0:
                raise ValueError("contraction values must be non-negative")
            running = max(running, v)
            table[r] = running
        object.__setattr__(self, "table", table)

    def __call__(self, r) -> int:
        k = math.floor(r)
        if k < 1:
            return 0
        return self.table[min(k, self.r_max)]

    def as_dict(self) -> dict:
        return {
            "table": {str(r): v for r, v in self.table.items()},
            "r_max": self.r_max,
            "samples_per_r": self.samples_per_r,
            "exhausted": self.exhausted,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SublinearEstimate":
        return cls({int(k): int(v) for k, v in d["table"].items()}, int(d["r_max"]),
                   int(d.get("samples_per_r", 0)), bool(d.get("exhausted", True)))


@dataclass(frozen=True)
class PowerRho:
    """``rho(r) = c * r**p`` for ``0 <= p``; sublinear only when ``p < 1``."""

    c: Fraction
    p: Fraction = field(default=Fraction(0))

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "p", Fraction(self.p))
        if self.c < 0 or self.p < 0:
            raise ValueError("need c >= 0 and p >= 0")

    def __call__(self, r) -> float:
        return float(self.c) * float(r) ** float(self.p) if r > 0 else 0.0


def ConstantRho(c: Number = 0) -> PowerRho:
    return PowerRho(Fraction(c), Fraction(0))


def SqrtRho(c: Number = 1) -> PowerRho:
    return PowerRho(Fraction(c), Fraction(1, 2))


Rho = Union[SublinearEstimate, PowerRho]


def _rational_power(x: Fraction, e: Fraction) -> Fraction:
    """``x**e`` exactly when it is rational, else a close rational."""
    if x == 0:
        return Fraction(0)
    num, den = e.numerator, e.denominator
    base = x**num

    def iroot(n: int) -> int | None:
        r = round(n ** (1.0 / den))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**den == n:
                return cand
        return None

    a, b = iroot(base.numerator), iroot(base.denominator)
    if a is not None and b is not None:
        return Fraction(a, b)
    return Fraction(float(x) ** float(e)).limit_denominator(10**12)


def _table_threshold(rho: SublinearEstimate, K: Fraction) -> Fraction:
    # smallest k0 with K * rho(k) <= k for every integer k in [k0, r_max]
    k0 = None
    for k in range(rho.r_max, 0, -1):
        if K * rho.table[k] <= k:
            k0 = k
        else:
            break
    if k0 is None:
        raise NotSublinearWithinRange(
            f"3L^2 rho(r) <= r fails at r_max={rho.r_max} (rho={rho.table[rho.r_max]})"
        )
    if k0 == 1:
        return Fraction(0)
    # on [k0-1, k0) rho equals rho(k0-1), which fails at r = k0-1
    return min(Fraction(k0), K * rho.table[k0 - 1])


def contraction_threshold(rho: Rho, L: Number = 1) -> Fraction:
    """``inf{R > 0 : 3 L^2 rho(r) <= r for all r >= R}``."""
    L = Fraction(L)
    K = 3 * L * L
    if isinstance(rho, SublinearEstimate):
        return _table_threshold(rho, K)
    if rho.c == 0:
        return Fraction(0)
    if rho.p >= 1:
        raise NotSublinearWithinRange(f"rho = {rho.c} r^{rho.p} is not sublinear")
    return _rational_power(K * rho.c, 1 / (1 - rho.p))


def kappa(rho: Rho, L: Number = 1, A: Number = 0) -> Fraction:
    L, A = Fraction(L), Fraction(A)
    if L < 1 or A < 0:
        raise ValueError("need L >= 1 and A >= 0")
    return max(3 * A, 3 * L * L, 1 + contraction_threshold(rho, L))


def kappa_prime(rho: Rho, L: Number = 1, A: Number = 0) -> Fraction:
    L, A = Fraction(L), Fraction(A)
    return (L * L + 2) * (2 * kappa(rho, L, A) + A)


# ---------------------------------------------------------------------------
# Verdict
# ---------------------------------------------------------------------------


class Verdict(str, Enum):
    CONTRACTING = "contracting-consistent"
    NON_CONTRACTING = "non-contracting"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class VerdictReport:
    verdict: Verdict
    ratio: float
    first_mean: float
    last_mean: float
    final_slope: float

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "ratio": self.ratio if math.isfinite(self.ratio) else "inf",
            "first_mean": self.first_mean,
            "last_mean": self.last_mean,
            "final_slope": self.final_slope,
        }


def sublinearity_report(
    e: SublinearEstimate, window: int, factor: float = 0.75, tail: float = 0.25
) -> VerdictReport:
    if window < 1:
        raise ValueError("window must be positive")
    if e.r_max < 2 * window:
        raise WindowTooLarge(f"r_max={e.r_max} is below twice the window {window}")
    first = sum(e.table[r] / r for r in range(1, window + 1)) / window
    last = sum(e.table[r] / r for r in range(e.r_max - window + 1, e.r_max + 1)) / window
    if first == 0:
        ratio = 0.0 if last == 0 else math.inf
    else:
        ratio = last / first
    slope = e.table[e.r_max] / e.r_max
    if ratio > factor:
        v = Verdict.NON_CONTRACTING
    elif slope <= tail:
        v = Verdict.CONTRACTING
    else:
        v = Verdict.INCONCLUSIVE
    return VerdictReport(v, ratio, first, last, slope)


def sublinearity_verdict(
    e: SublinearEstimate, window: int, factor: float = 0.75, tail: float = 0.25
) -> Verdict:
    """Compare the mean of ``rho(r)/r`` on the last window with the first one."""
    return sublinearity_report(e, window, factor, tail).verdict
