"""Exact parameter arithmetic for t-(v,k,lambda) designs.

Everything here works on Python ints and :class:`fractions.Fraction`, so no
value is ever rounded. Indices are always kept in absolute units; the
``m * lambda_min`` notation is only a presentation concern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm

__all__ = [
    "DesignParams",
    "binom",
    "lambda_s_coefficient",
    "lambda_s",
    "lambda_spectrum",
    "lambda_min",
    "lambda_max",
    "m_max",
    "lim_bound",
    "complement_lambda",
    "supplement_lambda",
]


def binom(n: int, r: int) -> int:
    """Binomial coefficient that is zero outside ``0 <= r <= n``."""
    if n < 0 or r < 0 or r > n:
        return 0
    return comb(n, r)


def _check_tkv(t: int, k: int, v: int) -> None:
    if not (v >= k >= t >= 0):
        raise ValueError(f"need v >= k >= t >= 0, got t={t}, k={k}, v={v}")


def lambda_s_coefficient(t: int, v: int, k: int, s: int) -> Fraction:
    """Ratio lambda_s / lambda_t, i.e. C(v-s, t-s) / C(k-s, t-s)."""
    if not 0 <= s <= t:
        raise ValueError(f"s must lie in 0..{t}, got {s}")
    return Fraction(binom(v - s, t - s), binom(k - s, t - s))


def lambda_min(t: int, k: int, v: int) -> int:
    """Smallest positive index meeting every divisibility condition."""
    _check_tkv(t, k, v)
    out = 1
    for s in range(t + 1):
        den = binom(k - s, t - s)
        out = lcm(out, den // gcd(den, binom(v - s, t - s)))
    return out


def lambda_max(t: int, k: int, v: int) -> int:
    """Index of the complete design."""
    _check_tkv(t, k, v)
    return binom(v - t, k - t)


def m_max(t: int, k: int, v: int) -> int:
    """lambda_max expressed as a multiple of lambda_min."""
    return lambda_max(t, k, v) // lambda_min(t, k, v)


def lim_bound(t: int, k: int, v: int) -> int:
    """Largest multiplier m with m * lambda_min <= lambda_max / 2."""
    return lambda_max(t, k, v) // (2 * lambda_min(t, k, v))


@dataclass(frozen=True)
class DesignParams:
    """Parameter set t-(v, k, lam).

    ``lam = 0`` is accepted and stands for the empty block collection, which
    is what the supplement of a complete design has.
    """

    t: int
    v: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        _check_tkv(self.t, self.k, self.v)
        if self.lam < 0:
            raise ValueError(f"index must be non-negative, got {self.lam}")
        if self.lam % lambda_min(self.t, self.k, self.v):
            raise ValueError(
                f"{self} fails the divisibility conditions "
                f"(lambda_min = {lambda_min(self.t, self.k, self.v)})"
            )

    @property
    def m(self) -> int:
        return self.lam // lambda_min(self.t, self.k, self.v)

    def __str__(self) -> str:
        return f"{self.t}-({self.v},{self.k},{self.lam})"


def lambda_s(params: DesignParams, s: int) -> Fraction:
    """Number of blocks through any s-subset, 0 <= s <= t."""
    return params.lam * lambda_s_coefficient(params.t, params.v, params.k, s)


def lambda_spectrum(params: DesignParams) -> list[int]:
    """[lambda_0, ..., lambda_t]; integral by construction of DesignParams."""
    out = []
    for s in range(params.t + 1):
        val = lambda_s(params, s)
        assert val.denominator == 1
        out.append(val.numerator)
    return out


def complement_lambda(params: DesignParams) -> DesignParams:
    """Parameters of the design obtained by complementing every block."""
    t, v, k = params.t, params.v, params.k
    if v - k < t:
        raise ValueError(f"complement of {params} has block size {v - k} < t")
    star = Fraction(params.lam * binom(v - k, t), binom(k, t))
    if star.denominator != 1:
        raise ValueError(f"non-integral complement index {star} for {params}")
    return DesignParams(t, v, v - k, star.numerator)


def supplement_lambda(params: DesignParams) -> DesignParams:
    """Parameters of the k-subsets missing from a simple design."""
    top = lambda_max(params.t, params.k, params.v)
    if params.lam > top:
        raise ValueError(f"{params} exceeds lambda_max = {top}")
    return DesignParams(params.t, params.v, params.k, top - params.lam)
