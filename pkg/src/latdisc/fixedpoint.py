"""Certified fixed-point evaluation of alpha, {n alpha}, ||m alpha|| and
the running sums T_n = sum_{l<=n} (1/2 - {l alpha}).

A FixedPointReal stores the fractional part of a real as an integer mantissa
at resolution 2^-B together with an explicit error counter in ulps.  Rational
alphas never go through fixed point: every operation has an exact big-rational
path, which is what the rational lattice experiments rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .cf import ContinuedFraction, Finite, PrecisionExhausted, iter_convergents

DEFAULT_BITS = 256


@dataclass(frozen=True)
class FixedPointReal:
    """Fractional part of a real: mantissa/2^bits, off by <= err_ulp ulps."""

    mantissa: int
    bits: int
    err_ulp: int = 0

    def __post_init__(self):
        if not 0 <= self.mantissa < (1 << self.bits):
            raise ValueError("mantissa out of range for bit width")
        if self.err_ulp < 0:
            raise ValueError("err_ulp must be >= 0")

    def to_float(self) -> float:
        return self.mantissa / (1 << self.bits)

    def as_fraction(self) -> Fraction:
        """The stored (representation) value, exactly."""
        return Fraction(self.mantissa, 1 << self.bits)

    def bounds(self) -> Tuple[Fraction, Fraction]:
        """Certified enclosure of the true value."""
        d = 1 << self.bits
        return (Fraction(self.mantissa - self.err_ulp, d),
                Fraction(self.mantissa + self.err_ulp, d))


RealValue = Union[Fraction, FixedPointReal]


def eval_alpha(cf: ContinuedFraction, bits: int = DEFAULT_BITS) -> FixedPointReal:
    """Fractional part of the value of an expansion, certified to 2^(1-bits).

    Convergents are expanded until q_k^2 > 2^(bits+8), at which point
    |alpha - p_k/q_k| < 1/q_k^2 gives well under one ulp of error; the floor
    in the final division costs at most one more ulp.  Finite expansions are
    converted exactly.  A Truncated expansion that runs out first raises
    PrecisionExhausted.
    """
    target = 1 << (bits + 8)
    last = None
    for conv in iter_convergents(cf):
        last = conv
        if conv.k >= 2 and conv.q * conv.q > target:
            break
    else:
        if isinstance(cf.body, Finite):
            pf = last.p % last.q
            num = pf << bits
            mant, rem = divmod(num, last.q)
            return FixedPointReal(mant, bits, 0 if rem == 0 else 1)
        raise PrecisionExhausted(
            f"expansion exhausted before reaching {bits} certified bits"
        )
    pf = last.p % last.q
    mant = (pf << bits) // last.q
    return FixedPointReal(mant, bits, 2)


def frac_multiple(x: RealValue, n: int) -> RealValue:
    """Fractional part of n*x.  Exact for Fraction input; for fixed point the
    error counter scales with n and precision-exhaustion is flagged once the
    budget reaches 2^(bits/2)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(x, Fraction):
        return (n * x) % 1
    err = n * x.err_ulp
    if n > 0 and err >= (1 << (x.bits // 2)):
        raise PrecisionExhausted("error budget overflow in frac_multiple")
    return FixedPointReal((n * x.mantissa) % (1 << x.bits), x.bits,
                          err if n > 0 else 0)


def dist_to_int(x: RealValue) -> RealValue:
    """Distance to the nearest integer, same error bound."""
    if isinstance(x, Fraction):
        f = x % 1
        return min(f, 1 - f)
    half = 1 << x.bits
    return FixedPointReal(min(x.mantissa, half - x.mantissa), x.bits, x.err_ulp)


@dataclass(frozen=True)
class BirkhoffSums:
    """T_0..T_{N-1} and their average E_N, exact in the representation.

    For fixed-point alpha the entries are the exact values computed from the
    stored mantissa; err_bound limits how far each can sit from the true T_n.
    """

    N: int
    T: tuple
    E: Fraction
    err_bound: float

    def __post_init__(self):
        assert self.E * self.N == sum(self.T)


def _scaled_running_sums(value: RealValue, N: int):
    """Integers u_0..u_{N-1} and scale D with T_n = u_n / D, plus the step
    (p-like, mod-like) data.  Exact integer arithmetic throughout."""
    u = []
    if isinstance(value, Fraction):
        p, q = value.numerator % value.denominator, value.denominator
        D = 2 * q
        v = 0  # n*p mod q
        s = 0
        for _ in range(N):
            s += q - 2 * v
            u.append(s)
            v += p
            if v >= q:
                v -= q
        return u, D, 0.0
    B = value.bits
    modulus = 1 << B
    D = modulus << 1
    m = 0  # n*mantissa mod 2^B
    s = 0
    for _ in range(N):
        s += modulus - 2 * m
        u.append(s)
        m += value.mantissa
        if m >= modulus:
            m -= modulus
    # each {l*alpha} is off by <= l*err ulps, so T_n is off by <= n^2 * err ulps
    err = value.err_ulp * N * N / modulus
    return u, D, err


def birkhoff_sums(value: RealValue, N: int) -> BirkhoffSums:
    """Running sums T_n = sum_{l=0}^{n} (1/2 - {l alpha}) for n < N, and
    their average.  O(N), exact for rational alpha."""
    if N < 1:
        raise ValueError("N must be >= 1")
    u, D, err = _scaled_running_sums(value, N)
    T = tuple(Fraction(x, D) for x in u)
    E = Fraction(sum(u), D * N)
    return BirkhoffSums(N, T, E, err)


def starred_sums(p: int, q: int) -> BirkhoffSums:
    """Exact rational sums T*_n = sum_{l=0}^{n} (1/2 - 1/(2q) - {l p/q})
    for n < q, with average E*_q.  Requires gcd(p, q) = 1."""
    from math import gcd
    if q < 1 or gcd(p, q) != 1:
        raise ValueError("need q >= 1 and gcd(p, q) = 1")
    p %= q
    D = 2 * q
    v = 0
    s = 0
    u = []
    for _ in range(q):
        s += q - 1 - 2 * v
        u.append(s)
        v += p
        if v >= q:
            v -= q
    T = tuple(Fraction(x, D) for x in u)
    E = Fraction(sum(u), D * q)
    return BirkhoffSums(q, T, E, 0.0)


def birkhoff_mean(value: RealValue, N: int) -> Tuple[Fraction, float]:
    """E_N in the representation, plus an error bound for fixed point."""
    u, D, err = _scaled_running_sums(value, N)
    return Fraction(sum(u), D * N), err


def birkhoff_quad_block(value: RealValue, N: int):
    """(1/N) sum_n (T_n^2 + T_n/2) together with sum statistics.

    Returns (block, E, var, err) where block and var = (1/N) sum (T_n - E)^2
    are exact Fractions of the representation and err bounds the drift of the
    block for fixed-point alpha (zero for rationals).
    """
    u, D, err = _scaled_running_sums(value, N)
    su = sum(u)
    su2 = sum(x * x for x in u)
    block = Fraction(2 * su2 + D * su, 2 * D * D * N)
    E = Fraction(su, D * N)
    var = Fraction(su2, D * D * N) - E * E
    if err:
        tmax = max(abs(min(u)), abs(max(u))) / D
        err = (2.0 * tmax + err + 0.5) * err
    return block, E, var, err
