"""Exact-coordinate lattice point sets L(alpha, N) and S(alpha, N).

L(alpha, N) is the N-point set {({n alpha}, n/N)}; S(alpha, N) is its 2N-point
symmetrization that adds ({-n alpha}, n/N) with multiplicity, i.e. the union
of L with its reflection about x = 1/2 (the two x = 0 points at n = 0 simply
repeat).  Coordinates are stored as scaled integers: x over the denominator q
(rational alpha) or 2^B (fixed-point alpha), y over N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Tuple, Union

from .alphas import Alpha
from .cf import PrecisionExhausted
from .fixedpoint import FixedPointReal


@dataclass(frozen=True)
class LatticePointSet:
    N: int
    symmetrized: bool
    x_num: tuple
    x_den: int
    y_num: tuple
    y_den: int
    x_err: Fraction = Fraction(0)  # bound on |stored x - true x|, per point

    def __post_init__(self):
        assert len(self.x_num) == len(self.y_num)

    @property
    def size(self) -> int:
        return len(self.x_num)

    def points(self) -> Iterator[Tuple[Fraction, Fraction]]:
        for xn, yn in zip(self.x_num, self.y_num):
            yield Fraction(xn, self.x_den), Fraction(yn, self.y_den)

    def float_points(self) -> Iterator[Tuple[float, float]]:
        for xn, yn in zip(self.x_num, self.y_num):
            yield xn / self.x_den, yn / self.y_den


def _value_of(alpha) -> Union[Fraction, FixedPointReal]:
    return alpha.value if isinstance(alpha, Alpha) else alpha


def _step_data(value, N: int):
    """(step, modulus, per-point error) so that the n-th x numerator is
    n*step mod modulus."""
    if isinstance(value, Fraction):
        v = value % 1
        return v.numerator, v.denominator, Fraction(0)
    if N > 1 and (N - 1) * value.err_ulp >= (1 << (value.bits // 2)):
        raise PrecisionExhausted("error budget overflow while building lattice")
    err = Fraction(max(N - 1, 0) * value.err_ulp, 1 << value.bits)
    return value.mantissa, 1 << value.bits, err


def build_L(alpha, N: int) -> LatticePointSet:
    """The N points ({n alpha}, n/N), n = 0..N-1, in n-order."""
    if N < 1:
        raise ValueError("N must be >= 1")
    step, mod, err = _step_data(_value_of(alpha), N)
    xs = []
    x = 0
    for _ in range(N):
        xs.append(x)
        x += step
        if x >= mod:
            x -= mod
    return LatticePointSet(N, False, tuple(xs), mod, tuple(range(N)), N, err)


def build_S(alpha, N: int) -> LatticePointSet:
    """The 2N-point multiset: for each n both ({n alpha}, n/N) and
    ({-n alpha}, n/N).  n = 0 contributes (0, 0) twice."""
    if N < 1:
        raise ValueError("N must be >= 1")
    step, mod, err = _step_data(_value_of(alpha), N)
    xs = []
    ys = []
    x = 0
    for n in range(N):
        xs.append(x)
        xs.append(mod - x if x else 0)
        ys.append(n)
        ys.append(n)
        x += step
        if x >= mod:
            x -= mod
    return LatticePointSet(N, True, tuple(xs), mod, tuple(ys), N, err)
