"""Lattice point set construction."""

from fractions import Fraction

import pytest

from latdisc.alphas import Alpha
from latdisc.lattice import build_L, build_S


def test_single_point():
    L = build_L(Alpha.from_rational(2, 7), 1)
    assert list(L.points()) == [(Fraction(0), Fraction(0))]
    S = build_S(Alpha.from_rational(2, 7), 1)
    assert list(S.points()) == [(Fraction(0), Fraction(0))] * 2


def test_third():
    L = build_L(Fraction(1, 3), 3)
    assert list(L.points()) == [(Fraction(0), Fraction(0)),
                                (Fraction(1, 3), Fraction(1, 3)),
                                (Fraction(2, 3), Fraction(2, 3))]


def test_two_fifths_sequence():
    L = build_L(Fraction(2, 5), 5)
    assert [x for x, _ in L.points()] == [Fraction(0), Fraction(2, 5),
                                          Fraction(4, 5), Fraction(1, 5),
                                          Fraction(3, 5)]


def test_symmetrization_multiset():
    S = build_S(Fraction(1, 3), 3)
    assert sorted(S.points()) == sorted([
        (Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)),
        (Fraction(1, 3), Fraction(1, 3)), (Fraction(2, 3), Fraction(1, 3)),
        (Fraction(2, 3), Fraction(2, 3)), (Fraction(1, 3), Fraction(2, 3))])


def test_sizes(corpus):
    for alpha in corpus[:8]:
        for N in (1, 2, 17):
            assert build_L(alpha, N).size == N
            assert build_S(alpha, N).size == 2 * N


def test_reflection_property(corpus):
    # S is L plus its mirror x -> 1-x, with x = 0 fixed
    for alpha in corpus[:6]:
        L = build_L(alpha, 19)
        S = build_S(alpha, 19)
        mirror = []
        for x, y in L.points():
            mirror.append((x, y))
            mirror.append(((1 - x) % 1, y))
        assert sorted(mirror) == sorted(S.points())


def test_full_period_permutation():
    # for alpha = p/q and N = q the x coordinates hit every multiple of 1/q
    for (p, q) in ((2, 5), (13, 30), (211, 299)):
        L = build_L(Alpha.from_rational(p, q), q)
        assert sorted(x for x, _ in L.points()) == [Fraction(i, q) for i in range(q)]


def test_y_coordinates():
    S = build_S(Fraction(2, 7), 7)
    ys = [y for _, y in S.points()]
    assert ys == [Fraction(n, 7) for n in range(7) for _ in (0, 1)]


def test_invalid_N():
    with pytest.raises(ValueError):
        build_L(Fraction(1, 2), 0)


def test_realization_error_annotation():
    from fractions import Fraction as F
    from latdisc.alphas import Alpha
    from latdisc.discrepancy import realization_error

    phi = Alpha.from_surd(-1, 5, 2)
    S = build_S(phi, 100)
    assert 0 < S.x_err <= F(99 * 2, 2 ** 256)
    assert realization_error(S) == 5 * 200 * 200 * S.x_err
    assert build_L(Alpha.from_rational(2, 5), 5).x_err == 0
