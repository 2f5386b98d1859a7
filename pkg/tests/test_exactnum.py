from fractions import Fraction as F

import pytest

from symmrel.exactnum import FormalSeries, bernoulli_numbers, euler_poly_at_zero


def series(*coeffs):
    return FormalSeries([F(c) for c in coeffs])


class TestBernoulliNumbers:
    def test_first_values(self):
        assert bernoulli_numbers(0) == [F(1)]
        assert bernoulli_numbers(2) == [F(1), F(-1, 2), F(1, 6)]

    def test_odd_values_vanish(self):
        values = bernoulli_numbers(9)
        assert values[3] == values[5] == values[7] == values[9] == 0

    def test_frozen_inversion_oracle(self):
        # Expected values derived by inverting (e^t - 1)/t term by term.
        inv = FormalSeries([F(1, _fact(k + 1)) for k in range(9)]).inverse()
        expected = [inv.coefficients[k] * _fact(k) for k in range(9)]
        assert bernoulli_numbers(8) == expected

    def test_defining_series_identity(self):
        # t/(e^t - 1) * (e^t - 1)/t == 1 with B_n/n! as the left coefficients.
        n = 12
        values = bernoulli_numbers(n)
        left = FormalSeries([values[k] / _fact(k) for k in range(n + 1)])
        right = FormalSeries([F(1, _fact(k + 1)) for k in range(n + 1)])
        assert left * right == FormalSeries.one(n)

    def test_classical_recurrence(self):
        from math import comb

        values = bernoulli_numbers(20)
        for n in range(1, 20):
            assert sum(comb(n + 1, k) * values[k] for k in range(n + 1)) == 0

    def test_deterministic(self):
        assert bernoulli_numbers(15) == bernoulli_numbers(15)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bernoulli_numbers(-1)


class TestSeriesArithmetic:
    def test_mul_binomials(self):
        assert series(1, 1, 0) * series(1, -1, 0) == series(1, 0, -1)

    def test_mul_exponentials(self):
        n = 4
        e_plus = FormalSeries.exponential(n)
        e_minus = FormalSeries([F((-1) ** k, _fact(k)) for k in range(n + 1)])
        assert e_plus * e_minus == FormalSeries.one(n)

    def test_mul_bessel_square(self):
        # (1 - t^2/4 + t^4/64)^2 = 1 - t^2/2 + 3 t^4/32, by hand Cauchy product.
        j0 = series(1, 0, F(-1, 4), 0, F(1, 64))
        assert j0 * j0 == series(1, 0, F(-1, 2), 0, F(3, 32))

    def test_mul_order_mismatch(self):
        with pytest.raises(ValueError):
            series(1, 2) * series(1, 2, 3)

    def test_inverse_round_trip(self):
        s = series(1, 3, -2, F(1, 7), 5)
        assert s * s.inverse() == FormalSeries.one(4)

    def test_inverse_needs_unit(self):
        with pytest.raises(ValueError):
            series(0, 1).inverse()


class TestSeriesLog:
    def test_log_of_one(self):
        assert FormalSeries.one(5).log() == FormalSeries.zero(5)

    def test_log_of_exponential(self):
        log = FormalSeries.exponential(3).log()
        assert log == series(0, 1, 0, 0)

    def test_log_of_bessel(self):
        # J_0 = 1 - t^2/4 + t^4/64 - ...; log J_0 = -t^2/4 - t^4/64 - ...
        j0 = series(1, 0, F(-1, 4), 0, F(1, 64))
        assert j0.log() == series(0, 0, F(-1, 4), 0, F(-1, 64))

    def test_log_requires_unit_constant(self):
        with pytest.raises(ValueError):
            series(2, 1).log()

    def test_log_exp_round_trip(self):
        s = series(0, 2, F(-1, 3), 4, F(7, 5), -1)
        assert s.exp().log() == s
        u = series(1, F(1, 2), -3, F(2, 9), 1, F(-5, 4))
        assert u.log().exp() == u


class TestEulerValues:
    def test_first_values(self):
        values = euler_poly_at_zero(2)
        assert values[0] == 1
        assert values[1] == F(-1, 2)
        assert values[2] == 0

    def test_longer_stream(self):
        values = euler_poly_at_zero(7)
        assert values[3] == F(1, 4)
        assert values[5] == F(-1, 2)
        assert values[7] == F(17, 8)
        assert values[4] == values[6] == 0


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out
