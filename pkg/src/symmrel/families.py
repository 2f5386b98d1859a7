"""Registry of symmetric-polynomial families built from complete Bell polynomials.

Each family is defined by a coefficient stream a_k and a normalization b_n:
the degree-n member over m variables is

    F_n(x_1..x_m) = b_n * BellPoly_n(f_1, ..., f_n),   f_k = a_k * p_k(x)

where p_k is the k-th power sum.  The streams come from the classical
exponential generating functions noted on each entry; the shift value s_0
at which the log-derivative stream was taken is recorded for documentation
only (the tabulated a_k already bake it in).

A fully symbolic family is also provided, with the a_k left as free
symbols, so identities can be verified for all coefficient streams at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Union

from .exactnum import FormalSeries, bernoulli_numbers, euler_poly_at_zero
from .polyring import KIND_A, MultiPoly, VarId
from .symmfunc import complete_bell, power_sum

__all__ = [
    "FamilySpec",
    "FAMILY_NAMES",
    "SYMBOLIC_NAME",
    "get_family",
    "family_coefficients",
    "family_polynomial",
    "symbolic_family_polynomial",
    "symbolic_coefficient_values",
]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    a_coeff: Callable[[int], Fraction]
    b_norm: Callable[[int], Fraction]
    s0: Fraction
    gf_note: str

    def coefficients(self, up_to: int) -> list[Fraction]:
        if up_to < 1:
            raise ValueError("need at least one coefficient")
        return [self.a_coeff(k) for k in range(1, up_to + 1)]


@lru_cache(maxsize=None)
def _bernoulli(k: int) -> Fraction:
    return bernoulli_numbers(k)[k]


def _bernoulli_a(k: int) -> Fraction:
    return Fraction((-1) ** (k - 1)) * _bernoulli(k) / k


def _t_a(k: int) -> Fraction:
    return Fraction((-1) ** k) * _bernoulli(k) / k


@lru_cache(maxsize=None)
def _log_j0_series(order: int) -> FormalSeries:
    # J_0(t) = sum (-1)^j (t/2)^(2j) / (j!)^2
    coeffs = []
    for n in range(order + 1):
        if n % 2:
            coeffs.append(Fraction(0))
        else:
            j = n // 2
            coeffs.append(Fraction((-1) ** j, 4**j * factorial(j) ** 2))
    return FormalSeries(coeffs).log()


def _legendre_a(k: int) -> Fraction:
    if k % 2:
        return Fraction(0)
    series = _log_j0_series(k)
    return series.coefficients[k] * factorial(k)


@lru_cache(maxsize=None)
def _euler_values(up_to: int) -> tuple:
    return tuple(euler_poly_at_zero(up_to))


def _euler_a(k: int) -> Fraction:
    if k == 1:
        return Fraction(-1, 2)
    return _euler_values(k)[k - 1] / 2


def _fibonacci_a(k: int) -> Fraction:
    # log(1/(1-t^2)) = sum t^(2j)/j, so the even-index stream is 2*(2j-1)!.
    if k % 2:
        return Fraction(0)
    return Fraction(2 * factorial(k - 1))


_one = lambda n: Fraction(1)
_inv_factorial = lambda n: Fraction(1, factorial(n))

_REGISTRY = {
    spec.name: spec
    for spec in (
        FamilySpec("legendre", _legendre_a, _one, Fraction(0), "e^(s*t) * J_0(t*sqrt(1-s^2))"),
        FamilySpec("laguerre", lambda k: Fraction(factorial(k - 1)), _inv_factorial, Fraction(0), "e^(-t*s/(1-t)) / (1-t)"),
        FamilySpec("hermite", lambda k: Fraction(-2) if k == 2 else Fraction(0), _one, Fraction(0), "e^(2*s*t - t^2)"),
        FamilySpec("fibonacci", _fibonacci_a, _inv_factorial, Fraction(0), "1 / (1 - x*t - t^2)"),
        FamilySpec("bernoulli", _bernoulli_a, _one, Fraction(0), "t * e^(s*t) / (e^t - 1)"),
        FamilySpec("t", _t_a, _one, Fraction(0), "(e^t - 1) / (t * e^(s*t))"),
        FamilySpec("euler", _euler_a, _one, Fraction(0), "2 * e^(s*t) / (e^t + 1)"),
        FamilySpec("bell", _one, _one, Fraction(1), "e^((e^t - 1)*s)"),
    )
}

FAMILY_NAMES = tuple(_REGISTRY)
SYMBOLIC_NAME = "symbolic"


def get_family(name: str) -> FamilySpec:
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        known = ", ".join(FAMILY_NAMES)
        raise KeyError(f"unknown family {name!r}; known families: {known}") from None


def family_coefficients(family: Union[FamilySpec, str], up_to: int) -> list[Fraction]:
    """The stream a_1..a_up_to of a registry family."""
    if isinstance(family, str):
        family = get_family(family)
    return family.coefficients(up_to)


def family_polynomial(family: Union[FamilySpec, str], n: int, m: int) -> MultiPoly:
    """The degree-n member of a family over m variables, fully expanded."""
    if isinstance(family, str):
        family = get_family(family)
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 1:
        raise ValueError("m must be >= 1")
    b_n = family.b_norm(n)
    if n == 0:
        return MultiPoly.constant(b_n)
    f = [family.a_coeff(k) * power_sum(k, m) for k in range(1, n + 1)]
    return b_n * complete_bell(n, f)


@lru_cache(maxsize=None)
def symbolic_family_polynomial(n: int, m: int) -> MultiPoly:
    """The generic degree-n member with the a_k left as free symbols."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 1:
        raise ValueError("m must be >= 1")
    if n == 0:
        return MultiPoly.one()
    f = [MultiPoly.a(k) * power_sum(k, m) for k in range(1, n + 1)]
    result = complete_bell(n, f)
    return result if isinstance(result, MultiPoly) else MultiPoly.constant(result)


def symbolic_coefficient_values(family: Union[FamilySpec, str], up_to: int) -> dict:
    """Assignment a_k -> family value, for specializing symbolic expansions."""
    if isinstance(family, str):
        family = get_family(family)
    return {VarId(KIND_A, k): family.a_coeff(k) for k in range(1, up_to + 1)}
