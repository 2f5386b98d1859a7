"""Power sums, power-sum products, complete Bell polynomials, and conversion
of symmetric polynomials into the power-sum-product basis.

The products ``P_{n,k} = p_1^k_1 * ... * p_n^k_n`` indexed by exponent
vectors k with parts <= m form a basis of the homogeneous symmetric
polynomials of degree n in m variables; :func:`to_power_sum_basis` inverts
that basis by an exact linear solve on monomial coefficients.  Coefficients
may themselves be polynomials in the ``a_i`` symbols (symbolic mode): the
matrix of the solve is always rational, so elimination never divides by a
polynomial.

The denominator product pi(v) of a variable vector is read as the plain
product of its components.  This reading is used in every relation built
here; it is validated by the fact that the degree-0 instances of the zero
relations reduce to exact identities under it (see the relations module).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence, Union

from .partitions import ExponentVector, exponent_vectors, vector_weight
from .polyring import KIND_A, KIND_X, MultiPoly, VarId

__all__ = [
    "PowerSumExpansion",
    "power_sum",
    "power_sum_product",
    "complete_bell",
    "complete_bell_sequence",
    "denominator_product",
    "to_power_sum_basis",
    "is_symmetric",
    "NotSymmetricError",
    "NotHomogeneousError",
    "NotRepresentableError",
]

Coefficient = Union[Fraction, int, MultiPoly]


class NotSymmetricError(ValueError):
    """The polynomial is not symmetric in x_1..x_m."""


class NotHomogeneousError(ValueError):
    """The polynomial is not homogeneous."""


class NotRepresentableError(ValueError):
    """No exact representation exists in the requested basis."""


@dataclass(frozen=True)
class PowerSumExpansion:
    """A symmetric polynomial written as sum c_k * p_1^k_1 ... p_n^k_n.

    ``coefficients`` maps exponent vectors (weight = ``weight``) to exact
    rationals, or to MultiPoly values in the a_i symbols in symbolic mode.
    The dict carries every key of its key set in listing order, including
    explicit zeros, so serialized tables have a stable positional layout.
    """

    weight: int
    num_vars: int
    coefficients: Mapping[ExponentVector, Coefficient] = field(default_factory=dict)

    def __post_init__(self):
        for key in self.coefficients:
            if vector_weight(key) != self.weight:
                raise ValueError(f"key {key} does not have weight {self.weight}")

    def is_zero(self) -> bool:
        return all(_coeff_is_zero(c) for c in self.coefficients.values())

    def coefficient(self, key: ExponentVector) -> Coefficient:
        return self.coefficients.get(key, Fraction(0))

    def to_polynomial(self) -> MultiPoly:
        """Expand back into the x variables (times any symbolic coefficients)."""
        out = MultiPoly.zero()
        for key, coeff in self.coefficients.items():
            if _coeff_is_zero(coeff):
                continue
            out = out + coeff * power_sum_product(key, self.num_vars)
        return out

    def map_coefficients(self, transform) -> "PowerSumExpansion":
        return PowerSumExpansion(
            self.weight,
            self.num_vars,
            {k: transform(c) for k, c in self.coefficients.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSumExpansion):
            return NotImplemented
        if self.weight != other.weight or self.num_vars != other.num_vars:
            return False
        keys = set(self.coefficients) | set(other.coefficients)
        return all(
            _coeff_eq(self.coefficient(k), other.coefficient(k)) for k in keys
        )


def _coeff_is_zero(c: Coefficient) -> bool:
    if isinstance(c, MultiPoly):
        return c.is_zero()
    return c == 0


def _coeff_eq(lhs: Coefficient, rhs: Coefficient) -> bool:
    if isinstance(lhs, MultiPoly) or isinstance(rhs, MultiPoly):
        if not isinstance(lhs, MultiPoly):
            lhs, rhs = rhs, lhs
        return lhs == rhs
    return lhs == rhs


@lru_cache(maxsize=None)
def power_sum(k: int, m: int) -> MultiPoly:
    """p_k(x_1..x_m) = x_1^k + ... + x_m^k."""
    if k < 1:
        raise ValueError("power sum index must be >= 1")
    if m < 1:
        raise ValueError("need at least one variable")
    return MultiPoly({(((VarId(KIND_X, i), k),), 1) for i in range(1, m + 1)})


@lru_cache(maxsize=None)
def power_sum_product(k: ExponentVector, m: int) -> MultiPoly:
    """The expanded product p_1^k_1 * p_2^k_2 * ... over m variables."""
    out = MultiPoly.one()
    for part, exp in enumerate(k, start=1):
        if exp:
            out = out * power_sum(part, m) ** exp
    return out


def power_sums_of(values: Sequence, up_to: int):
    """Power sums p_1..p_up_to of an explicit component vector.

    Components may be MultiPoly (rows of a substitution matrix) or exact
    rationals (numeric evaluation); the result list is 1-indexed via
    position 0 holding p_1.
    """
    if up_to < 1:
        return []
    sums = []
    powers = list(values)
    sums.append(_sum_all(powers))
    for _ in range(2, up_to + 1):
        powers = [p * v for p, v in zip(powers, values)]
        sums.append(_sum_all(powers))
    return sums


def _sum_all(items: Sequence):
    total = items[0]
    for item in items[1:]:
        total = total + item
    return total


def complete_bell(n: int, b: Sequence) -> Coefficient:
    """The n-th complete Bell polynomial evaluated at b_1..b_n.

    Works over any commutative ring: b entries may be Fractions or
    MultiPoly.  Defined by the recurrence
    B_{n+1} = sum_j C(n, j) * B_{n-j} * b_{j+1} with B_0 = 1.
    """
    return complete_bell_sequence(n, b)[n]


def complete_bell_sequence(n: int, b: Sequence) -> list:
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(b) < n:
        raise ValueError(f"need {n} ring elements, got {len(b)}")
    seq = [1]
    for step in range(n):
        acc = None
        for j in range(step + 1):
            term = comb(step, j) * seq[step - j] * b[j]
            acc = term if acc is None else acc + term
        seq.append(acc)
    return seq


def denominator_product(components: Sequence[MultiPoly]) -> MultiPoly:
    """Product of the components of a variable vector.

    This is the denominator normalization used by every relation in the
    package: for the plain variables it is x_1*...*x_m, for a substitution
    row it is the product of the row entries.
    """
    if not components:
        raise ValueError("need at least one component")
    out = MultiPoly.one()
    for c in components:
        out = out * c
    return out


def is_symmetric(p: MultiPoly, m: int) -> bool:
    """Check invariance under x_1<->x_2 and the full cycle x_1->x_2->...->x_1.

    The two substitutions generate the symmetric group, so this is a
    complete symmetry test with two substitutions instead of m!.
    """
    if m == 1:
        return True
    x = [VarId(KIND_X, i) for i in range(1, m + 1)]
    swap = {x[0]: MultiPoly.variable(x[1]), x[1]: MultiPoly.variable(x[0])}
    if p.substitute(swap) != p:
        return False
    cycle = {x[i]: MultiPoly.variable(x[(i + 1) % m]) for i in range(m)}
    return p.substitute(cycle) == p


def _split_x_part(p: MultiPoly):
    """Split every term into its x-monomial and the residual coefficient.

    Returns a dict x-monomial -> MultiPoly in the remaining (a) variables.
    Rejects y variables: basis conversion is only defined for the x ring
    with optional a-symbol coefficients.
    """
    rows: dict = {}
    for mono, coeff in p.terms.items():
        x_part = []
        rest = []
        for var, exp in mono:
            if var.kind == KIND_X:
                x_part.append((var, exp))
            elif var.kind == KIND_A:
                rest.append((var, exp))
            else:
                raise ValueError("basis conversion got a polynomial with y variables")
        bucket = rows.setdefault(tuple(x_part), {})
        key = tuple(rest)
        bucket[key] = bucket.get(key, 0) + coeff
    out = {}
    for mono, bucket in rows.items():
        poly = MultiPoly(bucket)
        if not poly.is_zero():
            out[mono] = poly
    return out


def to_power_sum_basis(
    p: MultiPoly,
    m: int,
    max_part: int,
    weight: int | None = None,
) -> PowerSumExpansion:
    """Write a symmetric homogeneous polynomial in the power-sum-product basis.

    Solves the exact linear system matching monomial coefficients against
    the basis products with parts <= max_part.  The basis must be
    independent (guaranteed for max_part <= m); an underdetermined system
    is rejected rather than resolved arbitrarily.  ``weight`` is only
    needed to fix the degree when p is the zero polynomial.
    """
    if p.is_zero():
        if weight is None:
            raise ValueError("the zero polynomial needs an explicit weight")
        keys = exponent_vectors(weight, max_part)
        return PowerSumExpansion(weight, m, {k: Fraction(0) for k in keys})
    # Homogeneity is measured in the x variables only; a-symbol factors in
    # the coefficients carry their own independent grading.
    x_degrees = {
        sum(e for v, e in mono if v.kind == KIND_X) for mono in p.terms
    }
    if len(x_degrees) > 1:
        raise NotHomogeneousError("polynomial is not homogeneous in the x variables")
    degree = x_degrees.pop()
    if weight is not None and weight != degree:
        raise ValueError(f"stated weight {weight} does not match degree {degree}")
    if not is_symmetric(p, m):
        raise NotSymmetricError(f"polynomial is not symmetric in x_1..x_{m}")

    keys = exponent_vectors(degree, max_part)
    basis_rows = [_split_x_part(power_sum_product(k, m)) for k in keys]
    target = _split_x_part(p)

    monomials = set(target)
    for row in basis_rows:
        monomials.update(row)
    monomials = sorted(monomials)

    # One rational matrix column per basis key; the right-hand side may be
    # symbolic (MultiPoly in a variables).
    zero = MultiPoly.zero()
    matrix = [
        [Fraction(basis_rows[j].get(mono, zero).constant_term()) for j in range(len(keys))]
        for mono in monomials
    ]
    rhs = [target.get(mono, zero) for mono in monomials]

    solution = _solve_rational_columns(matrix, rhs, len(keys))
    coefficients = {}
    for key, value in zip(keys, solution):
        coefficients[key] = _normalize_coefficient(value)
    return PowerSumExpansion(degree, m, coefficients)


def _normalize_coefficient(value: Coefficient) -> Coefficient:
    """Collapse constant polynomials to plain Fractions."""
    if isinstance(value, MultiPoly):
        if len(value.terms) == 0:
            return Fraction(0)
        if len(value.terms) == 1 and () in value.terms:
            return Fraction(value.constant_term())
        return value
    return Fraction(value)


def _solve_rational_columns(matrix, rhs, n_cols):
    """Gaussian elimination with a rational matrix and module-valued RHS.

    The RHS entries live in a vector space over the rationals (Fractions or
    a-symbol polynomials); row operations only ever scale them by exact
    rationals.  Raises NotRepresentableError on inconsistency and on an
    underdetermined column.
    """
    n_rows = len(matrix)
    rows = [list(r) for r in matrix]
    values = list(rhs)
    pivot_of_col: list = [None] * n_cols
    pivot_row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(pivot_row, n_rows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise NotRepresentableError(
                "basis is not independent: underdetermined column"
            )
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        values[pivot_row], values[pivot] = values[pivot], values[pivot_row]
        inv = Fraction(1) / rows[pivot_row][col]
        if inv != 1:
            rows[pivot_row] = [entry * inv for entry in rows[pivot_row]]
            values[pivot_row] = values[pivot_row] * inv
        for r in range(n_rows):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [
                    entry - factor * rows[pivot_row][c2]
                    for c2, entry in enumerate(rows[r])
                ]
                values[r] = values[r] - factor * values[pivot_row]
        pivot_of_col[col] = pivot_row
        pivot_row += 1
    for r in range(pivot_row, n_rows):
        if not _coeff_is_zero(values[r]):
            raise NotRepresentableError(
                "polynomial is outside the span of the requested basis"
            )
    return [values[pivot_of_col[col]] for col in range(n_cols)]
