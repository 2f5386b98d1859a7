"""Exact rational linear algebra and the coefficient solvers built on it.

Three solver layers live here:

* :func:`nullspace` -- fraction-free (Bareiss) elimination producing a
  primitive integer basis of the right kernel of an exact matrix;
* :func:`solve_c_coefficients` -- assembles the homogeneous linear system
  that makes every degree-(n-m) residue vanish for all 2 <= m <= n and
  parametrizes its solutions with the table's free-key convention (earliest
  keys in listing order stay free);
* :func:`sequential_a_elimination` -- walks the symbolic residue
  coefficients in increasing total order and eliminates each a_k in turn,
  which pins every a_k as a polynomial in a_1 and exposes the nonlinear
  relations among Bernoulli numbers checked by
  :func:`verify_nonlinear_bernoulli`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Optional, Sequence

from .exactnum import bernoulli_numbers
from .partitions import ExponentVector, exponent_vectors
from .polyring import KIND_A, MultiPoly, VarId
from .relations import extract_y_basis, extract_z
from .symmfunc import PowerSumExpansion

__all__ = [
    "ExactMatrix",
    "CSolution",
    "EliminationError",
    "nullspace",
    "solve_c_coefficients",
    "reconstruct_s_bar",
    "sequential_a_elimination",
    "verify_bernoulli_identity",
    "verify_nonlinear_bernoulli",
    "bernoulli_reconstruction_check",
    "AEliminationReport",
    "NonlinearRelationReport",
    "NONLINEAR_RELATIONS",
    "TABULATED_BERNOULLI_FREE_VALUES",
]


class EliminationError(ArithmeticError):
    """The sequential elimination hit an equation it cannot solve."""


@dataclass(frozen=True)
class ExactMatrix:
    """A dense matrix of exact rationals."""

    entries: tuple  # tuple of row tuples of Fraction

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def multiply_vector(self, vector: Sequence[Fraction]) -> list[Fraction]:
        return [
            sum((row[j] * vector[j] for j in range(self.cols)), Fraction(0))
            for row in self.entries
        ]


def _primitive(vector: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    denom = 1
    for v in vector:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vector]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


def nullspace(matrix: ExactMatrix) -> list[tuple[int, ...]]:
    """Basis of the right kernel, computed by fraction-free elimination.

    Rows are first cleared to integers; the Bareiss pivot scheme keeps every
    intermediate entry an exact integer (each division is exact).  Basis
    vectors are returned in primitive integer form, one per free column in
    column order.
    """
    rows = []
    for row in matrix.entries:
        denom = 1
        for v in row:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        rows.append([int(v * denom) for v in row])
    n_rows, n_cols = len(rows), matrix.cols

    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        pivot = None
        for i in range(r, n_rows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, n_rows):
            if not any(rows[i]):
                continue
            for j in range(n_cols):
                if j == c:
                    continue
                rows[i][j] = (rows[i][j] * rows[r][c] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        pivot_cols.append(c)
        r += 1
        if r == n_rows:
            break

    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vector = [Fraction(0)] * n_cols
        vector[free] = Fraction(1)
        for level in range(len(pivot_cols) - 1, -1, -1):
            c = pivot_cols[level]
            row = rows[level]
            acc = Fraction(0)
            for j in range(c + 1, n_cols):
                if row[j]:
                    acc += row[j] * vector[j]
            vector[c] = -acc / row[c]
        basis.append(_primitive(vector))
    return basis


# ---------------------------------------------------------------------------
# The C-coefficient family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CSolution:
    """Parametrized solution of the residue-vanishing system for one n.

    ``dependent`` maps each non-free key to the linear form giving its value
    over the free keys; substituting any free values yields a coefficient
    family whose residues vanish for every 2 <= m <= n.
    """

    n: int
    key_order: tuple
    free_keys: tuple
    dependent: Mapping[ExponentVector, Mapping[ExponentVector, Fraction]]
    equations: int

    @property
    def nullspace_dimension(self) -> int:
        return len(self.free_keys)

    def coefficient_map(self, free_values: Mapping[ExponentVector, Fraction]) -> dict:
        missing = [k for k in self.free_keys if k not in free_values]
        if missing:
            raise ValueError(f"missing free values for keys {missing}")
        out = {}
        for key in self.key_order:
            if key in self.dependent:
                out[key] = sum(
                    (coeff * Fraction(free_values[fk]) for fk, coeff in self.dependent[key].items()),
                    Fraction(0),
                )
            else:
                out[key] = Fraction(free_values[key])
        return out

    def basis_vectors(self) -> list[dict]:
        """One coefficient map per free key (that key 1, the others 0)."""
        out = []
        for fk in self.free_keys:
            values = {k: Fraction(1 if k == fk else 0) for k in self.free_keys}
            out.append(self.coefficient_map(values))
        return out


def residue_system(n: int) -> tuple[list[list[Fraction]], tuple]:
    """The equations 'every residue basis coefficient vanishes', as a matrix.

    One column per weight-n exponent vector in listing order; one row per
    (m, weight-(n-m) basis key with parts <= m) for m = 2..n.
    """
    keys = tuple(exponent_vectors(n, n))
    rows = []
    for m in range(2, n + 1):
        residues = {k: extract_y_basis(n, m, k) for k in keys}
        for basis_key in exponent_vectors(n - m, m):
            rows.append(
                [Fraction(residues[k].coefficient(basis_key)) for k in keys]
            )
    return rows, keys


@lru_cache(maxsize=None)
def solve_c_coefficients(n: int) -> CSolution:
    """Solve the vanishing system, keeping the earliest keys free.

    Gauss-Jordan elimination processes columns from the last key backwards,
    so pivots land on the latest keys and the leading keys of the listing
    order (the p_1-dominant products) remain the free parameters.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rows, keys = residue_system(n)
    n_cols = len(keys)
    work = [list(map(Fraction, row)) for row in rows]
    pivot_row_of_col: dict[int, int] = {}
    used_rows: set[int] = set()
    for col in range(n_cols - 1, -1, -1):
        pivot = None
        for r in range(len(work)):
            if r not in used_rows and work[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        used_rows.add(pivot)
        pivot_row_of_col[col] = pivot
        inv = 1 / work[pivot][col]
        work[pivot] = [v * inv for v in work[pivot]]
        for r in range(len(work)):
            if r != pivot and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [v - factor * p for v, p in zip(work[r], work[pivot])]
    free_keys = tuple(keys[c] for c in range(n_cols) if c not in pivot_row_of_col)
    dependent = {}
    for col, r in pivot_row_of_col.items():
        row = work[r]
        form = {}
        for c2 in range(n_cols):
            if c2 != col and row[c2] != 0:
                if c2 in pivot_row_of_col:
                    raise ArithmeticError("reduction left a dependent key in a pivot row")
                form[keys[c2]] = -row[c2]
        dependent[keys[col]] = form
    return CSolution(n, keys, free_keys, dependent, equations=len(rows))


def reconstruct_s_bar(
    n: int, free_values: Mapping[ExponentVector, Fraction]
) -> PowerSumExpansion:
    """Full coefficient family from values of the free keys.

    The resulting expansion has vanishing residues for every 2 <= m <= n;
    with the tabulated free values it reproduces the symmetric Bernoulli
    polynomials.  n = 1 has no equations and the single key stays free.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        key = (1,)
        if key not in free_values:
            raise ValueError("missing free value for key (1,)")
        return PowerSumExpansion(1, 1, {key: Fraction(free_values[key])})
    solution = solve_c_coefficients(n)
    values = solution.coefficient_map(free_values)
    return PowerSumExpansion(n, n, values)


# Free-key values for which the reconstruction gives the symmetric Bernoulli
# polynomials of matching degree.
TABULATED_BERNOULLI_FREE_VALUES: dict[int, dict] = {
    1: {(1,): Fraction(-1, 2)},
    2: {(2, 0): Fraction(1, 4)},
    3: {(3, 0, 0): Fraction(-1, 8)},
    4: {(4, 0, 0, 0): Fraction(1, 16), (2, 1, 0, 0): Fraction(-1, 8)},
    5: {(5, 0, 0, 0, 0): Fraction(-1, 32), (3, 1, 0, 0, 0): Fraction(5, 48)},
}


def bernoulli_reconstruction_check(n: int) -> bool:
    """True iff the tabulated free values reconstruct the Bernoulli expansion."""
    from .families import family_polynomial

    values = TABULATED_BERNOULLI_FREE_VALUES[n]
    expansion = reconstruct_s_bar(n, values)
    reconstructed = expansion.to_polynomial()
    return reconstructed == family_polynomial("bernoulli", n, expansion.num_vars)


# ---------------------------------------------------------------------------
# Sequential elimination of the a_k
# ---------------------------------------------------------------------------

_A_EQUATION_MAX_VARS = 4  # residue tables are taken over 2..4 variables


def _a_equations(max_total: int):
    """Residue coefficients as equations, in increasing total order n + m,
    then m, then the key listing order."""
    for total in range(2, max_total + 1):
        for m in range(2, min(_A_EQUATION_MAX_VARS, total) + 1):
            n = total - m
            expansion = extract_z(n, m)
            for key, coeff in expansion.coefficients.items():
                yield (total, m, n, key, coeff)


def sequential_a_elimination(max_index: int) -> dict[int, MultiPoly]:
    """Express a_2..a_max_index through a_1 by eliminating one index per step.

    Each non-trivial equation, after substituting the already-resolved
    indices, must be linear in its highest unresolved a_k with a nonzero
    rational coefficient; anything else is reported as an error rather than
    guessed around.  Equations that reduce to zero are consistency checks.
    """
    if max_index < 2:
        raise ValueError("max_index must be >= 2")
    resolved: dict[int, MultiPoly] = {}
    for total, m, n, key, coeff in _a_equations(max_index):
        equation = coeff if isinstance(coeff, MultiPoly) else MultiPoly.constant(coeff)
        if resolved:
            substitution = {VarId(KIND_A, k): poly for k, poly in resolved.items()}
            equation = equation.substitute(substitution)
        if equation.is_zero():
            continue
        top = max(
            (v.index for mono in equation.terms for v, _ in mono if v.kind == KIND_A),
            default=0,
        )
        if top <= 1 or top in resolved:
            raise EliminationError(
                f"equation ({n}, {m}, key {key}) reduced to a nonzero constraint "
                f"on already-resolved symbols: {equation}"
            )
        linear_coeff = Fraction(0)
        rest = MultiPoly.zero()
        top_var = VarId(KIND_A, top)
        for mono, c in equation.terms.items():
            exps = dict(mono)
            power = exps.get(top_var, 0)
            if power == 0:
                rest = rest + MultiPoly({(mono, c)})
            elif power == 1 and len(exps) == 1:
                linear_coeff += Fraction(c)
            else:
                raise EliminationError(
                    f"equation ({n}, {m}, key {key}) is not linear in a_{top} "
                    f"with a rational coefficient: {equation}"
                )
        if linear_coeff == 0:
            raise EliminationError(
                f"equation ({n}, {m}, key {key}) has zero coefficient on a_{top}"
            )
        resolved[top] = rest.scale(Fraction(-1) / linear_coeff)
        if all(k in resolved for k in range(2, max_index + 1)):
            # Later equations only re-confirm; stop once everything is pinned.
            break
    missing = [k for k in range(2, max_index + 1) if k not in resolved]
    if missing:
        raise EliminationError(f"equations up to total {max_index} left {missing} unresolved")
    return {k: resolved[k] for k in sorted(resolved) if k <= max_index}


@dataclass
class AEliminationReport:
    entries: list = field(default_factory=list)  # (index, computed, expected, ok)
    all_ok: bool = True

    def to_json(self):
        return {
            "entries": [
                {"index": k, "computed": str(c), "expected": str(e), "ok": ok}
                for k, c, e, ok in self.entries
            ],
            "all_ok": self.all_ok,
        }


def verify_bernoulli_identity(max_index: int) -> AEliminationReport:
    """Check that the eliminated stream matches -(2 a_1)^k B_k / k exactly."""
    stream = sequential_a_elimination(max_index)
    bernoulli = bernoulli_numbers(max_index)
    a1 = MultiPoly.a(1)
    report = AEliminationReport()
    for k in range(2, max_index + 1):
        expected = (a1**k).scale(Fraction(-(2**k)) * bernoulli[k] / k)
        computed = stream[k]
        ok = computed == expected
        report.entries.append((k, computed, expected, ok))
        report.all_ok = report.all_ok and ok
    return report


# ---------------------------------------------------------------------------
# Nonlinear relations among Bernoulli numbers
# ---------------------------------------------------------------------------

# Each relation is a list of (rational coefficient, ((index, power), ...)).
NONLINEAR_RELATIONS: list[tuple[str, list]] = [
    (
        "B_1^2 - 3*B_2/2",
        [(Fraction(1), ((1, 2),)), (Fraction(-3, 2), ((2, 1),))],
    ),
    (
        "B_1^4 - 15*B_1^2*B_2 + 63*B_2^2/4 - 15*B_4/4",
        [
            (Fraction(1), ((1, 4),)),
            (Fraction(-15), ((1, 2), (2, 1))),
            (Fraction(63, 4), ((2, 2),)),
            (Fraction(-15, 4), ((4, 1),)),
        ],
    ),
    (
        "B_1^4 + B_1^2*B_2 - 9*B_2^2/4 + 5*B_4/4",
        [
            (Fraction(1), ((1, 4),)),
            (Fraction(1), ((1, 2), (2, 1))),
            (Fraction(-9, 4), ((2, 2),)),
            (Fraction(5, 4), ((4, 1),)),
        ],
    ),
    (
        "10*B_1^6 - 135*B_1^4*B_2 - 135*B_1^2*B_2^2/2 + 585*B_2^3/4"
        " - 75*B_1^2*B_4/2 - 405*B_2*B_4/4 + 7*B_6",
        [
            (Fraction(10), ((1, 6),)),
            (Fraction(-135), ((1, 4), (2, 1))),
            (Fraction(-135, 2), ((1, 2), (2, 2))),
            (Fraction(585, 4), ((2, 3),)),
            (Fraction(-75, 2), ((1, 2), (4, 1))),
            (Fraction(-405, 4), ((2, 1), (4, 1))),
            (Fraction(7), ((6, 1),)),
        ],
    ),
    (
        "8*B_1^6 + 21*B_1^4*B_2 + 105*B_1^2*B_2^2 - 105*B_2^3/4"
        " + 35*B_1^2*B_4 + 315*B_2*B_4/4 - 28*B_6/3",
        [
            (Fraction(8), ((1, 6),)),
            (Fraction(21), ((1, 4), (2, 1))),
            (Fraction(105), ((1, 2), (2, 2))),
            (Fraction(-105, 4), ((2, 3),)),
            (Fraction(35), ((1, 2), (4, 1))),
            (Fraction(315, 4), ((2, 1), (4, 1))),
            (Fraction(-28, 3), ((6, 1),)),
        ],
    ),
    (
        "8*B_1^6 - 294*B_1^4*B_2 + 2100*B_1^2*B_2^2 - 2205*B_2^3/2"
        " - 560*B_1^2*B_4 + 2835*B_2*B_4/2 - 140*B_6",
        [
            (Fraction(8), ((1, 6),)),
            (Fraction(-294), ((1, 4), (2, 1))),
            (Fraction(2100), ((1, 2), (2, 2))),
            (Fraction(-2205, 2), ((2, 3),)),
            (Fraction(-560), ((1, 2), (4, 1))),
            (Fraction(2835, 2), ((2, 1), (4, 1))),
            (Fraction(-140), ((6, 1),)),
        ],
    ),
]


@dataclass
class NonlinearRelationReport:
    entries: list = field(default_factory=list)  # (label, value, ok)
    all_ok: bool = True

    def to_json(self):
        return {
            "relations": [
                {"relation": label, "value": str(value), "ok": ok}
                for label, value, ok in self.entries
            ],
            "all_ok": self.all_ok,
        }


def verify_nonlinear_bernoulli(
    relations: Optional[Sequence] = None,
) -> NonlinearRelationReport:
    """Evaluate the built-in nonlinear relations with exact Bernoulli numbers."""
    if relations is None:
        relations = NONLINEAR_RELATIONS
    top = max(index for _, terms in relations for _, monos in terms for index, _ in monos)
    values = bernoulli_numbers(top)
    report = NonlinearRelationReport()
    for label, terms in relations:
        total = Fraction(0)
        for coeff, monos in terms:
            product = coeff
            for index, power in monos:
                product *= values[index] ** power
            total += product
        ok = total == 0
        report.entries.append((label, total, ok))
        report.all_ok = report.all_ok and ok
    return report
