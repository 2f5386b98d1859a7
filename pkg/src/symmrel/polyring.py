"""Sparse multivariate polynomials over exact rationals.

Three variable families exist, ordered x < y < a with ascending index:

* ``x_i`` -- the main indeterminates of the symmetric polynomials,
* ``y_i`` -- the auxiliary variables of the row-substitution matrix,
* ``a_i`` -- free coefficient symbols for fully symbolic expansions.

A monomial is a tuple of ``(VarId, exponent)`` pairs sorted by variable with
no zero exponents; a polynomial is a dict monomial -> nonzero coefficient.
Coefficients are ints or Fractions (both exact; ints are kept as ints for
speed).  The canonical term order is graded lexicographic: higher total
degree first, ties broken so that a higher power on an earlier variable
wins.  Polynomials are immutable values: operations return new objects and
never mutate their inputs, so instances are safe to share across threads.

Expansions are guarded by a configurable term cap (default 10**7 terms,
overridable via ``set_term_cap`` or the SYMMREL_TERM_CAP environment
variable); a product whose estimated size exceeds the cap raises
:class:`TermCapExceeded` instead of exhausting memory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

__all__ = [
    "KIND_X",
    "KIND_Y",
    "KIND_A",
    "VarId",
    "Monomial",
    "MultiPoly",
    "RationalFunction",
    "TermCapExceeded",
    "NonDivisibleError",
    "MissingVariableError",
    "ratfunc_combine",
    "get_term_cap",
    "set_term_cap",
]

KIND_X = 0
KIND_Y = 1
KIND_A = 2
_KIND_NAMES = ("x", "y", "a")

Scalar = Union[int, Fraction]


class VarId(NamedTuple):
    kind: int
    index: int

    def __repr__(self) -> str:
        return f"{_KIND_NAMES[self.kind]}_{self.index}"


Monomial = tuple  # tuple[(VarId, int), ...] sorted by VarId, exponents > 0


class TermCapExceeded(RuntimeError):
    """An expansion would exceed the configured term budget."""


class NonDivisibleError(ArithmeticError):
    """Exact division failed: the remainder is nonzero.

    ``remainder`` carries the offending part when the division routine has
    it at hand (None otherwise); relation checks surface it as the
    counterexample witness.
    """

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class MissingVariableError(ValueError):
    """Evaluation assignment does not cover a variable of the polynomial."""


_DEFAULT_TERM_CAP = 10**7
_term_cap = int(os.environ.get("SYMMREL_TERM_CAP", _DEFAULT_TERM_CAP))


def get_term_cap() -> int:
    return _term_cap


def set_term_cap(cap: int) -> None:
    """Set the global expansion guard; intended for startup configuration."""
    global _term_cap
    if cap < 1:
        raise ValueError("term cap must be positive")
    _term_cap = cap


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    if i < n1:
        out.extend(m1[i:])
    if j < n2:
        out.extend(m2[j:])
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def term_sort_key(m: Monomial):
    """Sort key realizing the canonical graded-lex order (descending)."""
    return (-_mono_degree(m), tuple((v, -e) for v, e in m))


def _mono_divides(m1: Monomial, m2: Monomial) -> bool:
    """True if monomial m1 divides m2."""
    it = iter(m2)
    for v1, e1 in m1:
        for v2, e2 in it:
            if v2 == v1:
                if e2 < e1:
                    return False
                break
            if v2 > v1:
                return False
        else:
            return False
    return True


def _mono_quotient(m2: Monomial, m1: Monomial) -> Monomial:
    """m2 / m1, assuming m1 divides m2."""
    need = dict(m1)
    out = []
    for v, e in m2:
        d = need.get(v, 0)
        if e > d:
            out.append((v, e - d))
    return tuple(out)


def _coerce_scalar(value) -> Scalar:
    if isinstance(value, (int, Fraction)):
        return value
    raise TypeError(f"expected an int or Fraction coefficient, got {type(value).__name__}")


class MultiPoly:
    """Immutable sparse multivariate polynomial with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        data: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            coeff = _coerce_scalar(coeff)
            if coeff == 0:
                continue
            mono = tuple(sorted((VarId(*v), int(e)) for v, e in mono if e != 0))
            if any(e < 0 for _, e in mono):
                raise ValueError(f"negative exponent in monomial {mono}")
            acc = data.get(mono)
            if acc is None:
                data[mono] = coeff
            else:
                acc = acc + coeff
                if acc:
                    data[mono] = acc
                else:
                    del data[mono]
        self._terms = data

    @classmethod
    def _raw(cls, data: dict) -> "MultiPoly":
        # Trusted constructor: data already canonical (sorted keys, no zeros).
        poly = object.__new__(cls)
        poly._terms = data
        return poly

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls._raw({(): 1})

    @classmethod
    def constant(cls, c: Scalar) -> "MultiPoly":
        c = _coerce_scalar(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def variable(cls, var: VarId) -> "MultiPoly":
        if var.index < 1:
            raise ValueError("variable indices start at 1")
        return cls._raw({((var, 1),): 1})

    @classmethod
    def x(cls, index: int) -> "MultiPoly":
        return cls.variable(VarId(KIND_X, index))

    @classmethod
    def y(cls, index: int) -> "MultiPoly":
        return cls.variable(VarId(KIND_Y, index))

    @classmethod
    def a(cls, index: int) -> "MultiPoly":
        return cls.variable(VarId(KIND_A, index))

    # -- basic queries -----------------------------------------------------

    @property
    def terms(self) -> dict:
        """The term map; treat as read-only."""
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> set:
        out = set()
        for mono in self._terms:
            for v, _ in mono:
                out.add(v)
        return out

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(_mono_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {_mono_degree(m) for m in self._terms}
        return len(degrees) <= 1

    def constant_term(self) -> Scalar:
        return self._terms.get((), 0)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(mono, 0)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return min(self._terms, key=term_sort_key)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return len(self._terms) == 1 and self._terms.get(()) == other
        return NotImplemented

    def __hash__(self):
        # Constant polynomials compare equal to their scalar value, so they
        # must hash like it.
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and () in self._terms:
            return hash(self._terms[()])
        return hash(frozenset(self._terms.items()))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if len(self._terms) < len(other._terms):
            self, other = other, self
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = out.get(mono)
            if acc is None:
                out[mono] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[mono] = acc
                else:
                    del out[mono]
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = _coerce_scalar(factor)
        if factor == 0:
            return MultiPoly.zero()
        return MultiPoly._raw({m: factor * c for m, c in self._terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return MultiPoly.zero()
        if len(a) * len(b) > _term_cap:
            raise TermCapExceeded(
                f"product of {len(a)} x {len(b)} terms exceeds the cap of {_term_cap}"
            )
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                key = _mono_mul(m1, m2)
                c = c1 * c2
                acc = get(key)
                if acc is None:
                    out[key] = c
                else:
                    acc = acc + c
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "MultiPoly":
        scalar = _coerce_scalar(scalar)
        if scalar == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(Fraction(1, 1) / scalar if isinstance(scalar, int) else 1 / scalar)

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = MultiPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, assignment: Mapping) -> Fraction:
        """Exact value at a point; the assignment must cover every variable."""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = Fraction(coeff)
            for var, exp in mono:
                try:
                    base = assignment[var]
                except KeyError:
                    raise MissingVariableError(f"no value assigned to {var!r}") from None
                value *= Fraction(base) ** exp
            total += value
        return total

    def substitute(self, mapping: Mapping) -> "MultiPoly":
        """Replace variables by polynomials; unmapped variables are kept."""
        replacements = {}
        for var, repl in mapping.items():
            var = VarId(*var)
            if isinstance(repl, (int, Fraction)):
                repl = MultiPoly.constant(repl)
            replacements[var] = repl
        out = MultiPoly.zero()
        power_cache: dict = {}
        for mono, coeff in self._terms.items():
            untouched = []
            factors = []
            for var, exp in mono:
                if var in replacements:
                    key = (var, exp)
                    power = power_cache.get(key)
                    if power is None:
                        power = replacements[var] ** exp
                        power_cache[key] = power
                    factors.append(power)
                else:
                    untouched.append((var, exp))
            term = MultiPoly._raw({tuple(untouched): coeff})
            for f in factors:
                term = term * f
            out = out + term
        return out

    # -- exact division -------------------------------------------------------

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Multivariate exact division under the canonical term order.

        Raises NonDivisibleError as soon as a leading term cannot be
        cancelled (the remainder would be nonzero).
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division of a polynomial by zero")
        lead = divisor.leading_monomial()
        lead_coeff = divisor._terms[lead]
        quotient: dict = {}
        work = self
        while work._terms:
            mono = work.leading_monomial()
            if not _mono_divides(lead, mono):
                raise NonDivisibleError(
                    f"leading term {mono} is not divisible by {lead}", work
                )
            q_mono = _mono_quotient(mono, lead)
            q_coeff = Fraction(work._terms[mono], 1) / lead_coeff
            if q_coeff.denominator == 1:
                q_coeff = q_coeff.numerator
            quotient[q_mono] = q_coeff
            work = work - divisor * MultiPoly._raw({q_mono: q_coeff})
        return MultiPoly._raw(quotient)

    def divide_by_variable(self, var: VarId) -> "MultiPoly":
        """Exact division by a single variable."""
        var = VarId(*var)
        out = {}
        remainder = {}
        for mono, coeff in self._terms.items():
            for pos, (v, e) in enumerate(mono):
                if v == var:
                    if e == 1:
                        out[mono[:pos] + mono[pos + 1 :]] = coeff
                    else:
                        out[mono[:pos] + ((v, e - 1),) + mono[pos + 1 :]] = coeff
                    break
            else:
                remainder[mono] = coeff
        if remainder:
            raise NonDivisibleError(
                f"{len(remainder)} terms have no factor {var!r}",
                MultiPoly._raw(remainder),
            )
        return MultiPoly._raw(out)

    def divide_by_difference(self, u: VarId, w: VarId) -> "MultiPoly":
        """Exact division by the linear binomial (u - w) via synthetic division."""
        u = VarId(*u)
        w = VarId(*w)
        buckets: dict = {}
        top = 0
        for mono, coeff in self._terms.items():
            exp = 0
            rest = mono
            for pos, (v, e) in enumerate(mono):
                if v == u:
                    exp = e
                    rest = mono[:pos] + mono[pos + 1 :]
                    break
            bucket = buckets.setdefault(exp, {})
            bucket[rest] = coeff
            if exp > top:
                top = exp
        if top == 0:
            if not self._terms:
                return MultiPoly.zero()
            raise NonDivisibleError(f"polynomial does not involve {u!r}", self)
        w_mono = ((w, 1),)
        quotient: dict = {}
        carry: dict = {}
        for d in range(top, 0, -1):
            level = buckets.get(d, {})
            merged = dict(level)
            for mono, coeff in carry.items():
                key = _mono_mul(mono, w_mono)
                acc = merged.get(key)
                if acc is None:
                    merged[key] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        merged[key] = acc
                    else:
                        del merged[key]
            # merged is the quotient coefficient of u^(d-1)
            if d > 1:
                u_mono = ((u, d - 1),)
                for mono, coeff in merged.items():
                    quotient[_mono_mul(mono, u_mono)] = coeff
            else:
                for mono, coeff in merged.items():
                    quotient[mono] = coeff
            carry = merged
        remainder = dict(buckets.get(0, {}))
        for mono, coeff in carry.items():
            key = _mono_mul(mono, w_mono)
            acc = remainder.get(key)
            if acc is None:
                remainder[key] = coeff
            else:
                acc = acc + coeff
                if acc:
                    remainder[key] = acc
                else:
                    del remainder[key]
        if remainder:
            raise NonDivisibleError(
                f"nonzero remainder after division by ({u!r} - {w!r})",
                MultiPoly._raw(remainder),
            )
        return MultiPoly._raw(quotient)

    # -- formatting -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def _format_coeff(coeff: Scalar) -> str:
    frac = Fraction(coeff)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def _format_monomial(mono: Monomial) -> str:
    parts = []
    for var, exp in mono:
        name = f"{_KIND_NAMES[var.kind]}_{var.index}"
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


def format_poly(poly: MultiPoly) -> str:
    """Canonical text form: graded-lex term order, rationals as p/q."""
    if poly.is_zero():
        return "0"
    chunks = []
    for mono, coeff in poly.sorted_terms():
        frac = Fraction(coeff)
        sign = "-" if frac < 0 else "+"
        mag = abs(frac)
        body = _format_monomial(mono)
        if not body:
            text = _format_coeff(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_format_coeff(mag)}*{body}"
        chunks.append((sign, text))
    first_sign, first_text = chunks[0]
    out = first_text if first_sign == "+" else f"-{first_text}"
    for sign, text in chunks[1:]:
        out += f" {sign} {text}"
    return out


@dataclass(frozen=True)
class RationalFunction:
    """A numerator/denominator pair; not reduced by gcd.

    Normal form only fixes the sign: the denominator's leading coefficient
    is positive.  Zero tests are numerator tests.
    """

    numerator: MultiPoly
    denominator: MultiPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        lead = self.denominator._terms[self.denominator.leading_monomial()]
        if lead < 0:
            object.__setattr__(self, "numerator", -self.numerator)
            object.__setattr__(self, "denominator", -self.denominator)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def equivalent(self, other: "RationalFunction") -> bool:
        return (self.numerator * other.denominator) == (other.numerator * self.denominator)

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


def ratfunc_combine(parts: Sequence) -> RationalFunction:
    """Combine coefficient-weighted rational functions over the product denominator.

    ``parts`` is a sequence of (coefficient polynomial, RationalFunction);
    the result is sum(c_i * r_i) over the product of all denominators, fully
    expanded, with no gcd reduction.
    """
    if not parts:
        return RationalFunction(MultiPoly.zero(), MultiPoly.one())
    denominators = [rf.denominator for _, rf in parts]
    numerator = MultiPoly.zero()
    for i, (coeff, rf) in enumerate(parts):
        if isinstance(coeff, (int, Fraction)):
            coeff = MultiPoly.constant(coeff)
        term = coeff * rf.numerator
        for j, den in enumerate(denominators):
            if j != i:
                term = term * den
        numerator = numerator + term
    denominator = MultiPoly.one()
    for den in denominators:
        denominator = denominator * den
    return RationalFunction(numerator, denominator)
