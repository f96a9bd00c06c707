"""
Exact scalars in Q(i, sqrt(p1), ..., sqrt(pk)).

A Scalar is a finite sum  sum_S c_S * prod_{p in S} sqrt(p)  over sets S of
primes, with Gaussian rational coefficients c_S = a + b*i.  Keying by primes
keeps the square roots independent, so every nonzero element is invertible
and a scalar created before an extension is still valid after it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple, Union

import sympy

from qweyl.core.errors import ScalarDivisionError, SqrtNotRepresentableError

Radicals = FrozenSet[int]
Gaussian = Tuple[Fraction, Fraction]
Coercible = Union["Scalar", int, Fraction]

_EMPTY: Radicals = frozenset()


def _square_free_primes(n: int) -> Tuple[int, Radicals]:
    """Write n = s^2 * prod(primes) and return (s, primes)."""
    square = 1
    primes = []
    for p, e in sympy.factorint(n).items():
        square *= p ** (e // 2)
        if e % 2:
            primes.append(p)
    return square, frozenset(primes)


@dataclass(frozen=True)
class FieldSpec:
    """The radicands adjoined so far. i is always present."""

    radicands: Tuple[int, ...] = ()
    includes_i: bool = True

    def __post_init__(self) -> None:
        if len(set(self.radicands)) != len(self.radicands):
            raise ValueError(f"Repeated radicand in {self.radicands}")
        for d in self.radicands:
            square, primes = _square_free_primes(d)
            if d <= 1 or square != 1:
                raise ValueError(f"Radicand {d} is not square-free and > 1")

    @property
    def primes(self) -> Radicals:
        found = set()
        for d in self.radicands:
            found |= _square_free_primes(d)[1]
        return frozenset(found)

    def contains_sqrt(self, d: int) -> bool:
        return _square_free_primes(d)[1] <= self.primes

    def __str__(self) -> str:
        inner = ", ".join(f"sqrt({d})" for d in self.radicands)
        return f"Q(i{', ' if inner else ''}{inner})"


def field_extend(spec: FieldSpec, d: int) -> FieldSpec:
    """
    Return a spec whose field contains sqrt(d).

    d is reduced to its square-free part; its prime factors are adjoined
    one by one, so the result is unchanged when sqrt(d) is already present.
    """
    if d < 1:
        raise ValueError(f"Radicand must be positive, got {d}")
    missing = sorted(_square_free_primes(d)[1] - spec.primes)
    if not missing:
        return spec
    return FieldSpec(radicands=spec.radicands + tuple(missing))


class Scalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Radicals, Tuple[Fraction, Fraction]] = None) -> None:
        cleaned: Dict[Radicals, Gaussian] = {}
        for key, (re, im) in (terms or {}).items():
            re, im = Fraction(re), Fraction(im)
            if re or im:
                cleaned[frozenset(key)] = (re, im)
        self._terms = cleaned
        self._hash = None

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @classmethod
    def of(cls, value: Coercible) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({_EMPTY: (Fraction(value), Fraction(0))})
        raise TypeError(f"Cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def gaussian(cls, re: Union[int, Fraction], im: Union[int, Fraction] = 0) -> "Scalar":
        return cls({_EMPTY: (Fraction(re), Fraction(im))})

    @classmethod
    def sqrt_int(cls, d: int) -> "Scalar":
        if d < 0:
            return I * cls.sqrt_int(-d)
        if d == 0:
            return ZERO
        square, primes = _square_free_primes(d)
        return cls({primes: (Fraction(square), Fraction(0))})

    @classmethod
    def parse(cls, text: Union[str, int, float]) -> "Scalar":
        """
        Parse "3", "-1/2", "1/2+3*i", "(1+i)*sqrt(6)", sums of these, or
        anything sympy reads as an exact element of a multiquadratic field.
        """
        if isinstance(text, bool):
            raise ValueError("Booleans are not scalars")
        if isinstance(text, int):
            return cls.of(text)
        if isinstance(text, float):
            if not text.is_integer():
                raise ValueError(f"Refusing inexact float {text!r}; pass a fraction string")
            return cls.of(int(text))
        try:
            expr = sympy.parse_expr(
                str(text),
                local_dict={"i": sympy.I, "I": sympy.I, "sqrt": sympy.sqrt},
            )
        except Exception as exc:  # tokenizer and sympify errors vary by input
            raise ValueError(f"Cannot parse scalar {text!r}") from exc
        if getattr(expr, "free_symbols", None):
            raise ValueError(f"Scalar {text!r} contains unknown symbols")
        return cls._from_sympy(expr)

    @classmethod
    def _from_sympy(cls, expr) -> "Scalar":
        if expr is sympy.I:
            return I
        if expr.is_Rational:
            return cls.of(Fraction(int(expr.p), int(expr.q)))
        if expr.is_Add:
            total = ZERO
            for arg in expr.args:
                total = total + cls._from_sympy(arg)
            return total
        if expr.is_Mul:
            total = ONE
            for arg in expr.args:
                total = total * cls._from_sympy(arg)
            return total
        if expr.is_Pow:
            base, exponent = expr.as_base_exp()
            if exponent.is_Integer:
                return cls._from_sympy(base) ** int(exponent)
            if exponent.is_Rational and exponent.q == 2:
                return sqrt(cls._from_sympy(base)) ** int(exponent.p)
        raise ValueError(f"{expr} is not an element of Q(i, sqrt(d), ...)")

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Radicals, Gaussian]:
        return dict(self._terms)

    @property
    def primes(self) -> Radicals:
        found = set()
        for key in self._terms:
            found |= key
        return frozenset(found)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_gaussian_rational(self) -> bool:
        return all(not key for key in self._terms)

    def is_rational(self) -> bool:
        return self.is_gaussian_rational() and all(im == 0 for _, im in self._terms.values())

    def as_gaussian(self) -> Gaussian:
        if not self.is_gaussian_rational():
            raise ValueError(f"{self} involves square roots")
        return self._terms.get(_EMPTY, (Fraction(0), Fraction(0)))

    def as_fraction(self) -> Fraction:
        re, im = self.as_gaussian()
        if im:
            raise ValueError(f"{self} is not rational")
        return re

    def as_int(self) -> int:
        value = self.as_fraction()
        if value.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return int(value)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def __add__(self, other: Coercible) -> "Scalar":
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        merged = dict(self._terms)
        for key, (re, im) in other._terms.items():
            a, b = merged.get(key, (0, 0))
            merged[key] = (a + re, b + im)
        return Scalar(merged)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({k: (-a, -b) for k, (a, b) in self._terms.items()})

    def __sub__(self, other: Coercible) -> "Scalar":
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "Scalar":
        return Scalar.of(other) - self

    def __mul__(self, other: Coercible) -> "Scalar":
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        out: Dict[Radicals, Gaussian] = {}
        for k1, (a, b) in self._terms.items():
            for k2, (c, d) in other._terms.items():
                key = k1 ^ k2
                factor = math.prod(k1 & k2)
                re, im = out.get(key, (0, 0))
                out[key] = (re + (a * c - b * d) * factor, im + (a * d + b * c) * factor)
        return Scalar(out)

    __rmul__ = __mul__

    def conjugate_sqrt(self, p: int) -> "Scalar":
        """Image under sqrt(p) -> -sqrt(p)."""
        return Scalar({k: ((-a, -b) if p in k else (a, b)) for k, (a, b) in self._terms.items()})

    def conjugate_i(self) -> "Scalar":
        return Scalar({k: (a, -b) for k, (a, b) in self._terms.items()})

    def inverse(self) -> "Scalar":
        """Invert by rationalizing over each radicand, then over i."""
        if not self._terms:
            raise ScalarDivisionError("Division by zero scalar")
        numerator, denominator = ONE, self
        while not denominator.is_gaussian_rational():
            p = min(denominator.primes)
            conj = denominator.conjugate_sqrt(p)
            numerator = numerator * conj
            denominator = denominator * conj
        re, im = denominator.as_gaussian()
        norm = re * re + im * im
        return numerator * Scalar.gaussian(re / norm, -im / norm)

    def __truediv__(self, other: Coercible) -> "Scalar":
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Coercible) -> "Scalar":
        return Scalar.of(other) * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # comparison / display
    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            # rational scalars hash like the int/Fraction they compare equal to
            if self.is_rational():
                self._hash = hash(self.as_fraction())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms, key=lambda k: (len(k), sorted(k))):
            coeff = _format_gaussian(*self._terms[key])
            if not key:
                parts.append(coeff)
            else:
                parts.append(f"({coeff})*sqrt({math.prod(key)})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def _format_gaussian(re: Fraction, im: Fraction) -> str:
    if not im:
        return str(re)
    if not re:
        return f"{im}*i"
    sign = "+" if im > 0 else "-"
    return f"{re}{sign}{abs(im)}*i"


def _exact_rational_sqrt(q: Fraction):
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _sqrt_nonnegative_rational(q: Fraction) -> Scalar:
    # sqrt(n/d) = sqrt(n*d)/d
    square, primes = _square_free_primes(q.numerator * q.denominator) if q else (0, _EMPTY)
    return Scalar({primes: (Fraction(square, q.denominator), Fraction(0))})


def sqrt(x: Coercible) -> Scalar:
    """
    Exact square root of a Gaussian rational a+bi.

    Works whenever a^2+b^2 is the square of a rational (always true for b = 0);
    the radicands needed are adjoined implicitly.
    """
    x = Scalar.of(x)
    if x.is_zero():
        return ZERO
    if not x.is_gaussian_rational():
        raise SqrtNotRepresentableError(f"sqrt({x}) needs nested radicals")
    a, b = x.as_gaussian()
    if b == 0:
        if a > 0:
            return _sqrt_nonnegative_rational(a)
        return I * _sqrt_nonnegative_rational(-a)
    modulus = _exact_rational_sqrt(a * a + b * b)
    if modulus is None:
        raise SqrtNotRepresentableError(f"sqrt({x}) is not in a multiquadratic extension of Q(i)")
    real = _sqrt_nonnegative_rational((modulus + a) / 2)
    imag = _sqrt_nonnegative_rational((modulus - a) / 2)
    return real + I * imag if b > 0 else real - I * imag


def field_of(scalars: Iterable[Scalar]) -> FieldSpec:
    """Smallest FieldSpec (in prime radicands) containing all the scalars."""
    found = set()
    for s in scalars:
        found |= s.primes
    spec = FieldSpec()
    for p in sorted(found):
        spec = field_extend(spec, p)
    return spec


def scalar_arith(a: Coercible, b: Coercible, op: str) -> Scalar:
    a, b = Scalar.of(a), Scalar.of(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"Unknown scalar operation {op!r}")


ZERO = Scalar()
ONE = Scalar({_EMPTY: (Fraction(1), Fraction(0))})
I = Scalar({_EMPTY: (Fraction(0), Fraction(1))})
