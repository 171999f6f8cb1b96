"""Scalars: exact rationals by default, floats only after transcendental evaluation.

Three kinds of entries circulate through the package:

* ``fractions.Fraction`` -- exact, produced by every structural operation;
* ``float`` -- produced when a family element is evaluated at a parameter
  that makes ``exp``/``cos``/... irrational;
* ``sympy.Basic`` -- produced only by the symbolic backend, used to check
  closed-form identities exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import sympy

DEFAULT_TOL = 1e-9


def to_scalar(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, sympy.Basic):
        if x.is_Rational:
            return Fraction(int(x.p), int(x.q))
        return x
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def parse_scalar(text: str):
    """Parse ``"3"``, ``"-1/2"`` or ``"0.25"`` exactly; ``"inf"`` is rejected."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def is_exact(x) -> bool:
    return isinstance(x, Fraction)


def is_symbolic(x) -> bool:
    return isinstance(x, sympy.Basic)


def is_zero(x, tol=0.0) -> bool:
    if isinstance(x, Fraction):
        return x == 0 if not tol else abs(x) <= tol
    if isinstance(x, sympy.Basic):
        if tol and x.is_number:
            return abs(float(x)) <= tol
        return sympy.simplify(x) == 0
    return abs(x) <= tol


def to_float(x) -> float:
    return float(x)


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def exact_sqrt(q):
    """Square root of a non-negative rational when it is rational, else ``None``."""
    if not isinstance(q, Fraction) or q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt(x):
    r = exact_sqrt(x)
    if r is not None:
        return r
    return math.sqrt(float(x))


def sign(x) -> int:
    if is_zero(x):
        return 0
    return 1 if x > 0 else -1


class NumericBackend:
    """Evaluates transcendental functions, staying exact at the trivial points."""

    name = "numeric"

    @staticmethod
    def convert(x):
        return to_scalar(x)

    @staticmethod
    def exp(x):
        if x == 0:
            return Fraction(1)
        return math.exp(float(x))

    @staticmethod
    def log(x):
        if x == 1:
            return Fraction(0)
        return math.log(float(x))

    @staticmethod
    def cos(x):
        return Fraction(1) if x == 0 else math.cos(float(x))

    @staticmethod
    def sin(x):
        return Fraction(0) if x == 0 else math.sin(float(x))

    @staticmethod
    def cosh(x):
        return Fraction(1) if x == 0 else math.cosh(float(x))

    @staticmethod
    def sinh(x):
        return Fraction(0) if x == 0 else math.sinh(float(x))

    @staticmethod
    def asinh(x):
        return Fraction(0) if x == 0 else math.asinh(float(x))

    @staticmethod
    def atan2(y, x):
        if y == 0 and x > 0:
            return Fraction(0)
        return math.atan2(float(y), float(x))

    @staticmethod
    def sqrt(x):
        return sqrt(x)


class SymbolicBackend:
    """Same interface as :class:`NumericBackend`, returning sympy expressions."""

    name = "symbolic"

    @staticmethod
    def convert(x):
        return sympy.sympify(x)

    @staticmethod
    def exp(x):
        return sympy.exp(sympy.sympify(x))

    @staticmethod
    def log(x):
        return sympy.log(sympy.sympify(x))

    @staticmethod
    def cos(x):
        return sympy.cos(sympy.sympify(x))

    @staticmethod
    def sin(x):
        return sympy.sin(sympy.sympify(x))

    @staticmethod
    def cosh(x):
        return sympy.cosh(sympy.sympify(x))

    @staticmethod
    def sinh(x):
        return sympy.sinh(sympy.sympify(x))

    @staticmethod
    def asinh(x):
        return sympy.asinh(sympy.sympify(x))

    @staticmethod
    def atan2(y, x):
        return sympy.atan2(sympy.sympify(y), sympy.sympify(x))

    @staticmethod
    def sqrt(x):
        return sympy.sqrt(sympy.sympify(x))


NUMERIC = NumericBackend()
SYMBOLIC = SymbolicBackend()
