"""Exact rational parsing/formatting and the infinite norm tag."""

from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["Fraction", "INF", "Infinite", "to_fraction", "fmt", "is_inf"]


@total_ordering
class Infinite:
    """Positive infinity for norm values that are not finite.

    Compares above every rational; there is a single instance, ``INF``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("slipfree.INF")

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("0 * INF is undefined")
        if other < 0:
            raise ArithmeticError("negative multiple of INF")
        return self

    __rmul__ = __mul__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinite, ())


INF = Infinite()


def is_inf(value) -> bool:
    return value is INF


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        if any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    # gmpy2.mpq and friends expose numerator/denominator
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None and not isinstance(value, float):
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fmt(value) -> str:
    """Lowest-terms ``p/q`` string; integers without ``/1``; ``inf`` for INF."""
    if value is INF:
        return "inf"
    q = to_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
