import pickle
from fractions import Fraction

import pytest

from slipfree.rational import INF, fmt, is_inf, to_fraction


@pytest.mark.parametrize("text, value", [
    ("3/2", Fraction(3, 2)), ("-4", Fraction(-4)), (" 6/4 ", Fraction(3, 2)), (7, Fraction(7)),
])
def test_to_fraction_accepts_exact_values(text, value):
    assert to_fraction(text) == value


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", True, None, ""])
def test_to_fraction_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        to_fraction(bad)


def test_mpq_converts():
    gmpy2 = pytest.importorskip("gmpy2")
    assert to_fraction(gmpy2.mpq(3, 9)) == Fraction(1, 3)


@pytest.mark.parametrize("value, text", [
    (Fraction(6, 4), "3/2"), (Fraction(4, 2), "2"), (Fraction(-1, 3), "-1/3"), (0, "0"), (INF, "inf"),
])
def test_fmt_lowest_terms(value, text):
    assert fmt(value) == text


def test_inf_orders_above_everything():
    assert INF > Fraction(10**9) and not INF < 5 and INF == INF
    assert max(Fraction(3), INF) is INF
    assert INF + 1 is INF and 2 * INF is INF
    assert is_inf(pickle.loads(pickle.dumps(INF)))
    with pytest.raises(ArithmeticError):
        0 * INF
