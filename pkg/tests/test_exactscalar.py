from fractions import Fraction

import pytest

from galkappa.errors import NotInvertible, RegistryMismatch
from galkappa.exactscalar import (
    I,
    ONE,
    ZERO,
    PolyExpr,
    Scalar,
    SymbolRegistry,
    parse_scalar,
)


def test_scalar_arithmetic_is_exact():
    a = Scalar(Fraction(1, 3), Fraction(2, 5))
    b = Scalar(Fraction(-1, 3), Fraction(3, 5))
    assert (a + b).re == 0
    assert (a + b).im == 1
    assert a - a == ZERO
    # (1/3 + 2/5 i)(-1/3 + 3/5 i) = -1/9 - 6/25 + (3/15 - 2/15) i
    prod = a * b
    assert prod.re == Fraction(-1, 9) + Fraction(-6, 25)
    assert prod.im == Fraction(1, 15)


def test_scalar_division_and_conjugate():
    z = Scalar(3, 4)
    w = z / z
    assert w == ONE
    assert z.conj() == Scalar(3, -4)
    assert (I * I) == Scalar(-1)
    with pytest.raises(ZeroDivisionError):
        z / ZERO


def test_scalar_mixed_operands():
    assert Scalar(2) * 3 == Scalar(6)
    assert 3 * Scalar(2) == Scalar(6)
    assert Scalar(2) + Fraction(1, 2) == Scalar(Fraction(5, 2))
    assert 1 - Scalar(0, 1) == Scalar(1, -1)


@pytest.mark.parametrize(
    "text,expect",
    [
        ("3", Scalar(3)),
        ("-1/2", Scalar(Fraction(-1, 2))),
        ("i", I),
        ("-i", Scalar(0, -1)),
        ("2*i", Scalar(0, 2)),
        ("3/4*i", Scalar(0, Fraction(3, 4))),
        ("+5", Scalar(5)),
    ],
)
def test_parse_scalar(text, expect):
    assert parse_scalar(text) == expect


@pytest.mark.parametrize("bad", ["", "x", "1/0", "2i", "1+i", "--3", "1/2/3"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_scalar_str():
    assert str(Scalar(Fraction(-1, 2))) == "-1/2"
    assert str(Scalar(0, 1)) == "i"
    assert str(Scalar(1, -1)) == "1-i"
    assert str(ZERO) == "0"


@pytest.fixture
def reg():
    return SymbolRegistry(("x", "y", "m"), invertible={"m"})


def test_registry_sorts_and_validates(reg):
    assert reg.names == ("m", "x", "y")
    assert reg.is_invertible("m") and not reg.is_invertible("x")
    with pytest.raises(ValueError):
        SymbolRegistry(("a", "a"))
    with pytest.raises(ValueError):
        SymbolRegistry(("a",), invertible={"b"})


def test_poly_basic_arithmetic(reg):
    x, y = reg.symbol("x"), reg.symbol("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p - p).is_zero
    q = (x + 1) ** 3
    assert q.coefficient((0, 2, 0)) == Scalar(3)  # 3 x^2 term
    assert q.constant_term() == ONE


def test_poly_zero_terms_are_dropped(reg):
    x = reg.symbol("x")
    p = x + (-x)
    assert p.is_zero
    assert p == 0
    assert not p._terms


def test_laurent_only_for_invertible(reg):
    m = reg.symbol("m", power=-2)
    assert m.coefficient((-2, 0, 0)) == ONE
    with pytest.raises(NotInvertible):
        reg.symbol("x", power=-1)
    p = reg.symbol("x") * reg.const(Fraction(1, 2))
    with pytest.raises(NotInvertible):
        p.div_symbol("x")
    assert p.div_symbol("m").coefficient((-1, 1, 0)) == Scalar(Fraction(1, 2))


def test_registry_mismatch_raises(reg):
    other = SymbolRegistry(("x", "y", "m"))  # same names, different flags
    with pytest.raises(RegistryMismatch):
        reg.symbol("x") + other.symbol("x")


def test_poly_diff_and_subs(reg):
    x, y = reg.symbol("x"), reg.symbol("y")
    p = x * x * y + x * Scalar(2)
    assert p.diff("x") == x * y * 2 + 2
    assert p.diff("y") == x * x
    # substitute x -> x + y, exactly
    shifted = p.subs({"x": x + y})
    expected = (x + y) * (x + y) * y + (x + y) * Scalar(2)
    assert shifted == expected


def test_poly_conj_evaluate(reg):
    x = reg.symbol("x")
    p = x * I + 1
    assert p.conj() == x * Scalar(0, -1) + 1
    val = p.evaluate({"x": 2.0, "y": 0.0, "m": 1.0})
    assert val == 1 + 2j
    with pytest.raises(KeyError):
        (x * x).evaluate({"y": 1.0})


def test_poly_canonical_order_and_str(reg):
    x, y, m = reg.symbol("x"), reg.symbol("y"), reg.symbol("m")
    p = y + x * x + m
    keys = [k for k, _ in p.items()]
    assert keys == sorted(keys, key=lambda k: (sum(k), k))
    assert str(reg.symbol("m") * Scalar(Fraction(-1, 2), 0)) == "-1/2*m"
    assert str(reg.zero()) == "0"


def test_poly_equality_coercion(reg):
    assert reg.const(Fraction(3, 2)) == Fraction(3, 2)
    assert reg.const(2) == 2
    assert reg.zero() == 0
    assert reg.symbol("x") != 0
