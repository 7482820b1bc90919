from fractions import Fraction

import pytest

from assocalg.exactnum import Scalar
from assocalg.expr import Expr, InexactRoot, exact_root


def ev(text, **env):
    return Expr(text).evaluate({k: Scalar(Fraction(v)) for k, v in env.items()})


def test_arithmetic():
    assert ev("-b**2/c", b=3, c=2) == Scalar(Fraction(-9, 2))
    assert ev("(1+alpha)/(1-alpha)", alpha=Fraction(1, 2)) == Scalar(3)
    assert ev("2*c*cbrt(a**2)-b**2", a=8, b=1, c=1) == Scalar(7)


def test_names_and_roots():
    e = Expr("a*sqrt(b) + cbrt(c**2)")
    assert e.names == {"a", "b", "c"}
    assert e.root_names == {"b": 2, "c": 3}
    assert Expr("7").is_constant()


def test_division_by_zero_propagates():
    with pytest.raises(ZeroDivisionError):
        ev("1/b", b=0)


def test_exact_root():
    assert exact_root(Scalar(Fraction(8, 27)), 3) == Scalar(Fraction(2, 3))
    assert exact_root(Scalar(-8), 3) == Scalar(-2)
    with pytest.raises(InexactRoot):
        exact_root(Scalar(2), 2)
    with pytest.raises(InexactRoot):
        exact_root(Scalar(-4), 2)


@pytest.mark.parametrize("bad", ["a**b", "a % 2", "__import__('os')", "a.b", "1.5", "log(a)", "sqrt"])
def test_rejects_unsafe_syntax(bad):
    with pytest.raises((ValueError, SyntaxError)):
        Expr(bad)


def test_missing_parameter():
    with pytest.raises(KeyError):
        ev("a+b", a=1)
