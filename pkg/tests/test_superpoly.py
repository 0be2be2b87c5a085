import random

import pytest

from superfit import ParseError, RingMismatchError, SuperRing, parse_poly, format_poly
from superfit.errors import HomogeneityError
from superfit.superpoly import (mono_product, poly_from_json, poly_to_json, random_poly,
                                substitute)

RING = SuperRing(("x", "y"), ("a", "b"))


def p(text, ring=RING):
    return parse_poly(ring, text)


def test_odd_generators_anticommute():
    a, b = RING.gen("a"), RING.gen("b")
    assert a * b == -(b * a)
    assert a * a == 0
    assert (a * b + b * a).is_zero()


def test_even_generators_are_central():
    x, a = RING.gen("x"), RING.gen("a")
    assert x * a == a * x
    assert (x * a).parity() == 1
    assert (x + a).parity() is None


def test_mono_product_sign():
    a = RING.var_mono(2)
    b = RING.var_mono(3)
    assert mono_product(b, a, RING.n_even) == (-1, RING.monomial((), (0, 1)))
    assert mono_product(a, a, RING.n_even) is None


def test_parse_follows_written_order():
    assert p("b*a") == -p("a*b")
    assert p("x*y - a*b") == p("y*x + b*a")
    assert p("2/3*x - 2/3*x").is_zero()


def test_parse_errors():
    for text in ("", "x +", "z*x", "x**y", "1/0*x"):
        with pytest.raises(ParseError):
            p(text)


def test_format_is_stable():
    f = p("a*b - x*y + x^2")
    assert format_poly(f) == str(p(str(f)))
    assert p(str(f)) == f


def test_json_form():
    f = p("x*y - a*b")
    assert poly_from_json(RING, poly_to_json(f)) == f


def test_ring_checks():
    other = SuperRing(("x", "y"), ("a", "c"))
    with pytest.raises(RingMismatchError):
        RING.gen("x") + other.gen("x")
    with pytest.raises(ValueError):
        SuperRing(("x",), ("x",))
    with pytest.raises(ValueError):
        SuperRing(("x",), (), 4)


def test_characteristic_two():
    ring = SuperRing(("x",), ("a",), 2)
    x = ring.gen("x")
    assert (x + x).is_zero()
    assert ring.with_characteristic(0).characteristic == 0


def test_grading():
    f = p("x*y*a + a*b*x")
    assert f.degree() == 3
    assert f.is_homogeneous()
    assert not p("x + x*y").is_homogeneous()


def test_monomials_of_degree():
    # 3 even quadratics, 2 * 2 mixed, 1 odd product
    assert len(RING.monomials_of_degree(2)) == 8
    assert RING.monomials_of_degree(-1) == []
    assert len(SuperRing((), ("a", "b")).monomials_of_degree(3)) == 0


def test_substitute_swaps_variables():
    f = p("x^2*a - y*b")
    images = [RING.gen("y"), RING.gen("x"), RING.gen("b"), RING.gen("a")]
    assert substitute(f, images, RING) == p("y^2*b - x*a")


def test_substitute_checks_parity():
    images = [RING.gen("a"), RING.gen("y"), RING.gen("a"), RING.gen("b")]
    with pytest.raises(HomogeneityError):
        substitute(p("x"), images, RING)


@pytest.mark.parametrize("characteristic", [0, 5])
def test_random_products_are_super_commutative(characteristic):
    ring = SuperRing(("x", "y"), ("a", "b", "c"), characteristic)
    rng = random.Random(11 + characteristic)
    for _ in range(25):
        f, g, h = (random_poly(ring, rng, rng.randint(0, 2), rng.randint(0, 1))
                   for _ in range(3))
        assert (f * g) * h == f * (g * h)
        sign = -1 if f.parity() and g.parity() else 1
        assert f * g == (g * f).scale(sign)
        odd = random_poly(ring, rng, rng.randint(1, 3), 1, terms=4)
        assert odd.parity() == 1 or odd.is_zero()
        assert (odd * odd).is_zero()


def test_random_poly_is_homogeneous():
    rng = random.Random(3)
    f = random_poly(RING, rng, 2, 1)
    assert f.degree() == 2
    assert f.parity() == 1
    assert len(f.terms) <= 3
    assert random_poly(SuperRing((), ("a", "b")), rng, 3).is_zero()
