from fractions import Fraction

import pytest
from hypothesis import given

from helpers import (
    PROPERTY,
    oracle_normalize,
    product,
    random_homogeneous,
    random_monomial,
    random_signature,
    random_space,
    rngs,
)
from lie2bialg.graded import Generator, Role, SpaceSpec
from lie2bialg.symalg import (
    ParseError,
    SymElement,
    component,
    degree_decompose,
    normalize,
    parse_element,
    signature,
    sort_with_sign,
    sym_product,
)

S = SpaceSpec(2, 2)
x0, x1 = Generator(Role.G, 0), Generator(Role.G, 1)
u0, u1 = Generator(Role.THETA, 0), Generator(Role.THETA, 1)
xi0, xi1 = Generator(Role.GSTAR, 0), Generator(Role.GSTAR, 1)
k0 = Generator(Role.THETASTAR, 0)


def el(*gens, c=1):
    return SymElement.from_generators(S, gens, c)


def test_odd_generators_anticommute():
    assert el(u1, u0) == el(u0, u1, c=-1)
    assert el(xi1, xi0) == -el(xi0, xi1)


def test_even_generators_commute():
    assert el(x1, x0) == el(x0, x1)
    assert el(k0, x0) == el(x0, k0)


def test_odd_square_vanishes_even_square_survives():
    assert not el(u0, u0)
    assert el(x0, x0)


def test_sort_with_sign_examples():
    assert sort_with_sign([3, 1, 2], lambda v: True) == ((1, 2, 3), 1)
    assert sort_with_sign([2, 1], lambda v: True) == ((1, 2), -1)
    assert sort_with_sign([1, 1], lambda v: True) is None
    assert sort_with_sign([2, 1], lambda v: False) == ((1, 2), 1)


@PROPERTY
@given(rngs)
def test_normalize_matches_permutation_oracle(rng):
    space = random_space(rng)
    m = list(random_monomial(rng, space, random_signature(rng, 6)))
    rng.shuffle(m)
    assert normalize(m) == oracle_normalize(m)


@PROPERTY
@given(rngs)
def test_product_is_associative_and_graded_commutative(rng):
    space = random_space(rng)
    a, b, c = (random_homogeneous(rng, space, terms=2) for _ in range(3))
    assert product(product(a, b), c) == product(a, product(b, c))
    sign = -1 if (a.degree() * b.degree()) % 2 else 1
    assert sym_product(a, b) == sym_product(b, a).scale(sign)


@PROPERTY
@given(rngs)
def test_product_degree_is_additive(rng):
    space = random_space(rng)
    a, b = random_homogeneous(rng, space), random_homogeneous(rng, space)
    ab = sym_product(a, b)
    if ab:
        assert ab.degree() == a.degree() + b.degree()


def test_signature_counts_roles():
    (m, _), = el(xi0, xi1, x0).items()
    assert signature(m) == (1, 2, 0, 0)
    (m, _), = el(k0, u0, xi0).items()
    assert signature(m) == (0, 1, 1, 1)


def test_component_and_degree_decompose():
    e = el(xi0, xi1, x0) + el(k0, x1) + el(u0, c=3)
    assert component(e, 1, 2, 0, 0) == el(xi0, xi1, x0)
    parts = degree_decompose(e)
    assert set(parts) == {-4, -1}
    assert parts[-4] == el(xi0, xi1, x0) + el(k0, x1)
    assert sum(parts.values(), SymElement.zero(S)) == e


def test_linear_structure():
    a = el(x0, c=Fraction(1, 2))
    assert a + a == el(x0)
    assert a - a == SymElement.zero(S)
    assert (a * 4) == el(x0, c=2)
    assert el(x0).scale(0).is_zero()


def test_render_and_parse_roundtrip():
    e = el(xi0, xi1, x0, c=Fraction(-1, 3)) + el(k0, x1) + SymElement.one(S, 2)
    text = e.render()
    assert parse_element(text, S) == e
    assert parse_element(text.replace("⊙", "*"), S) == e
    assert el(xi0, x0).render() == "gs0⊙g0"
    assert SymElement.zero(S).render() == "0"


def test_parse_grammar():
    assert parse_element("2 gs1*gs0*g0", S) == el(xi0, xi1, x0, c=-2)
    assert parse_element("(g0 + g1)*gs0", S) == el(xi0, x0) + el(xi0, x1)
    assert parse_element("-1/2 t0", S) == el(u0, c=Fraction(-1, 2))
    named = {"eps": el(x0)}
    assert parse_element("eps - g0", S, named).is_zero()


@pytest.mark.parametrize("text,pos", [("g0 + ", 5), ("g9", 0), ("g0 $ g1", 3), ("foo", 0), ("(g0", 3)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text, S)
    assert info.value.position == pos


def test_elements_on_different_spaces_do_not_mix():
    other = SymElement.gen(SpaceSpec(1, 1), Role.G, 0)
    with pytest.raises(ValueError):
        el(x0) + other
