"""Field model construction, the involution, and norms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tworb.fields import (FieldModelError, NotPrime, RadicandIsSquare,
                          make_extension, norm, sigma)

RAT = make_extension({"kind": "rational", "tau": 2})
F9 = make_extension({"kind": "finite", "p": 3, "e": 1})
F4 = make_extension({"kind": "finite", "p": 2, "e": 1})


def test_make_extension_rational():
    m = make_extension({"kind": "rational", "tau": 2})
    assert m.kind == "rational" and m.tau == 2


def test_make_extension_square_radicand_rejected():
    with pytest.raises(RadicandIsSquare):
        make_extension({"kind": "rational", "tau": 4})
    with pytest.raises(RadicandIsSquare):
        make_extension({"kind": "rational", "tau": 0})
    with pytest.raises(RadicandIsSquare):
        make_extension({"kind": "rational", "tau": Fraction(9, 4)})


def test_make_extension_not_prime():
    with pytest.raises(NotPrime):
        make_extension({"kind": "finite", "p": 4, "e": 1})
    with pytest.raises(NotPrime):
        make_extension({"kind": "finite", "p": 1, "e": 1})


def test_make_extension_bad_descriptor():
    with pytest.raises(FieldModelError):
        make_extension({"kind": "padic"})
    with pytest.raises(FieldModelError):
        make_extension({"kind": "finite", "p": 3, "e": 0})


def test_sigma_rational_examples():
    assert sigma(RAT.one) == RAT.one
    x = RAT.el(3, 2)
    assert sigma(x) == RAT.el(3, -2)
    assert sigma(sigma(x)) == x


def test_f9_sigma_is_cube_and_fixes_exactly_f3():
    # x -> x^3 on all nine elements; the fixed field must be F_3 exactly
    els = list(F9.elements())
    assert len(els) == 9
    for x in els:
        assert sigma(x) == x * x * x
        assert sigma(sigma(x)) == x
    fixed = [x for x in els if sigma(x) == x]
    assert len(fixed) == 3
    f3 = {F9.from_int(0), F9.from_int(1), F9.from_int(2)}
    assert set(fixed) == f3


def test_norm_examples():
    assert norm(RAT.one) == RAT.one
    x = RAT.el(3, 2)
    # a^2 - tau b^2 = 9 - 8
    assert norm(x) == RAT.el(1)
    assert RAT.in_base_field(norm(x))


def test_norm_surjective_onto_f3_units():
    # norm x = x^(q+1) = x^4; exhaustively it covers all of F_3^x
    values = {norm(x) for x in F9.elements() if x}
    assert values == {F9.from_int(1), F9.from_int(2)}
    # a multiplicative generator maps to an element of order 2
    for g in F9.elements():
        if not g:
            continue
        powers = set()
        acc = F9.one
        for _ in range(8):
            acc = acc * g
            powers.add(acc)
        if len(powers) == 8:
            n4 = norm(g)
            assert n4 != F9.one and n4 * n4 == F9.one
            break
    else:
        pytest.fail("F_9 has a multiplicative generator")


def test_finite_e2_model():
    # F_16 over F_4: sigma = x -> x^4 must fix exactly 4 elements
    m = make_extension({"kind": "finite", "p": 2, "e": 2})
    els = list(m.elements())
    assert len(els) == 16
    fixed = [x for x in els if sigma(x) == x]
    assert len(fixed) == 4
    for x in els:
        assert sigma(sigma(x)) == x
        assert m.in_base_field(norm(x))
        if x:
            assert x * x.inverse() == m.one


def test_inverses_exhaustive_small_fields():
    for model in (F4, F9):
        for x in model.elements():
            if x:
                assert x * x.inverse() == model.one


def test_inverse_and_division():
    x = RAT.el(3, 2)
    assert x * x.inverse() == RAT.one
    y = F9.gen
    assert y * y.inverse() == F9.one
    with pytest.raises(ZeroDivisionError):
        RAT.zero.inverse()


def test_element_json_round_trip():
    x = RAT.el(Fraction(1, 2), -3)
    assert RAT.element_from_json(RAT.element_to_json(x)) == x
    y = F9.from_coeffs((2, 1))
    assert F9.element_from_json(F9.element_to_json(y)) == y


small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def rational_elements(draw):
    return RAT.el(draw(small_fracs), draw(small_fracs))


@st.composite
def f9_elements(draw):
    return F9.element_from_index(draw(st.integers(min_value=0, max_value=8)))


@given(rational_elements(), rational_elements())
def test_sigma_is_ring_morphism_rational(x, y):
    assert sigma(x * y) == sigma(x) * sigma(y)
    assert sigma(x + y) == sigma(x) + sigma(y)
    assert sigma(sigma(x)) == x


@given(f9_elements(), f9_elements())
def test_sigma_is_ring_morphism_finite(x, y):
    assert sigma(x * y) == sigma(x) * sigma(y)
    assert sigma(x + y) == sigma(x) + sigma(y)
    assert sigma(sigma(x)) == x


@given(rational_elements(), rational_elements())
def test_norm_multiplicative_rational(x, y):
    assert norm(x * y) == norm(x) * norm(y)


@given(f9_elements(), f9_elements())
def test_norm_multiplicative_finite(x, y):
    assert norm(x * y) == norm(x) * norm(y)


@given(rational_elements())
def test_norm_lands_in_base_field(x):
    assert RAT.in_base_field(norm(x))
    nx = norm(x)
    a, b = x.payload
    assert nx == RAT.el(a * a - RAT.tau * b * b)


@given(f9_elements(), f9_elements())
@settings(max_examples=30)
def test_field_axioms_spot_finite(x, y):
    assert x + y == y + x
    assert x * y == y * x
    if y:
        assert (x * y) / y == x
