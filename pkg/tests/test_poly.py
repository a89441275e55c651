import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotgrid.poly import (
    HalfIntegerExponentError,
    HalfLaurent,
    InexactDivisionError,
    NotSymmetrizableError,
    normalize_symmetric,
    one,
    t_half,
    t_power,
    zero,
)

Z = t_half(1) - t_half(-1)  # t^(1/2) - t^(-1/2)

polys = st.dictionaries(
    st.integers(min_value=-8, max_value=8),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
).map(HalfLaurent)


def test_multiply_examples():
    assert Z * Z == HalfLaurent({2: 1, 0: -2, -2: 1})  # t - 2 + t^-1
    assert (one() - one()) * Z == zero()
    a = HalfLaurent({2: 1, 0: -1, -2: 1})  # t - 1 + t^-1
    assert a * Z == HalfLaurent({3: 1, 1: -2, -1: 2, -3: -1})


def test_multiply_annihilator():
    a = HalfLaurent({3: 4, -1: 2})
    assert a * zero() == zero()
    assert zero() * a == zero()


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == zero()


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_conjugate_is_ring_involution(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_conjugate_examples():
    sym = HalfLaurent({2: 1, 0: -2, -2: 1})
    assert sym.conjugate() == sym
    assert t_half(3).conjugate() == t_half(-3)


def test_evaluate_at_minus_one():
    assert one().evaluate_at_minus_one() == 1
    trefoil = HalfLaurent({2: 1, 0: -1, -2: 1})
    assert trefoil.evaluate_at_minus_one() == -3
    with pytest.raises(HalfIntegerExponentError):
        Z.evaluate_at_minus_one()


def test_normalize_symmetric_examples():
    a = t_power(2) - t_power(1) + one()  # t^2 - t + 1
    assert normalize_symmetric(a, 1) == HalfLaurent({2: 1, 0: -1, -2: 1})
    assert normalize_symmetric(one(), 1) == one()
    b = t_power(1) - one()  # t - 1, two components
    assert normalize_symmetric(b, 2) == Z
    assert normalize_symmetric(zero(), 2) == zero()


def test_normalize_symmetric_failures():
    with pytest.raises(NotSymmetrizableError):
        normalize_symmetric(zero(), 1)
    with pytest.raises(NotSymmetrizableError):
        normalize_symmetric(t_power(1) + one().scale(2), 1)  # t + 2: value 3 at 1
    with pytest.raises(NotSymmetrizableError):
        normalize_symmetric(t_power(2) + t_power(1) - one(), 2)  # not (anti)symmetric


@given(polys, st.integers(min_value=1, max_value=3))
@settings(max_examples=60, deadline=None)
def test_normalize_symmetric_idempotent_and_postcondition(a, components):
    try:
        r = normalize_symmetric(a, components)
    except NotSymmetrizableError:
        return
    assert normalize_symmetric(r, components) == r
    sgn = -1 if components % 2 == 0 else 1
    assert r.conjugate() == r.scale(sgn)
    if components == 1 and not r.is_zero():
        assert r.evaluate_at_one() == 1


def test_divide_exact():
    a = HalfLaurent({4: 1, 0: -1})  # t^2 - 1
    b = HalfLaurent({2: 1, 0: 1})  # t + 1
    assert a.divide_exact(b) == HalfLaurent({2: 1, 0: -1})
    with pytest.raises(InexactDivisionError):
        (a + one()).divide_exact(b)
    with pytest.raises(InexactDivisionError):
        one().divide_exact(HalfLaurent({2: 1, 0: -1, -2: 1}))


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_divide_exact_inverts_multiply(a, b):
    if b.is_zero():
        return
    assert (a * b).divide_exact(b) == a


def test_json_form():
    a = HalfLaurent({3: 2, -1: -1})
    assert a.to_json_obj() == {"halves": [[3, 2], [-1, -1]]}
    assert HalfLaurent.from_json_obj(a.to_json_obj()) == a
    assert a.to_json() == '{"halves":[[3,2],[-1,-1]]}'


def test_display_format():
    assert str(zero()) == "0"
    assert str(one()) == "1"
    assert str(HalfLaurent({3: 1, 1: -2, -1: 2, -3: -1})) == (
        "t^{3/2} - 2t^{1/2} + 2t^{-1/2} - t^{-3/2}"
    )
    assert str(HalfLaurent({2: 1, 0: -1, -2: 1})) == "t - 1 + t^{-1}"
