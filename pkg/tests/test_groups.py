import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobcob import TRIVIAL, AbelianGroup, GroupMismatchError

from conftest import Z2, Z4, Z22


def groups_strategy():
    return st.builds(
        AbelianGroup,
        st.integers(0, 2),
        st.lists(st.integers(2, 6), max_size=3).map(lambda xs: tuple(sorted(xs))),
    )


def elements_of(group):
    parts = [st.integers(-10, 10) for _ in range(group.free_rank)]
    parts += [st.integers(-10, 10) for _ in group.torsion_orders]
    if not parts:
        return st.just(group.identity())
    return st.tuples(*parts).map(lambda t: group.element(*t))


group_and_elements = groups_strategy().flatmap(
    lambda g: st.tuples(st.just(g), elements_of(g), elements_of(g), elements_of(g)))


def test_invariant_factor_validation():
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))
    with pytest.raises(ValueError):
        AbelianGroup(-1)
    AbelianGroup(0, (2, 2, 4))


def test_trivial_group():
    assert TRIVIAL.is_trivial()
    assert TRIVIAL.order() == 1
    assert list(TRIVIAL.elements()) == [TRIVIAL.identity()]
    assert str(TRIVIAL) == "1"


def test_str_forms():
    assert str(AbelianGroup(2)) == "Z^2"
    assert str(AbelianGroup(1)) == "Z"
    assert str(Z4) == "Z/4"
    assert str(AbelianGroup(1, (2, 4))) == "Z x Z/2 x Z/4"


def test_order_and_finiteness():
    assert Z4.order() == 4
    assert Z22.order() == 4
    assert AbelianGroup(1).order() is None
    assert not AbelianGroup(1).is_finite()
    assert Z22.exponent() == 2
    assert AbelianGroup(0, (2, 6)).exponent() == 6


def test_element_reduction_and_identity():
    g = Z4.element(7)
    assert g == Z4.element(3)
    assert Z4.element(-1) == Z4.element(3)
    assert Z4.identity().is_identity()
    assert not g.is_identity()


def test_element_orders():
    z6 = AbelianGroup(0, (6,))
    assert z6.element(4).order() == 3
    assert z6.element(1).order() == 6
    assert z6.element(0).order() == 1
    assert AbelianGroup(1).element(2).order() is None
    assert AbelianGroup(1).element(0).order() == 1


def test_order_divides_exponent():
    g = AbelianGroup(0, (2, 6))
    for x in g.elements():
        assert g.exponent() % x.order() == 0


def test_mixed_free_and_torsion_elements():
    g = AbelianGroup(1, (2,))
    x = g.element(3, 1)
    y = g.element(-1, 1)
    assert x * y == g.element(2, 0)
    assert x.inverse() == g.element(-3, 1)
    assert str(x) == "(3; 1)"
    assert str(Z4.element(2)) == "(2)"
    assert str(AbelianGroup(2).element(1, -2)) == "(1,-2)"


def test_enumeration_order():
    assert [str(x) for x in Z22.elements()] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    for k, x in enumerate(Z4.elements()):
        assert Z4.element_index(x) == k


def test_generators():
    g = AbelianGroup(1, (2, 4))
    assert g.generator_names() == ("u0", "t0", "t1")
    gens = g.generators()
    assert gens[0] == g.element(1, 0, 0)
    assert gens[2] == g.element(0, 0, 1)


def test_cross_group_operations_rejected():
    with pytest.raises(GroupMismatchError):
        Z2.element(1) * Z4.element(1)


def test_infinite_enumeration_rejected():
    with pytest.raises(ValueError):
        list(AbelianGroup(1).elements())


def test_powers():
    x = Z4.element(3)
    assert x ** 2 == Z4.element(2)
    assert x ** -1 == x.inverse()
    assert x ** 0 == Z4.identity()


@given(group_and_elements)
def test_abelian_group_axioms(data):
    g, x, y, z = data
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * g.identity() == x
    assert x * x.inverse() == g.identity()


@given(group_and_elements)
def test_element_order_annihilates(data):
    g, x, _, _ = data
    n = x.order()
    if n is not None:
        assert (x ** n).is_identity()
