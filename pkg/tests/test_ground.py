import pytest

from treeorder.errors import InvalidInputError
from treeorder.ground import GadgetElem, GroundSet, VarElem, iter_bits, parse_label


def test_labels_render_and_parse_back():
    for x in (VarElem(0, -1), VarElem(5, 1), GadgetElem(2, 3, 0, -1)):
        assert parse_label(str(x)) == x
    assert str(GadgetElem(1, 0, 3, 0)) == "x[1,0,3,0]"
    assert parse_label("17") == 17
    assert parse_label("-3") == -3
    assert parse_label("leaf_a") == "leaf_a"
    assert parse_label("x[1,2,3]") == "x[1,2,3]"


def test_ground_set_order_and_masks():
    g = GroundSet.of("abcd")
    assert g.n == 4 and g.full == 0b1111
    assert g.index("c") == 2
    assert g.mask("bd") == 0b1010
    assert g.members(0b0101) == frozenset("ac")
    assert list(g.concat(GroundSet.of("xy"))) == list("abcdxy")


@pytest.mark.parametrize("elements", [["a", "a"], ["a"], []])
def test_ground_set_rejects(elements):
    with pytest.raises(InvalidInputError):
        GroundSet.of(elements)


def test_unknown_element():
    with pytest.raises(InvalidInputError, match="INVALID_INPUT"):
        GroundSet.of("ab").index("z")


def test_iter_bits():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert list(iter_bits(0)) == []
