import pytest

from profmackey import cb_space as cb
from profmackey.cb_space import INF, P, Discrete, Empty, Prod, Sum
from profmackey.errors import EmptySpace, PointNotInSpace, SpaceSyntaxError, UnsupportedSpace


def test_parse():
    assert cb.parse_space("empty") == Empty()
    assert cb.parse_space("(P*P)") == Prod(P, P)
    assert cb.parse_space("(disc(2)+(P*P))") == Sum(Discrete(2), Prod(P, P))
    assert cb.parse_space("  P ") == P
    for text in ["P", "(P*(P*P))", "(disc(3)+P)", "empty", "cantor", "(B+P)"]:
        assert cb.to_text(cb.parse_space(text)) == text


@pytest.mark.parametrize("text,offset", [
    ("P*P", 1), ("(P*P", 4), ("disc(0)", 5), ("(P - P)", 3), ("dusc(3)", 0), ("(P*P) x", 6), ("", 0),
])
def test_syntax_errors(text, offset):
    with pytest.raises(SpaceSyntaxError) as info:
        cb.parse_space(text)
    assert info.value.offset == offset


def test_derivatives():
    assert cb.derivative(Discrete(3), 1).is_empty()
    d1 = cb.derivative(P, 1)
    assert d1.contains(INF) and not d1.contains(5)
    assert cb.derivative(P, 2).is_empty()
    P2 = cb.power(P, 2)
    d2 = cb.derivative(P2, 2)
    assert d2.contains((INF, INF)) and not d2.contains((INF, 3)) and not d2.is_empty()
    assert cb.derivative(P2, 3).is_empty()
    with pytest.raises(UnsupportedSpace):
        cb.derivative(cb.parse_space("cantor"), 1)


def test_heights():
    assert cb.height(P, 7) == 0
    assert cb.height(P, INF) == 1
    P3 = cb.power(P, 3)
    assert cb.height(P3, (INF, (4, INF))) == 2
    assert cb.height(Sum(Discrete(2), P), ("R", INF)) == 1
    with pytest.raises(PointNotInSpace):
        cb.height(P, 0)
    with pytest.raises(PointNotInSpace):
        cb.height(Discrete(2), 2)


def test_height_matches_derivative_membership():
    for n in range(1, 4):
        X = cb.power(P, n)
        for x in cb.sample_points(X, (1, 2, INF)):
            h = cb.height(X, x)
            assert cb.in_derivative(X, h, x) and not cb.in_derivative(X, h + 1, x)


def test_ranks():
    assert cb.rank(Empty()) == 0
    assert cb.rank(Discrete(4)) == 1
    assert cb.rank(P) == 2
    assert cb.rank(Prod(P, P)) == 3
    for n in range(1, 5):
        X = cb.power(P, n)
        assert cb.rank(X) == n + 1 == cb.rank_by_derivatives(X)
    assert cb.rank(Sum(Discrete(1), Prod(P, P))) == 3
    assert cb.rank(Prod(Discrete(2), P)) == 2
    assert cb.rank(Prod(Empty(), P)) == 0


def test_scattered():
    assert cb.is_scattered(Discrete(3)) and cb.is_scattered(Empty())
    assert all(cb.is_scattered(cb.power(P, n)) for n in range(1, 5))
    assert not cb.is_scattered(cb.parse_space("(cantor+P)"))
    assert cb.is_scattered(cb.parse_space("(cantor*empty)"))


def test_injective_dimension():
    assert cb.injective_dimension(Discrete(5))["injective_dimension"] == 0
    assert cb.injective_dimension(P)["injective_dimension"] == 1
    for n in range(1, 5):
        rep = cb.injective_dimension(cb.power(P, n))
        assert rep["injective_dimension"] == n
        assert rep["witness_height"] == n
    with pytest.raises(EmptySpace):
        cb.injective_dimension(Empty())
    with pytest.raises(UnsupportedSpace):
        cb.injective_dimension(cb.parse_space("zhat"))


def test_cb_report_never_raises():
    assert cb.cb_report(cb.parse_space("(P*P)"))["rank"] == 3
    assert cb.cb_report(cb.parse_space("(P*P)"))["injective_dimension"] == 2
    assert cb.cb_report(Empty())["injective_dimension"] is None
    assert cb.cb_report(cb.parse_space("cantor"))["scattered"] is False


def test_points_helpers():
    X = cb.power(P, 3)
    x = (INF, (4, INF))
    assert cb.flat_coords(X, x) == (INF, 4, INF)
    assert cb.point_from_coords(X, [INF, 4, INF]) == x
    assert cb.top_point(Sum(Discrete(1), P)) == ("R", INF)
    assert cb.point_to_json(X, x) == ["inf", [4, "inf"]]
