import pytest

from distrel import InputError, Poset


def test_reflexive_transitive_closure():
    p = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c") and p.leq("b", "b") and not p.leq("c", "a")
    assert set(p.pairs()) >= {("a", "b"), ("b", "c"), ("a", "c")}


def test_discrete_default():
    p = Poset(["x", "y"])
    assert p.is_discrete and not p.leq("x", "y")


def test_antisymmetry_reported_for_strict_posets():
    p = Poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert [v.kind for v in p.violations()] == ["antisymmetry"]
    q = Poset(["a", "b"], [("a", "b"), ("b", "a")], strict=False)
    assert q.violations() == []


def test_duplicate_and_unknown_elements_rejected():
    with pytest.raises(InputError):
        Poset(["a", "a"])
    with pytest.raises(InputError):
        Poset(["a"], [("a", "z")])


def test_equality_is_structural():
    assert Poset(["a", "b"], [("a", "b")]) == Poset(["a", "b"], [("a", "b")])
    assert Poset(["a", "b"]) != Poset(["b", "a"])
    assert hash(Poset(["a"])) == hash(Poset(["a"]))


def test_below_is_strict_down_set():
    p = Poset(["lo", "mid", "hi"], [("lo", "mid"), ("mid", "hi")])
    assert set(p.below("hi")) == {"lo", "mid"}
    assert p.below("lo") == []
