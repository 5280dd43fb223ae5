import random

import pytest

from distrel import (
    DistributedRelation, DomainMorphism, InputError, Poset, Relation, SortedDomain,
    as_single_sorted, compose, direct_image, enumerate_concepts, inverse_image,
    projection_morphism, satisfaction_context, to_context, validate_morphism, validate_network,
)
from distrel.interior import leq

from gen import random_network, random_relations_like


def identity(dom):
    return DomainMorphism.componentwise(dom, dom, {a: a for a in dom.sorts},
                                        {a: {v: v for v in dom.values[a]} for a in dom.sorts})


def collapse(rng, source, target_vals=3):
    """Every source sort onto one target sort ``z`` with random value maps."""
    target = SortedDomain({"z": [f"w{i}" for i in range(target_vals)]})
    vm = {a: {w: rng.choice(source.values[a].elements) for w in target.values["z"]}
          for a in source.sorts}
    return DomainMorphism.componentwise(source, target, {a: "z" for a in source.sorts}, vm)


# -- validation -------------------------------------------------------------------

def test_identity_is_valid(table1):
    assert validate_morphism(identity(table1.domain)) == []


def test_corrupted_square_is_reported():
    dom = SortedDomain({"a": ["0", "1"], "b": ["0", "1"]})
    ident = {(x,): (x,) for x in "01"}
    pairs = {(x, y): (x, y) for x in "01" for y in "01"}
    pairs[("1", "1")] = ("0", "1")
    m = DomainMorphism.explicit(dom, dom, {"a": "a", "b": "b"},
                                {(): {(): ()}, ("a",): ident, ("b",): ident, ("a", "b"): pairs})
    bad = [v for v in validate_morphism(m) if v.kind == "naturality"]
    assert len(bad) == 1
    v, u, y = bad[0].witness
    assert (v, u, y) == (("a", "b"), ("a",), ("1", "1"))


def test_partial_table_is_reported():
    dom = SortedDomain({"a": ["0", "1"]})
    m = DomainMorphism.explicit(dom, dom, {"a": "a"}, {("a",): {("0",): ("0",)}})
    assert [v.kind for v in validate_morphism(m)] == ["total"]


def test_non_monotone_map_is_reported():
    dom = SortedDomain({"a": Poset(["lo", "hi"], [("lo", "hi")])})
    flip = DomainMorphism.componentwise(dom, dom, {"a": "a"}, {"a": {"lo": "hi", "hi": "lo"}})
    assert "monotone" in {v.kind for v in validate_morphism(flip)}


def test_projection_morphism(table1):
    m = projection_morphism(table1.domain)
    assert validate_morphism(m) == []
    assert len(m.target.values["1"]) == 32
    assert m.phi(())(("anything",)) == ()


def test_projection_of_one_sort_is_identity():
    dom = SortedDomain({"a": ["x", "y", "z"]})
    m = projection_morphism(dom)
    for t in m.target.values["1"]:
        assert m.phi(("a",))((t,)) == t.values


def test_bad_sort_map_rejected(table1):
    with pytest.raises(InputError):
        DomainMorphism.componentwise(table1.domain, table1.domain, {"a1": "a1"}, {})


# -- direct image -------------------------------------------------------------------

def test_direct_image_along_identity(table1):
    img = direct_image(identity(table1.domain), table1)
    assert len(img.constraints) == 5
    for e in table1.constraints:
        name = f"({e},{{{','.join(table1.signature.scheme[e])}}})"
        assert img.rel[name] == table1.rel[e]
    assert validate_network(img) == []


def test_injective_sort_map_gives_one_constraint_each():
    src = SortedDomain({"a": ["0", "1"], "b": ["0", "1"]})
    tgt = SortedDomain({"x": ["0", "1"], "y": ["0", "1"], "z": ["0"]})
    m = DomainMorphism.componentwise(src, tgt, {"a": "x", "b": "y"},
                                     {"a": {"0": "0", "1": "1"}, "b": {"0": "1", "1": "0"}})
    R2 = DistributedRelation.network(tgt, {"e": (["x", "y"], [("0", "0"), ("1", "0")])})
    img = direct_image(m, R2)
    assert img.constraints == ("(e,{a,b})",)
    assert img.rel["(e,{a,b})"].tuples == {("0", "1"), ("1", "1")}


def test_random_collapse_matches_brute_force():
    rng = random.Random(21)
    for _ in range(100):
        src = SortedDomain({"x": ["p", "q"], "y": ["p", "q", "r"]})
        m = collapse(rng, src)
        rows = [w for w in m.target.values["z"] if rng.random() < 0.6]
        R2 = DistributedRelation.network(m.target, {"e": (["z"], [(w,) for w in rows])})
        img = direct_image(m, R2)
        expect = {}
        for u in (("x",), ("y",), ("x", "y")):
            name = f"(e,{{{','.join(u)}}})"
            expect[name] = {tuple(m.value_maps[a][w] for a in u) for w in rows}
        assert {n: img.rel[n].tuples for n in img.constraints} == expect
        assert validate_network(img) == []


def test_direct_image_down_closes_on_ordered_source():
    src = SortedDomain({"a": Poset(["lo", "hi"], [("lo", "hi")])})
    tgt = SortedDomain({"b": ["u"]})
    m = DomainMorphism.componentwise(src, tgt, {"a": "b"}, {"a": {"u": "hi"}})
    R2 = DistributedRelation.network(tgt, {"e": (["b"], [("u",)])})
    img = direct_image(m, R2)
    assert img.rel["(e,{a})"].tuples == {("lo",), ("hi",)}
    assert validate_network(img) == []


# -- inverse image ------------------------------------------------------------------

def test_inverse_image_along_identity(table1):
    assert inverse_image(identity(table1.domain), table1) == table1


def test_random_inverse_image_matches_brute_force():
    rng = random.Random(22)
    for _ in range(100):
        R1 = random_network(rng, max_sorts=3)
        m = collapse(rng, R1.domain)
        pre = inverse_image(m, R1)
        for e in R1.constraints:
            u = R1.signature.scheme[e]
            expect = {(w,) for w in m.target.values["z"]
                      if tuple(m.value_maps[a][w] for a in u) in R1.rel[e].tuples}
            if not u:
                expect = {()} if R1.rel[e].tuples else set()
            assert pre.rel[e].tuples == expect
        assert validate_network(pre) == []


def test_unit_and_counit_per_constraint():
    rng = random.Random(23)
    for _ in range(100):
        R1 = random_network(rng, max_sorts=3)
        m = collapse(rng, R1.domain)
        R2 = inverse_image(m, R1)
        pushed = direct_image(m, R2)
        for e in R1.constraints:
            u = R1.signature.scheme[e]
            name = f"({e.split()[0]},{{{','.join(u)}}})"
            # counit: phi(phi^-1(rel1)) is inside rel1
            phi = m.phi(u)
            assert {phi(y) for y in R2.rel[e].tuples} <= R1.rel[e].tuples
            if name in pushed.rel:
                assert pushed.rel[name].tuples <= R1.rel[e].tuples
        # unit: rel2 inside phi^-1(phi(rel2))
        for e in R2.constraints:
            u = R1.signature.scheme[e]
            phi = m.phi(u)
            img = {phi(y) for y in R2.rel[e].tuples}
            back = {y for y in m.target.power_values(R2.signature.scheme[e]) if phi(y) in img}
            assert R2.rel[e].tuples <= back


def test_images_are_monotone():
    rng = random.Random(24)
    for _ in range(100):
        R = random_network(rng, max_sorts=3)
        S = random_relations_like(rng, R)
        meet = R.with_relations({e: Relation(R.rel[e].arity, R.rel[e].tuples & S.rel[e].tuples)
                                 for e in R.constraints})
        assert leq(meet, R)
        m = collapse(rng, R.domain)
        assert leq(inverse_image(m, meet), inverse_image(m, R))


def test_compose_with_identity(table1):
    ident = identity(table1.domain)
    proj = projection_morphism(table1.domain)
    both = compose(ident, proj)
    assert inverse_image(both, table1) == inverse_image(proj, table1)


def test_theorem_on_table1(table1, sat_ctx):
    m = projection_morphism(table1.domain)
    assert to_context(inverse_image(m, table1)) == sat_ctx


def test_single_sorted_context_is_its_own_satisfaction_context():
    rng = random.Random(25)
    g, mm = [f"g{i}" for i in range(5)], [f"m{k}" for k in range(4)]
    from distrel import FormalContext
    ctx = FormalContext(g, mm, [(a, b) for a in g for b in mm if rng.random() < 0.5])
    sat = satisfaction_context(as_single_sorted(ctx))
    assert [t.values[0] for t in sat.objects] == g
    assert sat.rows == ctx.rows and list(sat.attributes) == mm
    assert len(enumerate_concepts(sat)) == len(enumerate_concepts(ctx))


def test_mismatched_domains_rejected(table1):
    m = projection_morphism(table1.domain)
    with pytest.raises(InputError):
        direct_image(m, table1)
    with pytest.raises(InputError):
        inverse_image(m, as_single_sorted(satisfaction_context(table1)))
