"""Acceptance criteria, one marked test group per criterion.

A summary line per criterion is printed at the end of the run.
"""

import csv
import io
import os
import random
import subprocess
import sys

import pytest

from distrel import (
    FormalContext, Relation, context_direct_image, context_inverse_image, data_path,
    derive_extent, derive_intent, enumerate_concepts, full_sublattice, interior,
    inverse_image, natural_join, participation_context, power, principal_ideal,
    project_solution, projection_morphism, projective_containment, satisfaction_context,
    solution_set, to_context,
)
from distrel.cli import main
from distrel.formats import (
    emit_context, emit_morphism, emit_network, parse_context, parse_morphism, parse_network,
)
from distrel.interior import containment_conditions, leq, pointwise_join

from conftest import FIXTURES, tup
from gen import random_context, random_full_subset, random_network, random_relations_like
import oracles

CASES = 1000


def crit(n, title):
    return pytest.mark.criterion(n, title)


def _csv(name):
    return list(csv.reader(io.StringIO((FIXTURES / name).read_text())))


def _names(cell):
    return {s.strip() for s in cell.split(", ")} if cell else set()


# -- 1 --------------------------------------------------------------------------

@crit(1, "solution set of the reference network")
def test_c1_solve(capsys):
    assert main(["solve", str(data_path("table1.json"))]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert set(lines) == {"(f,f,t,t,f)", "(f,t,t,t,f)"} and len(lines) == 2


# -- 2 --------------------------------------------------------------------------

@crit(2, "interior equals the reference interior network")
def test_c2_interior(table1, table3):
    inner = interior(table1)
    assert inner == table3
    for e in table1.constraints:
        assert inner.rel[e].tuples == table3.rel[e].tuples
    assert (table1.size(), inner.size()) == (14, 7)


@crit(2, "interior equals the reference interior network")
def test_c2_interior_cli(capsys):
    assert main(["interior", str(data_path("table1.json"))]) == 0
    assert capsys.readouterr().out == data_path("table3.json").read_text()


# -- 3 --------------------------------------------------------------------------

@crit(3, "full-tuple satisfaction context equals the reference 32x5 table")
@pytest.mark.xfail(strict=True, reason="reference table leaves ((f,t,f,f,f), e5) blank although "
                   "(f,f,f) is in R_e5 of the reference network")
def test_c3_context_matches_reference_table(sat_ctx, ref_table2):
    assert [str(g) for g in sat_ctx.objects] == list(ref_table2.objects)
    assert list(sat_ctx.attributes) == list(ref_table2.attributes)
    mismatches = [(str(g), m) for g in sat_ctx.objects for m in sat_ctx.attributes
                  if sat_ctx.has(g, m) != ref_table2.has(str(g), m)]
    assert mismatches == []


# -- 4 --------------------------------------------------------------------------

@crit(4, "concept lattice matches the reference generator/successor/order tables")
def test_c4_count(lattice):
    assert len(lattice) == 23


@crit(4, "concept lattice matches the reference generator/successor/order tables")
def test_c4_constraint_generators(lattice):
    rows = _csv("table4_generators.csv")[1:]
    got = [set(lattice.attribute_generators(i)) for i in range(23)]
    assert got == [_names(r[2]) for r in rows]


@crit(4, "concept lattice matches the reference generator/successor/order tables")
@pytest.mark.xfail(strict=True, reason="reference generator rows C_19..C_21 list tuples whose "
                   "object concepts are other concepts")
def test_c4_tuple_generators(lattice):
    rows = _csv("table4_generators.csv")[1:]
    got = {lattice.label(i): {str(g) for g in lattice.object_generators(i)} for i in range(23)}
    ref = {r[0]: _names(r[1]) for r in rows}
    diff = sorted(k for k in got if got[k] != ref[k])
    assert diff == []


@crit(4, "concept lattice matches the reference generator/successor/order tables")
def test_c4_successors(lattice):
    rows = _csv("table5_successors.csv")[1:]
    got = [{lattice.label(k) for k in lattice.covers[i]} for i in range(23)]
    assert got == [_names(r[1]) for r in rows]


@crit(4, "concept lattice matches the reference generator/successor/order tables")
def test_c4_order_matrix(lattice):
    rows = _csv("table6_order.csv")[1:]
    ref = [[c == "X" for c in r[1:]] for r in rows]
    assert [list(r) for r in lattice.order] == ref
    assert all(not lattice.order[j][i] for j in range(23) for i in range(j + 1, 23))


@crit(4, "concept lattice matches the reference generator/successor/order tables")
def test_c4_c10(lattice):
    c10 = lattice[9]
    assert c10.intent == {"e2", "e5"}
    assert c10.extent == {tup(s) for s in ["tffff", "tfftt", "ffttf", "ftttf", "ttttf"]}


# -- 5 --------------------------------------------------------------------------

@crit(5, "candidate projective containments and their truth")
def test_c5_check(capsys, table1):
    assert main(["check", str(data_path("table1.json"))]) == 0
    assert capsys.readouterr().out == "e2 <= e1\tfalse\ne3 <= e1\tfalse\n"
    assert containment_conditions(interior(table1)) == [("e2", "e1", True), ("e3", "e1", True)]


# -- 6 --------------------------------------------------------------------------

def _theorem_holds(R):
    m = projection_morphism(R.domain)
    return to_context(inverse_image(m, R)) == satisfaction_context(R, "full")


@crit(6, "inverse image along projection is the satisfaction context")
def test_c6_theorem_table1(table1):
    assert _theorem_holds(table1)


@crit(6, "inverse image along projection is the satisfaction context")
def test_c6_theorem_random():
    rng = random.Random(600)
    for k in range(100):
        R = random_network(rng, max_sorts=4, max_vals=3, max_cons=5,
                           ordered=k % 2 == 1, preorder=k % 2 == 1)
        assert _theorem_holds(R), k


# -- 7 --------------------------------------------------------------------------

def _sample(rng, seq):
    return {x for x in seq if rng.random() < 0.5}


@crit(7, "randomized property suites")
def test_c7a_galois_law():
    rng = random.Random(701)
    for _ in range(CASES):
        ctx = random_context(rng, 8, 6)
        phi, psi = _sample(rng, ctx.objects), _sample(rng, ctx.attributes)
        assert (derive_intent(ctx, phi) >= psi) == (phi <= derive_extent(ctx, psi))


@crit(7, "randomized property suites")
def test_c7b_projection_solution_adjunction():
    rng = random.Random(702)
    for _ in range(CASES):
        R = random_network(rng)
        P = random_full_subset(rng, R.domain, rng.random())
        sig, dom = R.signature, R.domain
        sols = solution_set(R)
        assert leq(project_solution(P, sig, dom), R) == (P.tuples <= sols.tuples)
        assert leq(project_solution(sols, sig, dom), R)
        assert P.tuples <= solution_set(project_solution(P, sig, dom)).tuples


@crit(7, "randomized property suites")
def test_c7c_interior():
    rng = random.Random(703)
    for _ in range(CASES):
        R = random_network(rng)
        inner = interior(R)
        assert {e: set(inner.rel[e].tuples) for e in R.constraints} == oracles.interior_rel(R)
        assert interior(inner) == inner
        assert solution_set(inner) == solution_set(R)
        S = pointwise_join([inner, random_relations_like(rng, R, density=0.2)])
        if solution_set(S) == solution_set(R):
            assert leq(inner, S)


@crit(7, "randomized property suites")
def test_c7d_context_image_unit_counit():
    rng = random.Random(704)
    for _ in range(CASES):
        g2 = [f"p{i}" for i in range(rng.randint(0, 6))]
        g1 = [f"q{i}" for i in range(rng.randint(1, 4))]
        M = [f"m{k}" for k in range(rng.randint(0, 4))]
        phi = {g: rng.choice(g1) for g in g2}
        c2 = FormalContext(g2, M, [(g, m) for g in g2 for m in M if rng.random() < 0.5])
        c1 = FormalContext(g1, M, [(g, m) for g in g1 for m in M if rng.random() < 0.5])
        assert c2.incidence <= context_inverse_image(phi, context_direct_image(phi, c2, g1), g2).incidence
        assert context_direct_image(phi, context_inverse_image(phi, c1, g2), g1).incidence <= c1.incidence


@crit(7, "randomized property suites")
def test_c7e_join_is_infimum():
    rng = random.Random(705)
    for _ in range(CASES):
        R = random_network(rng)
        rels = list(R.rel.values())
        k = rng.randint(1, len(rels))
        fam = rng.sample(rels, k)
        J = natural_join(fam, R.domain)
        # brute force: all tuples over the union arity projecting into each member
        arity = R.domain.arity(set().union(*(r.arity for r in fam)))
        want = {t for t in power(R.domain, arity).tuples
                if all(tuple(t[arity.index(a)] for a in r.arity) in r.tuples for r in fam)}
        assert J.arity == arity and J.tuples == want
        assert all(projective_containment(J, r) for r in fam)
        S = Relation(arity, frozenset(t for t in power(R.domain, arity).tuples if rng.random() < 0.3))
        if all(projective_containment(S, r) for r in fam):
            assert projective_containment(S, J)


@crit(7, "randomized property suites")
def test_c7f_satisfaction_respects_order():
    rng = random.Random(706)
    for _ in range(CASES):
        R = random_network(rng, ordered=True, preorder=True)
        dom, sig = R.domain, R.signature
        for _ in range(8):
            x = {a: rng.choice(dom.values[a].elements) for a in dom.sorts}
            # a smaller tuple: drop sorts and lower values
            y = {a: rng.choice([v for v in dom.values[a] if dom.values[a].leq(v, x[a])])
                 for a in dom.sorts if rng.random() < 0.7}
            for e in R.constraints:
                if oracles.sat(R, x, e):
                    full_y = {**x, **y}
                    assert oracles.sat(R, full_y, e)
                    if set(sig.scheme[e]) <= set(y) and all(y[a] == x[a] for a in y):
                        assert oracles.sat(R, y, e)
                    for d in R.constraints:
                        if sig.order.leq(e, d):
                            assert oracles.sat(R, x, d)
        ctx = satisfaction_context(R, "full")
        for j, i in ctx.objects.strict_pairs():
            assert ctx.rows[j] & ctx.rows[i] == ctx.rows[i]


# -- 8 --------------------------------------------------------------------------

@crit(8, "participation contexts")
def test_c8_full_lattice_reproduces_context():
    rng = random.Random(800)
    for k in range(300):
        if k % 3:
            ctx = random_context(rng)
        else:
            ctx = satisfaction_context(random_network(rng, max_sorts=3))
        lat = enumerate_concepts(ctx)
        assert participation_context(ctx, lat, full_sublattice(lat)) == ctx


@crit(8, "participation contexts")
def test_c8_bottom_ideal(sat_ctx, lattice):
    ctx = participation_context(sat_ctx, lattice, principal_ideal(lattice, lattice.bottom))
    assert len(ctx.incidence) == 10


# -- 9 --------------------------------------------------------------------------

@crit(9, "round trips and byte-deterministic emitters")
@pytest.mark.parametrize("name", ["table1.json", "table3.json"])
def test_c9_network_round_trip(name):
    text = data_path(name).read_text()
    R = parse_network(text)
    assert emit_network(R) == text and parse_network(emit_network(R)) == R


@crit(9, "round trips and byte-deterministic emitters")
@pytest.mark.parametrize("name", ["merge.json", "pairing.json"])
def test_c9_morphism_round_trip(name):
    text = data_path(name).read_text()
    assert emit_morphism(parse_morphism(text)) == text


@crit(9, "round trips and byte-deterministic emitters")
def test_c9_context_round_trip(sat_ctx):
    text = data_path("table2.cxt").read_text()
    assert emit_context(parse_context(text)) == text
    emitted = emit_context(sat_ctx)
    assert emit_context(parse_context(emitted)) == emitted


_EMIT_ALL = """
import hashlib, sys
from distrel import data_path, enumerate_concepts, interior, satisfaction_context
from distrel.formats import *
R = parse_network(data_path("table1.json").read_text())
lat = enumerate_concepts(satisfaction_context(R))
docs = [emit_network(R), emit_network(interior(R)), emit_context(satisfaction_context(R)),
        emit_dot(lat), *emit_lattice_tables(lat).values(),
        emit_morphism(parse_morphism(data_path("merge.json").read_text())),
        emit_morphism(parse_morphism(data_path("pairing.json").read_text()))]
sys.stdout.write(hashlib.sha256("\\0".join(docs).encode()).hexdigest())
"""


@crit(9, "round trips and byte-deterministic emitters")
def test_c9_emitters_deterministic_across_runs():
    outs = []
    for seed in ("1", "2"):
        env = {**os.environ, "PYTHONHASHSEED": seed}
        outs.append(subprocess.run([sys.executable, "-c", _EMIT_ALL], env=env, check=True,
                                   capture_output=True, text=True).stdout)
    assert outs[0] == outs[1] and len(outs[0]) == 64
