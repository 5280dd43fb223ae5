"""Text formats: network and morphism documents (JSON), Burmeister contexts,
CSV lattice tables and DOT lattice diagrams.

Every emitter is canonical: sorts in domain order, constraints in signature
order, tuples sorted by the declaration order of their values.  Parsing an
emitted document and emitting it again reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Callable

from .errors import InputError, ParseError, ValidationError
from .fca import ConceptLattice, FormalContext
from .flow import DomainMorphism
from .poset import Poset
from .relational import (
    DistributedRelation, Relation, Signature, SortedDomain, complete_down, validate_network,
)

Label = Callable[[Any], str]


# -- canonical JSON rendering ------------------------------------------------

def _scalar(x) -> bool:
    return not isinstance(x, (list, dict))


def _render(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list):
        if all(_scalar(x) for x in obj):
            return "[" + ", ".join(json.dumps(x) for x in obj) + "]"
        if all(isinstance(x, list) and all(_scalar(y) for y in x) for x in obj) and \
                sum(len(x) for x in obj) <= 24:
            return "[" + ", ".join(_render(x) for x in obj) + "]"
        return "[\n" + ",\n".join(pad + _render(x, indent + 1) for x in obj) + \
            "\n" + "  " * indent + "]"
    return json.dumps(obj)


def _dump(doc) -> str:
    return _render(doc) + "\n"


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _need(cond: bool, msg: str, path: str) -> None:
    if not cond:
        raise ParseError(msg, path=path)


def _value(x, path: str):
    _need(isinstance(x, (str, int)) and not isinstance(x, bool),
          "values must be strings or integers", path)
    return x


# -- sorted domains ----------------------------------------------------------

def _parse_sorts(items, path: str) -> SortedDomain:
    _need(isinstance(items, list), "sorts must be a list", path)
    sorts = {}
    for i, s in enumerate(items):
        p = f"{path}[{i}]"
        _need(isinstance(s, dict), "sort entry must be an object", p)
        _need(isinstance(s.get("name"), str), "sort needs a string name", p + ".name")
        _need(s["name"] not in sorts, f"duplicate sort {s['name']!r}", p + ".name")
        vals = s.get("values")
        _need(isinstance(vals, list), "sort needs a values list", p + ".values")
        vals = [_value(v, f"{p}.values[{j}]") for j, v in enumerate(vals)]
        _need(len(set(vals)) == len(vals), "duplicate values", p + ".values")
        pairs = s.get("order", [])
        _need(isinstance(pairs, list), "order must be a list of pairs", p + ".order")
        for j, pr in enumerate(pairs):
            _need(isinstance(pr, list) and len(pr) == 2 and all(v in vals for v in pr),
                  "order entries must be pairs of declared values", f"{p}.order[{j}]")
        sorts[s["name"]] = Poset(vals, [tuple(pr) for pr in pairs])
    return SortedDomain(sorts)


def _emit_sorts(dom: SortedDomain) -> list:
    out = []
    for a in dom.sorts:
        p = dom.values[a]
        entry = {"name": a, "values": list(p.elements)}
        if not p.is_discrete:
            entry["order"] = [list(pr) for pr in p.pairs()]
        out.append(entry)
    return out


# -- networks ----------------------------------------------------------------

def network_from_doc(doc, *, validate: bool = True, close_down: bool = False) -> DistributedRelation:
    _need(isinstance(doc, dict), "network document must be an object", "$")
    dom = _parse_sorts(doc.get("sorts"), "sorts")
    cons = doc.get("constraints")
    _need(isinstance(cons, list), "constraints must be a list", "constraints")
    names, scheme, rel = [], {}, {}
    for i, c in enumerate(cons):
        p = f"constraints[{i}]"
        _need(isinstance(c, dict), "constraint entry must be an object", p)
        name = c.get("name")
        _need(isinstance(name, str), "constraint needs a string name", p + ".name")
        _need(name not in scheme, f"duplicate constraint {name!r}", p + ".name")
        sch = c.get("scheme")
        _need(isinstance(sch, list) and all(isinstance(a, str) for a in sch),
              "scheme must be a list of sort names", p + ".scheme")
        _need(len(set(sch)) == len(sch), "repeated sort in scheme", p + ".scheme")
        for a in sch:
            _need(a in dom.values, f"unknown sort {a!r}", p + ".scheme")
        canon = dom.arity(sch)
        perm = [sch.index(a) for a in canon]
        tuples = c.get("tuples")
        _need(isinstance(tuples, list), "tuples must be a list", p + ".tuples")
        rows = set()
        for j, t in enumerate(tuples):
            tp = f"{p}.tuples[{j}]"
            _need(isinstance(t, list), "tuple must be a list", tp)
            _need(len(t) == len(sch),
                  f"arity mismatch: {len(t)} values for a {len(sch)}-sort scheme", tp)
            for a, v in zip(sch, t):
                _value(v, tp)
                _need(v in dom.values[a], f"value {v!r} not in sort {a!r}", tp)
            rows.add(tuple(t[q] for q in perm))
        r = Relation(canon, frozenset(rows))
        names.append(name)
        scheme[name] = canon
        rel[name] = complete_down(r, dom) if close_down else r
    pairs = doc.get("order", [])
    _need(isinstance(pairs, list), "order must be a list of pairs", "order")
    for j, pr in enumerate(pairs):
        _need(isinstance(pr, list) and len(pr) == 2 and all(e in scheme for e in pr),
              "order entries must be pairs of declared constraints", f"order[{j}]")
    R = DistributedRelation(dom, Signature(names, scheme, [tuple(pr) for pr in pairs]), rel)
    if validate:
        report = validate_network(R)
        if report:
            raise ValidationError(report)
    return R


def parse_network(text: str, *, validate: bool = True, close_down: bool = False) -> DistributedRelation:
    """Read a network document; invalid networks raise :class:`ValidationError`."""
    return network_from_doc(_load(text), validate=validate, close_down=close_down)


def network_to_doc(R: DistributedRelation) -> dict:
    dom, sig = R.domain, R.signature
    doc = {
        "sorts": _emit_sorts(dom),
        "constraints": [
            {"name": e, "scheme": list(sig.scheme[e]),
             "tuples": [list(t) for t in R.rel[e].sorted(dom)]}
            for e in sig.constraints],
    }
    if not sig.order.is_discrete:
        doc["order"] = [list(pr) for pr in sig.order.pairs()]
    return doc


def emit_network(R: DistributedRelation) -> str:
    for e in R.constraints:
        if not isinstance(e, str):
            raise InputError("network documents need string constraint names")
    return _dump(network_to_doc(R))


# -- morphisms ---------------------------------------------------------------

def parse_morphism(text: str) -> DomainMorphism:
    doc = _load(text)
    _need(isinstance(doc, dict), "morphism document must be an object", "$")
    for key in ("source", "target"):
        _need(isinstance(doc.get(key), dict), f"{key} must be an object", key)
    src = _parse_sorts(doc["source"].get("sorts"), "source.sorts")
    tgt = _parse_sorts(doc["target"].get("sorts"), "target.sorts")
    smap = doc.get("sortMap")
    _need(isinstance(smap, dict), "sortMap must be an object", "sortMap")
    for a in src.sorts:
        _need(smap.get(a) in tgt.values, f"sortMap must send {a!r} to a target sort",
              f"sortMap.{a}")
    has_vm, has_tb = "valueMaps" in doc, "tables" in doc
    _need(has_vm != has_tb, "give exactly one of valueMaps or tables", "$")
    if has_vm:
        vm = doc["valueMaps"]
        _need(isinstance(vm, dict), "valueMaps must be an object", "valueMaps")
        maps = {}
        for a in src.sorts:
            p = f"valueMaps.{a}"
            pairs = vm.get(a)
            _need(isinstance(pairs, list), "value map must be a list of [target, source] pairs", p)
            g = {}
            for j, pr in enumerate(pairs):
                _need(isinstance(pr, list) and len(pr) == 2, "expected a [target, source] pair",
                      f"{p}[{j}]")
                _need(pr[0] in tgt.values[smap[a]] and pr[1] in src.values[a],
                      "pair values must come from the mapped sorts", f"{p}[{j}]")
                _need(pr[0] not in g, f"{pr[0]!r} mapped twice", f"{p}[{j}]")
                g[pr[0]] = pr[1]
            maps[a] = g
        return DomainMorphism.componentwise(src, tgt, smap, maps)
    tables = {}
    tb = doc["tables"]
    _need(isinstance(tb, list), "tables must be a list", "tables")
    for i, t in enumerate(tb):
        p = f"tables[{i}]"
        _need(isinstance(t, dict), "table must be an object", p)
        ar = t.get("arity")
        _need(isinstance(ar, list) and all(a in src.values for a in ar), "arity must list source sorts",
              p + ".arity")
        canon = src.arity(ar)
        _need(canon not in tables, "arity declared twice", p + ".arity")
        perm = [ar.index(a) for a in canon]
        fu = tgt.arity(smap[a] for a in canon)
        entries = t.get("map")
        _need(isinstance(entries, list), "map must be a list of [target tuple, source tuple]", p + ".map")
        table = {}
        for j, pr in enumerate(entries):
            q = f"{p}.map[{j}]"
            _need(isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, list) for x in pr),
                  "expected [target tuple, source tuple]", q)
            y, x = pr
            _need(len(y) == len(fu), f"target tuple needs {len(fu)} values", q)
            _need(len(x) == len(ar), f"source tuple needs {len(ar)} values", q)
            _need(tuple(y) not in table, "target tuple mapped twice", q)
            table[tuple(y)] = tuple(x[k] for k in perm)
        tables[canon] = table
    return DomainMorphism.explicit(src, tgt, smap, tables)


def emit_morphism(m: DomainMorphism) -> str:
    doc: dict = {
        "source": {"sorts": _emit_sorts(m.source)},
        "target": {"sorts": _emit_sorts(m.target)},
        "sortMap": dict(m.sort_map),
    }
    if m.value_maps is not None:
        vm = {}
        for a in m.source.sorts:
            tp = m.target.values[m.sort_map[a]]
            g = m.value_maps[a]
            vm[a] = [[y, g[y]] for y in sorted(g, key=tp.index)]
        doc["valueMaps"] = vm
    elif m.tables is not None:
        tbs = []
        for u in sorted(m.tables, key=lambda u: (len(u), [m.source.sorts.index(a) for a in u])):
            fu = m.image_arity(u)
            t = m.tables[u]
            keys = sorted(t, key=lambda y: m.target.value_key(fu, y))
            tbs.append({"arity": list(u), "map": [[list(y), list(t[y])] for y in keys]})
        doc["tables"] = tbs
    else:
        raise InputError("only componentwise or tabulated morphisms can be written out")
    return _dump(doc)


# -- Burmeister contexts -------------------------------------------------------

def parse_context(text: str) -> FormalContext:
    """Read a Burmeister ``.cxt`` context (discrete orders)."""
    lines = text.splitlines()

    def line(i: int) -> str:
        if i >= len(lines):
            raise ParseError("unexpected end of file", i + 1)
        return lines[i]

    if line(0).strip() != "B":
        raise ParseError("first line must be 'B'", 1, 1)
    counts = []
    for i in (2, 3):
        s = line(i).strip()
        if not s.isdigit():
            raise ParseError(f"expected a count, got {s!r}", i + 1, 1)
        counts.append(int(s))
    g, m = counts
    if line(4).strip():
        raise ParseError("expected a blank line after the counts", 5, 1)
    names = [line(5 + i) for i in range(g + m)]
    objs, attrs = names[:g], names[g:]
    for what, seq, start in (("object", objs, 5), ("attribute", attrs, 5 + g)):
        seen = set()
        for k, s in enumerate(seq):
            if s in seen:
                raise ParseError(f"duplicate {what} name {s!r}", start + k + 1, 1)
            seen.add(s)
    rows = []
    base = 5 + g + m
    for i in range(g):
        r = line(base + i).rstrip()
        if len(r) != m:
            raise ParseError(f"row has {len(r)} cells, expected {m}", base + i + 1, 1)
        row = 0
        for k, ch in enumerate(r):
            if ch == "X":
                row |= 1 << k
            elif ch != ".":
                raise ParseError(f"unexpected character {ch!r} in matrix", base + i + 1, k + 1)
        rows.append(row)
    for i in range(base + g, len(lines)):
        if lines[i].strip():
            raise ParseError("trailing content after the matrix", i + 1, 1)
    return FormalContext.from_rows(objs, attrs, rows)


def emit_context(ctx: FormalContext, label: Label = str, allow_order: bool = False) -> str:
    """Write ``ctx`` in Burmeister format.

    ``label`` renders object names.  The format cannot carry object or
    attribute orders; ordered contexts are refused unless ``allow_order`` is
    set, in which case the order is dropped.
    """
    if not allow_order and not (ctx.objects.is_discrete and ctx.attributes.is_discrete):
        raise InputError("Burmeister format holds discrete contexts only")
    n = len(ctx.attributes)
    out = ["B", "", str(len(ctx.objects)), str(n), ""]
    out += [label(g) for g in ctx.objects]
    out += [str(m) for m in ctx.attributes]
    for r in ctx.rows:
        out.append("".join("X" if r >> k & 1 else "." for k in range(n)))
    return "\n".join(out) + "\n"


# -- lattice tables and diagrams -------------------------------------------------

def _csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def emit_lattice_tables(lat: ConceptLattice, label: Label = str) -> dict[str, str]:
    """Generators, successors and order matrix as CSV documents keyed by table name."""
    L = ConceptLattice.label
    gens = [["concept", "tuples", "constraints"]]
    succ = [["concept", "successors"]]
    for i in range(len(lat)):
        gens.append([L(i), ", ".join(label(g) for g in lat.object_generators(i)),
                     ", ".join(label(m) for m in lat.attribute_generators(i))])
        succ.append([L(i), ", ".join(L(k) for k in sorted(lat.covers[i]))])
    n = len(lat)
    order = [[""] + [str(i + 1) for i in range(n)]]
    for j in range(n):
        order.append([str(j + 1)] + ["X" if lat.order[j][i] else "" for i in range(n)])
    return {"generators": _csv(gens), "successors": _csv(succ), "order": _csv(order)}


def _dot_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(lat: ConceptLattice, label: Label = str) -> str:
    """Hasse diagram: one node per concept, one edge per cover pair, drawn bottom-up."""
    L = ConceptLattice.label
    out = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(len(lat)):
        parts = [L(i)]
        objs = [label(g) for g in lat.object_generators(i)]
        attrs = [label(m) for m in lat.attribute_generators(i)]
        if attrs:
            parts.append(", ".join(attrs))
        if objs:
            parts.append(", ".join(objs))
        text = "\\n".join(p.replace("\\", "\\\\").replace('"', '\\"') for p in parts)
        out.append(f'  {_dot_str(L(i))} [label="{text}"];')
    for j in range(len(lat)):
        for i in sorted(lat.covers[j]):
            out.append(f"  {_dot_str(L(j))} -> {_dot_str(L(i))};")
    out.append("}")
    return "\n".join(out) + "\n"
