import math
import random
from itertools import product

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bdgroups.bdg import (
    INFINITE,
    MAX_TABLE_ORDER,
    TableFormatError,
    TableGroup,
    bdg_of_group,
    build_bdg,
    class_sizes_of_table_group,
    classify_shape,
    format_table,
    graph_invariants,
    load_table,
    parse_table,
    prime_divisors,
    table_class_sizes,
)
from bdgroups.corpus import (
    bundled_table,
    corpus,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    extraspecial_32,
    permutation_group,
)

K25_SIZES = [6, 12, 36, 72, 96]


def to_nx(graph):
    h = nx.Graph()
    h.add_nodes_from(graph.vertices())
    h.add_edges_from((("p", q), ("n", x)) for q, x in graph.edges)
    return h


# -- basic examples ---------------------------------------------------------


def test_k25_example():
    g = build_bdg(K25_SIZES)
    assert g.primes == (2, 3)
    assert g.sizes == tuple(K25_SIZES)
    assert len(g.edges) == 10
    shape = classify_shape(g)
    assert shape.is_complete_bipartite(2, 5)
    assert shape.label() == "K_{2,5}"
    inv = graph_invariants(g)
    assert (inv.components, inv.diameters, inv.girth) == (1, (2,), 4)


def test_one_gives_empty_graph():
    g = build_bdg([1])
    assert g.is_empty and g.primes == () and g.edges == ()
    assert graph_invariants(g).components == 0
    assert classify_shape(g).kind == "other"
    assert build_bdg([]).is_empty


def test_two_three():
    g = build_bdg({2, 3})
    assert g.edges == ((2, 2), (3, 3))
    shape = classify_shape(g)
    assert shape.kind == "other"
    assert shape.invariants.components == 2
    assert shape.invariants.diameters == (1, 1)
    assert shape.invariants.girth == INFINITE
    assert math.isinf(shape.invariants.girth)
    assert shape.to_dict()["girth"] == "inf"


def test_single_edge_prefers_complete_bipartite():
    shape = classify_shape(build_bdg([2]))
    assert shape.is_complete_bipartite(1, 1)
    assert shape.label() == "K_{1,1}"
    assert shape.invariants.components == 1


@pytest.mark.parametrize(
    "sizes, label",
    [
        ([6, 10, 15], "C_6"),
        ([6, 15], "P_4"),  # 2-6-3-15-5
        ([6], "K_{2,1}"),  # also a path; complete bipartite wins
        ([4, 8, 16], "K_{1,3}"),
        ([30], "K_{3,1}"),
        ([6, 10, 15, 21], "other"),
        ([6, 35], "other"),
        ([12, 18, 24, 36], "K_{2,4}"),
    ],
)
def test_shape_labels(sizes, label):
    assert classify_shape(build_bdg(sizes)).label() == label


def test_shape_dict_fields():
    d = classify_shape(build_bdg(K25_SIZES)).to_dict()
    assert d == {"kind": "complete_bipartite", "label": "K_{2,5}", "m": 2, "n": 5,
                 "components": 1, "diameters": [2], "girth": 4}
    d = classify_shape(build_bdg([6, 15])).to_dict()
    assert (d["kind"], d["length"], d["label"]) == ("path", 4, "P_4")


def test_build_rejects_nonpositive():
    with pytest.raises(ValueError):
        build_bdg([0, 6])
    with pytest.raises(ValueError):
        prime_divisors(0)


# -- prime factorization ------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 97, 2 ** 40, 999983, 999983 * 999979, 2 ** 64 - 59, 6 * 1000003 ** 2,
                               1000003 * 1000033 * 1000037])
def test_prime_divisors_examples(n):
    assert prime_divisors(n) == tuple(sympy.primefactors(n))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 2 ** 62))
def test_prime_divisors_vs_sympy(n):
    assert prime_divisors(n) == tuple(sympy.primefactors(n))


# -- random sets against brute-force predicates -------------------------------


def brute_shape(xs):
    xs = sorted({x for x in xs if x > 1})
    primes = sorted({q for x in xs for q in sympy.primefactors(x)})
    edges = {(q, x) for q in primes for x in xs if math.gcd(q, x) != 1}
    h = nx.Graph()
    h.add_nodes_from([("p", q) for q in primes] + [("n", x) for x in xs])
    h.add_edges_from((("p", q), ("n", x)) for q, x in edges)
    if xs and edges == set(product(primes, xs)):
        return "complete_bipartite", (len(primes), len(xs)), h
    if h.number_of_nodes() and nx.is_connected(h):
        degs = [d for _, d in h.degree()]
        if all(d == 2 for d in degs):
            return "cycle", h.number_of_edges(), h
        if max(degs) <= 2 and h.number_of_edges() == h.number_of_nodes() - 1:
            return "path", h.number_of_edges(), h
    return "other", None, h


def random_sets(count=1000, seed=2024):
    rnd = random.Random(seed)
    pool = [2, 3, 5, 7, 11, 13]
    out = []
    for k in range(count):
        size = rnd.randint(1, 6)
        if k % 3 == 2:
            # products of cyclically adjacent primes give cycles (or near-cycles)
            qs = rnd.sample(pool, rnd.randint(2, 6))
            xs = [qs[i] * qs[(i + 1) % len(qs)] for i in range(len(qs)) if rnd.random() < 0.85]
            xs = xs or [qs[0]]
        elif k % 3 == 1:
            # products over a small prime pool, so structured shapes turn up
            xs = []
            for _ in range(size):
                x = 1
                for q in rnd.sample(pool, rnd.randint(1, 2)):
                    x *= q ** rnd.randint(1, 2)
                xs.append(x)
        else:
            xs = [rnd.randrange(1, 10 ** 6) for _ in range(size)]
        out.append(xs)
    return out


def test_random_sets_against_brute_force():
    kinds = set()
    for xs in random_sets():
        g = build_bdg(xs)
        shape = classify_shape(g)
        kind, param, h = brute_shape(xs)
        kinds.add(kind)
        assert shape.kind == kind, xs
        if kind == "complete_bipartite":
            assert (shape.m, shape.n) == param
        elif kind in ("cycle", "path"):
            assert shape.length == param
        assert set(map(tuple, (sorted(e) for e in to_nx(g).edges))) == set(map(tuple, (sorted(e) for e in h.edges)))
    assert kinds == {"complete_bipartite", "cycle", "path", "other"}


def test_invariants_against_networkx():
    for xs in random_sets(300, seed=7):
        g = build_bdg(xs)
        h = to_nx(g)
        inv = graph_invariants(g)
        comps = sorted((sorted(c, key=lambda v: (v[0] != "p", v[1])) for c in nx.connected_components(h)),
                       key=lambda c: (c[0][0] != "p", c[0][1]))
        assert inv.components == len(comps)
        assert list(inv.diameters) == [nx.diameter(h.subgraph(c)) for c in comps]
        assert inv.girth == nx.girth(h)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 10 ** 6), max_size=8))
def test_degree_invariants(xs):
    g = build_bdg(xs)
    xs_set = {x for x in xs if x > 1}
    assert set(g.sizes) == xs_set
    for x in g.sizes:
        assert g.degree(("n", x)) == len(sympy.primefactors(x))
    for q in g.primes:
        assert g.degree(("p", q)) == sum(1 for x in xs_set if x % q == 0) >= 1
    assert all(x % q == 0 for q, x in g.edges)
    # bipartite by construction: every edge joins a prime to a size
    assert nx.is_bipartite(to_nx(g))


# -- table groups -------------------------------------------------------------


def test_bundled_tables():
    s3, q8, d8 = bundled_table("s3"), bundled_table("q8"), bundled_table("d8")
    assert (s3.order, q8.order, d8.order) == (6, 8, 8)
    assert class_sizes_of_table_group(s3) == {2, 3}
    assert class_sizes_of_table_group(q8) == {2}
    assert class_sizes_of_table_group(d8) == {2}
    g = bdg_of_group(s3)
    assert graph_invariants(g).components == 2
    assert classify_shape(bdg_of_group(q8)).is_complete_bipartite(1, 1)
    assert classify_shape(bdg_of_group(d8)).is_complete_bipartite(1, 1)


def test_q8_and_d8_are_different_groups():
    def square_count(t):
        return int(np.sum(t.table[np.arange(t.order), np.arange(t.order)] == 0))
    assert square_count(bundled_table("q8")) == 2
    assert square_count(bundled_table("d8")) == 6


def brute_class_sizes(t):
    n = t.order
    inv = [next(b for b in range(n) if t.mul(a, b) == 0) for a in range(n)]
    seen, sizes = set(), {}
    for a in range(n):
        if a in seen:
            continue
        cls = {t.mul(t.mul(inv[h], a), h) for h in range(n)}
        seen |= cls
        sizes[min(cls)] = len(cls)
    return sizes


@pytest.mark.parametrize("t", [dihedral(5), dicyclic(3), permutation_group([(1, 0, 2, 3), (1, 2, 3, 0)], "S4"),
                               extraspecial_32(), direct_product(dihedral(3), cyclic(2))],
                         ids=lambda t: t.name)
def test_table_class_sizes_brute_force(t):
    assert table_class_sizes(t) == brute_class_sizes(t)


def test_table_group_of_family_p3_matches_engine(g3):
    e = extraspecial_32()
    assert class_sizes_of_table_group(e) == {2}
    assert bdg_of_group(g3).edges == build_bdg(K25_SIZES).edges
    assert classify_shape(bdg_of_group(g3)).is_complete_bipartite(2, 5)


def test_format_parse_round_trip(tmp_path):
    for t in (bundled_table("s3"), dihedral(6), extraspecial_32()):
        text = format_table(t)
        again = parse_table(text)
        assert np.array_equal(again.table, t.table)
        path = tmp_path / "t.tbl"
        path.write_text(text, encoding="utf-8")
        loaded = load_table(path)
        assert loaded.name == "t"
        assert np.array_equal(loaded.table, t.table)


def test_load_report():
    assert bundled_table("s3").load_report == {"order": 6, "associativity": "exhaustive", "triples_checked": 216}
    big = direct_product(dihedral(15), cyclic(7))  # order 210
    assert big.load_report["associativity"] == "sampled"


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "empty"),
        ("2\n0 1\n", "expected"),
        ("2\n0 1\n1 x\n", "non-integer"),
        ("2\n0 1\n1 2\n", "0..n-1"),
        ("2\n1 0\n0 1\n", "identity"),
        ("3\n0 1 2\n1 1 0\n2 0 1\n", "Latin"),
        ("0\n", "expected"),
    ],
)
def test_malformed_tables(text, message):
    with pytest.raises(TableFormatError, match=message):
        parse_table(text)


def test_non_associative_latin_square_rejected():
    # a loop of order 5 with identity 0 that is not a group
    rows = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(TableFormatError, match="associative"):
        TableGroup.from_rows(rows)


def test_order_cap():
    n = MAX_TABLE_ORDER + 1
    rows = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    with pytest.raises(TableFormatError, match="cap"):
        TableGroup.from_rows(rows)


def test_table_is_read_only():
    t = bundled_table("s3")
    with pytest.raises(ValueError):
        t.table[0, 0] = 1


# -- corpus --------------------------------------------------------------------


def test_corpus_properties():
    groups = corpus()
    assert len(groups) > 300
    assert all(1 <= t.order < 64 for t in groups)
    assert len({t.name for t in groups}) == len(groups)
    assert {t.order for t in groups} == set(range(1, 64))


def test_corpus_has_no_k22():
    for t in corpus():
        assert not classify_shape(bdg_of_group(t)).is_complete_bipartite(2, 2), t.name
