"""Command-line front end.

Exit codes: 0 success, 1 failed verification or enumeration gate refusal,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import class_analysis as ca
from .bdg import (
    BipartiteDivisorGraph,
    TableFormatError,
    bdg_of_group,
    build_bdg,
    class_sizes_of_table_group,
    classify_shape,
    load_table,
)
from .family import (
    VerificationReport,
    fixed_space_of_a,
    fixed_space_of_b,
    verify_generator_images,
    verify_lemma_2_1,
    verify_lemma_2_1_elements,
    verify_presentation,
)
from .group_core import EnumerationGateError, ParameterError, check_gate, make_group

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def run_verify(p: int, allow_large: bool = False) -> VerificationReport:
    g = make_group(p)
    check_gate(p, allow_large)
    rep = VerificationReport(f"G(p) verification, p={p}")
    rep.add("|G|", 2 ** (2 * p) * p ** 3, g.order)
    rep.extend(verify_presentation(g, enumerate_e=True))
    rep.extend(verify_lemma_2_1(p))
    rep.extend(verify_generator_images(g))
    if p <= 5:
        rep.extend(verify_lemma_2_1_elements(g))
    rep.add("dim fixed space of a on E/<z>", 0, fixed_space_of_a(p))
    rep.add("dim fixed space of b on E/<z>", p - 1, fixed_space_of_b(p))

    cb = ca.centralizer_of_b_in_E(g, allow_large)
    rep.add("|C_E(b)|", 2 ** p, len(cb))
    rep.add("C_E(b) = <x_i x_{p-i}, y_i y_{p-i}, z>", True, cb == ca.span_in_E(g, ca.b_centralizer_generators(g)))
    orbits = ca.m_orbit_sizes_on_E(g, allow_large)
    rep.add("<a,b>-orbit sizes on E - Z(E) within {p, 2p}", True, set(orbits) <= {p, 2 * p})

    table = ca.class_table(g, allow_large)
    z = ca.center(g, allow_large)
    expected_center = {g.element(alpha=k, nu=v) for k in range(p) for v in range(2)}
    rep.add("class equation", g.order, sum(c.size for c in table.classes))
    rep.add("|Z(G)|", 2 * p, table.center_order)
    rep.add("Z(G) = <n1, z>", True, z == expected_center)

    witnesses = ca.witness_elements(g)
    witnesses["x1*y1"] = g.multiply(g.x(1), g.y(1))
    sizes = {name: ca.conjugacy_class_of(g, u).size for name, u in witnesses.items()}
    expected = ca.expected_witness_sizes(p)
    # x1's <a,b>-orbit mod z contains the b-fixed x1...x_{p-1}, so |x1^G| = 2p
    expected["x1"] = 2 * p
    expected["x1*y1"] = 4 * p
    for name in witnesses:
        rep.add(f"|({name})^G|", expected[name], sizes[name])

    strata = ca.coset_stratum_sizes(g, allow_large)
    rep.add(f"class sizes on {ca.STRATUM_N}", sorted({2 * p, 4 * p}), sorted(strata[ca.STRATUM_N]))
    rep.add(f"class sizes on {ca.STRATUM_NA}", [2 ** (2 * p - 1) * p], sorted(strata[ca.STRATUM_NA]))
    rep.add(f"class sizes on {ca.STRATUM_OUTER}", sorted({2 ** (p - 1) * p * p, 2 ** p * p * p}),
            sorted(strata[ca.STRATUM_OUTER]))
    rep.add("noncentral class sizes", sorted(ca.expected_class_sizes(p)), sorted(table.noncentral_sizes()))
    shape = classify_shape(build_bdg(table.noncentral_sizes()))
    rep.add("B(G) = K_{2,5}", "K_{2,5}", shape.label())
    return rep


def classes_document(p: int, allow_large: bool = False) -> dict:
    g = make_group(p)
    table = ca.class_table(g, allow_large)
    return {
        "p": p,
        "order": table.order,
        "center_order": table.center_order,
        "classes": [{"rep": c.rep_index, "size": c.size} for c in table.classes],
    }


def graph_document(graph: BipartiteDivisorGraph) -> dict:
    return {
        "primes": list(graph.primes),
        "sizes": list(graph.sizes),
        "edges": [list(e) for e in graph.edges],
        "shape": classify_shape(graph).to_dict(),
    }


def to_dot(graph: BipartiteDivisorGraph, name: str = "B") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  p_{q} [label=\"{q}\", shape=box];" for q in graph.primes]
    lines += [f"  n_{x} [label=\"{x}\", shape=ellipse];" for x in graph.sizes]
    lines += [f"  p_{q} -- n_{x};" for q, x in graph.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graph_text(graph: BipartiteDivisorGraph) -> str:
    shape = classify_shape(graph)
    inv = shape.invariants.to_dict()
    lines = [
        f"primes: {' '.join(map(str, graph.primes))}",
        f"sizes: {' '.join(map(str, graph.sizes))}",
        f"edges: {len(graph.edges)}",
        f"shape: {shape.label()}",
        f"components: {inv['components']}",
        f"diameters: {' '.join(map(str, inv['diameters']))}",
        f"girth: {inv['girth']}",
    ]
    return "\n".join(lines) + "\n"


def _parse_sizes(raw: str) -> list[int]:
    try:
        values = [int(tok) for tok in raw.replace(" ", "").split(",") if tok]
    except ValueError:
        raise InvalidInput(f"--sizes must be a comma-separated list of integers, got {raw!r}") from None
    if not values or any(v < 1 for v in values):
        raise InvalidInput("--sizes needs at least one positive integer")
    return values


def cmd_verify(args) -> int:
    rep = run_verify(args.p, args.allow_large)
    if args.format == "json":
        sys.stdout.write(_dump({"p": args.p, **rep.to_dict()}))
    else:
        sys.stdout.write(rep.render() + "\n")
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_classes(args) -> int:
    doc = classes_document(args.p, args.allow_large)
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    else:
        g = make_group(args.p)
        out = [f"p={doc['p']} order={doc['order']} center_order={doc['center_order']} classes={len(doc['classes'])}"]
        out += [f"{c['size']}\t{c['rep']}\t{g.element_from_index(c['rep'])}" for c in doc["classes"]]
        sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_graph(args) -> int:
    if args.sizes is not None:
        graph = build_bdg(_parse_sizes(args.sizes))
    elif args.p is not None:
        graph = bdg_of_group(make_group(args.p), args.allow_large)
    else:
        try:
            table = load_table(args.table)
        except OSError as exc:
            raise InvalidInput(f"cannot read table: {exc}") from None
        graph = build_bdg(class_sizes_of_table_group(table))
    if args.format == "json":
        sys.stdout.write(_dump(graph_document(graph)))
    elif args.format == "dot":
        sys.stdout.write(to_dot(graph))
    else:
        sys.stdout.write(_graph_text(graph))
    return EXIT_OK


def cmd_acceptance(args) -> int:
    tests = Path(__file__).resolve().parents[2] / "tests" / "test_acceptance.py"
    if not tests.exists():
        raise InvalidInput(f"acceptance suite not found at {tests} (needs a source checkout)")
    import pytest

    extra = ["-m", "not large"] if not args.allow_large else []
    code = pytest.main([str(tests), "-q", "-rA", "-s", *extra])
    return EXIT_OK if code == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdgroups", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, formats):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--allow-large", action="store_true", help="lift the enumeration gate on p")

    sp = sub.add_parser("verify", help="verify the construction and B(G) = K_{2,5} for one p")
    sp.add_argument("--p", type=int, required=True)
    add_common(sp, ["text", "json"])
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classes", help="dump the conjugacy class table of G(p)")
    sp.add_argument("--p", type=int, required=True)
    add_common(sp, ["text", "json"])
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("graph", help="bipartite divisor graph of a size set, G(p), or a table group")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--sizes", help="comma-separated positive integers")
    src.add_argument("--p", type=int)
    src.add_argument("--table", help="multiplication-table file")
    add_common(sp, ["text", "json", "dot"])
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("acceptance", help="run tests/test_acceptance.py from a source checkout")
    sp.add_argument("--allow-large", action="store_true", help="include the p = 7 criterion")
    sp.set_defaults(func=cmd_acceptance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, TableFormatError, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EnumerationGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
