"""A bundled corpus of small groups (order < 64) as multiplication tables.

Groups are generated from explicit constructions: cyclic and abelian groups,
dihedral, dicyclic and metacyclic groups, vector-space semidirect products,
a few permutation and matrix groups, and direct products of these. The list
is deterministic but not a complete census of groups of each order.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Callable, Hashable, Sequence

import numpy as np

from .bdg import TableGroup, parse_table
from .group_core import make_group

CORPUS_MAX_ORDER = 63


def table_from_generators(gens: Sequence[Hashable], mul: Callable, identity: Hashable, name: str) -> TableGroup:
    elems = [identity]
    index = {identity: 0}
    k = 0
    while k < len(elems):
        u = elems[k]
        for h in gens:
            w = mul(u, h)
            if w not in index:
                index[w] = len(elems)
                elems.append(w)
        k += 1
    rows = [[index[mul(u, v)] for v in elems] for u in elems]
    return TableGroup.from_rows(rows, name)


def direct_product(g: TableGroup, h: TableGroup, name: str | None = None) -> TableGroup:
    """(g1, h1) -> g1 * |H| + h1; identity stays at index 0."""
    m = h.order
    tg = g.table.astype(np.int64)
    th = h.table.astype(np.int64)
    t = (tg[:, None, :, None] * m + th[None, :, None, :]).reshape(g.order * m, g.order * m)
    return TableGroup.from_rows(t, name or f"{g.name}x{h.name}")


def cyclic(n: int) -> TableGroup:
    return table_from_generators([1 % n], lambda a, b: (a + b) % n, 0, f"C{n}")


def abelian(moduli: Sequence[int]) -> TableGroup:
    gens = [tuple(int(i == k) % m for i, m in enumerate(moduli)) for k in range(len(moduli))]
    mul = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, moduli))  # noqa: E731
    return table_from_generators(gens, mul, tuple(0 for _ in moduli), "C" + "xC".join(map(str, moduli)))


def metacyclic(m: int, n: int, r: int, name: str | None = None) -> TableGroup:
    """C_m : C_n, the generator of C_n acting by k -> r*k (needs r^n = 1 mod m)."""
    if pow(r, n, m) != 1 % m:
        raise ValueError(f"{r}^{n} != 1 mod {m}")
    powers = [pow(r, s, m) for s in range(n)]

    def mul(u, v):
        return ((u[0] + powers[u[1]] * v[0]) % m, (u[1] + v[1]) % n)

    return table_from_generators([(1 % m, 0), (0, 1 % n)], mul, (0, 0), name or f"C{m}:{r}C{n}")


def dihedral(n: int) -> TableGroup:
    """Dihedral group of order 2n."""
    return metacyclic(n, 2, n - 1, f"D{2 * n}")


def dicyclic(n: int) -> TableGroup:
    """<a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1>, order 4n."""
    m = 2 * n

    def mul(u, v):
        k = (u[0] + (-v[0] if u[1] else v[0])) % m
        s = u[1] + v[1]
        if s == 2:
            return ((k + n) % m, 0)
        return (k, s)

    return table_from_generators([(1, 0), (0, 1)], mul, (0, 0), "Q8" if n == 2 else f"Dic{4 * n}")


def vector_semidirect(q: int, mat: Sequence[Sequence[int]], name: str) -> TableGroup:
    """(Z_q)^d : <M>, with M acting on column vectors."""
    mat = np.array(mat, dtype=np.int64) % q
    d = mat.shape[0]
    powers = [np.eye(d, dtype=np.int64)]
    while True:
        nxt = powers[-1] @ mat % q
        if np.array_equal(nxt, powers[0]):
            break
        powers.append(nxt)
    k = len(powers)

    def mul(u, v):
        vec = np.array(u[0]) + powers[u[1]] @ np.array(v[0])
        return (tuple(int(x) for x in vec % q), (u[1] + v[1]) % k)

    zero = tuple(0 for _ in range(d))
    gens = [(tuple(int(i == j) for i in range(d)), 0) for j in range(d)] + [(zero, 1)]
    return table_from_generators(gens, mul, (zero, 0), name)


def permutation_group(gens: Sequence[Sequence[int]], name: str) -> TableGroup:
    gens = [tuple(g) for g in gens]
    ident = tuple(range(len(gens[0])))
    return table_from_generators(gens, lambda a, b: tuple(b[i] for i in a), ident, name)


def matrix_group_2x2(q: int, gens: Sequence[Sequence[int]], name: str) -> TableGroup:
    def mul(u, v):
        a, b, c, d = u
        e, f, g, h = v
        return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)

    return table_from_generators([tuple(g) for g in gens], mul, (1, 0, 0, 1), name)


def heisenberg(q: int) -> TableGroup:
    """Upper unitriangular 3x3 matrices over Z_q."""

    def mul(u, v):
        return ((u[0] + v[0]) % q, (u[1] + v[1]) % q, (u[2] + v[2] + u[0] * v[1]) % q)

    return table_from_generators([(1, 0, 0), (0, 1, 0)], mul, (0, 0, 0), f"Heis{q}")


def affine_gf8() -> TableGroup:
    """AGL(1, 8) = x -> a x + b over GF(8), order 56."""

    def gf_mul(a, b):
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a & 8:
                a ^= 0b1011
        return out

    def mul(u, v):
        # apply u then v
        return (gf_mul(v[0], u[0]), gf_mul(v[0], u[1]) ^ v[1])

    return table_from_generators([(2, 0), (1, 1)], mul, (1, 0), "AGL(1,8)")


def extraspecial_32() -> TableGroup:
    """2^{1+4}_+, taken as the subgroup E of the family group at p = 3."""
    g = make_group(3)
    e = np.arange(g.params.e_order, dtype=np.int64)
    u, v = np.meshgrid(e, e, indexing="ij")
    return TableGroup.from_rows(g.multiply_indices(u, v), "2^(1+4)+")


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _abelian_types(order: int) -> list[tuple[int, ...]]:
    """Primary-decomposition moduli of every abelian group of the given order."""
    factors: dict[int, int] = {}
    n, q = order, 2
    while n > 1:
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
        q += 1
    per_prime = [[tuple(q ** k for k in part) for part in _partitions(e)] for q, e in factors.items()]
    return [sum(combo, ()) for combo in product(*per_prime)] if per_prime else [()]


def _nonabelian_base() -> list[TableGroup]:
    groups = [dihedral(n) for n in range(3, 32)]
    groups += [dicyclic(n) for n in range(2, 16)]
    for m in range(3, 32):
        for n in range(2, 64 // m + 1):
            if m * n > CORPUS_MAX_ORDER:
                continue
            groups += [metacyclic(m, n, r) for r in range(2, m) if pow(r, n, m) == 1]
    groups += [
        permutation_group([(1, 0, 2, 3), (1, 2, 3, 0)], "S4"),
        permutation_group([(1, 2, 0, 3), (0, 2, 3, 1)], "A4"),
        permutation_group([(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)], "A5"),
        matrix_group_2x2(3, [(1, 1, 0, 1), (1, 0, 1, 1)], "SL(2,3)"),
        matrix_group_2x2(3, [(1, 1, 0, 1), (1, 0, 1, 1), (2, 0, 0, 1)], "GL(2,3)"),
        heisenberg(3),
        affine_gf8(),
        extraspecial_32(),
        vector_semidirect(3, [[0, 2], [1, 0]], "C3^2:C4"),
        vector_semidirect(3, [[2, 0], [0, 2]], "C3^2:C2"),
        vector_semidirect(5, [[4, 0], [0, 4]], "C5^2:C2"),
        vector_semidirect(3, [[2, 0, 0], [0, 2, 0], [0, 0, 2]], "C3^3:C2"),
        vector_semidirect(2, [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]], "C2^4:C3"),
        vector_semidirect(2, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], "C2^3:C3"),
        vector_semidirect(2, [[0, 0, 1], [1, 0, 1], [0, 1, 0]], "C2^3:C7"),
    ]
    return groups


@lru_cache(maxsize=1)
def corpus() -> tuple[TableGroup, ...]:
    """Deterministic list of table groups of order < 64."""
    groups: list[TableGroup] = []
    for order in range(1, CORPUS_MAX_ORDER + 1):
        for moduli in _abelian_types(order):
            groups.append(abelian(moduli) if moduli else cyclic(1))
    base = _nonabelian_base()
    groups += base
    small = [g for g in base if g.order <= 31] + [cyclic(2), cyclic(3), abelian((2, 2)), cyclic(4), cyclic(5)]
    for g in base:
        for h in small:
            if g.order * h.order <= CORPUS_MAX_ORDER and (g is not h):
                groups.append(direct_product(g, h))
    names = set()
    unique = []
    for g in groups:
        if g.name not in names:
            names.add(g.name)
            unique.append(g)
    return tuple(unique)


def bundled_table(name: str) -> TableGroup:
    """One of the shipped table files: ``s3``, ``q8`` or ``d8``."""
    text = resources.files("bdgroups.data").joinpath(f"{name}.tbl").read_text(encoding="utf-8")
    return parse_table(text, name)
