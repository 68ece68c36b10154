"""Bipartite divisor graphs of integer sets, their shapes and invariants.

Also hosts :class:`TableGroup`, a group given by its multiplication table,
used as an independent backend for class sizes of small groups.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .class_analysis import class_table
from .group_core import FamilyGroup

SIEVE_LIMIT = 10 ** 6
MAX_TABLE_ORDER = 2000
EXHAUSTIVE_ASSOC_ORDER = 200
ASSOC_SAMPLES = 200_000

INFINITE = math.inf


@lru_cache(maxsize=1)
def _small_primes() -> np.ndarray:
    sieve = np.ones(SIEVE_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, int(SIEVE_LIMIT ** 0.5) + 1):
        if sieve[q]:
            sieve[q * q::q] = False
    return np.flatnonzero(sieve)


def prime_divisors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n >= 1, ascending."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    for q in _small_primes().tolist():
        if q * q > n:
            break
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
    if n > 1:
        if n <= SIEVE_LIMIT ** 2:
            out.append(n)
        else:
            # cofactor past the sieve range: no prime factor below 10^6 remains
            from sympy import primefactors

            out.extend(primefactors(n))
    return tuple(sorted(out))


@dataclass(frozen=True)
class BipartiteDivisorGraph:
    primes: tuple[int, ...]
    sizes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def is_empty(self) -> bool:
        return not self.sizes

    def vertices(self) -> list[tuple[str, int]]:
        return [("p", q) for q in self.primes] + [("n", x) for x in self.sizes]

    def adjacency(self) -> dict[tuple[str, int], list[tuple[str, int]]]:
        adj: dict[tuple[str, int], list[tuple[str, int]]] = {v: [] for v in self.vertices()}
        for q, x in self.edges:
            adj[("p", q)].append(("n", x))
            adj[("n", x)].append(("p", q))
        return adj

    def degree(self, v: tuple[str, int]) -> int:
        kind, val = v
        return sum(1 for q, x in self.edges if (q if kind == "p" else x) == val)


def build_bdg(values: Iterable[int]) -> BipartiteDivisorGraph:
    xs = set()
    for x in values:
        x = int(x)
        if x < 1:
            raise ValueError(f"values must be positive integers, got {x}")
        if x > 1:
            xs.add(x)
    sizes = tuple(sorted(xs))
    edges = []
    primes = set()
    for x in sizes:
        for q in prime_divisors(x):
            primes.add(q)
            edges.append((q, x))
    return BipartiteDivisorGraph(tuple(sorted(primes)), sizes, tuple(sorted(edges)))


@dataclass(frozen=True)
class GraphInvariants:
    components: int
    diameters: tuple[int, ...]
    girth: float  # INFINITE when acyclic

    def to_dict(self) -> dict:
        return {
            "components": self.components,
            "diameters": list(self.diameters),
            "girth": "inf" if self.girth == INFINITE else int(self.girth),
        }


def _vertex_key(v: tuple[str, int]) -> tuple[int, int]:
    return (0 if v[0] == "p" else 1, v[1])


def _bfs(adj, source) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _girth(adj) -> float:
    best = INFINITE
    for s in adj:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def graph_invariants(g: BipartiteDivisorGraph) -> GraphInvariants:
    adj = g.adjacency()
    comps = []
    seen: set = set()
    for v in sorted(adj, key=_vertex_key):
        if v in seen:
            continue
        dist = _bfs(adj, v)
        seen.update(dist)
        comps.append(sorted(dist, key=_vertex_key))
    diameters = tuple(max(max(_bfs(adj, u).values()) for u in comp) for comp in comps)
    return GraphInvariants(len(comps), diameters, _girth(adj))


@dataclass(frozen=True)
class GraphShape:
    """Shape tag: ``complete_bipartite`` (m primes, n sizes), ``cycle``,
    ``path`` (length in edges) or ``other``."""

    kind: str
    invariants: GraphInvariants
    m: int | None = None
    n: int | None = None
    length: int | None = None

    def is_complete_bipartite(self, m: int, n: int) -> bool:
        return self.kind == "complete_bipartite" and (self.m, self.n) == (m, n)

    def label(self) -> str:
        if self.kind == "complete_bipartite":
            return f"K_{{{self.m},{self.n}}}"
        if self.kind == "cycle":
            return f"C_{self.length}"
        if self.kind == "path":
            return f"P_{self.length}"
        return "other"

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "label": self.label()}
        if self.kind == "complete_bipartite":
            out.update(m=self.m, n=self.n)
        elif self.kind in ("path", "cycle"):
            out["length"] = self.length
        out.update(self.invariants.to_dict())
        return out


def classify_shape(g: BipartiteDivisorGraph) -> GraphShape:
    """Precedence when tags overlap: complete bipartite > cycle > path > other."""
    inv = graph_invariants(g)
    m, n, e = len(g.primes), len(g.sizes), len(g.edges)
    if n and e == m * n:
        return GraphShape("complete_bipartite", inv, m=m, n=n)
    if inv.components == 1:
        degrees = [len(nb) for nb in g.adjacency().values()]
        if all(d == 2 for d in degrees):
            return GraphShape("cycle", inv, length=e)
        if max(degrees) <= 2 and e == len(degrees) - 1:
            return GraphShape("path", inv, length=e)
    return GraphShape("other", inv)


# -- multiplication-table groups ---------------------------------------------


class TableFormatError(ValueError):
    """Malformed or non-group multiplication table."""


@dataclass(frozen=True, eq=False)
class TableGroup:
    table: np.ndarray
    name: str = ""
    load_report: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @classmethod
    def from_rows(cls, rows, name: str = "", rng_seed: int = 0) -> TableGroup:
        try:
            t = np.array(rows, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise TableFormatError(f"table is not a rectangular integer array: {exc}") from None
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise TableFormatError(f"table must be square and nonempty, got shape {t.shape}")
        n = t.shape[0]
        if n > MAX_TABLE_ORDER:
            raise TableFormatError(f"order {n} exceeds the cap {MAX_TABLE_ORDER}")
        if t.min() < 0 or t.max() >= n:
            raise TableFormatError("entries must lie in 0..n-1")
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise TableFormatError("element 0 must be the identity")
        srt = np.sort(t, axis=1)
        if not (np.all(srt == ident) and np.all(np.sort(t, axis=0) == ident[:, None])):
            raise TableFormatError("table is not a Latin square")
        if n <= EXHAUSTIVE_ASSOC_ORDER:
            left = t[t, :]  # left[a, b, c] = (ab)c
            right = t[ident[:, None, None], t[None, :, :]]  # a(bc)
            ok = np.array_equal(left, right)
            report = {"order": n, "associativity": "exhaustive", "triples_checked": n ** 3}
        else:
            rng = np.random.default_rng(rng_seed)
            a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
            report = {"order": n, "associativity": "sampled", "triples_checked": ASSOC_SAMPLES}
        if not ok:
            raise TableFormatError("table is not associative")
        t = t.astype(np.int32)
        t.setflags(write=False)
        return cls(t, name, report)

    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])


def parse_table(text: str, name: str = "") -> TableGroup:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise TableFormatError("empty table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise TableFormatError(f"non-integer token: {exc}") from None
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise TableFormatError(f"expected {n} rows of {n} entries")
    return TableGroup.from_rows(rows, name)


def load_table(path: str | Path) -> TableGroup:
    path = Path(path)
    return parse_table(path.read_text(encoding="utf-8"), name=path.stem)


def format_table(t: TableGroup) -> str:
    rows = "\n".join(" ".join(map(str, r)) for r in t.table.tolist())
    return f"{t.order}\n{rows}\n"


def table_class_sizes(t: TableGroup) -> dict[int, int]:
    """Minimal element of each conjugacy class -> class size."""
    tab = t.table
    inv = t.inverses()
    # conj[a, h] = h^-1 a h
    conj = tab[tab[inv[None, :], np.arange(t.order)[:, None]], np.arange(t.order)[None, :]]
    labels = conj.min(axis=1)
    reps, counts = np.unique(labels, return_counts=True)
    return dict(zip(reps.tolist(), counts.tolist()))


def class_sizes_of_table_group(t: TableGroup) -> set[int]:
    """Sizes of the noncentral conjugacy classes."""
    return {s for s in table_class_sizes(t).values() if s > 1}


def bdg_of_group(source: Union[FamilyGroup, TableGroup], allow_large: bool = False) -> BipartiteDivisorGraph:
    if isinstance(source, TableGroup):
        return build_bdg(class_sizes_of_table_group(source))
    return build_bdg(class_table(source, allow_large).noncentral_sizes())

