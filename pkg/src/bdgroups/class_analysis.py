"""Conjugacy classes, centralizers and the class-size strata of G(p)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .group_core import (
    MAX_ENUM_P,
    FamilyGroup,
    GroupElement,
    GroupParams,
    check_gate,
)

CHUNK = 1 << 20

STRATUM_N = "N - Z(G)"
STRATUM_NA = "<N,a> - N"
STRATUM_OUTER = "G - <N,a>"
STRATA = (STRATUM_N, STRATUM_NA, STRATUM_OUTER)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: GroupElement
    size: int
    rep_index: int


@dataclass(frozen=True)
class ClassTable:
    params: GroupParams
    classes: tuple[ConjugacyClass, ...]
    center_order: int

    @property
    def order(self) -> int:
        return self.params.order

    def noncentral_sizes(self) -> set[int]:
        return {c.size for c in self.classes if c.size > 1}

    def multiplicities(self) -> dict[int, int]:
        """Number of classes of each size."""
        return dict(sorted(Counter(c.size for c in self.classes).items()))


def _index_dtype(n: int):
    return np.int32 if n < 2 ** 31 else np.int64


def conjugation_permutation(g: FamilyGroup, h: GroupElement, indices: np.ndarray | None = None) -> np.ndarray:
    """Perfect indices of h^-1 u h for u running over ``indices`` (default: all of G)."""
    if indices is None:
        indices = np.arange(g.order, dtype=np.int64)
    out = np.empty(len(indices), dtype=_index_dtype(g.order))
    for lo in range(0, len(indices), CHUNK):
        out[lo:lo + CHUNK] = g.conjugate_indices(indices[lo:lo + CHUNK], h)
    return out


def orbit_labels(n: int, perms: Sequence[np.ndarray]) -> np.ndarray:
    """Minimum point of each orbit of the group generated by ``perms`` on range(n).

    Min-label propagation along the permutation edges with pointer jumping.
    Each ``perm`` must be a bijection of range(n).
    """
    label = np.arange(n, dtype=_index_dtype(n))
    while True:
        before = label.copy()
        for perm in perms:
            np.minimum(label, label[perm], out=label)
            # perm is a bijection, so this fancy assignment has no collisions
            label[perm] = np.minimum(label[perm], label)
        while True:
            jumped = label[label]
            if np.array_equal(jumped, label):
                break
            label = jumped
        if np.array_equal(label, before):
            return label


@lru_cache(maxsize=2)
def _class_labels(g: FamilyGroup) -> np.ndarray:
    perms = [conjugation_permutation(g, h) for h in g.conjugating_generators]
    labels = orbit_labels(g.order, perms)
    labels.setflags(write=False)
    return labels


def class_labels(g: FamilyGroup, allow_large: bool = False) -> np.ndarray:
    """For every perfect index, the index of the minimal member of its class."""
    check_gate(g.p, allow_large)
    return _class_labels(g)


def class_table(g: FamilyGroup, allow_large: bool = False) -> ClassTable:
    labels = class_labels(g, allow_large)
    reps, sizes = np.unique(labels, return_counts=True)
    order = sorted(zip(sizes.tolist(), reps.tolist()))
    classes = tuple(ConjugacyClass(g.element_from_index(r), s, r) for s, r in order)
    return ClassTable(g.params, classes, sum(1 for c in classes if c.size == 1))


def _class_indices(g: FamilyGroup, u: GroupElement) -> np.ndarray:
    gens = g.conjugating_generators
    seen = np.array([g.element_index(u)], dtype=np.int64)
    frontier = seen
    while frontier.size:
        images = np.concatenate([g.conjugate_indices(frontier, h) for h in gens])
        new = np.setdiff1d(images, seen)
        seen = np.union1d(seen, new)
        frontier = new
    return seen


def _class_indices_scalar(g: FamilyGroup, u: GroupElement) -> list[int]:
    gens = g.conjugating_generators
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for v in frontier:
            for h in gens:
                w = g.conjugate(v, h)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(g.element_index(v) for v in seen)


def conjugacy_class_members(g: FamilyGroup, u: GroupElement) -> np.ndarray:
    """Sorted perfect indices of u^G, by closure under conjugation by generators."""
    if g.p <= MAX_ENUM_P:
        return _class_indices(g, u)
    return np.array(_class_indices_scalar(g, u), dtype=object)


def conjugacy_class_of(g: FamilyGroup, u: GroupElement) -> ConjugacyClass:
    members = conjugacy_class_members(g, u)
    rep = int(members[0])
    return ConjugacyClass(g.element_from_index(rep), len(members), rep)


def center(g: FamilyGroup, allow_large: bool = False) -> set[GroupElement]:
    """Elements commuting with every generator."""
    check_gate(g.p, allow_large)
    fixed = np.ones(g.order, dtype=bool)
    idx = np.arange(g.order, dtype=np.int64)
    for h in g.gen_list:
        fixed &= conjugation_permutation(g, h) == idx
    return {g.element_from_index(int(k)) for k in np.flatnonzero(fixed)}


def centralizer_order(g: FamilyGroup, u: GroupElement, direct: bool = False, allow_large: bool = False) -> int:
    """|C_G(u)|, either as |G| / |u^G| or by counting commuting elements."""
    if not direct:
        return g.order // conjugacy_class_of(g, u).size
    check_gate(g.p, allow_large)
    ud = g.digits_of(u)
    count = 0
    for lo in range(0, g.order, CHUNK):
        hd = g.decode(np.arange(lo, min(lo + CHUNK, g.order), dtype=np.int64))
        uh = g.encode(g.multiply_digits(ud, hd))
        hu = g.encode(g.multiply_digits(hd, ud))
        count += int(np.count_nonzero(uh == hu))
    return count


def _e_elements(g: FamilyGroup) -> np.ndarray:
    # E occupies the leading block of perfect indices
    return np.arange(g.params.e_order, dtype=np.int64)


def centralizer_of_b_in_E(g: FamilyGroup, allow_large: bool = False) -> set[GroupElement]:
    check_gate(g.p, allow_large)
    e = _e_elements(g)
    fixed = e[g.conjugate_indices(e, g.b) == e]
    return {g.element_from_index(int(k)) for k in fixed}


def span_in_E(g: FamilyGroup, gens: Sequence[GroupElement]) -> set[GroupElement]:
    """Subgroup generated by ``gens`` (closure under right multiplication)."""
    seen = {g.identity()}
    frontier = [g.identity()]
    while frontier:
        nxt = []
        for v in frontier:
            for h in gens:
                w = g.multiply(v, h)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def b_centralizer_generators(g: FamilyGroup) -> list[GroupElement]:
    """x_i x_{p-i}, y_i y_{p-i} for i <= (p-1)/2, and z."""
    p = g.p
    half = range(1, (p - 1) // 2 + 1)
    return (
        [g.multiply(g.x(i), g.x(p - i)) for i in half]
        + [g.multiply(g.y(i), g.y(p - i)) for i in half]
        + [g.z]
    )


def m_orbit_sizes_on_E(g: FamilyGroup, allow_large: bool = False) -> Counter:
    """Orbit sizes of <a, b> acting by conjugation on E - <z>, with multiplicities."""
    check_gate(g.p, allow_large)
    e = _e_elements(g)
    perms = [g.conjugate_indices(e, h) for h in (g.a, g.b)]
    labels = orbit_labels(len(e), perms)
    central = {g.element_index(g.identity()), g.element_index(g.z)}
    keep = ~np.isin(e, list(central))
    _, sizes = np.unique(labels[keep], return_counts=True)
    return Counter(sizes.tolist())


def stratum_of(u: GroupElement) -> str:
    """Which coset stratum of the case split u lies in (ignores the center)."""
    if u.bj:
        return STRATUM_OUTER
    if u.ai:
        return STRATUM_NA
    return STRATUM_N


def coset_stratum_sizes(g: FamilyGroup, allow_large: bool = False) -> dict[str, set[int]]:
    """Class sizes met by the noncentral elements of each stratum."""
    labels = class_labels(g, allow_large)
    reps, inv, counts = np.unique(labels, return_inverse=True, return_counts=True)
    size_of = counts[inv]
    out: dict[str, set[int]] = {s: set() for s in STRATA}
    for lo in range(0, g.order, CHUNK):
        d = g.decode(np.arange(lo, min(lo + CHUNK, g.order), dtype=np.int64))
        sz = size_of[lo:lo + CHUNK]
        noncentral = sz > 1
        outer = d.bj == 1
        rot = (d.bj == 0) & (d.ai != 0)
        inner = (d.bj == 0) & (d.ai == 0)
        for name, mask in ((STRATUM_N, inner), (STRATUM_NA, rot), (STRATUM_OUTER, outer)):
            out[name].update(np.unique(sz[mask & noncentral]).tolist())
    return out


def witness_elements(g: FamilyGroup) -> dict[str, GroupElement]:
    p = g.p
    return {
        "x1": g.x(1),
        f"x1*x{p - 1}": g.multiply(g.x(1), g.x(p - 1)),
        "a": g.a,
        "b": g.b,
        "x1*b": g.multiply(g.x(1), g.b),
    }


def expected_witness_sizes(p: int) -> dict[str, int]:
    return {
        "x1": 4 * p,
        f"x1*x{p - 1}": 2 * p,
        "a": 2 ** (2 * p - 1) * p,
        "b": 2 ** (p - 1) * p ** 2,
        "x1*b": 2 ** p * p ** 2,
    }


def expected_class_sizes(p: int) -> set[int]:
    return {2 * p, 4 * p, 2 ** (2 * p - 1) * p, 2 ** (p - 1) * p ** 2, 2 ** p * p ** 2}
