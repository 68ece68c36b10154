"""Mechanical checks of the presentation of E and of the automorphisms a, b."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import Gf2Matrix
from .group_core import (
    ActionMatrices,
    FamilyGroup,
    GroupElement,
    GroupParams,
    enumeration_limit,
    generator_matrices,
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    actual: str
    passed: bool


@dataclass
class VerificationReport:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected, actual, passed: bool | None = None) -> Check:
        if any(c.name == name for c in self.checks):
            raise ValueError(f"duplicate check name {name!r}")
        if passed is None:
            passed = expected == actual
        check = Check(name, str(expected), str(actual), bool(passed))
        self.checks.append(check)
        return check

    def extend(self, other: VerificationReport) -> None:
        for c in other.checks:
            self.add(c.name, c.expected, c.actual, c.passed)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "overall": self.overall,
            "checks": [
                {"name": c.name, "expected": c.expected, "actual": c.actual, "passed": c.passed}
                for c in self.checks
            ],
        }

    def render(self) -> str:
        lines = [self.title] if self.title else []
        for c in self.checks:
            status = "PASS" if c.passed else f"FAIL (expected {c.expected}, got {c.actual})"
            lines.append(f"{c.name}: {status}")
        return "\n".join(lines)


def verify_presentation(g: FamilyGroup, enumerate_e: bool | None = None) -> VerificationReport:
    """Evaluate every defining relation of E under the engine's multiplication.

    With ``enumerate_e`` (default: p within the enumeration gate) the subgroup
    generated by the x's, y's and z is also closed out and its order compared
    with 2^(2p-1).
    """
    p = g.p
    one = g.identity()
    rep = VerificationReport(f"presentation of E, p={p}")
    xs = {i: g.x(i) for i in range(1, p)}
    ys = {i: g.y(i) for i in range(1, p)}

    rep.add("z^2", one, g.multiply(g.z, g.z))
    for i in range(1, p):
        for name, u in ((f"x{i}", xs[i]), (f"y{i}", ys[i])):
            rep.add(f"{name}^2", one, g.multiply(u, u))
            rep.add(f"[{name},z]", one, g.commutator(u, g.z))
    for i in range(1, p):
        for j in range(1, p):
            if i < j:
                rep.add(f"[x{i},x{j}]", one, g.commutator(xs[i], xs[j]))
                rep.add(f"[y{i},y{j}]", one, g.commutator(ys[i], ys[j]))
            if i != j:
                rep.add(f"[x{i},y{j}]", one, g.commutator(xs[i], ys[j]))
        rep.add(f"[x{i},y{i}]", g.z, g.commutator(xs[i], ys[i]))

    if enumerate_e is None:
        enumerate_e = p <= enumeration_limit()
    if enumerate_e:
        gens = list(xs.values()) + list(ys.values()) + [g.z]
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for v in frontier:
                for h in gens:
                    w = g.multiply(v, h)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        rep.add("|E|", g.params.e_order, len(seen))
        rep.add("E lies in the x/y/z normal-form block", True, all(u.in_e for u in seen))
    return rep


def action_matrices(g: FamilyGroup) -> ActionMatrices:
    return ActionMatrices(g.xa_matrix, g.ya_matrix, g.xb_matrix, g.yb_matrix)


def symplectic_gram(r: int) -> Gf2Matrix:
    """Gram matrix of <(e,h),(e',h')> = e.h' + h.e' on GF(2)^(2r)."""
    zero = np.zeros((r, r), dtype=np.uint8)
    eye = np.eye(r, dtype=np.uint8)
    return Gf2Matrix(np.block([[zero, eye], [eye, zero]]))


def _mod_p_power(m: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(len(m), dtype=np.int64)
    while k:
        if k & 1:
            out = out @ m % p
        m = m @ m % p
        k >>= 1
    return out


def verify_lemma_2_1(p: int, matrices: ActionMatrices | None = None) -> VerificationReport:
    """Matrix-level check that a and b are automorphisms generating D_{2p}.

    On E/<z> the maps are block diagonal T = diag(X, Y) and fix z, so they
    extend to automorphisms of E exactly when T is invertible and preserves
    the commutator pairing (T^t J T = J). For block-diagonal T that is
    X^t Y = I, which also keeps the squaring map (e, h) -> e.h invariant.
    """
    p = GroupParams(p).p
    m = generator_matrices(p) if matrices is None else matrices
    r = p - 1
    eye = Gf2Matrix.identity(r)
    rep = VerificationReport(f"automorphism checks (matrix level), p={p}")

    ta = Gf2Matrix.block_diag(m.xa, m.ya)
    tb = Gf2Matrix.block_diag(m.xb, m.yb)
    gram = symplectic_gram(r)
    rep.add("a invertible", True, ta.is_invertible())
    rep.add("b invertible", True, tb.is_invertible())
    rep.add("a preserves symplectic form", True, ta.T @ gram @ ta == gram)
    rep.add("b preserves symplectic form", True, tb.T @ gram @ tb == gram)

    rep.add("Xa^p = 1", True, (m.xa ** p).is_identity())
    rep.add("Ya^p = 1", True, (m.ya ** p).is_identity())
    rep.add("Xb^2 = 1", True, (m.xb @ m.xb).is_identity())
    rep.add("Yb^2 = 1", True, (m.yb @ m.yb).is_identity())
    rep.add("(XaXb)^2 = 1", True, ((m.xa @ m.xb) ** 2).is_identity())
    rep.add("(YaYb)^2 = 1", True, ((m.ya @ m.yb) ** 2).is_identity())
    rep.add("a != 1 on E", True, not (m.xa == eye and m.ya == eye))
    rep.add("b != 1 on E", True, not (m.xb == eye and m.yb == eye))

    # (alpha, beta) columns: n2 -> n1 n2 under a, n2 -> n2^-1 under b
    na = np.array([[1, 1], [0, 1]], dtype=np.int64)
    nb = np.array([[1, 0], [0, p - 1]], dtype=np.int64)
    i2 = np.eye(2, dtype=np.int64)
    rep.add("Na^p = 1 (mod p)", True, bool(np.array_equal(_mod_p_power(na, p, p), i2)))
    rep.add("Nb^2 = 1 (mod p)", True, bool(np.array_equal(nb @ nb % p, i2)))
    rep.add("(NaNb)^2 = 1 (mod p)", True, bool(np.array_equal(_mod_p_power(na @ nb % p, 2, p), i2)))
    # powers of a have determinant 1 on <n1, n2>, b has determinant -1
    det_b = int(round(np.linalg.det(nb))) % p
    rep.add("b not in <a>", True, det_b != 1)
    # a has prime order p and b is an involution outside <a>, so <a,b> = D_{2p}
    needed = {"Xa^p = 1", "Ya^p = 1", "Na^p = 1 (mod p)", "a != 1 on E", "Xb^2 = 1", "Yb^2 = 1",
              "Nb^2 = 1 (mod p)", "(XaXb)^2 = 1", "(YaYb)^2 = 1", "(NaNb)^2 = 1 (mod p)", "b not in <a>"}
    rep.add("|<a,b>| = 2p", True, all(c.passed for c in rep.checks if c.name in needed))
    return rep


def verify_lemma_2_1_elements(g: FamilyGroup) -> VerificationReport:
    """Element-level check: conjugation by a and b is an automorphism of E and
    <a, b> is dihedral of order 2p (exhaustive over E x E; intended for p <= 5)."""
    p = g.p
    rep = VerificationReport(f"automorphism checks (element level), p={p}")
    one = g.identity()
    rep.add("a^p", one, g.power(g.a, p))
    rep.add("b^2", one, g.power(g.b, 2))
    rep.add("(ab)^2", one, g.power(g.multiply(g.a, g.b), 2))

    m_elems = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for v in frontier:
            for h in (g.a, g.b):
                w = g.multiply(v, h)
                if w not in m_elems:
                    m_elems.add(w)
                    nxt.append(w)
        frontier = nxt
    rep.add("|<a,b>|", 2 * p, len(m_elems))

    e = np.arange(g.params.e_order, dtype=np.int64)
    u, v = np.meshgrid(e, e, indexing="ij")
    u, v = u.ravel(), v.ravel()
    uv = g.multiply_indices(u, v)
    for name, h in (("a", g.a), ("b", g.b)):
        img = g.conjugate_indices(e, h)
        hom = np.array_equal(img[uv], g.multiply_indices(img[u], img[v]))
        rep.add(f"conjugation by {name} is a homomorphism on E", True, hom)
        rep.add(f"conjugation by {name} maps E onto E", True, bool(np.array_equal(np.sort(img), e)))
    return rep


def notation_images(g: FamilyGroup) -> dict[str, dict[GroupElement, GroupElement]]:
    """Generator images under A and B built as words from their definitions."""
    p = g.p
    x, y, w = g.x, g.y, g.word
    img_a: dict[GroupElement, GroupElement] = {g.z: g.z}
    img_b: dict[GroupElement, GroupElement] = {g.z: g.z}
    for i in range(1, p - 1):
        img_a[x(i)] = x(i + 1)
        img_a[y(i)] = w(y(1), y(i + 1))
        img_b[x(i)] = x(p - i)
        img_b[y(i)] = y(p - i)
    img_a[x(p - 1)] = w(*(x(k) for k in range(1, p)))
    img_a[y(p - 1)] = y(1)
    img_b[x(p - 1)] = x(1)
    img_b[y(p - 1)] = y(1)
    return {"a": img_a, "b": img_b}


def verify_generator_images(g: FamilyGroup) -> VerificationReport:
    """conjugate(gen, a) and conjugate(gen, b) against the defining maps."""
    rep = VerificationReport(f"generator images, p={g.p}")
    for name, images in notation_images(g).items():
        h = g.a if name == "a" else g.b
        for gen, expected in images.items():
            rep.add(f"{gen}^{name}", expected, g.conjugate(gen, h))
    rep.add("n1^a", g.n1, g.conjugate(g.n1, g.a))
    rep.add("n2^a", g.multiply(g.n1, g.n2), g.conjugate(g.n2, g.a))
    rep.add("n1^b", g.n1, g.conjugate(g.n1, g.b))
    rep.add("n2^b", g.inverse(g.n2), g.conjugate(g.n2, g.b))
    return rep


def _fixed_dim(x: Gf2Matrix, y: Gf2Matrix) -> int:
    r = x.rows
    eye = Gf2Matrix.identity(r)
    return (x - eye).kernel_dim() + (y - eye).kernel_dim()


def fixed_space_of_a(p: int) -> int:
    """dim ker(T_a - 1) on E/<z> = GF(2)^(2(p-1))."""
    m = generator_matrices(GroupParams(p).p)
    return _fixed_dim(m.xa, m.ya)


def fixed_space_of_b(p: int) -> int:
    m = generator_matrices(GroupParams(p).p)
    return _fixed_dim(m.xb, m.yb)
