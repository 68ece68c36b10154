"""Exact arithmetic in the family G(p) = (<n1> x <n2> x E) : <a, b>.

E is the extra-special 2-group of plus type generated by x_1..x_{p-1},
y_1..y_{p-1}, z with [x_i, y_i] = z; n1, n2 have order p; a, b generate a
dihedral group of order 2p acting on N = <n1, n2> x E.

Every element has the unique normal form

    n1^alpha n2^beta x^eps y^eta z^nu a^ai b^bj

where ``eps`` and ``eta`` are bitmasks (bit k holds the exponent of x_{k+1},
resp. y_{k+1}). Conjugation is u^h = h^-1 u h and the semidirect product is
realised so that a^-1 n a is the image of n under the generator map A.

Two routes are provided: scalar :class:`GroupElement` arithmetic (pure Python
integers, any p <= 101) and array arithmetic over perfect indices (numpy,
p <= 13) used by the enumeration code.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .gf2 import Gf2Matrix, dot

MAX_SYMBOLIC_P = 101
MAX_ENUM_P = 13
DEFAULT_GATE_P = 7
GATE_ENV = "BDG_MAX_P"


class ParameterError(ValueError):
    """Invalid group parameter."""


class EnumerationGateError(RuntimeError):
    """Refused to enumerate a group beyond the configured size limit."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def enumeration_limit() -> int:
    """Largest p enumerated without an explicit override (env ``BDG_MAX_P``)."""
    raw = os.environ.get(GATE_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_GATE_P
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{GATE_ENV} must be an integer, got {raw!r}") from None


def check_gate(p: int, allow_large: bool = False) -> None:
    if p > MAX_ENUM_P:
        raise EnumerationGateError(f"p={p} exceeds the hard enumeration limit p <= {MAX_ENUM_P}")
    if not allow_large and p > enumeration_limit():
        raise EnumerationGateError(
            f"p={p} exceeds the enumeration gate p <= {enumeration_limit()}; "
            "pass allow_large=True (--allow-large) to override"
        )


@dataclass(frozen=True)
class GroupParams:
    p: int

    def __post_init__(self):
        p = self.p
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise ParameterError(f"p must be an integer, got {p!r}")
        if p < 3 or not is_prime(int(p)):
            raise ParameterError(f"p must be an odd prime, got {p}")
        if p > MAX_SYMBOLIC_P:
            raise ParameterError(f"p must be at most {MAX_SYMBOLIC_P}, got {p}")
        object.__setattr__(self, "p", int(p))

    @property
    def rank(self) -> int:
        """Number of x (and of y) generators."""
        return self.p - 1

    @property
    def order(self) -> int:
        return 2 ** (2 * self.p) * self.p ** 3

    @property
    def e_order(self) -> int:
        return 2 ** (2 * self.p - 1)

    @property
    def n_order(self) -> int:
        return self.p ** 2 * self.e_order

    @property
    def m_order(self) -> int:
        return 2 * self.p


@dataclass(frozen=True, slots=True)
class GroupElement:
    alpha: int = 0
    beta: int = 0
    eps: int = 0
    eta: int = 0
    nu: int = 0
    ai: int = 0
    bj: int = 0

    def as_tuple(self) -> tuple[int, ...]:
        return (self.alpha, self.beta, self.eps, self.eta, self.nu, self.ai, self.bj)

    @property
    def in_e(self) -> bool:
        return self.alpha == self.beta == self.ai == self.bj == 0

    @property
    def in_n(self) -> bool:
        return self.ai == self.bj == 0

    def __str__(self) -> str:
        parts = []

        def power(name, k):
            parts.append(name if k == 1 else f"{name}^{k}")

        if self.alpha:
            power("n1", self.alpha)
        if self.beta:
            power("n2", self.beta)
        for letter, mask in (("x", self.eps), ("y", self.eta)):
            k = 0
            while mask >> k:
                if (mask >> k) & 1:
                    parts.append(f"{letter}{k + 1}")
                k += 1
        if self.nu:
            parts.append("z")
        if self.ai:
            power("a", self.ai)
        if self.bj:
            parts.append("b")
        return "*".join(parts) or "1"


class Digits(NamedTuple):
    """Normal-form fields held as parallel integer arrays (or scalars)."""

    alpha: np.ndarray
    beta: np.ndarray
    eps: np.ndarray
    eta: np.ndarray
    nu: np.ndarray
    ai: np.ndarray
    bj: np.ndarray


class ActionMatrices(NamedTuple):
    """Actions of a and b on the x- and y-coordinates of E/<z>."""

    xa: Gf2Matrix
    ya: Gf2Matrix
    xb: Gf2Matrix
    yb: Gf2Matrix


def generator_matrices(p: int) -> ActionMatrices:
    """Column k is the exponent vector of the image of x_{k+1} (resp. y_{k+1}).

    x_i -> x_{i+1}, x_{p-1} -> x_1...x_{p-1};  y_i -> y_1 y_{i+1}, y_{p-1} -> y_1;
    b reverses indices on both.
    """
    r = p - 1
    xa = Gf2Matrix.from_columns([1 << (k + 1) for k in range(r - 1)] + [(1 << r) - 1], r)
    ya = Gf2Matrix.from_columns([1 | (1 << (k + 1)) for k in range(r - 1)] + [1], r)
    reversal = [1 << (r - 1 - k) for k in range(r)]
    return ActionMatrices(xa, ya, Gf2Matrix.from_columns(reversal, r), Gf2Matrix.from_columns(reversal, r))


def _lin(cols: Sequence[int], v: int) -> int:
    out = 0
    k = 0
    while v:
        if v & 1:
            out ^= cols[k]
        v >>= 1
        k += 1
    return out


class FamilyGroup:
    """The group G(p) with its generators and GF(2) action matrices.

    Instances are immutable after construction; all methods are pure.
    """

    def __init__(self, params: GroupParams):
        self.params = params
        p = params.p
        r = p - 1
        self.xa_matrix, self.ya_matrix, self.xb_matrix, self.yb_matrix = generator_matrices(p)

        # _x_maps[i][j] acts as n -> m n m^-1 for m = a^i b^j, i.e. A^-i after B^j
        xa_inv = self.xa_matrix.inverse()
        ya_inv = self.ya_matrix.inverse()
        x_maps, y_maps = [], []
        xp = Gf2Matrix.identity(r)
        yp = Gf2Matrix.identity(r)
        for _ in range(p):
            x_maps.append((xp.columns(), (xp @ self.xb_matrix).columns()))
            y_maps.append((yp.columns(), (yp @ self.yb_matrix).columns()))
            xp = xa_inv @ xp
            yp = ya_inv @ yp
        self._x_maps = tuple(x_maps)
        self._y_maps = tuple(y_maps)

        self.n1 = GroupElement(alpha=1)
        self.n2 = GroupElement(beta=1)
        self.z = GroupElement(nu=1)
        self.a = GroupElement(ai=1)
        self.b = GroupElement(bj=1)
        self.gen_list: tuple[GroupElement, ...] = (
            (self.n1, self.n2)
            + tuple(self.x(i) for i in range(1, p))
            + tuple(self.y(i) for i in range(1, p))
            + (self.z, self.a, self.b)
        )

    def __repr__(self) -> str:
        return f"FamilyGroup(p={self.p})"

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def order(self) -> int:
        return self.params.order

    @property
    def conjugating_generators(self) -> tuple[GroupElement, ...]:
        """Generators with the central ones (n1, z) dropped."""
        return tuple(h for h in self.gen_list if h not in (self.n1, self.z))

    # -- element construction ---------------------------------------------

    def x(self, i: int) -> GroupElement:
        self._check_gen_index(i)
        return GroupElement(eps=1 << (i - 1))

    def y(self, i: int) -> GroupElement:
        self._check_gen_index(i)
        return GroupElement(eta=1 << (i - 1))

    def _check_gen_index(self, i: int) -> None:
        if not 1 <= i <= self.p - 1:
            raise ValueError(f"generator index {i} outside 1..{self.p - 1}")

    def element(self, alpha=0, beta=0, eps=0, eta=0, nu=0, ai=0, bj=0) -> GroupElement:
        """Validated constructor; reduces residues into canonical range."""
        p, r = self.p, self.p - 1
        if not (0 <= eps < 1 << r and 0 <= eta < 1 << r):
            raise ValueError(f"eps/eta must be {r}-bit masks")
        return GroupElement(alpha % p, beta % p, eps, eta, nu & 1, ai % p, bj & 1)

    def word(self, *factors: GroupElement) -> GroupElement:
        out = self.identity()
        for f in factors:
            out = self.multiply(out, f)
        return out

    def power(self, u: GroupElement, k: int) -> GroupElement:
        if k < 0:
            u, k = self.inverse(u), -k
        out = self.identity()
        while k:
            if k & 1:
                out = self.multiply(out, u)
            u = self.multiply(u, u)
            k >>= 1
        return out

    # -- scalar arithmetic ---------------------------------------------------

    def identity(self) -> GroupElement:
        return GroupElement()

    def _z_correction(self, eta: int, eps: int) -> int:
        # y^eta x^eps = x^eps y^eta z^<eta, eps>
        return dot(eta, eps)

    def act(self, n: GroupElement, i: int, j: int) -> GroupElement:
        """m n m^-1 for m = a^i b^j and n in N."""
        p = self.p
        s = -1 if j else 1
        return GroupElement(
            (n.alpha - i * s * n.beta) % p,
            (s * n.beta) % p,
            _lin(self._x_maps[i][j], n.eps),
            _lin(self._y_maps[i][j], n.eta),
            n.nu,
        )

    def multiply(self, u: GroupElement, v: GroupElement) -> GroupElement:
        p = self.p
        i, j = u.ai, u.bj
        w = self.act(v, i, j)
        return GroupElement(
            (u.alpha + w.alpha) % p,
            (u.beta + w.beta) % p,
            u.eps ^ w.eps,
            u.eta ^ w.eta,
            u.nu ^ w.nu ^ self._z_correction(u.eta, w.eps),
            (i - v.ai if j else i + v.ai) % p,
            j ^ v.bj,
        )

    def inverse(self, u: GroupElement) -> GroupElement:
        p = self.p
        n_inv = GroupElement(-u.alpha % p, -u.beta % p, u.eps, u.eta, u.nu ^ dot(u.eps, u.eta))
        m_inv = GroupElement(ai=u.ai if u.bj else -u.ai % p, bj=u.bj)
        return self.multiply(m_inv, n_inv)

    def conjugate(self, u: GroupElement, h: GroupElement) -> GroupElement:
        """u^h = h^-1 u h."""
        return self.multiply(self.multiply(self.inverse(h), u), h)

    def commutator(self, u: GroupElement, h: GroupElement) -> GroupElement:
        """[u, h] = u^-1 h^-1 u h."""
        return self.multiply(self.multiply(self.inverse(u), self.inverse(h)), self.multiply(u, h))

    # -- perfect index -------------------------------------------------------

    def element_index(self, u: GroupElement) -> int:
        p, R = self.p, 1 << (self.p - 1)
        k = ((u.alpha * p + u.beta) * p + u.ai) * 2 + u.bj
        return ((k * R + u.eps) * R + u.eta) * 2 + u.nu

    def element_from_index(self, k: int) -> GroupElement:
        k = int(k)
        if not 0 <= k < self.order:
            raise IndexError(f"index {k} outside [0, {self.order})")
        p, R = self.p, 1 << (self.p - 1)
        k, nu = divmod(k, 2)
        k, eta = divmod(k, R)
        k, eps = divmod(k, R)
        k, bj = divmod(k, 2)
        k, ai = divmod(k, p)
        alpha, beta = divmod(k, p)
        return GroupElement(alpha, beta, eps, eta, nu, ai, bj)

    def enumerate_elements(self, allow_large: bool = False) -> Iterator[GroupElement]:
        check_gate(self.p, allow_large)
        for k in range(self.order):
            yield self.element_from_index(k)

    # -- array arithmetic ----------------------------------------------------

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self.p > MAX_ENUM_P:
            raise EnumerationGateError(f"array arithmetic needs p <= {MAX_ENUM_P}")
        p, R = self.p, 1 << (self.p - 1)
        xt = np.empty((p, 2, R), dtype=np.int64)
        yt = np.empty((p, 2, R), dtype=np.int64)
        # column-by-column XOR accumulation over the bits of v
        vs = np.arange(R, dtype=np.int64)
        for i in range(p):
            for j in range(2):
                for tab, cols in ((xt, self._x_maps[i][j]), (yt, self._y_maps[i][j])):
                    acc = np.zeros(R, dtype=np.int64)
                    for k, col in enumerate(cols):
                        acc ^= ((vs >> k) & 1) * col
                    tab[i, j] = acc
        return xt, yt

    def decode(self, idx) -> Digits:
        p, R = self.p, 1 << (self.p - 1)
        k = np.asarray(idx, dtype=np.int64)
        nu = k & 1
        k = k >> 1
        eta = k % R
        k = k // R
        eps = k % R
        k = k // R
        bj = k & 1
        k = k >> 1
        ai = k % p
        k = k // p
        return Digits(k // p, k % p, eps, eta, nu, ai, bj)

    def encode(self, d: Digits) -> np.ndarray:
        p, R = self.p, 1 << (self.p - 1)
        k = ((np.asarray(d.alpha, dtype=np.int64) * p + d.beta) * p + d.ai) * 2 + d.bj
        return ((k * R + d.eps) * R + d.eta) * 2 + d.nu

    @staticmethod
    def digits_of(u: GroupElement) -> Digits:
        return Digits(*u.as_tuple())

    def multiply_digits(self, u: Digits, v: Digits) -> Digits:
        """Array (broadcasting) version of :meth:`multiply`."""
        p = self.p
        xt, yt = self._tables
        i, j = u.ai, u.bj
        s = 1 - 2 * np.asarray(j, dtype=np.int64)
        eps2 = xt[i, j, v.eps]
        eta2 = yt[i, j, v.eta]
        zc = np.bitwise_count(np.bitwise_and(u.eta, eps2)) & 1
        return Digits(
            (u.alpha + v.alpha - i * s * v.beta) % p,
            (u.beta + s * v.beta) % p,
            u.eps ^ eps2,
            u.eta ^ eta2,
            u.nu ^ v.nu ^ zc.astype(np.int64),
            (i + s * v.ai) % p,
            j ^ v.bj,
        )

    def conjugate_digits(self, u: Digits, h: GroupElement) -> Digits:
        return self.multiply_digits(self.multiply_digits(self.digits_of(self.inverse(h)), u), self.digits_of(h))

    def conjugate_indices(self, idx, h: GroupElement) -> np.ndarray:
        return self.encode(self.conjugate_digits(self.decode(idx), h))

    def multiply_indices(self, left, right) -> np.ndarray:
        return self.encode(self.multiply_digits(self.decode(left), self.decode(right)))

    def all_indices(self, allow_large: bool = False) -> np.ndarray:
        check_gate(self.p, allow_large)
        return np.arange(self.order, dtype=np.int64)


def make_group(params: GroupParams | int) -> FamilyGroup:
    if not isinstance(params, GroupParams):
        params = GroupParams(params)
    return FamilyGroup(params)


# Function-style aliases for the group operations.

def identity(g: FamilyGroup) -> GroupElement:
    return g.identity()


def multiply(g: FamilyGroup, u: GroupElement, v: GroupElement) -> GroupElement:
    return g.multiply(u, v)


def inverse(g: FamilyGroup, u: GroupElement) -> GroupElement:
    return g.inverse(u)


def conjugate(g: FamilyGroup, u: GroupElement, h: GroupElement) -> GroupElement:
    return g.conjugate(u, h)


def commutator(g: FamilyGroup, u: GroupElement, h: GroupElement) -> GroupElement:
    return g.commutator(u, h)


def element_index(g: FamilyGroup, u: GroupElement) -> int:
    return g.element_index(u)


def element_from_index(g: FamilyGroup, k: int) -> GroupElement:
    return g.element_from_index(k)


def enumerate_elements(g: FamilyGroup, allow_large: bool = False) -> Iterator[GroupElement]:
    return g.enumerate_elements(allow_large)
