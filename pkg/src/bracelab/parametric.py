"""The one-generator braces D(1,2) and D(1,3) by closed-form arithmetic.

``D(1,2)`` lives on Z x Z with exact Python integers; its finite stand-ins are
the coordinatewise reductions mod m (``d12_quotient``). ``D(1,3)`` lives on
(Z_n)^4. Materialised tables index elements in mixed radix with the first
coordinate most significant, so index 0 is always the zero tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .core import BraceTable
from .errors import ResourceError, UsageError

DEFAULT_MAX_ORDER = 4096


def choose2(m: int) -> int:
    # m(m-1) is always even, so the division is exact
    return m * (m - 1) // 2


# ---------------------------------------------------------------------------
# D(1,2) over the integers


class D12Element(NamedTuple):
    m1: int
    m2: int


def d12_add(x, y) -> D12Element:
    return D12Element(x[0] + y[0], x[1] + y[1])


def d12_neg(x) -> D12Element:
    return D12Element(-x[0], -x[1])


def d12_mul(x, y) -> D12Element:
    return D12Element(x[0] + y[0], x[1] + y[1] + x[0] * y[0])


def d12_inv(x) -> D12Element:
    return D12Element(-x[0], x[0] * x[0] - x[1])


def d12_star(x, y) -> D12Element:
    """Closed form ``(l1,l2)*(m1,m2) = (0, l1*m1)``."""
    return D12Element(0, x[0] * y[0])


class D12:
    """Formula-backed D(1,2) over Z (infinite; evaluation only)."""

    zero = D12Element(0, 0)
    add = staticmethod(d12_add)
    neg = staticmethod(d12_neg)
    mul = staticmethod(d12_mul)
    inv = staticmethod(d12_inv)
    star = staticmethod(d12_star)

    @staticmethod
    def lam(a, x):
        return d12_add(d12_mul(a, x), d12_neg(a))

    @staticmethod
    def reduce(x, m: int) -> tuple[int, int]:
        return (x[0] % m, x[1] % m)


# ---------------------------------------------------------------------------
# finite formula-backed braces


class FormulaBrace:
    """Common machinery for braces on (Z_modulus)^dim given by closed forms."""

    modulus: int
    dim: int

    @property
    def order(self) -> int:
        return self.modulus ** self.dim

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def reduce(self, coords) -> tuple:
        if len(coords) != self.dim:
            raise UsageError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(int(c) % self.modulus for c in coords)

    def elements(self) -> Iterator[tuple]:
        return itertools.product(range(self.modulus), repeat=self.dim)

    def index(self, x) -> int:
        idx = 0
        for c in self.reduce(x):
            idx = idx * self.modulus + c
        return idx

    def element(self, i: int) -> tuple:
        out = []
        for _ in range(self.dim):
            i, c = divmod(i, self.modulus)
            out.append(c)
        return tuple(reversed(out))

    def add(self, x, y) -> tuple:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x) -> tuple:
        return self.reduce([-a for a in x])

    def lam(self, a, x) -> tuple:
        return self.add(self.mul(a, x), self.neg(a))

    def star(self, x, y) -> tuple:
        return self.add(self.add(self.mul(x, y), self.neg(x)), self.neg(y))

    def _grid(self):
        n = self.modulus
        flat = np.arange(self.order, dtype=np.int64)
        coords = []
        for k in range(self.dim - 1, -1, -1):
            coords.append((flat // n ** k) % n)
        return coords

    def _encode(self, coords) -> np.ndarray:
        n = self.modulus
        idx = np.zeros(np.broadcast(*coords).shape, dtype=np.int64)
        for c in coords:
            idx = idx * n + np.mod(c, n)
        return idx

    def _vector_mul(self, x, y):
        raise NotImplementedError

    def table(self, name=None, max_order: int = DEFAULT_MAX_ORDER) -> BraceTable:
        if self.order > max_order:
            raise ResourceError(
                f"order {self.order} exceeds the materialisation cap {max_order}"
            )
        grid = self._grid()
        xs = [c[:, None] for c in grid]
        ys = [c[None, :] for c in grid]
        add = self._encode([a + b for a, b in zip(xs, ys)])
        mul = self._encode(self._vector_mul(xs, ys))
        labels = tuple(self.element(i) for i in range(self.order))
        return BraceTable(add, mul, name=name or self.describe(), labels=labels)

    def describe(self) -> str:
        raise NotImplementedError


class D12Quotient(FormulaBrace):
    """D(1,2) reduced coordinatewise mod m (a quotient of D(1,2), order m^2)."""

    dim = 2

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.modulus = m

    def mul(self, x, y) -> tuple:
        return self.reduce(d12_mul(x, y))

    def inv(self, x) -> tuple:
        return self.reduce(d12_inv(x))

    def star(self, x, y) -> tuple:
        return self.reduce(d12_star(x, y))

    def _vector_mul(self, x, y):
        return [x[0] + y[0], x[1] + y[1] + x[0] * y[0]]

    def describe(self) -> str:
        return f"d12 quotient mod {self.modulus} (quotient of D(1,2), not D(1,2) itself)"


@dataclass(frozen=True)
class D13Element:
    """An element of D(1,3) over Z_n; coordinates are residues in [0, n)."""

    m1: int
    m2: int
    m3: int
    m4: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be positive")
        for c in self.coords:
            if not 0 <= c < self.n:
                raise ValueError(f"coordinate {c} not in [0, {self.n})")

    @classmethod
    def of(cls, n: int, *coords: int) -> "D13Element":
        return cls(*(int(c) % n for c in coords), n)

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.m1, self.m2, self.m3, self.m4)


def _d13_coords(x, y):
    m1, m2, m3, m4 = x
    n1, n2, n3, n4 = y
    return (
        m1 + n1,
        m2 + n2 + m1 * n1,
        m3 + n3 + m1 * n2 + m2 * n1,
        m4 + n4 + m2 * n1 - choose2(m1) * n1,
    )


def d13_mul(x: D13Element, y: D13Element) -> D13Element:
    """Product in D(1,3); C(m1,2) is taken on the representative in [0, n)."""
    if x.n != y.n:
        raise UsageError(f"cannot multiply elements over Z_{x.n} and Z_{y.n}")
    return D13Element.of(x.n, *_d13_coords(x.coords, y.coords))


def d13_inv(x: D13Element) -> D13Element:
    x1, x2, x3, x4 = x.coords
    return D13Element.of(
        x.n, -x1, x1 * x1 - x2, 2 * x1 * x2 - x3 - x1 ** 3, x1 * x2 - x4 - choose2(x1) * x1
    )


def d13_star(x: D13Element, y: D13Element) -> D13Element:
    """Closed form ``(0, x1y1, x1y2 + x2y1, x2y1 - C(x1,2)y1)``."""
    if x.n != y.n:
        raise UsageError(f"cannot combine elements over Z_{x.n} and Z_{y.n}")
    x1, x2, _, _ = x.coords
    y1, y2, _, _ = y.coords
    return D13Element.of(x.n, 0, x1 * y1, x1 * y2 + x2 * y1, x2 * y1 - choose2(x1) * y1)


class D13(FormulaBrace):
    """D(1,3) = (Z_n)^4 with the closed-form product."""

    dim = 4

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.modulus = n

    def _el(self, x) -> D13Element:
        if isinstance(x, D13Element):
            if x.n != self.modulus:
                raise UsageError(f"element over Z_{x.n} used in D(1,3) over Z_{self.modulus}")
            return x
        return D13Element.of(self.modulus, *x)

    def mul(self, x, y) -> tuple:
        return d13_mul(self._el(x), self._el(y)).coords

    def inv(self, x) -> tuple:
        return d13_inv(self._el(x)).coords

    def star(self, x, y) -> tuple:
        return d13_star(self._el(x), self._el(y)).coords

    def _vector_mul(self, x, y):
        # choose2 on the representative in [0, n), before reduction
        return list(_d13_coords(x, y))

    def describe(self) -> str:
        return f"d13 n={self.modulus}"


@lru_cache(maxsize=32)
def d12_quotient(m: int) -> BraceTable:
    """Materialised D(1,2) mod m (order m^2)."""
    return D12Quotient(m).table()


@lru_cache(maxsize=32)
def d13_brace(n: int, max_order: int = DEFAULT_MAX_ORDER) -> BraceTable:
    """Materialised D(1,3) over Z_n (order n^4).

    The table is built from the closed form without verification; callers that
    need a guaranteed brace run ``verify_axioms`` on it.
    """
    return D13(n).table(max_order=max_order)


def family(kind: str, param: int):
    """Formula backend for a family tag as written in ``.brace`` metadata."""
    if kind == "d12":
        return D12Quotient(param)
    if kind == "d13":
        return D13(param)
    raise UsageError(f"unknown family {kind!r}")
