"""Finite left braces as explicit addition/multiplication tables.

Elements are dense indices ``0..N-1`` and index 0 is the shared neutral element
of both operations. Every derived table (negation, inversion, star, lambda) is
computed once on first use and cached on the immutable ``BraceTable``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import AxiomError, StructureError
from .parallel import first_hit

INDEX_DTYPE = np.int32

# pair evaluations per vectorised chunk in the triple scans
_CHUNK_CELLS = 1 << 22
SAMPLING_THRESHOLD = 1000
DEFAULT_AXIOM_SAMPLES = 100_000


def _as_table(rows, what: str) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        arr = rows
    else:
        rows = list(rows)
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise StructureError(f"{what} table has ragged rows (lengths {sorted(lengths)})")
        arr = np.array(rows, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise StructureError(f"{what} table must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise StructureError(f"{what} table is empty")
    if not np.issubdtype(arr.dtype, np.integer):
        raise StructureError(f"{what} table must hold integers")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise StructureError(
            f"{what} entry at ({bad[0]}, {bad[1]}) = {arr[bad[0], bad[1]]} is outside [0, {n})"
        )
    out = np.ascontiguousarray(arr, dtype=INDEX_DTYPE)
    out.setflags(write=False)
    return out


def _inverse_by_scan(table: np.ndarray, what: str) -> np.ndarray:
    hits = table == 0
    counts = hits.sum(axis=1)
    if not np.all(counts == 1):
        x = int(np.argmax(counts != 1))
        raise AxiomError(f"element {x} has {counts[x]} {what} inverses in its row")
    out = np.argmax(hits, axis=1).astype(INDEX_DTYPE)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class BraceTable:
    """A finite left brace given by its two operation tables.

    ``labels`` optionally carries a coordinate tuple per element (parametric
    braces); ``name`` is a human-readable description used in reports.
    """

    add: np.ndarray
    mul: np.ndarray
    name: str = "brace"
    labels: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        add = _as_table(self.add, "addition")
        mul = _as_table(self.mul, "multiplication")
        if add.shape != mul.shape:
            raise StructureError(
                f"addition is {add.shape[0]}x{add.shape[0]} but multiplication is "
                f"{mul.shape[0]}x{mul.shape[0]}"
            )
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != add.shape[0]:
                raise StructureError("label count does not match the order")
            object.__setattr__(self, "labels", labels)

    def __repr__(self):
        return f"BraceTable(name={self.name!r}, order={self.order})"

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=INDEX_DTYPE)

    @cached_property
    def neg(self) -> np.ndarray:
        return _inverse_by_scan(self.add, "additive")

    @cached_property
    def inv(self) -> np.ndarray:
        return _inverse_by_scan(self.mul, "multiplicative")

    @cached_property
    def star(self) -> np.ndarray:
        """``star[x, y] = xy - x - y``."""
        neg = self.neg
        out = self.add[self.add[self.mul, neg[:, None]], neg[None, :]]
        out.setflags(write=False)
        return out

    @cached_property
    def lam(self) -> np.ndarray:
        """``lam[a, x] = ax - a``."""
        out = self.add[self.mul, self.neg[:, None]]
        out.setflags(write=False)
        return out

    @cached_property
    def additive_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        cur = self.elements.copy()
        done = cur == 0
        k = 1
        while not done.all():
            cur = self.add[cur, self.elements]
            k += 1
            newly = (cur == 0) & ~done
            orders[newly] = k
            done |= newly
            if k > n:
                raise AxiomError("additive table has an element of unbounded order")
        return orders

    @cached_property
    def exponent(self) -> int:
        """Least e > 0 with e·x = 0 for every x (additive exponent)."""
        return math.lcm(*(int(o) for o in np.unique(self.additive_orders)))

    @cached_property
    def is_abelian(self) -> bool:
        """True when the star operation vanishes identically (trivial brace)."""
        return not self.star.any()

    def label(self, x: int) -> str:
        if self.labels is None:
            return str(int(x))
        lab = self.labels[int(x)]
        if isinstance(lab, tuple):
            return "(" + ",".join(str(v) for v in lab) + ")"
        return str(lab)

    def index_of(self, label) -> int:
        if self.labels is None:
            raise KeyError("brace has no coordinate labels")
        return self._label_index[tuple(label)]

    @cached_property
    def _label_index(self) -> dict:
        return {tuple(lab): i for i, lab in enumerate(self.labels)}

    def scalar(self, k, x):
        """The additive multiple ``k·x`` (negative ``k`` uses the additive inverse).

        ``k`` is reduced modulo the additive exponent first, so arbitrarily large
        Python integers are fine. Works elementwise on arrays.
        """
        e = self.exponent
        if isinstance(k, (int, np.integer)):
            k = int(k) % e
        else:
            k = np.mod(np.asarray(k, dtype=object), e).astype(np.int64)
        x = np.asarray(x, dtype=np.int64)
        k, x = np.broadcast_arrays(np.asarray(k, dtype=np.int64), x)
        k = k.copy()
        result = np.zeros(x.shape, dtype=np.int64)
        base = x.copy()
        while k.any():
            odd = (k & 1).astype(bool)
            result = np.where(odd, self.add[result, base], result)
            base = self.add[base, base]
            k >>= 1
        if result.ndim == 0:
            return int(result)
        return result

    def power(self, x, k):
        """Multiplicative power ``x^k`` (negative ``k`` inverts)."""
        x = np.asarray(x, dtype=np.int64)
        k = int(k)
        if k < 0:
            x = self.inv[x].astype(np.int64)
            k = -k
        result = np.zeros(x.shape, dtype=np.int64)
        base = x.copy()
        while k:
            if k & 1:
                result = self.mul[result, base]
            base = self.mul[base, base]
            k >>= 1
        if result.ndim == 0:
            return int(result)
        return result

    def sum(self, terms: Sequence):
        """Additive sum of a sequence of elements or element arrays."""
        acc = 0
        for t in terms:
            acc = self.add[acc, t]
        if isinstance(acc, np.ndarray) and acc.ndim == 0:
            return int(acc)
        return acc

    def sub(self, x, y):
        return self.add[x, self.neg[y]]


def trivial_brace(order: int) -> BraceTable:
    """The abelian brace over Z_order (multiplication equals addition)."""
    if order < 1:
        raise ValueError("order must be positive")
    idx = np.arange(order)
    table = (idx[:, None] + idx[None, :]) % order
    return BraceTable(table, table, name=f"trivial Z_{order}")


def star(B: BraceTable, x: int, y: int) -> int:
    return int(B.star[x, y])


def lambda_map(B: BraceTable, a: int, x: int) -> int:
    return int(B.lam[a, x])


class ElementOps(NamedTuple):
    add: Callable
    neg: Callable
    mul: Callable
    inv: Callable
    zero: object


def element_ops(B) -> ElementOps:
    """Arithmetic bundle for a table-backed or formula-backed brace."""
    if isinstance(B, BraceTable):
        return ElementOps(
            add=lambda x, y: int(B.add[x, y]),
            neg=lambda x: int(B.neg[x]),
            mul=lambda x, y: int(B.mul[x, y]),
            inv=lambda x: int(B.inv[x]),
            zero=0,
        )
    return ElementOps(add=B.add, neg=B.neg, mul=B.mul, inv=B.inv, zero=B.zero)


# ---------------------------------------------------------------------------
# axiom verification


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    axiom: Optional[str] = None
    witness: Optional[tuple] = None
    message: str = ""
    exhaustive: bool = True
    triples_checked: int = 0

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        mode = "exhaustive" if self.exhaustive else "SAMPLED (non-exhaustive)"
        if self.passed:
            return f"all axioms pass [{mode}, {self.triples_checked} triples per law]"
        return f"{self.axiom} fails at {self.witness}: {self.message} [{mode}]"


def _fail(axiom, witness, message, exhaustive, checked):
    return AxiomReport(False, axiom, tuple(int(v) for v in witness), message, exhaustive, checked)


def _latin(table: np.ndarray) -> Optional[tuple[str, tuple]]:
    n = table.shape[0]
    ref = np.arange(n)
    rows = np.sort(table, axis=1)
    bad = np.nonzero((rows != ref).any(axis=1))[0]
    if bad.size:
        return "row", (int(bad[0]),)
    cols = np.sort(table, axis=0)
    bad = np.nonzero((cols != ref[:, None]).any(axis=0))[0]
    if bad.size:
        return "column", (int(bad[0]),)
    return None


def _group_laws(table: np.ndarray, name: str, commutative: bool) -> Optional[AxiomReport]:
    n = table.shape[0]
    ref = np.arange(n)
    if not (np.array_equal(table[0], ref) and np.array_equal(table[:, 0], ref)):
        x = int(np.argmax((table[0] != ref) | (table[:, 0] != ref)))
        return _fail(name, (0, x), "0 is not a two-sided identity", True, 0)
    if commutative:
        asym = np.argwhere(table != table.T)
        if asym.size:
            return _fail(name, asym[0], "operation is not commutative", True, 0)
    latin = _latin(table)
    if latin is not None:
        kind, where = latin
        return _fail(name, where, f"{kind} {where[0]} is not a permutation (no inverses)", True, 0)
    return None


def _scan_triples(n: int, check_rows: Callable[[np.ndarray], np.ndarray]) -> Optional[tuple]:
    """Exhaustive triple scan; ``check_rows(a)`` returns a bool array (len(a), n, n) of failures."""
    rows_per_chunk = max(1, _CHUNK_CELLS // (n * n))

    def scan(lo, hi):
        a = np.arange(lo, hi)
        bad = check_rows(a)
        if bad.any():
            i, j, k = np.argwhere(bad)[0]
            return (lo + int(i), int(j), int(k))
        return None

    return first_hit(scan, n, rows_per_chunk)


def _scan_samples(n, samples, seed, check_triples):
    rng = np.random.default_rng(seed)
    trip = rng.integers(0, n, size=(samples, 3))
    bad = check_triples(trip[:, 0], trip[:, 1], trip[:, 2])
    if bad.any():
        failing = trip[bad]
        order = np.lexsort(failing.T[::-1])
        return tuple(int(v) for v in failing[order[0]])
    return None


def verify_axioms(
    B: BraceTable,
    *,
    sample: Optional[bool] = None,
    samples: int = DEFAULT_AXIOM_SAMPLES,
    seed: int = 0,
) -> AxiomReport:
    """Check LB1 (abelian addition), LB2 (group multiplication) and LB3.

    Triple laws are scanned exhaustively unless the order exceeds
    ``SAMPLING_THRESHOLD`` (or ``sample=True``), in which case ``samples`` seeded
    random triples are checked and the report is marked non-exhaustive. The
    first violated axiom is returned with the lexicographically smallest witness.
    """
    add, mul = B.add, B.mul
    n = B.order
    exhaustive = not (sample if sample is not None else n > SAMPLING_THRESHOLD)
    checked = n ** 3 if exhaustive else samples

    for table, name, commutative in ((add, "LB1", True), (mul, "LB2", False)):
        bad = _group_laws(table, name, commutative)
        if bad is not None:
            return bad

    neg = B.neg
    laws = [
        (
            "LB1",
            "addition is not associative",
            lambda a: add[add[a]] != add[a][:, add],
            lambda a, b, c: add[add[a, b], c] != add[a, add[b, c]],
        ),
        (
            "LB2",
            "multiplication is not associative",
            lambda a: mul[mul[a]] != mul[a][:, mul],
            lambda a, b, c: mul[mul[a, b], c] != mul[a, mul[b, c]],
        ),
        (
            "LB3",
            "a(b+c) != ab + ac - a",
            lambda a: mul[a][:, add]
            != add[add[mul[a][:, :, None], mul[a][:, None, :]], neg[a][:, None, None]],
            lambda a, b, c: mul[a, add[b, c]] != add[add[mul[a, b], mul[a, c]], neg[a]],
        ),
    ]
    for name, message, rows, triples in laws:
        if exhaustive:
            hit = _scan_triples(n, rows)
        else:
            hit = _scan_samples(n, samples, seed, triples)
        if hit is not None:
            return _fail(name, hit, message, exhaustive, checked)
    return AxiomReport(True, exhaustive=exhaustive, triples_checked=checked)


def require_brace(B: BraceTable, **kwargs) -> BraceTable:
    report = verify_axioms(B, **kwargs)
    if not report.passed:
        raise AxiomError(f"{B.name}: {report.describe()}", report)
    return B
