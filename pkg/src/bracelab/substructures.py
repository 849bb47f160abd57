"""Subgroups, subbraces, ideals and quotient braces of a ``BraceTable``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .core import BraceTable, INDEX_DTYPE
from .errors import ResourceError, UsageError

KINDS = ("unknown", "additive-subgroup", "subbrace", "left-ideal", "ideal")
DEFAULT_IDEAL_CAP = 256


@dataclass(frozen=True, eq=False)
class SubsetMask:
    """A set of element indices of one brace.

    Equality and hashing look at membership only; ``kind`` is an advisory tag
    set after the corresponding predicate has passed.
    """

    brace: BraceTable
    members: frozenset
    kind: str = "unknown"

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(x) for x in self.members))
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def from_mask(cls, brace, mask, kind="unknown") -> "SubsetMask":
        return cls(brace, frozenset(np.flatnonzero(mask).tolist()), kind)

    def __eq__(self, other):
        if not isinstance(other, SubsetMask):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return int(x) in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __le__(self, other):
        return self.members <= other.members

    def __repr__(self):
        return f"SubsetMask({self.kind}, size={len(self)})"

    def sorted(self) -> list[int]:
        return sorted(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.brace.order, dtype=bool)
        if self.members:
            m[list(self.members)] = True
        m.setflags(write=False)
        return m

    @cached_property
    def indices(self) -> np.ndarray:
        return np.array(self.sorted(), dtype=INDEX_DTYPE)

    @property
    def is_zero(self) -> bool:
        return self.members == {0}

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.brace.order

    def tagged(self, kind: str) -> "SubsetMask":
        return SubsetMask(self.brace, self.members, kind)

    def format(self, coords: bool = True) -> str:
        if coords and self.brace.labels is not None:
            return "{" + ", ".join(self.brace.label(x) for x in self.sorted()) + "}"
        return "[" + ", ".join(str(x) for x in self.sorted()) + "]"


class Verdict(NamedTuple):
    """Boolean outcome with the first violating element tuple, if any."""

    ok: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _first_pair(bad: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> tuple:
    i, j = np.argwhere(bad)[0]
    return (int(rows[i]), int(cols[j]))


def whole(B: BraceTable) -> SubsetMask:
    return SubsetMask(B, frozenset(range(B.order)), "ideal")


def zero(B: BraceTable) -> SubsetMask:
    return SubsetMask(B, frozenset({0}), "ideal")


# ---------------------------------------------------------------------------
# closures


def _extend_subgroup(B: BraceTable, mask: np.ndarray, g: int) -> np.ndarray:
    """Mask of the subgroup generated by the subgroup ``mask`` and ``g``."""
    if mask[g]:
        return mask
    base = np.flatnonzero(mask)
    out = mask.copy()
    cur = g
    while not mask[cur]:
        out[B.add[cur, base]] = True
        cur = int(B.add[cur, g])
    return out


def additive_closure(B: BraceTable, S: Iterable[int]) -> SubsetMask:
    """Smallest additive subgroup containing ``S``."""
    mask = np.zeros(B.order, dtype=bool)
    mask[0] = True
    for g in sorted({int(x) for x in S}):
        mask = _extend_subgroup(B, mask, g)
    return SubsetMask.from_mask(B, mask, "additive-subgroup")


def _as_indices(B, S) -> np.ndarray:
    if isinstance(S, SubsetMask):
        return S.indices
    return np.array(sorted({int(x) for x in S}), dtype=np.int64)


def star_subgroup(B: BraceTable, K, L) -> SubsetMask:
    """Additive subgroup generated by ``x * y`` for ``x`` in ``K``, ``y`` in ``L``."""
    k, l = _as_indices(B, K), _as_indices(B, L)
    if k.size == 0 or l.size == 0:
        return additive_closure(B, ())
    values = np.unique(B.star[np.ix_(k, l)])
    return additive_closure(B, values.tolist())


def generated_subbrace(B: BraceTable, M: Iterable[int]) -> SubsetMask:
    """``br(M)``: closure of ``M`` and 0 under +, negation, product and inverse.

    Semi-naive saturation: each round only combines the new frontier with the
    current set, so the total work is O(N^2).
    """
    mask = np.zeros(B.order, dtype=bool)
    mask[0] = True
    seeds = np.array(sorted({int(x) for x in M}), dtype=np.int64)
    mask[seeds] = True
    frontier = np.flatnonzero(mask)
    add, mul, neg, inv = B.add, B.mul, B.neg, B.inv
    while frontier.size:
        current = np.flatnonzero(mask)
        new = np.zeros_like(mask)
        new[add[np.ix_(frontier, current)]] = True
        new[mul[np.ix_(frontier, current)]] = True
        new[mul[np.ix_(current, frontier)]] = True
        new[neg[frontier]] = True
        new[inv[frontier]] = True
        new &= ~mask
        mask |= new
        frontier = np.flatnonzero(new)
    return SubsetMask.from_mask(B, mask, "subbrace")


# ---------------------------------------------------------------------------
# predicates


def is_additive_subgroup(B: BraceTable, S) -> Verdict:
    S = _mask_of(B, S)
    idx = np.flatnonzero(S)
    if not S[0]:
        return Verdict(False, (0,), "does not contain 0")
    sums = B.add[np.ix_(idx, idx)]
    bad = ~S[sums]
    if bad.any():
        return Verdict(False, _first_pair(bad, idx, idx), "not closed under addition")
    bad = ~S[B.neg[idx]]
    if bad.any():
        return Verdict(False, (int(idx[np.argmax(bad)]),), "not closed under negation")
    return Verdict(True)


def is_subbrace(B: BraceTable, S) -> Verdict:
    S = _mask_of(B, S)
    verdict = is_additive_subgroup(B, S)
    if not verdict:
        return verdict
    idx = np.flatnonzero(S)
    bad = ~S[B.mul[np.ix_(idx, idx)]]
    if bad.any():
        return Verdict(False, _first_pair(bad, idx, idx), "not closed under multiplication")
    bad = ~S[B.inv[idx]]
    if bad.any():
        return Verdict(False, (int(idx[np.argmax(bad)]),), "not closed under inversion")
    return Verdict(True)


def is_left_ideal(B: BraceTable, L) -> Verdict:
    """Subbrace with ``a * z`` in ``L`` for every ``a`` in B and ``z`` in ``L``."""
    L = _mask_of(B, L)
    verdict = is_subbrace(B, L)
    if not verdict:
        return verdict
    idx = np.flatnonzero(L)
    bad = ~L[B.star[:, idx]]
    if bad.any():
        return Verdict(False, _first_pair(bad, B.elements, idx), "a*z leaves the set")
    return Verdict(True)


def is_ideal(B: BraceTable, L) -> Verdict:
    """Left ideal that also absorbs ``z * a``."""
    L = _mask_of(B, L)
    verdict = is_left_ideal(B, L)
    if not verdict:
        return verdict
    idx = np.flatnonzero(L)
    bad = ~L[B.star[idx, :]]
    if bad.any():
        return Verdict(False, _first_pair(bad, idx, B.elements), "z*a leaves the set")
    return Verdict(True)


def _mask_of(B: BraceTable, S) -> np.ndarray:
    if isinstance(S, SubsetMask):
        return S.mask
    S = np.asarray(S)
    if S.dtype == bool and S.shape == (B.order,):
        return S
    mask = np.zeros(B.order, dtype=bool)
    mask[S.astype(np.int64)] = True
    return mask


# ---------------------------------------------------------------------------
# quotients


class Quotient(NamedTuple):
    brace: BraceTable
    projection: np.ndarray
    representatives: np.ndarray


def coset_representatives(B: BraceTable, I) -> np.ndarray:
    """``rep[x]`` = smallest index in the additive coset ``x + I``."""
    idx = _as_indices(B, I)
    return B.add[:, idx].min(axis=1)


def quotient(B: BraceTable, I, check: bool = True) -> Quotient:
    """The quotient brace ``B/I`` with representatives = least coset index."""
    if check:
        verdict = is_ideal(B, I)
        if not verdict:
            raise UsageError(f"not an ideal: {verdict.reason} at {verdict.witness}")
    rep = coset_representatives(B, I)
    reps = np.unique(rep)
    position = np.full(B.order, -1, dtype=np.int64)
    position[reps] = np.arange(reps.size)
    projection = position[rep]
    add = projection[B.add[np.ix_(reps, reps)]]
    mul = projection[B.mul[np.ix_(reps, reps)]]
    labels = None
    if B.labels is not None:
        labels = tuple(B.labels[r] for r in reps)
    size = len(I) if isinstance(I, SubsetMask) else len(_as_indices(B, I))
    name = f"{B.name} / ideal of size {size}"
    Q = BraceTable(add, mul, name=name, labels=labels)
    projection.setflags(write=False)
    return Quotient(Q, projection, reps)


def pullback(B: BraceTable, q: Quotient, S) -> SubsetMask:
    mask = _mask_of(q.brace, S)
    return SubsetMask.from_mask(B, mask[q.projection])


# ---------------------------------------------------------------------------
# enumeration


def cyclic_subgroups(B: BraceTable) -> list[tuple[int, np.ndarray]]:
    """One (generator, mask) per distinct cyclic additive subgroup."""
    seen = {}
    zero_mask = np.zeros(B.order, dtype=bool)
    zero_mask[0] = True
    for g in range(B.order):
        m = _extend_subgroup(B, zero_mask, g)
        key = m.tobytes()
        if key not in seen:
            seen[key] = (g, m)
    return list(seen.values())


def additive_subgroups(B: BraceTable, cap: int = DEFAULT_IDEAL_CAP) -> list[SubsetMask]:
    """All additive subgroups: joins of cyclic subgroups, saturated bottom-up."""
    if B.order > cap:
        raise ResourceError(f"order {B.order} exceeds the enumeration cap {cap}")
    cyclic = cyclic_subgroups(B)
    found = {m.tobytes(): m for _, m in cyclic}
    frontier = [m for _, m in cyclic]
    while frontier:
        nxt = []
        for H in frontier:
            for g, _ in cyclic:
                if H[g]:
                    continue
                J = _extend_subgroup(B, H, g)
                key = J.tobytes()
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    subs = [SubsetMask.from_mask(B, m, "additive-subgroup") for m in found.values()]
    subs.sort(key=lambda s: (len(s), s.sorted()))
    return subs


def enumerate_ideals(B: BraceTable, cap: int = DEFAULT_IDEAL_CAP) -> list[SubsetMask]:
    """All ideals of B, sorted by size then lexicographic membership."""
    return [s.tagged("ideal") for s in additive_subgroups(B, cap) if is_ideal(B, s)]
