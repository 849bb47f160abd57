"""Left/right star series, the star-center and the upper star-central series.

Indexing follows the usual convention: the first term of the left and right
series is the whole brace (A^1 = A^(1) = A) and the upper series starts at
zeta_0 = {0}. Only finite stages exist for finite braces; a series stops at the
first repeated term and records where it stabilised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import BraceTable
from .errors import UsageError
from .substructures import (
    SubsetMask,
    Verdict,
    is_ideal,
    pullback,
    quotient,
    star_subgroup,
    whole,
    zero,
)


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple
    stabilized_at: int
    reached_zero: bool
    reached_whole: bool

    @property
    def last(self) -> SubsetMask:
        return self.terms[-1]

    def term(self, k: int) -> SubsetMask:
        """Term with the series' own index, extended past stabilisation."""
        start = 0 if self.kind == "upper-central" else 1
        if k < start:
            raise IndexError(k)
        pos = k - start
        return self.terms[min(pos, len(self.terms) - 1)]

    @property
    def first_index(self) -> int:
        return 0 if self.kind == "upper-central" else 1


def _descending(B: BraceTable, kind: str, step) -> SeriesReport:
    terms = [whole(B)]
    while True:
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    tag = "left-ideal" if kind == "left" else "ideal"
    terms = [terms[0]] + [t.tagged(tag) for t in terms[1:]]
    last = terms[-1]
    return SeriesReport(kind, tuple(terms), len(terms), last.is_zero, last.is_whole)


def left_series(B: BraceTable) -> SeriesReport:
    """A^1 = A, A^(k+1) = A * A^k."""
    A = whole(B)
    return _descending(B, "left", lambda prev: star_subgroup(B, A, prev))


def right_series(B: BraceTable) -> SeriesReport:
    """A^(1) = A, A^(k+1) = A^(k) * A."""
    A = whole(B)
    return _descending(B, "right", lambda prev: star_subgroup(B, prev, A))


def _first_index(report: SeriesReport, predicate) -> Optional[int]:
    for pos, term in enumerate(report.terms):
        if predicate(term):
            return pos + report.first_index
    return None


class SmokClass(NamedTuple):
    left: Optional[int]
    right: Optional[int]

    @property
    def pair(self) -> Optional[tuple[int, int]]:
        """(n, k) with A^(n) = 0 = A^k, both least; None unless both exist."""
        if self.left is None or self.right is None:
            return None
        return (self.right, self.left)


def smok_class(B: BraceTable) -> SmokClass:
    left = _first_index(left_series(B), lambda t: t.is_zero)
    right = _first_index(right_series(B), lambda t: t.is_zero)
    return SmokClass(left, right)


def _lift(B: BraceTable, lower: np.ndarray) -> np.ndarray:
    """{a : a*x and x*a lie in ``lower`` for every x}."""
    inside = lower[B.star]
    return inside.all(axis=1) & inside.all(axis=0)


def star_center(B: BraceTable) -> SubsetMask:
    """zeta(*, A): elements whose star with everything vanishes on both sides."""
    low = np.zeros(B.order, dtype=bool)
    low[0] = True
    center = SubsetMask.from_mask(B, _lift(B, low))
    if is_ideal(B, center):
        center = center.tagged("ideal")
    return center


def upper_central_series(B: BraceTable) -> SeriesReport:
    """zeta_0 = 0 and zeta_(k+1) = {a : a*x, x*a in zeta_k for all x}."""
    terms = [zero(B)]
    while True:
        nxt = SubsetMask.from_mask(B, _lift(B, terms[-1].mask), "ideal")
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    last = terms[-1]
    return SeriesReport("upper-central", tuple(terms), len(terms) - 1, last.is_zero, last.is_whole)


def upper_central_series_via_quotients(B: BraceTable) -> SeriesReport:
    """Reference construction: zeta_(k+1) is the preimage of the star-center of B/zeta_k."""
    terms = [zero(B)]
    while True:
        q = quotient(B, terms[-1], check=False)
        nxt = pullback(B, q, star_center(q.brace)).tagged("ideal")
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    last = terms[-1]
    return SeriesReport("upper-central", tuple(terms), len(terms) - 1, last.is_zero, last.is_whole)


def zl(B: BraceTable, series: Optional[SeriesReport] = None) -> Optional[int]:
    """Length of the upper star-central series, or None when it stalls below A."""
    series = series or upper_central_series(B)
    return _first_index(series, lambda t: t.is_whole)


def is_star_central_factor(B: BraceTable, C, D) -> Verdict:
    """True iff A*C and C*A both lie in D (D must be contained in C)."""
    C = C if isinstance(C, SubsetMask) else SubsetMask(B, frozenset(C))
    D = D if isinstance(D, SubsetMask) else SubsetMask(B, frozenset(D))
    if not D <= C:
        raise UsageError("the lower ideal must be contained in the upper one")
    c = C.indices
    low = D.mask
    bad = ~low[B.star[:, c]]
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return Verdict(False, (int(i), int(c[j])), "a*c not in the lower ideal")
    bad = ~low[B.star[c, :]]
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return Verdict(False, (int(c[i]), int(j)), "c*a not in the lower ideal")
    return Verdict(True)


def multiplicatively_central(B: BraceTable, S) -> Verdict:
    """Every element of S commutes multiplicatively with every element of B."""
    idx = S.indices if isinstance(S, SubsetMask) else np.asarray(sorted(S))
    bad = B.mul[idx, :] != B.mul[:, idx].T
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return Verdict(False, (int(idx[i]), int(j)), "does not commute")
    return Verdict(True)
