"""Generators, canonical data and the canonical epimorphisms onto one-generator braces.

For a one-generator brace B = br(a) with small upper star-central series the
canonical elements are b = a*a, c1 = a*b, c2 = b*a and z = c2 - c1. Two
families of epimorphisms are realised on concrete tables:

* zl(B) = 2:  D(1,2) -> B, (alpha, gamma) -> alpha*a + gamma*c with c = a*a.
  D(1,2) is infinite, so the map is realised on D(1,2) mod m, m the additive
  exponent of B; the map kills mZ x mZ, so nothing is lost.
* B = zeta_3(*, B):  D(1,3) over Z_n -> B,
  (n1, n2, n3, n4) -> n1*a + n2*b + n3*c1 + n4*z, n the additive order of a.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import BraceTable, verify_axioms
from .errors import UsageError
from .parametric import DEFAULT_MAX_ORDER, d12_quotient, d13_brace
from .series import left_series, right_series, smok_class, upper_central_series, zl
from .substructures import (
    DEFAULT_IDEAL_CAP,
    enumerate_ideals,
    generated_subbrace,
    is_ideal,
    quotient,
)

log = logging.getLogger(__name__)


def find_generators(B: BraceTable) -> list[int]:
    """All a with br({a}) = B, in index order."""
    if B.order == 1:
        return [0]
    excluded = np.zeros(B.order, dtype=bool)
    gens = []
    for a in range(B.order):
        if excluded[a]:
            continue
        sub = generated_subbrace(B, [a])
        if sub.is_whole:
            gens.append(a)
        else:
            # everything inside a proper br(a) generates something smaller
            excluded |= sub.mask
    return gens


def first_generator(B: BraceTable) -> Optional[int]:
    for a in range(B.order):
        if generated_subbrace(B, [a]).is_whole:
            return a
    return None


@dataclass(frozen=True)
class CanonicalData:
    a: int
    b: int
    c: int
    c1: int
    c2: int
    z: int
    b_star_b: int
    n: int

    def format(self, B: BraceTable) -> str:
        parts = [f"{k}={B.label(getattr(self, k))}" for k in ("a", "b", "c1", "c2", "z")]
        return ", ".join(parts) + f", n={self.n}"


def build_canonical(B: BraceTable, a: int, check: bool = True) -> CanonicalData:
    """Canonical elements attached to the generator ``a``.

    Membership invariants (b in zeta_2; c1, c2, z in zeta_1) are asserted when
    zl(B) <= 3; annihilation by the additive order of ``a`` always.
    """
    if check and not generated_subbrace(B, [a]).is_whole:
        raise UsageError(f"element {B.label(a)} does not generate the brace")
    star = B.star
    b = int(star[a, a])
    c1 = int(star[a, b])
    c2 = int(star[b, a])
    data = CanonicalData(
        a=a,
        b=b,
        c=b,
        c1=c1,
        c2=c2,
        z=int(B.sub(c2, c1)),
        b_star_b=int(star[b, b]),
        n=int(B.additive_orders[a]),
    )
    if check:
        _assert_canonical(B, data)
    return data


def _assert_canonical(B: BraceTable, d: CanonicalData) -> None:
    for name in ("b", "c1", "c2", "b_star_b"):
        if B.scalar(d.n, getattr(d, name)) != 0:
            raise AssertionError(f"{d.n}*{name} != 0 although {d.n}*a = 0")
    series = upper_central_series(B)
    length = zl(B, series)
    if length is not None and length <= 3:
        z1, z2 = series.term(1), series.term(2)
        if d.b not in z2:
            raise AssertionError("b = a*a is not in zeta_2")
        for name in ("c1", "c2", "z"):
            if getattr(d, name) not in z1:
                raise AssertionError(f"{name} is not in zeta_1")


# ---------------------------------------------------------------------------
# homomorphism witnesses


@dataclass
class HomWitness:
    source: BraceTable
    target: BraceTable
    mapping: np.ndarray = field(repr=False)
    is_additive: bool
    is_multiplicative: bool
    is_surjective: bool
    counterexample: Optional[tuple] = None
    generator: Optional[int] = None
    kernel_size: int = 0
    kernel_is_ideal: Optional[bool] = None
    source_is_brace: Optional[bool] = None

    @property
    def is_epimorphism(self) -> bool:
        return self.is_additive and self.is_multiplicative and self.is_surjective

    def __bool__(self):
        return self.is_epimorphism

    def describe(self) -> str:
        verdict = "epimorphism" if self.is_epimorphism else "NOT an epimorphism"
        gen = "" if self.generator is None else f" generator {self.target.label(self.generator)}:"
        extra = ""
        if self.counterexample is not None:
            extra = f" first counterexample {self.counterexample}"
        image = int(np.unique(self.mapping).size)
        return (
            f"{gen} {verdict} (additive={self.is_additive}, multiplicative="
            f"{self.is_multiplicative}, surjective={self.is_surjective}; image {image}/"
            f"{self.target.order}, kernel {self.kernel_size}){extra}"
        ).strip()


def check_homomorphism(source: BraceTable, target: BraceTable, f: np.ndarray) -> HomWitness:
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (source.order,):
        raise UsageError("mapping must assign one target element per source element")
    add_ok = target.add[f[:, None], f[None, :]] == f[source.add]
    mul_ok = target.mul[f[:, None], f[None, :]] == f[source.mul]
    counter = None
    if not add_ok.all():
        i, j = np.argwhere(~add_ok)[0]
        counter = ("add", int(i), int(j))
    elif not mul_ok.all():
        i, j = np.argwhere(~mul_ok)[0]
        counter = ("mul", int(i), int(j))
    surjective = np.unique(f).size == target.order
    kernel = np.flatnonzero(f == 0)
    kernel_ideal = None
    if add_ok.all() and mul_ok.all():
        kernel_ideal = bool(is_ideal(source, kernel))
    return HomWitness(
        source,
        target,
        f,
        bool(add_ok.all()),
        bool(mul_ok.all()),
        bool(surjective),
        counter,
        kernel_size=int(kernel.size),
        kernel_is_ideal=kernel_ideal,
    )


@dataclass
class EpiResult:
    family: str
    hypotheses_met: bool
    reason: str
    attempts: list = field(default_factory=list)
    note: str = ""

    @property
    def witness(self) -> Optional[HomWitness]:
        for w in self.attempts:
            if w.is_epimorphism:
                return w
        return self.attempts[0] if self.attempts else None

    @property
    def passed(self) -> bool:
        return self.hypotheses_met and self.witness is not None and self.witness.is_epimorphism

    @property
    def all_passed(self) -> bool:
        return self.hypotheses_met and bool(self.attempts) and all(self.attempts)

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "n/a"
        return "pass" if self.all_passed else "FAIL"


@dataclass(frozen=True)
class Gate:
    one_generator: bool
    abelian: bool
    zl: Optional[int]
    generators: tuple

    @property
    def zeta3_is_whole(self) -> bool:
        return self.zl is not None and self.zl <= 3


def gate(B: BraceTable) -> Gate:
    gens = tuple(find_generators(B))
    return Gate(bool(gens), B.is_abelian, zl(B), gens)


def _targets(g: Gate, all_generators: bool) -> tuple:
    return g.generators if all_generators else g.generators[:1]


def epi_from_d12(B: BraceTable, all_generators: bool = False, g: Optional[Gate] = None) -> EpiResult:
    """Realise D(1,2) -> B on D(1,2) mod (additive exponent of B)."""
    g = g or gate(B)
    if g.abelian or not g.one_generator or g.zl != 2:
        reason = _gate_reason(g, "zl(B) = 2", g.zl == 2)
        return EpiResult("d12", False, reason)
    m = B.exponent
    source = d12_quotient(m)
    coords = np.array(source.labels, dtype=np.int64)
    result = EpiResult(
        "d12", True, "",
        note=f"realised on D(1,2) mod {m} (the map factors through it since {m}a = {m}c = 0)",
    )
    for a in _targets(g, all_generators):
        c = int(B.star[a, a])
        f = B.add[B.scalar(coords[:, 0], a), B.scalar(coords[:, 1], c)]
        w = check_homomorphism(source, B, f)
        w.generator = a
        w.source_is_brace = True
        result.attempts.append(w)
        if w.is_epimorphism and not all_generators:
            break
    _warn_generator_dependence(B, result)
    return result


def epi_from_d13(
    B: BraceTable,
    all_generators: bool = False,
    g: Optional[Gate] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> EpiResult:
    """Realise D(1,3) over Z_n -> B, n the additive order of the generator."""
    g = g or gate(B)
    if g.abelian or not g.one_generator or not g.zeta3_is_whole:
        reason = _gate_reason(g, "zeta_3(*, B) = B", g.zeta3_is_whole)
        return EpiResult("d13", False, reason)
    result = EpiResult("d13", True, "")
    for a in _targets(g, all_generators):
        d = build_canonical(B, a, check=False)
        source = d13_brace(d.n, max_order)
        coords = np.array(source.labels, dtype=np.int64)
        f = B.sum(
            [
                B.scalar(coords[:, 0], d.a),
                B.scalar(coords[:, 1], d.b),
                B.scalar(coords[:, 2], d.c1),
                B.scalar(coords[:, 3], d.z),
            ]
        )
        w = check_homomorphism(source, B, f)
        w.generator = a
        w.source_is_brace = _is_brace(source)
        result.attempts.append(w)
        if w.is_epimorphism and not all_generators:
            break
    _warn_generator_dependence(B, result)
    return result


_BRACE_CACHE: dict = {}


def _is_brace(B: BraceTable) -> bool:
    key = id(B)
    if key not in _BRACE_CACHE:
        _BRACE_CACHE[key] = (B, verify_axioms(B).passed)
    return _BRACE_CACHE[key][1]


def _gate_reason(g: Gate, condition: str, condition_ok: bool) -> str:
    missing = []
    if g.abelian:
        missing.append("B is abelian")
    if not g.one_generator:
        missing.append("B is not one-generator")
    if not condition_ok:
        missing.append(f"{condition} fails (zl = {g.zl if g.zl is not None else 'infinite'})")
    return "hypotheses unmet: " + "; ".join(missing)


def _warn_generator_dependence(B: BraceTable, result: EpiResult) -> None:
    outcomes = {bool(w) for w in result.attempts}
    if len(outcomes) > 1:
        log.warning(
            "%s: canonical %s map depends on the generator: %s",
            B.name,
            result.family,
            ", ".join(f"{B.label(w.generator)}={'ok' if w else 'fail'}" for w in result.attempts),
        )


@dataclass(frozen=True)
class A2Result:
    hypotheses_met: bool
    abelian: Optional[bool]
    a2_equals_right: Optional[bool]
    witness: Optional[tuple] = None
    reason: str = ""
    a2_size: int = 0

    @property
    def passed(self) -> bool:
        return self.hypotheses_met and bool(self.abelian) and bool(self.a2_equals_right)

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "n/a"
        return "pass" if self.passed else "FAIL"


def a2_abelian_check(B: BraceTable, g: Optional[Gate] = None, require_gate: bool = True) -> A2Result:
    """Check that A^2 is an abelian brace (x*y = 0 on A^2) and that A^2 = A^(2)."""
    g = g or gate(B)
    met = not g.abelian and g.one_generator and g.zeta3_is_whole
    if require_gate and not met:
        return A2Result(False, None, None, reason=_gate_reason(g, "zeta_3(*, B) = B", g.zeta3_is_whole))
    a2 = left_series(B).term(2)
    r2 = right_series(B).term(2)
    idx = a2.indices
    block = B.star[np.ix_(idx, idx)]
    witness = None
    if block.any():
        i, j = np.argwhere(block != 0)[0]
        witness = (int(idx[i]), int(idx[j]))
    return A2Result(met, witness is None, a2 == r2, witness, a2_size=len(a2))


# ---------------------------------------------------------------------------
# quotient classification


@dataclass(frozen=True)
class QuotientRow:
    ideal_size: int
    quotient_order: int
    one_generator: bool
    abelian: bool
    zl: Optional[int]
    smok_pair: Optional[tuple]
    d12: str
    d13: str
    a2: str
    ideal: tuple

    def csv(self) -> str:
        smok = "-" if self.smok_pair is None else f"{self.smok_pair[0]};{self.smok_pair[1]}"
        zl_ = "inf" if self.zl is None else str(self.zl)
        return ",".join(
            [
                str(self.ideal_size),
                str(self.quotient_order),
                "yes" if self.one_generator else "no",
                "yes" if self.abelian else "no",
                zl_,
                smok,
                self.d12,
                self.d13,
                self.a2,
            ]
        )


CSV_HEADER = "ideal_size,quotient_order,one_generator,abelian,zl,smok_pair,epi_d12,epi_d13,a2_abelian"


def analyse(Q: BraceTable, all_generators: bool = True) -> dict:
    g = gate(Q)
    return {
        "gate": g,
        "smok": smok_class(Q),
        "d12": epi_from_d12(Q, all_generators, g),
        "d13": epi_from_d13(Q, all_generators, g),
        "a2": a2_abelian_check(Q, g),
    }


def classify_quotients(
    B: BraceTable, cap: int = DEFAULT_IDEAL_CAP, all_generators: bool = True
) -> list[QuotientRow]:
    """Analyse B/I for every ideal I (deterministic order of ``enumerate_ideals``)."""
    rows = []
    for ideal in enumerate_ideals(B, cap):
        Q = quotient(B, ideal, check=False).brace
        info = analyse(Q, all_generators)
        g = info["gate"]
        rows.append(
            QuotientRow(
                ideal_size=len(ideal),
                quotient_order=Q.order,
                one_generator=g.one_generator,
                abelian=g.abelian,
                zl=g.zl,
                smok_pair=info["smok"].pair,
                d12=info["d12"].status,
                d13=info["d13"].status,
                a2=info["a2"].status,
                ideal=tuple(ideal.sorted()),
            )
        )
    return rows


def format_classification(rows: list[QuotientRow]) -> str:
    header = ["ideal", "order", "1-gen", "abelian", "zl", "smok(n,k)", "epi d12", "epi d13", "A2 abelian"]
    body = []
    for r in rows:
        smok = "-" if r.smok_pair is None else f"({r.smok_pair[0]},{r.smok_pair[1]})"
        body.append(
            [
                str(r.ideal_size),
                str(r.quotient_order),
                "yes" if r.one_generator else "no",
                "yes" if r.abelian else "no",
                "inf" if r.zl is None else str(r.zl),
                smok,
                r.d12,
                r.d13,
                r.a2,
            ]
        )
    widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in body:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
