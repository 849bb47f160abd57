"""Evaluate both sides of the star/lambda identities on concrete brace elements.

Universal identities hold in every left brace:

    L2.i     a*(b+c) = a*b + a*c
    L2.ii    (ab)*c = a*(b*c) + b*c + a*c
    L2.iii   (a+b)*c = a*(d*c) + d*c + a*c,            d = lam_{a^-1}(b)
    L2.iv    lam_y(b*a) = yby^-1 * lam_y(a)
    L2.v.1   yby^-1 = lam_y(lam_b(y^-1) - y^-1 + b)
    L2.v.2   yby^-1 = lam_y(b*y^-1 + b)
    L2.2     a(b1+..+bn - c1-..-ck) = ab1+..+abn - ac1-..-ack + (k-n+1)a
    P2.3     a^n = sum_i C(n,i) a_i,                    a_1 = a, a_(i+1) = a*a_i
    P2.4     a^n * a = sum_i C(n,i) a_(i+1)

The gated identities (``check_gated_identities``) need a one-generator non-abelian
brace with zl = 3 (the L4 family) or zl = 2 (the T1 family).

Every kernel works on numpy index arrays, so the same code evaluates a single
tuple or an exhaustive batch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core import BraceTable
from .errors import UsageError
from .series import upper_central_series, zl
from .substructures import coset_representatives
from .theorems import find_generators

EXHAUSTIVE_LIMIT = 10 ** 7
DEFAULT_SAMPLES = 10 ** 4
DEFAULT_MAX_EXPONENT = 12
DEFAULT_GATED_BOUND = 8
_CHUNK = 1 << 20

SIGNED_SUM_SHAPES = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (3, 2))


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    inputs: tuple
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class Identity:
    id: str
    variables: tuple
    kernel: Callable

    @property
    def arity(self) -> int:
        return len(self.variables)


def _l2_i(B, a, b, c):
    return B.star[a, B.add[b, c]], B.add[B.star[a, b], B.star[a, c]]


def _l2_ii(B, a, b, c):
    s = B.star
    return s[B.mul[a, b], c], B.sum([s[a, s[b, c]], s[b, c], s[a, c]])


def _l2_iii(B, a, b, c):
    s = B.star
    d = B.lam[B.inv[a], b]
    return s[B.add[a, b], c], B.sum([s[a, s[d, c]], s[d, c], s[a, c]])


def _conj(B, y, b):
    return B.mul[B.mul[y, b], B.inv[y]]


def _l2_iv(B, y, b, a):
    return B.lam[y, B.star[b, a]], B.star[_conj(B, y, b), B.lam[y, a]]


def _l2_v1(B, y, b):
    yi = B.inv[y]
    inner = B.add[B.sub(B.lam[b, yi], yi), b]
    return _conj(B, y, b), B.lam[y, inner]


def _l2_v2(B, y, b):
    yi = B.inv[y]
    return _conj(B, y, b), B.lam[y, B.add[B.star[b, yi], b]]


STAR_IDENTITIES = (
    Identity("L2.i", ("a", "b", "c"), _l2_i),
    Identity("L2.ii", ("a", "b", "c"), _l2_ii),
    Identity("L2.iii", ("a", "b", "c"), _l2_iii),
    Identity("L2.iv", ("y", "b", "a"), _l2_iv),
    Identity("L2.v.1", ("y", "b"), _l2_v1),
    Identity("L2.v.2", ("y", "b"), _l2_v2),
)


def signed_sum_identity(n: int, k: int) -> Identity:
    names = ("a",) + tuple(f"b{i + 1}" for i in range(n)) + tuple(f"c{j + 1}" for j in range(k))

    def kernel(B, a, *rest):
        bs, cs = rest[:n], rest[n:]
        arg = B.sum(list(bs) + [B.neg[c] for c in cs])
        lhs = B.mul[a, arg]
        terms = [B.mul[a, b] for b in bs] + [B.neg[B.mul[a, c]] for c in cs]
        terms.append(B.scalar(k - n + 1, a))
        return lhs, B.sum(terms)

    return Identity(f"L2.2[n={n},k={k}]", names, kernel)


def _a_sequence(B, a, length):
    seq = [np.asarray(a)]
    for _ in range(length - 1):
        seq.append(B.star[a, seq[-1]])
    return seq


def power_identities(n: int) -> tuple[Identity, Identity]:
    def expansion(B, a):
        seq = _a_sequence(B, a, n)
        rhs = B.sum([B.scalar(math.comb(n, i + 1), seq[i]) for i in range(n)])
        return B.power(a, n), rhs

    def star_expansion(B, a):
        seq = _a_sequence(B, a, n + 1)
        rhs = B.sum([B.scalar(math.comb(n, i + 1), seq[i + 1]) for i in range(n)])
        return B.star[B.power(a, n), a], rhs

    return (
        Identity(f"P2.3[n={n}]", ("a",), expansion),
        Identity(f"P2.4[n={n}]", ("a",), star_expansion),
    )


def universal_identities(max_exponent: int = DEFAULT_MAX_EXPONENT) -> list[Identity]:
    out = list(STAR_IDENTITIES)
    out += [signed_sum_identity(n, k) for n, k in SIGNED_SUM_SHAPES]
    for e in range(1, max_exponent + 1):
        out.extend(power_identities(e))
    return out


# ---------------------------------------------------------------------------
# single-tuple entry points


def _single(B, ident: Identity, inputs) -> IdentityCheck:
    lhs, rhs = ident.kernel(B, *[int(v) for v in inputs])
    return IdentityCheck(ident.id, tuple(int(v) for v in inputs), int(lhs), int(rhs))


def check_star_identities(B: BraceTable, a: int, b: int, c: int, y: int) -> list[IdentityCheck]:
    env = {"a": a, "b": b, "c": c, "y": y}
    return [_single(B, ident, [env[v] for v in ident.variables]) for ident in STAR_IDENTITIES]


def check_signed_sum(B: BraceTable, a: int, bs: Sequence[int], cs: Sequence[int]) -> IdentityCheck:
    ident = signed_sum_identity(len(bs), len(cs))
    return _single(B, ident, [a, *bs, *cs])


def check_power_expansion(B: BraceTable, a: int, n: int) -> tuple[IdentityCheck, IdentityCheck]:
    if n < 1:
        raise UsageError("exponent must be at least 1")
    first, second = power_identities(n)
    return _single(B, first, [a]), _single(B, second, [a])


# ---------------------------------------------------------------------------
# batch runner


@dataclass
class IdentityResult:
    id: str
    mode: str
    checked: int
    failures: int = 0
    first_failure: Optional[IdentityCheck] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def describe(self) -> str:
        head = f"{self.id:<16} {self.mode:<10} {self.checked:>9} checked  "
        if self.passed:
            return head + "pass"
        f = self.first_failure
        return head + f"FAIL x{self.failures} first at {f.inputs}: {f.lhs} != {f.rhs}"


def _record(result: IdentityResult, ident_id, tuples, lhs, rhs) -> None:
    bad = np.asarray(lhs != rhs)
    count = int(bad.sum())
    if not count:
        return
    result.failures += count
    rows = np.flatnonzero(bad)
    failing = tuples[rows]
    first = np.lexsort(failing.T[::-1])[0]
    cand = IdentityCheck(
        ident_id,
        tuple(int(v) for v in failing[first]),
        int(np.asarray(lhs)[rows[first]]),
        int(np.asarray(rhs)[rows[first]]),
    )
    if result.first_failure is None or cand.inputs < result.first_failure.inputs:
        result.first_failure = cand


def run_identity(
    B: BraceTable,
    ident: Identity,
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    stream: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> IdentityResult:
    """Exhaustive when order**arity <= ``exhaustive_limit``, otherwise seeded samples."""
    n, r = B.order, ident.arity
    total = n ** r
    if total <= exhaustive_limit:
        result = IdentityResult(ident.id, "exhaustive", total)
        for lo in range(0, total, _CHUNK):
            flat = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
            tuples = np.stack(np.unravel_index(flat, (n,) * r), axis=1)
            lhs, rhs = ident.kernel(B, *tuples.T)
            _record(result, ident.id, tuples, lhs, rhs)
        return result
    # an independent stream per identity keeps samples stable if the list changes order
    rng = np.random.default_rng([seed, stream])
    result = IdentityResult(ident.id, "sampled", samples)
    tuples = rng.integers(0, n, size=(samples, r))
    lhs, rhs = ident.kernel(B, *tuples.T)
    _record(result, ident.id, tuples, lhs, rhs)
    return result


def run_universal(
    B: BraceTable,
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> list[IdentityResult]:
    return [
        run_identity(
            B, ident, samples=samples, seed=seed, stream=i, exhaustive_limit=exhaustive_limit
        )
        for i, ident in enumerate(universal_identities(max_exponent))
    ]


# ---------------------------------------------------------------------------
# gated identities


@dataclass
class GatedReport:
    status: str  # "checked" or "hypotheses unmet"
    reason: str = ""
    zl: Optional[int] = None
    generators: tuple = ()
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def checked(self) -> bool:
        return self.status == "checked"


class _Collector:
    def __init__(self):
        self.results: dict[str, IdentityResult] = {}

    def add(self, ident_id, inputs: np.ndarray, lhs, rhs):
        """``inputs`` has one row per evaluated instance, aligned with lhs/rhs."""
        lhs = np.asarray(lhs).reshape(-1)
        rhs = np.asarray(rhs).reshape(-1)
        inputs = inputs.reshape(len(lhs), -1)
        res = self.results.setdefault(ident_id, IdentityResult(ident_id, "exhaustive", 0))
        res.checked += len(lhs)
        _record(res, ident_id, inputs, lhs, rhs)


def _grid(*axes):
    mesh = np.meshgrid(*axes, indexing="ij")
    return mesh, np.stack([m.reshape(-1) for m in mesh], axis=1)


def check_gated_identities(
    B: BraceTable,
    *,
    bound: int = DEFAULT_GATED_BOUND,
    generators: Optional[Sequence[int]] = None,
) -> GatedReport:
    """Gated identities for one-generator non-abelian braces with zl in {2, 3}.

    zl = 3 runs L4.1, L4.2.i-vii and L4.3; zl = 2 runs T1.a-c. Exponents and
    coefficients run over 1..bound (T1.b/T1.c use -bound..bound). The existential
    item L4.2.vii is checked as equality of cosets modulo zeta_1. All generators
    are used unless ``generators`` is given.
    """
    gens = tuple(find_generators(B)) if generators is None else tuple(generators)
    series = upper_central_series(B)
    length = zl(B, series)
    if not gens:
        return GatedReport("hypotheses unmet", "not one-generator", length)
    if B.is_abelian:
        return GatedReport("hypotheses unmet", "abelian", length, gens)
    if length not in (2, 3):
        return GatedReport("hypotheses unmet", f"zl = {length}, need 2 or 3", length, gens)
    col = _Collector()
    if length == 3:
        _gated_zl3(B, np.array(gens, dtype=np.int64), series, bound, col)
    else:
        _gated_zl2(B, np.array(gens, dtype=np.int64), bound, col)
    return GatedReport("checked", "", length, gens, list(col.results.values()))


def _gated_zl3(B, a, series, bound, col):
    s, add = B.star, B.add
    b = s[a, a]
    c1 = s[a, b]
    c2 = s[b, a]
    z = B.sub(c2, c1)
    bb = s[b, b]
    n = B.additive_orders[a]
    zero = np.zeros_like(a)
    inputs = a[:, None]
    for name, el in (("nb", b), ("nc1", c1), ("nc2", c2), ("nc", bb)):
        col.add(f"L4.1:{name}", inputs, B.scalar(n, el), zero)
    col.add("L4.3", inputs, bb, zero)

    ks = np.arange(1, bound + 1)
    (A, K), inputs = _grid(a, ks)
    Bg, C1, C2, Z = b[:, None], c1[:, None], c2[:, None], z[:, None]
    ch2 = np.vectorize(lambda k: math.comb(int(k), 2))(K)
    ch3 = np.vectorize(lambda k: math.comb(int(k), 3))(K)
    pow_a = np.stack([B.power(a, int(k)) for k in ks], axis=1)
    pow_b = np.stack([B.power(b, int(k)) for k in ks], axis=1)
    ka = B.scalar(K, A)
    kb = B.scalar(K, Bg)
    c2b = B.scalar(ch2, Bg)
    c3c1 = B.scalar(ch3, C1)

    col.add("L4.2.i", inputs, pow_a, B.sum([ka, c2b, c3c1]))
    col.add("L4.2.ii.a", inputs, ka, B.sub(B.sub(pow_a, c2b), c3c1))
    col.add("L4.2.ii.b", inputs, ka, B.mul[B.sub(pow_a, c2b), B.neg[c3c1]])
    col.add("L4.2.iii", inputs, s[pow_a, A], add[kb, B.scalar(ch2, C1)])
    col.add("L4.2.iv", inputs, s[pow_a, Bg], B.scalar(K, C1))
    lhs_v = s[pow_b, A]
    col.add("L4.2.v.1", inputs, lhs_v, add[B.scalar(K, C1), B.scalar(K, Z)])
    col.add("L4.2.v.2", inputs, lhs_v, s[kb, A])
    col.add("L4.2.v.3", inputs, lhs_v, B.scalar(K, C2))
    col.add("L4.2.vi.1", inputs, s[kb, Bg], s[pow_b, Bg])
    col.add("L4.2.vi.2", inputs, s[pow_b, Bg], B.scalar(K, bb[:, None]))

    rep = coset_representatives(B, series.term(1))
    (A3, K3, S3), inputs3 = _grid(a, ks, ks)
    B3 = b[:, None, None]
    lhs = add[B.scalar(K3, A3), B.scalar(S3, B3)]
    coeff = S3 - np.vectorize(lambda k: math.comb(int(k), 2))(K3)
    rhs = B.mul[pow_a[:, :, None].repeat(len(ks), axis=2), B.scalar(coeff, B3)]
    col.add("L4.2.vii", inputs3, rep[lhs], rep[rhs])


def _gated_zl2(B, a, bound, col):
    s, add = B.star, B.add
    c = s[a, a]
    ks = np.arange(1, bound + 1)
    (A, K), inputs = _grid(a, ks)
    C = c[:, None]
    pow_a = np.stack([B.power(a, int(k)) for k in ks], axis=1)
    ch2 = np.vectorize(lambda k: math.comb(int(k), 2))(K)
    col.add("T1.a", inputs, pow_a, add[B.scalar(K, A), B.scalar(ch2, C)])

    signed = np.arange(-bound, bound + 1)
    (A, K), inputs = _grid(a, signed)
    C = c[:, None]
    pow_signed = np.stack([B.power(a, int(k)) for k in signed], axis=1)
    nc = B.scalar(K, C)
    col.add("T1.b:a^n*a", inputs, s[pow_signed, A], nc)
    col.add("T1.b:na*a", inputs, s[B.scalar(K, A), A], nc)

    (A, Al, G), inputs = _grid(a, signed, signed)
    C = c[:, None, None]
    x = add[B.scalar(Al, A), B.scalar(G, C)]
    col.add("T1.c:inverse", inputs, B.inv[x], add[B.scalar(-Al, A), B.scalar(Al * Al - G, C)])
    for gi, g in enumerate(a):
        (Al, G, Al1, G1), inputs = _grid(signed, signed, signed, signed)
        x = add[B.scalar(Al, g), B.scalar(G, c[gi])]
        y = add[B.scalar(Al1, g), B.scalar(G1, c[gi])]
        rhs = add[B.scalar(Al + Al1, g), B.scalar(G + G1 + Al * Al1, c[gi])]
        full = np.concatenate([np.full((inputs.shape[0], 1), g), inputs], axis=1)
        col.add("T1.c", full, B.mul[x, y], rhs)
