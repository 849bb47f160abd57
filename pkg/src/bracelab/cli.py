"""``bracelab`` command line: build braces, analyse them, emit plain-text reports.

Exit status: 0 when every check passes, 1 when a check fails (including a file
that fails the brace axioms), 2 for usage or structural errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .core import BraceTable, trivial_brace, verify_axioms
from .errors import AxiomError, ResourceError, StructureError, UsageError
from .identities import (
    DEFAULT_MAX_EXPONENT,
    DEFAULT_SAMPLES,
    DEFAULT_GATED_BOUND,
    EXHAUSTIVE_LIMIT,
    check_gated_identities,
    run_universal,
)
from .io import load, save
from .parametric import DEFAULT_MAX_ORDER, D12Quotient, D13
from .series import (
    left_series,
    multiplicatively_central,
    right_series,
    smok_class,
    star_center,
    upper_central_series,
    zl,
)
from .substructures import (
    DEFAULT_IDEAL_CAP,
    additive_closure,
    enumerate_ideals,
    generated_subbrace,
    is_ideal,
    quotient,
)
from .theorems import (
    CSV_HEADER,
    a2_abelian_check,
    classify_quotients,
    epi_from_d12,
    epi_from_d13,
    format_classification,
    gate,
)
from .ybe import DEFAULT_TRIPLE_CAP, SolutionMap, check_braid, check_involutive, check_product_conservation

MEMBERSHIP_LIMIT = 64


class Report:
    def __init__(self, command: str, target: str = ""):
        self.lines = [f"# bracelab {command}" + (f" {target}" if target else "")]
        self.status = 0

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)

    def fail(self, line: str) -> None:
        self.lines.append(line)
        self.status = 1

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _elements(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise UsageError(f"bad element list {text!r}") from None


def _load(args) -> BraceTable:
    return load(args.file, checked=not args.unchecked)


def _check_range(B: BraceTable, elements: Sequence[int]) -> None:
    for x in elements:
        if not 0 <= x < B.order:
            raise UsageError(f"element {x} out of range for order {B.order}")


def _subset_lines(report: Report, label: str, S) -> None:
    report(f"{label}: size {len(S)}")
    if S.brace.order <= MEMBERSHIP_LIMIT:
        report(f"  indices  {S.format(coords=False)}")
        if S.brace.labels is not None:
            report(f"  coords   {S.format(coords=True)}")


def _series_block(report: Report, s) -> None:
    sym = {"left": "A^{k}", "right": "A^({k})", "upper-central": "zeta_{k}"}[s.kind]
    report(f"[{s.kind} series]")
    for pos, term in enumerate(s.terms):
        _subset_lines(report, "  " + sym.format(k=pos + s.first_index), term)
    if s.reached_zero:
        end = "reached {0}"
    elif s.reached_whole:
        end = "reached A"
    else:
        end = "stabilised strictly between {0} and A"
    report(f"  stabilised at index {s.stabilized_at}: {end}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_make(args, report: Report) -> None:
    if args.family == "d12":
        fam, tag = D12Quotient(args.mod), ("d12", args.mod)
    elif args.family == "d13":
        fam, tag = D13(args.n), ("d13", args.n)
    else:
        fam, tag = None, None
    if fam is None:
        B = trivial_brace(args.order)
    else:
        B = fam.table(max_order=args.order_cap)
    save(B, args.output, tag)
    report(f"wrote {args.output}: {B.name}, order {B.order}")
    if args.verify:
        r = verify_axioms(B)
        (report if r.passed else report.fail)(f"verify: {r.describe()}")


def cmd_verify(args, report: Report) -> None:
    B = load(args.file, checked=False)
    sample = True if args.sample else None
    r = verify_axioms(B, sample=sample, samples=args.sample or 0, seed=args.seed)
    if args.sample:
        report(f"seed: {args.seed}")
    report(f"order: {B.order}")
    (report if r.passed else report.fail)(r.describe())


def cmd_series(args, report: Report) -> None:
    B = _load(args)
    kinds = [args.kind] if args.kind else ["left", "right", "upper"]
    for kind in kinds:
        s = {"left": left_series, "right": right_series, "upper": upper_central_series}[kind](B)
        _series_block(report, s)


def cmd_zl(args, report: Report) -> None:
    B = _load(args)
    value = zl(B)
    report("not star-hypercentral" if value is None else str(value))


def cmd_center(args, report: Report) -> None:
    B = _load(args)
    c = star_center(B)
    _subset_lines(report, "star-center", c)
    ideal = is_ideal(B, c)
    central = multiplicatively_central(B, c)
    (report if ideal else report.fail)(f"ideal: {'yes' if ideal else 'NO ' + str(ideal.witness)}")
    (report if central else report.fail)(
        f"inside the multiplicative center: {'yes' if central else 'NO ' + str(central.witness)}"
    )


def cmd_classify_nilpotency(args, report: Report) -> None:
    B = _load(args)
    sc = smok_class(B)
    length = zl(B)
    report(f"left class (least k with A^k = 0): {sc.left if sc.left is not None else 'none'}")
    report(f"right class (least n with A^(n) = 0): {sc.right if sc.right is not None else 'none'}")
    report(f"N_S(n,k): {sc.pair if sc.pair is not None else 'not Smoktunowicz-nilpotent'}")
    report(f"zl: {length if length is not None else 'not star-hypercentral'}")
    consistent = (length is not None) == (sc.pair is not None)
    (report if consistent else report.fail)(
        f"star-nilpotent iff Smoktunowicz-nilpotent: {'consistent' if consistent else 'VIOLATED'}"
    )


def cmd_gen(args, report: Report) -> None:
    B = _load(args)
    elements = _elements(args.elements)
    _check_range(B, elements)
    sub = generated_subbrace(B, elements)
    report(f"generators: {elements}")
    _subset_lines(report, "br(M)", sub)
    report(f"whole brace: {'yes' if sub.is_whole else 'no'}")


def cmd_ideals(args, report: Report) -> None:
    B = _load(args)
    ideals = enumerate_ideals(B, args.order_cap)
    report(f"ideals: {len(ideals)}")
    for i, ideal in enumerate(ideals):
        _subset_lines(report, f"I{i}", ideal)


def cmd_quotient(args, report: Report) -> None:
    B = _load(args)
    elements = _elements(args.ideal_elements)
    _check_range(B, elements)
    I = additive_closure(B, elements)
    verdict = is_ideal(B, I)
    if not verdict:
        raise UsageError(f"generated subgroup is not an ideal: {verdict.reason} at {verdict.witness}")
    q = quotient(B, I, check=False)
    save(q.brace, args.output)
    report(f"ideal size {len(I)}; quotient order {q.brace.order}")
    report(f"wrote {args.output}")
    report("projection: " + " ".join(str(int(v)) for v in q.projection))


def cmd_identities(args, report: Report) -> None:
    B = _load(args)
    report(f"seed: {args.seed}")
    report(f"samples: {args.samples}")
    exp = args.max_exponent
    suite = "gated" if args.suite == "section4" else args.suite
    if suite in ("all", "universal"):
        report("[universal]")
        for r in run_universal(
            B,
            samples=args.samples,
            seed=args.seed,
            max_exponent=exp or DEFAULT_MAX_EXPONENT,
            exhaustive_limit=args.tuple_cap,
        ):
            (report if r.passed else report.fail)("  " + r.describe())
    if suite in ("all", "gated"):
        gated = check_gated_identities(B, bound=exp or DEFAULT_GATED_BOUND)
        report(f"[gated] zl = {gated.zl if gated.zl is not None else 'infinite'}")
        if not gated.checked:
            report(f"  hypotheses unmet, skipped ({gated.reason})")
        else:
            report(f"  generators checked: {len(gated.generators)}")
            for r in gated.results:
                (report if r.passed else report.fail)("  " + r.describe())


def _epi_block(report: Report, B: BraceTable, result) -> None:
    report(f"[epi {result.family}]")
    if not result.hypotheses_met:
        report(f"  {result.reason}")
        return
    if result.note:
        report(f"  {result.note}")
    for w in result.attempts:
        line = "  " + w.describe()
        if w.source_is_brace is False:
            line += " [source table fails the brace axioms]"
        (report if w else report.fail)(line)
    if result.attempts and not result.all_passed and result.passed:
        report.fail("  generator-dependent outcome")


def cmd_epi(args, report: Report) -> None:
    B = _load(args)
    g = gate(B)
    report(f"one-generator: {'yes' if g.one_generator else 'no'}; abelian: "
           f"{'yes' if g.abelian else 'no'}; zl: {g.zl if g.zl is not None else 'infinite'}")
    families = ["d12", "d13"] if args.family == "auto" else [args.family]
    for fam in families:
        if fam == "d12":
            _epi_block(report, B, epi_from_d12(B, args.all_generators, g))
        else:
            _epi_block(report, B, epi_from_d13(B, args.all_generators, g, args.order_cap))


def cmd_classify(args, report: Report) -> None:
    B = _load(args)
    rows = classify_quotients(B, args.order_cap)
    report(format_classification(rows))
    if any("FAIL" in (r.d12, r.d13, r.a2) for r in rows):
        report.fail("some gated quotient failed")
    if args.output:
        Path(args.output).write_text(CSV_HEADER + "\n" + "".join(r.csv() + "\n" for r in rows))
        report(f"wrote {args.output}")


def cmd_a2check(args, report: Report) -> None:
    B = _load(args)
    r = a2_abelian_check(B)
    if not r.hypotheses_met:
        report(r.reason)
        return
    report(f"|A^2| = {r.a2_size}")
    (report if r.abelian else report.fail)(
        f"A^2 abelian: {'yes' if r.abelian else 'NO, witness ' + str(r.witness)}"
    )
    (report if r.a2_equals_right else report.fail)(
        f"A^2 = A^(2): {'yes' if r.a2_equals_right else 'NO'}"
    )


def cmd_ybe(args, report: Report) -> None:
    B = _load(args)
    if args.sample:
        report(f"seed: {args.seed}")
    inv = check_involutive(B)
    cons = check_product_conservation(B)
    braid, mode, count = check_braid(B, sample=args.sample, seed=args.seed, cap=args.tuple_cap)
    (report if inv else report.fail)(f"involutive: {'yes' if inv else 'NO at ' + str(inv.witness)}")
    (report if cons else report.fail)(f"uv = xy: {'yes' if cons else 'NO at ' + str(cons.witness)}")
    (report if braid else report.fail)(
        f"braid relation [{mode}, {count} triples]: {'yes' if braid else 'NO at ' + str(braid.witness)}"
    )
    if args.dump:
        Path(args.dump).write_text(SolutionMap(B).dump())
        report(f"wrote {args.dump}")


# ---------------------------------------------------------------------------
# parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bracelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"bracelab {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, func, help_text, file=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if file:
            p.add_argument("file", help=".brace file")
            p.add_argument("--unchecked", action="store_true", help="load without verifying the axioms")
        p.set_defaults(func=func)
        return p

    make = sub.add_parser("make", help="write a parametric brace as a .brace file",
                          description="write a parametric brace as a .brace file")
    fams = make.add_subparsers(dest="family", required=True, metavar="FAMILY")
    for name, flag, dest, text in (
        ("d12", "--mod", "mod", "D(1,2) reduced mod M"),
        ("d13", "--n", "n", "D(1,3) over Z_N"),
        ("trivial", "--order", "order", "trivial brace over Z_N"),
    ):
        p = fams.add_parser(name, help=text, description=text)
        p.add_argument(flag, dest=dest, type=_positive, required=True)
        p.add_argument("-o", "--output", required=True)
        p.add_argument("--order-cap", type=_positive, default=DEFAULT_MAX_ORDER)
        p.add_argument("--verify", action="store_true", help="also run verify_axioms")
        p.set_defaults(func=cmd_make)

    p = sub.add_parser("verify", help="check the brace axioms", description="check the brace axioms")
    p.add_argument("file")
    p.add_argument("--sample", type=_positive, help="check this many seeded random triples instead")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = command("series", cmd_series, "left, right and upper star-central series")
    p.add_argument("--kind", choices=["left", "right", "upper"])
    command("zl", cmd_zl, "length of the upper star-central series")
    command("center", cmd_center, "star-center and its ideal/centrality checks")
    command("classify-nilpotency", cmd_classify_nilpotency, "Smoktunowicz classes and zl")
    p = command("gen", cmd_gen, "subbrace generated by elements")
    p.add_argument("--elements", required=True, help="comma-separated element indices")
    p = command("ideals", cmd_ideals, "enumerate all ideals")
    p.add_argument("--order-cap", type=_positive, default=DEFAULT_IDEAL_CAP)
    p = command("quotient", cmd_quotient, "quotient by the ideal generated additively by elements")
    p.add_argument("--ideal-elements", required=True, help="comma-separated element indices")
    p.add_argument("-o", "--output", required=True)
    p = command("identities", cmd_identities, "evaluate the identity suites")
    # "section4" is an accepted alias of "gated"
    p.add_argument("--suite", choices=["all", "universal", "gated", "section4"], default="all")
    p.add_argument("--samples", type=_positive, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-exponent", type=_positive,
                   help=f"exponent bound (default {DEFAULT_MAX_EXPONENT} universal, "
                        f"{DEFAULT_GATED_BOUND} gated)")
    p.add_argument("--tuple-cap", type=_positive, default=EXHAUSTIVE_LIMIT,
                   help="largest tuple space scanned exhaustively")
    p = command("epi", cmd_epi, "canonical epimorphisms from D(1,2) / D(1,3)")
    p.add_argument("--family", choices=["d12", "d13", "auto"], default="auto")
    p.add_argument("--all-generators", action="store_true", help="try every generator")
    p.add_argument("--order-cap", type=_positive, default=DEFAULT_MAX_ORDER)
    p = command("classify", cmd_classify, "analyse every quotient by an ideal")
    p.add_argument("--order-cap", type=_positive, default=DEFAULT_IDEAL_CAP)
    p.add_argument("-o", "--output", help="also write comma-separated records here")
    command("a2check", cmd_a2check, "check that A^2 is abelian and equals A^(2)")
    p = command("ybe", cmd_ybe, "Yang-Baxter solution checks")
    p.add_argument("--sample", type=_positive, help="sample this many triples for the braid check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tuple-cap", type=_positive, default=DEFAULT_TRIPLE_CAP)
    p.add_argument("--dump", help="write the x y u v table here")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str, str]:
    """Execute a command; returns (exit status, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    target = getattr(args, "file", "") or ""
    report = Report(args.command, target)
    try:
        args.func(args, report)
    except AxiomError as exc:
        return 1, report.text(), f"bracelab: {exc}\n"
    except (StructureError, UsageError, ResourceError, FileNotFoundError) as exc:
        return 2, report.text(), f"bracelab: {exc}\n"
    return report.status, report.text(), ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    status, out, err = run(args_list)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
