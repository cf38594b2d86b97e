"""Command-line verifier.

Exit codes: 0 all checks pass, 1 parse/usage error, 2 relator, commutation or
hypothesis violation, 3 identity or global-sum failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .branched_cover import HypothesisViolation, TorusMonodromy, TorusReport, verify_torus_identity
from .central_extension import evaluate_word, normal_form, parse_word
from .coverfile import (
    EXIT_IDENTITY,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VIOLATION,
    CoverParseError,
    check_cover,
    read_cover,
)
from .group_core import (
    ENUMERATION_CAP,
    MAX_DEGREE,
    DegreeError,
    LiteralSyntaxError,
    SignedPerm,
    all_permutations,
    centralizer_enumerate,
    centralizer_sample,
    check_random_state,
    cycle_decomposition,
    format_signed_perm,
    parse_signed_perm,
    random_permutation,
)
from .pairing import NonCommutingError, phi, phi_closed_form

EXHAUST_CAP = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 means "violation" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


class Output:
    """Buffers rows and renders them as aligned text or TSV."""

    def __init__(self, fmt: str, quiet: bool):
        self.fmt = fmt
        self.quiet = quiet
        self.lines: list[str] = []

    def row(self, *fields, detail: bool = False) -> None:
        if detail and self.quiet:
            return
        fields = [str(f) for f in fields]
        if self.fmt == "tsv":
            self.lines.append("\t".join(fields))
        else:
            self.lines.append("  ".join(fields))

    def table(self, header: Sequence[str], rows: Sequence[Sequence], detail: bool = False) -> None:
        if detail and self.quiet:
            return
        if self.fmt == "tsv":
            self.lines.append("\t".join(header))
            self.lines.extend("\t".join(str(f) for f in r) for r in rows)
            return
        cells = [list(header)] + [[str(f) for f in r] for r in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
        for c in cells:
            self.lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())

    def flush(self, stream: TextIO) -> None:
        for line in self.lines:
            stream.write(line + "\n")
        self.lines.clear()


def _cycles_str(tm: TorusMonodromy, orbit) -> str:
    cycles = cycle_decomposition(tm.m.perm).one_based()
    return "".join("(" + " ".join(map(str, cycles[r])) + ")" for r in orbit)


def _torus_table(out: Output, tm: TorusMonodromy, tr: TorusReport, detail: bool = False) -> None:
    rows = [
        (k, _cycles_str(tm, c.orbit), c.e, c.t, c.d, c.alpha)
        for k, c in enumerate(tr.components, start=1)
    ]
    out.table(("component", "cycles", "e", "t", "d", "alpha"), rows, detail=detail)


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def cmd_verify_torus(args, out: Output) -> int:
    try:
        m = parse_signed_perm(args.m, args.n)
        l = parse_signed_perm(args.l, args.n)
    except (LiteralSyntaxError, DegreeError) as exc:
        out.row("error", exc)
        return EXIT_PARSE
    try:
        tm = TorusMonodromy.normalized(m, l)
    except NonCommutingError as exc:
        out.row("error", exc)
        return EXIT_VIOLATION
    except HypothesisViolation as exc:
        out.row("error", f"hypothesis violated: {exc}")
        return EXIT_VIOLATION
    tr = verify_torus_identity(tm)
    out.row("m", format_signed_perm(tm.m))
    out.row("l", format_signed_perm(tm.l))
    _torus_table(out, tm, tr)
    out.row("integral", tr.integral)
    out.row("divisor", tr.divisor)
    out.row("verdict", _verdict(tr.passed))
    return EXIT_OK if tr.passed else EXIT_IDENTITY


def _check_pair(tm: TorusMonodromy) -> tuple[TorusReport, bool]:
    """Identity report plus closed-form-vs-commutator agreement."""
    tr = verify_torus_identity(tm)
    agree = phi_closed_form(tm.m.perm, tm.l) == phi(tm.m, tm.l)
    return tr, agree


def cmd_exhaust(args, out: Output) -> int:
    if args.n > EXHAUST_CAP:
        out.row("error", f"exhaust is capped at n <= {EXHAUST_CAP}, got {args.n}")
        return EXIT_PARSE
    pairs = identity_fail = closed_fail = alpha_fail = 0
    for sigma in all_permutations(args.n):
        for l in centralizer_enumerate(sigma):
            tm = TorusMonodromy(SignedPerm.from_perm(sigma), l)
            tr, agree = _check_pair(tm)
            pairs += 1
            identity_fail += not tr.passed
            closed_fail += not agree
            alpha_fail += sum(c.alpha != c.d % 2 for c in tr.components)
            if not (tr.passed and agree):
                out.row("FAIL", format_signed_perm(tm.m), format_signed_perm(tm.l))
    out.row("n", args.n)
    out.row("pairs", pairs)
    out.row("identity failures", identity_fail)
    out.row("closed-form failures", closed_fail)
    out.row("alpha congruence failures", alpha_fail)
    ok = identity_fail == closed_fail == alpha_fail == 0
    out.row("verdict", _verdict(ok))
    return EXIT_OK if ok else EXIT_IDENTITY


def cmd_sample(args, out: Output) -> int:
    if args.count < 1:
        out.row("error", "--count must be at least 1")
        return EXIT_PARSE
    rng = check_random_state(args.seed)
    identity_fail = closed_fail = 0
    rows = []
    for case in range(1, args.count + 1):
        sigma = random_permutation(args.n, rng)
        l = centralizer_sample(sigma, rng)
        tm = TorusMonodromy(SignedPerm.from_perm(sigma), l)
        tr, agree = _check_pair(tm)
        identity_fail += not tr.passed
        closed_fail += not agree
        rows.append((case, sigma, format_signed_perm(l), tr.integral, tr.divisor, _verdict(tr.passed and agree)))
    out.table(("case", "m", "l", "integral", "divisor", "verdict"), rows, detail=True)
    out.row("n", args.n)
    out.row("seed", args.seed)
    out.row("cases", args.count)
    out.row("identity failures", identity_fail)
    out.row("closed-form failures", closed_fail)
    ok = identity_fail == closed_fail == 0
    out.row("verdict", _verdict(ok))
    return EXIT_OK if ok else EXIT_IDENTITY


def cmd_check_cover(args, out: Output) -> int:
    try:
        cp = read_cover(args.path)
    except OSError as exc:
        out.row("error", f"cannot read {args.path}: {exc.strerror or exc}")
        return EXIT_PARSE
    except CoverParseError as exc:
        out.row("error", exc)
        return EXIT_PARSE
    report = check_cover(cp)
    out.table(
        ("status", "check", "detail"),
        [(_verdict(c.passed), c.label, c.detail) for c in report.checks],
    )
    for i, tr in report.tori:
        mw, lw = cp.tori[i - 1]
        tm = TorusMonodromy.normalized(cp.evaluate(mw), cp.evaluate(lw))
        out.row(f"torus {i} components", detail=True)
        _torus_table(out, tm, tr, detail=True)
    out.row("integral sum", report.integral_sum)
    out.row("divisor sum", report.divisor_sum)
    out.row("exit", report.exit_code)
    return report.exit_code


def cmd_normal_form(args, out: Output) -> int:
    try:
        word = parse_word(args.word, args.n)
    except ValueError as exc:
        out.row("error", exc)
        return EXIT_PARSE
    nf = normal_form(word)
    g = evaluate_word(word)
    out.row("word", word)
    out.row("normal form", nf)
    out.row("element", "".join("1" if g.vec >> i & 1 else "0" for i in range(args.n)), g.central)
    return EXIT_OK


def _degree(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_DEGREE:
        raise argparse.ArgumentTypeError(f"degree must be in 1..{MAX_DEGREE}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "tsv"), default="plain", help="output layout (default plain)")
    common.add_argument("--quiet", action="store_true", help="omit per-case and per-component detail")

    parser = _Parser(
        prog="hyperoct",
        description="Verify the torus identity and branch-divisor vanishing for B_n monodromy.",
        epilog=(
            f"Caps: degree n <= {MAX_DEGREE}; exhaust n <= {EXHAUST_CAP}; "
            f"centralizer enumeration n <= {ENUMERATION_CAP}. "
            "Exit codes: 0 pass, 1 parse/usage error, 2 relator/commutation/hypothesis "
            "violation, 3 identity or global-sum failure."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-torus", parents=[common], help="check one (meridian, longitude) pair")
    p.add_argument("--n", type=_degree, required=True, help=f"degree, at most {MAX_DEGREE}")
    p.add_argument("--m", required=True, help="meridian literal, e.g. 'cycles:(1 2); signs:00'")
    p.add_argument("--l", required=True, help="longitude literal")
    p.set_defaults(func=cmd_verify_torus)

    p = sub.add_parser("exhaust", parents=[common], help=f"all m in S_n, l in C(m); n <= {EXHAUST_CAP}")
    p.add_argument("--n", type=_degree, required=True, help=f"degree, at most {EXHAUST_CAP}")
    p.set_defaults(func=cmd_exhaust)

    p = sub.add_parser("sample", parents=[common], help="seeded random commuting pairs")
    p.add_argument("--n", type=_degree, required=True, help=f"degree, at most {MAX_DEGREE}")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("check-cover", parents=[common], help="check a cover presentation file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_cover)

    p = sub.add_parser("normal-form", parents=[common], help="normal form of a word in x1..xn, eps")
    p.add_argument("--n", type=_degree, required=True)
    p.add_argument("--word", required=True, help="e.g. \"x2 x1 eps\"")
    p.set_defaults(func=cmd_normal_form)
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    out = Output(args.format, args.quiet)
    code = args.func(args, out)
    out.flush(stdout)
    return code


def main_entry() -> None:
    sys.exit(main())
