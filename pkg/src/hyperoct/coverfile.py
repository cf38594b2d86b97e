"""Cover presentation files.

Line-oriented, ``#`` starts a comment::

    n 2
    gen a = cycles:(1 2); signs:00
    rel a b a' b'
    torus a | b

Generator images are signed-permutation literals. Words multiply left to
right; a trailing ``'`` inverts a generator and ``1`` is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .branched_cover import (
    HypothesisViolation,
    TorusMonodromy,
    TorusReport,
    verify_torus_identity,
)
from .group_core import (
    DegreeError,
    LiteralSyntaxError,
    SignedPerm,
    bn_mul,
    format_signed_perm,
    is_commuting,
    parse_signed_perm,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VIOLATION = 2
EXIT_IDENTITY = 3

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class CoverParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, bool], ...]  # (generator, inverted)
    line: int

    def __str__(self) -> str:
        return " ".join(name + ("'" if inv else "") for name, inv in self.letters) or "1"


@dataclass
class CoverPresentation:
    n: int
    images: dict[str, SignedPerm] = field(default_factory=dict)
    relators: list[Word] = field(default_factory=list)
    tori: list[tuple[Word, Word]] = field(default_factory=list)

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(self.images)

    def evaluate(self, word: Word) -> SignedPerm:
        out = SignedPerm.identity(self.n)
        for name, inv in word.letters:
            g = self.images[name]
            out = bn_mul(out, g.inverse() if inv else g)
        return out


def _parse_word(text: str, line: int, column: int) -> Word:
    letters = []
    for match in re.finditer(r"\S+", text):
        tok = match.group()
        if tok == "1":
            continue
        name = tok.rstrip("'")
        primes = len(tok) - len(name)
        if not _NAME_RE.fullmatch(name):
            raise CoverParseError(f"bad generator token {tok!r}", line, column + match.start())
        letters.append((name, primes % 2 == 1))
    return Word(tuple(letters), line)


def parse_cover(text: str) -> CoverPresentation:
    n = None
    images: dict[str, SignedPerm] = {}
    relators: list[Word] = []
    tori: list[tuple[Word, Word]] = []
    word_columns: dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        rest_col = indent + len(keyword) + 2
        if keyword == "n":
            if n is not None:
                raise CoverParseError("degree declared twice", lineno, indent + 1)
            try:
                n = int(rest.strip())
            except ValueError:
                raise CoverParseError(f"expected an integer degree, got {rest.strip()!r}", lineno, rest_col) from None
            if not 1 <= n <= 64:
                raise CoverParseError(f"degree must be in 1..64, got {n}", lineno, rest_col)
            continue
        if n is None:
            raise CoverParseError("'n <int>' must come before other declarations", lineno, indent + 1)
        if keyword == "gen":
            name, eq, literal = rest.partition("=")
            name = name.strip()
            if not eq or not _NAME_RE.fullmatch(name):
                raise CoverParseError("expected 'gen <name> = <literal>'", lineno, rest_col)
            if name in images:
                raise CoverParseError(f"generator {name!r} defined twice", lineno, rest_col)
            lit_col = rest_col + len(rest) - len(literal)
            try:
                images[name] = parse_signed_perm(literal, n)
            except DegreeError as exc:
                raise CoverParseError(f"degree mismatch: {exc}", lineno, lit_col) from None
            except LiteralSyntaxError as exc:
                raise CoverParseError(str(exc), lineno, lit_col + (exc.column or 0)) from None
        elif keyword == "rel":
            relators.append(_parse_word(rest, lineno, rest_col))
            word_columns[lineno] = rest_col
        elif keyword == "torus":
            if rest.count("|") != 1:
                raise CoverParseError("expected 'torus <meridian word> | <longitude word>'", lineno, rest_col)
            left, right = rest.split("|")
            meridian = _parse_word(left, lineno, rest_col)
            longitude = _parse_word(right, lineno, rest_col + len(left) + 1)
            if not left.strip() or not right.strip():
                raise CoverParseError("torus words must be non-empty (write 1 for the identity)", lineno, rest_col)
            tori.append((meridian, longitude))
            word_columns[lineno] = rest_col
        else:
            raise CoverParseError(f"unknown keyword {keyword!r}", lineno, indent + 1)

    if n is None:
        raise CoverParseError("missing 'n <int>' declaration", 1)
    for word in relators + [w for pair in tori for w in pair]:
        for name, _ in word.letters:
            if name not in images:
                raise CoverParseError(f"unknown generator {name!r}", word.line, word_columns[word.line])
    return CoverPresentation(n, images, relators, tori)


def read_cover(path: str | Path) -> CoverPresentation:
    return parse_cover(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    detail: str
    exit_code: int  # code reported when this check fails


@dataclass
class CoverReport:
    checks: list[Check] = field(default_factory=list)
    tori: list[tuple[int, TorusReport]] = field(default_factory=list)
    integral_sum: int = 0
    divisor_sum: int = 0

    @property
    def exit_code(self) -> int:
        codes = {c.exit_code for c in self.checks if not c.passed}
        if EXIT_VIOLATION in codes:
            return EXIT_VIOLATION
        if codes:
            return EXIT_IDENTITY
        return EXIT_OK


def check_cover(cp: CoverPresentation) -> CoverReport:
    report = CoverReport()
    add = report.checks.append

    for i, rel in enumerate(cp.relators, start=1):
        value = cp.evaluate(rel)
        ok = value.is_identity()
        detail = "maps to unit" if ok else f"relator violation: evaluates to {format_signed_perm(value)}"
        add(Check(f"relator {i} [{rel}]", ok, detail, EXIT_VIOLATION))

    for i, (mw, lw) in enumerate(cp.tori, start=1):
        label = f"torus {i} [{mw} | {lw}]"
        m, l = cp.evaluate(mw), cp.evaluate(lw)
        if not is_commuting(m, l):
            add(Check(f"{label} commute", False, "meridian and longitude do not commute", EXIT_VIOLATION))
            continue
        add(Check(f"{label} commute", True, "meridian and longitude commute", EXIT_VIOLATION))
        try:
            tm = TorusMonodromy.normalized(m, l)
        except HypothesisViolation as exc:
            add(Check(f"{label} meridian", False, f"hypothesis violated: {exc}", EXIT_VIOLATION))
            continue
        note = "in S_n" if not m.signs else f"conjugated into S_n, l -> {format_signed_perm(tm.l)}"
        add(Check(f"{label} meridian", True, note, EXIT_VIOLATION))
        tr = verify_torus_identity(tm)
        report.tori.append((i, tr))
        add(Check(f"{label} identity", tr.passed, f"integral {tr.integral}, divisor {tr.divisor}", EXIT_IDENTITY))

    report.integral_sum = sum(tr.integral for _, tr in report.tori) & 1
    report.divisor_sum = sum(tr.divisor for _, tr in report.tori) & 1
    add(Check(
        "global integral sum",
        report.integral_sum == 0,
        f"sum of torus integrals = {report.integral_sum}",
        EXIT_IDENTITY,
    ))
    add(Check(
        "global branch divisor",
        report.divisor_sum == 0,
        f"branch divisor paired with alpha = {report.divisor_sum}",
        EXIT_IDENTITY,
    ))
    return report
