"""The extension H_n of (Z/2)^n by Z/2, and G_n = H_n x| S_n over B_n.

H_n is pairs (a, b) with

    (a1, b1)(a2, b2) = (a1 + a2, b1 + b2 + sum_{i<j} a1_i a2_j).

S_n acts on H_n through sigma(x_i) = x_{sigma(i)}. On pairs this is *not*
plain coordinate permutation: writing (a, b) = x_{i_1}...x_{i_k} eps^delta
with ascending indices, the image x_{sigma(i_1)}...x_{sigma(i_k)} has to be
re-sorted, and every transposition costs one eps. So

    sigma(a, b) = (sigma.a, b + #inversions of sigma on supp(a)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .group_core import (
    DegreeError,
    Permutation,
    SignedPerm,
    _same_degree,
    _trusted_perm,
    act_on_mask,
    all_permutations,
    mask_bits,
)

EPS = 0  # token for eps in a GenWord; positive tokens i stand for x_i


def cross_parity(a1: int, a2: int) -> int:
    """sum_{i<j} a1_i a2_j mod 2."""
    parity = 0
    while a1:
        low = a1 & -a1
        i = low.bit_length() - 1
        parity ^= (a2 >> (i + 1)).bit_count() & 1
        a1 ^= low
    return parity


def inversion_parity(images: Sequence[int], mask: int) -> int:
    """Parity of #{i<j in supp(mask) : images[i] > images[j]}."""
    targets = [images[i] for i in mask_bits(mask)]
    parity = 0
    for p, ti in enumerate(targets):
        for tj in targets[p + 1:]:
            if ti > tj:
                parity ^= 1
    return parity


class NotInHnError(ValueError):
    """An H_n operation got an element with non-trivial permutation part."""


@dataclass(frozen=True, slots=True)
class ExtElement:
    """(vec, central, perm) in G_n; elements with perm = id form H_n."""

    vec: int
    central: int
    perm: Permutation

    def __post_init__(self):
        if self.vec < 0 or self.vec >> self.perm.n:
            raise DegreeError(f"vector mask {self.vec:#x} wider than degree {self.perm.n}")
        if self.central not in (0, 1):
            raise ValueError("central part must be 0 or 1")

    @property
    def n(self) -> int:
        return self.perm.n

    def in_hn(self) -> bool:
        return self.perm.is_identity()

    def __mul__(self, other: ExtElement) -> ExtElement:
        return gn_mul(self, other)

    def inverse(self) -> ExtElement:
        return gn_inv(self)

    def is_identity(self) -> bool:
        return self.vec == 0 and self.central == 0 and self.perm.is_identity()


def unit(n: int) -> ExtElement:
    return ExtElement(0, 0, Permutation.identity(n))


def epsilon(n: int) -> ExtElement:
    return ExtElement(0, 1, Permutation.identity(n))


def generator(n: int, i: int) -> ExtElement:
    """x_i = (e_i, 0) for 1-based i."""
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} outside 1..{n}")
    return ExtElement(1 << (i - 1), 0, Permutation.identity(n))


def perm_element(perm: Permutation) -> ExtElement:
    return ExtElement(0, 0, perm)


def act(perm: Permutation, g: ExtElement) -> ExtElement:
    """The automorphism of H_n induced by x_i -> x_{perm(i)}."""
    images = perm.images
    return ExtElement(
        act_on_mask(images, g.vec),
        g.central ^ inversion_parity(images, g.vec),
        g.perm,
    )


def _require_hn(*gs: ExtElement) -> None:
    for g in gs:
        if not g.in_hn():
            raise NotInHnError(f"element has permutation part {g.perm}, not in H_n")


def hn_mul(g: ExtElement, h: ExtElement) -> ExtElement:
    _same_degree(g.n, h.n)
    _require_hn(g, h)
    return ExtElement(g.vec ^ h.vec, g.central ^ h.central ^ cross_parity(g.vec, h.vec), g.perm)


def hn_inv(g: ExtElement) -> ExtElement:
    _require_hn(g)
    k = g.vec.bit_count()
    return ExtElement(g.vec, g.central ^ (k * (k - 1) // 2 & 1), g.perm)


def gn_mul(g: ExtElement, h: ExtElement) -> ExtElement:
    """(h1, s1)(h2, s2) = (h1 . s1(h2), s1 s2)."""
    _same_degree(g.n, h.n)
    gi = g.perm.images
    moved = act_on_mask(gi, h.vec)
    central = g.central ^ h.central ^ inversion_parity(gi, h.vec) ^ cross_parity(g.vec, moved)
    return ExtElement(g.vec ^ moved, central, _trusted_perm(tuple(gi[j] for j in h.perm.images)))


def gn_inv(g: ExtElement) -> ExtElement:
    """(h, s)^-1 = (s^-1(h^-1), s^-1)."""
    inv = g.perm.inverse()
    k = g.vec.bit_count()
    h_inv_central = g.central ^ (k * (k - 1) // 2 & 1)
    return ExtElement(
        act_on_mask(inv.images, g.vec),
        h_inv_central ^ inversion_parity(inv.images, g.vec),
        inv,
    )


def commutator(g: ExtElement, h: ExtElement) -> ExtElement:
    """g h g^-1 h^-1."""
    return gn_mul(gn_mul(g, h), gn_mul(gn_inv(g), gn_inv(h)))


def lift(g: SignedPerm) -> ExtElement:
    """Normalized section (a, sigma) -> (a, 0, sigma)."""
    return ExtElement(g.signs, 0, g.perm)


def project(g: ExtElement) -> SignedPerm:
    return SignedPerm(g.vec, g.perm)


def cocycle(g: SignedPerm, h: SignedPerm) -> int:
    """c(g, h) with lift(g) lift(h) = eps^c lift(gh)."""
    _same_degree(g.n, h.n)
    return gn_mul(lift(g), lift(h)).central


def all_hn(n: int) -> Iterator[ExtElement]:
    ident = Permutation.identity(n)
    for b in (0, 1):
        for a in range(1 << n):
            yield ExtElement(a, b, ident)


def all_gn(n: int) -> Iterator[ExtElement]:
    perms = list(all_permutations(n))
    for b in (0, 1):
        for a in range(1 << n):
            for p in perms:
                yield ExtElement(a, b, p)


# generator words


@dataclass(frozen=True)
class GenWord:
    """Word over x_1..x_n (tokens 1..n) and eps (token ``EPS``)."""

    n: int
    tokens: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for t in self.tokens:
            if not 0 <= t <= self.n:
                raise ValueError(f"generator index {t} outside 1..{self.n}")

    def __str__(self) -> str:
        return " ".join("eps" if t == EPS else f"x{t}" for t in self.tokens) or "1"


@dataclass(frozen=True)
class NormalForm:
    """x_{i_1} ... x_{i_k} eps^delta with i_1 < ... < i_k (1-based)."""

    indices: tuple[int, ...]
    delta: int

    def to_element(self, n: int) -> ExtElement:
        mask = 0
        for i in self.indices:
            mask |= 1 << (i - 1)
        k = len(self.indices)
        # an ascending product of k distinct x's carries C(k, 2) eps
        return ExtElement(mask, (k * (k - 1) // 2 + self.delta) & 1, Permutation.identity(n))

    def __str__(self) -> str:
        parts = [f"x{i}" for i in self.indices]
        if self.delta:
            parts.append("eps")
        return " ".join(parts) or "1"


_TOKEN_RE = re.compile(r"^(?:x(\d+)|(eps))('*)$")


def parse_word(text: str, n: int) -> GenWord:
    """Parse whitespace-separated ``x3`` / ``eps`` tokens.

    A trailing ``'`` marks an inverse; every generator is an involution, so
    it is dropped.
    """
    tokens = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ValueError(f"bad token {tok!r}: expected x<i> or eps")
        if m.group(2):
            tokens.append(EPS)
        else:
            i = int(m.group(1))
            if not 1 <= i <= n:
                raise ValueError(f"token {tok!r} outside x1..x{n}")
            tokens.append(i)
    return GenWord(n, tuple(tokens))


def evaluate_word(word: GenWord | Iterable[int], n: int | None = None) -> ExtElement:
    """Multiply the word out in H_n, left to right."""
    if isinstance(word, GenWord):
        n, tokens = word.n, word.tokens
    else:
        tokens = tuple(word)
    out = unit(n)
    eps = epsilon(n)
    for t in tokens:
        out = hn_mul(out, eps if t == EPS else generator(n, t))
    return out


def _sort_count(seq: list[int]) -> tuple[list[int], int]:
    """Stable merge sort returning (sorted, #inversions)."""
    if len(seq) <= 1:
        return seq, 0
    mid = len(seq) // 2
    left, inv_l = _sort_count(seq[:mid])
    right, inv_r = _sort_count(seq[mid:])
    merged = []
    inv = inv_l + inv_r
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j] < left[i]:
            merged.append(right[j])
            inv += len(left) - i
            j += 1
        else:
            merged.append(left[i])
            i += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, inv


def normal_form(word: GenWord) -> NormalForm:
    """Canonical form of a word, without literal rewriting.

    Sorting the x-tokens stably costs one eps per transposition of distinct
    letters (x_i x_j = eps x_j x_i); equal letters are never swapped and then
    cancel in pairs (x_i^2 = 1). Every eps token moves freely and counts once.
    """
    xs = [t for t in word.tokens if t != EPS]
    delta = len(word.tokens) - len(xs)
    ordered, inversions = _sort_count(xs)
    delta += inversions
    indices = []
    for i in ordered:
        if indices and indices[-1] == i:
            indices.pop()
        else:
            indices.append(i)
    return NormalForm(tuple(indices), delta & 1)
