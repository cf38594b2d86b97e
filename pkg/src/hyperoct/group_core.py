"""Symmetric groups S_n and hyperoctahedral groups B_n = (Z/2)^n x| S_n.

Points are 0-based internally. Cycle notation and the signed-permutation
literal syntax are 1-based; conversion happens only in the parse/format
helpers at the bottom of this module.

Sign vectors are stored as int bitmasks (bit i = coordinate i+1), which caps
the degree at ``MAX_DEGREE``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

MAX_DEGREE = 64
# centralizer_enumerate refuses degrees above this (|B_6| = 46080)
ENUMERATION_CAP = 6


class DegreeError(ValueError):
    """Degrees of the operands disagree or exceed a cap."""


class LiteralSyntaxError(ValueError):
    """Malformed signed-permutation literal."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


def _check_degree(n: int) -> None:
    if not 1 <= n <= MAX_DEGREE:
        raise DegreeError(f"degree must be in 1..{MAX_DEGREE}, got {n}")


def _same_degree(a: int, b: int) -> None:
    if a != b:
        raise DegreeError(f"degree mismatch: {a} != {b}")


def act_on_mask(images: Sequence[int], mask: int) -> int:
    """Permute coordinates: bit i of ``mask`` moves to bit images[i]."""
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << images[low.bit_length() - 1]
        mask ^= low
    return out


def mask_bits(mask: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _trusted_perm(images: tuple[int, ...]) -> Permutation:
    """Build a Permutation from an image table already known to be valid."""
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {0..n-1}, stored as its image table."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        _check_degree(len(images))
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
        """Build from 1-based disjoint cycles; omitted points are fixed."""
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for i in cyc:
                if not 1 <= i <= n:
                    raise ValueError(f"point {i} outside 1..{n}")
                if i in seen:
                    raise ValueError(f"point {i} appears twice")
                seen.add(i)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a - 1] = b - 1
        return cls(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return perm_compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return _trusted_perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def power(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self) -> str:
        cycles = [c for c in cycle_decomposition(self).cycles if len(c) > 1]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


@dataclass(frozen=True, slots=True)
class SignedPerm:
    """Element (a, sigma) of B_n with a in (Z/2)^n as a bitmask.

    Product: (a1, s1)(a2, s2) = (a1 + s1.a2, s1 s2), where s.a sends
    coordinate i to coordinate s(i).
    """

    signs: int
    perm: Permutation

    def __post_init__(self):
        if self.signs < 0 or self.signs >> self.perm.n:
            raise DegreeError(f"sign mask {self.signs:#x} wider than degree {self.perm.n}")

    @property
    def n(self) -> int:
        return self.perm.n

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(0, Permutation.identity(n))

    @classmethod
    def from_perm(cls, perm: Permutation) -> SignedPerm:
        return cls(0, perm)

    @classmethod
    def from_vector(cls, n: int, mask: int) -> SignedPerm:
        return cls(mask, Permutation.identity(n))

    @classmethod
    def unit_vector(cls, n: int, i: int) -> SignedPerm:
        """e_i for 1-based i."""
        return cls.from_vector(n, 1 << (i - 1))

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        return bn_mul(self, other)

    def inverse(self) -> SignedPerm:
        inv = self.perm.inverse()
        return SignedPerm(act_on_mask(inv.images, self.signs), inv)

    def is_identity(self) -> bool:
        return self.signs == 0 and self.perm.is_identity()

    def sign_bits(self) -> str:
        """The sign vector as a bit string, coordinate 1 first."""
        return "".join("1" if self.signs >> i & 1 else "0" for i in range(self.n))

    def __str__(self) -> str:
        return format_signed_perm(self)


@dataclass(frozen=True)
class CycleDecomposition:
    """Canonical disjoint-cycle decomposition, fixed points included.

    Each cycle starts at its smallest point, cycles sorted by that point.
    Points are 0-based; ``str()`` gives 1-based notation.
    """

    cycles: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    def cycle_of(self) -> list[int]:
        """Map each point to the index of the cycle containing it."""
        owner = [0] * sum(self.lengths)
        for r, cyc in enumerate(self.cycles):
            for i in cyc:
                owner[i] = r
        return owner

    def one_based(self) -> list[tuple[int, ...]]:
        return [tuple(i + 1 for i in c) for c in self.cycles]

    def to_permutation(self) -> Permutation:
        return Permutation.from_cycles(sum(self.lengths), self.one_based())

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.one_based())


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """p o q, i.e. i -> p(q(i))."""
    _same_degree(p.n, q.n)
    pi = p.images
    return _trusted_perm(tuple(pi[j] for j in q.images))


def bn_mul(g: SignedPerm, h: SignedPerm) -> SignedPerm:
    _same_degree(g.n, h.n)
    gi = g.perm.images
    return SignedPerm(
        g.signs ^ act_on_mask(gi, h.signs),
        _trusted_perm(tuple(gi[j] for j in h.perm.images)),
    )


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    seen = [False] * p.n
    cycles = []
    # scanning points in order makes each cycle start at its minimum
    for start in range(p.n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p.images[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p.images[j]
        cycles.append(tuple(cyc))
    return CycleDecomposition(tuple(cycles))


def is_commuting(g: SignedPerm, h: SignedPerm) -> bool:
    return bn_mul(g, h) == bn_mul(h, g)


def conjugate(g: SignedPerm, x: SignedPerm) -> SignedPerm:
    """g x g^-1."""
    return bn_mul(bn_mul(g, x), g.inverse())


def check_random_state(seed: int | np.random.Generator | None) -> np.random.Generator:
    """Turn a seed into a counter-based (Philox) generator.

    Generators pass through unchanged, so callers can share one stream.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def _cycles_by_length(dec: CycleDecomposition) -> dict[int, list[tuple[int, ...]]]:
    groups: dict[int, list[tuple[int, ...]]] = {}
    for cyc in dec.cycles:
        groups.setdefault(len(cyc), []).append(cyc)
    return groups


def _centralizer_perm(n, groups, arrangement, rotations) -> Permutation:
    """Element of C_{S_n}(sigma) sending cycle c to arrangement[c], rotated.

    Point s of a cycle goes to point s + rot of its target cycle.
    """
    images = [0] * n
    for length, cycles in groups.items():
        targets = arrangement[length]
        rots = rotations[length]
        for cyc, tgt, rot in zip(cycles, targets, rots):
            dst = cycles[tgt]
            for s, i in enumerate(cyc):
                images[i] = dst[(s + rot) % length]
    return Permutation(tuple(images))


def _vector_from_lambdas(dec: CycleDecomposition, lambdas: Sequence[int]) -> int:
    mask = 0
    for lam, cyc in zip(lambdas, dec.cycles):
        if lam:
            for i in cyc:
                mask |= 1 << i
    return mask


def centralizer_sample(sigma: Permutation, seed: int | np.random.Generator | None = None) -> SignedPerm:
    """Uniform random element tau = tau' v of C_{B_n}(sigma).

    tau' permutes equal-length cycles of sigma and rotates each; v is constant
    on every cycle of sigma.
    """
    rng = check_random_state(seed)
    dec = cycle_decomposition(sigma)
    groups = _cycles_by_length(dec)
    arrangement = {}
    rotations = {}
    for length in sorted(groups):
        k = len(groups[length])
        arrangement[length] = [int(t) for t in rng.permutation(k)]
        rotations[length] = [int(r) for r in rng.integers(0, length, size=k)]
    tau_prime = _centralizer_perm(sigma.n, groups, arrangement, rotations)
    lambdas = rng.integers(0, 2, size=len(dec.cycles))
    v = _vector_from_lambdas(dec, lambdas)
    return SignedPerm(act_on_mask(tau_prime.images, v), tau_prime)


def centralizer_order(sigma: Permutation) -> int:
    """|C_{B_n}(sigma)| = 2^j * prod_d (d^k_d k_d!)."""
    groups = _cycles_by_length(cycle_decomposition(sigma))
    order = 2 ** sum(len(c) for c in groups.values())
    for length, cycles in groups.items():
        order *= length ** len(cycles) * math.factorial(len(cycles))
    return order


def centralizer_enumerate(sigma: Permutation) -> Iterator[SignedPerm]:
    """Every element of C_{B_n}(sigma), each exactly once."""
    if sigma.n > ENUMERATION_CAP:
        raise DegreeError(f"centralizer enumeration capped at n <= {ENUMERATION_CAP}, got {sigma.n}")
    dec = cycle_decomposition(sigma)
    groups = _cycles_by_length(dec)
    lengths = sorted(groups)
    arrangement_choices = [list(itertools.permutations(range(len(groups[d])))) for d in lengths]
    rotation_choices = [list(itertools.product(range(d), repeat=len(groups[d]))) for d in lengths]
    vectors = [_vector_from_lambdas(dec, lam) for lam in itertools.product((0, 1), repeat=len(dec.cycles))]
    for arrs in itertools.product(*arrangement_choices):
        for rots in itertools.product(*rotation_choices):
            tau_prime = _centralizer_perm(sigma.n, groups, dict(zip(lengths, arrs)), dict(zip(lengths, rots)))
            for v in vectors:
                yield SignedPerm(act_on_mask(tau_prime.images, v), tau_prime)


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(n)):
        yield Permutation(images)


def all_signed_perms(n: int) -> Iterator[SignedPerm]:
    perms = list(all_permutations(n))
    for signs in range(1 << n):
        for p in perms:
            yield SignedPerm(signs, p)


def random_permutation(n: int, seed: int | np.random.Generator | None = None) -> Permutation:
    rng = check_random_state(seed)
    return Permutation(tuple(int(i) for i in rng.permutation(n)))


def random_signed_perm(n: int, seed: int | np.random.Generator | None = None) -> SignedPerm:
    rng = check_random_state(seed)
    bits = rng.integers(0, 2, size=n)
    mask = sum(1 << i for i, b in enumerate(bits) if b)
    return SignedPerm(mask, random_permutation(n, rng))


# literal syntax: `cycles:(1 2)(4 5); signs:01010`

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse 1-based cycle notation such as ``(1 2)(4 5)`` or ``()``."""
    body = text.strip()
    pos = 0
    cycles = []
    for match in _CYCLE_RE.finditer(body):
        if body[pos:match.start()].strip():
            raise LiteralSyntaxError(f"unexpected text {body[pos:match.start()]!r} in cycles", pos)
        inner = match.group(1).replace(",", " ").split()
        try:
            cyc = [int(tok) for tok in inner]
        except ValueError:
            raise LiteralSyntaxError(f"non-integer point in cycle ({match.group(1)})", match.start()) from None
        if cyc:
            cycles.append(cyc)
        pos = match.end()
    if body[pos:].strip() or (not body and n):
        raise LiteralSyntaxError(f"malformed cycle notation {text!r}", pos)
    try:
        return Permutation.from_cycles(n, cycles)
    except ValueError as exc:
        raise LiteralSyntaxError(str(exc)) from None


def parse_signs(text: str, n: int) -> int:
    bits = text.strip()
    if len(bits) != n:
        raise DegreeError(f"signs string has length {len(bits)}, expected {n}")
    if set(bits) - {"0", "1"}:
        raise LiteralSyntaxError(f"signs must be a 0/1 string, got {bits!r}")
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


def parse_signed_perm(text: str, n: int) -> SignedPerm:
    """Parse ``cycles:(...); signs:<bits>``.

    Either field may be omitted (identity permutation, zero signs).
    """
    _check_degree(n)
    perm = Permutation.identity(n)
    signs = 0
    seen = set()
    offset = 0
    for part in text.split(";"):
        stripped = part.strip()
        if not stripped:
            offset += len(part) + 1
            continue
        key, sep, value = stripped.partition(":")
        key = key.strip()
        if not sep or key not in ("cycles", "signs"):
            raise LiteralSyntaxError(f"expected 'cycles:' or 'signs:', got {stripped!r}", offset)
        if key in seen:
            raise LiteralSyntaxError(f"duplicate field {key!r}", offset)
        seen.add(key)
        if key == "cycles":
            perm = parse_permutation(value, n)
        else:
            signs = parse_signs(value, n)
        offset += len(part) + 1
    if not seen:
        raise LiteralSyntaxError("empty signed-permutation literal", 0)
    return SignedPerm(signs, perm)


def format_signed_perm(g: SignedPerm) -> str:
    return f"cycles:{g.perm}; signs:{g.sign_bits()}"
