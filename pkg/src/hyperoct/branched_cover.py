"""Boundary-torus monodromy of a branched cover and the branch-divisor check.

A torus around a branch component K carries a commuting pair (m, l) in B_n:
m the meridian (in S_n once the double cover is unbranched there), l the
longitude. Components of pi^{-1}(K) are the orbits of <l'> acting on the
cycles of m by conjugation.

For each torus two quantities are computed independently:

* the integral, phi(m, l), via commutators in G_n;
* sum over components of (e - 1) * <[K~], alpha>, where the pairing is read off
  an entry of v + l'(v) + ... + l'^{t-1}(v).

The class of the longitude curve projects to a[m] + t[l] for some integer a.
a is never computed: m^a only moves coordinates inside one cycle of m, and the
entries in question are constant on a component, so the parity ignores it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .group_core import Permutation, SignedPerm, act_on_mask, bn_mul, cycle_decomposition, is_commuting
from .pairing import CentralizerDecomposition, NonCommutingError, decompose, orbit_factorization, phi


class HypothesisViolation(ValueError):
    """The meridian cannot be conjugated into S_n: the alpha-cover branches there."""


def meridian_conjugator(m: SignedPerm) -> int:
    """Least u (as a bit string) with u + sigma(u) = w, for m = (w, sigma).

    Solvable iff w sums to zero on every cycle of sigma.
    """
    w = m.signs
    u = 0
    for cyc in cycle_decomposition(m.perm).cycles:
        if sum(w >> i & 1 for i in cyc) & 1:
            pts = " ".join(str(i + 1) for i in cyc)
            raise HypothesisViolation(
                f"alpha-cover branched over K~: meridian signs sum to 1 on cycle ({pts})"
            )
        # u = 0 at the cycle minimum, then (u + sigma.u)_{c[s+1]} = u_{c[s+1]} + u_{c[s]}
        prev = 0
        for i in cyc[1:]:
            bit = (w >> i & 1) ^ prev
            u |= bit << i
            prev = bit
    return u


@dataclass(frozen=True)
class TorusMonodromy:
    """Commuting pair (m, l) with m in S_n <= B_n."""

    m: SignedPerm
    l: SignedPerm

    def __post_init__(self):
        if self.m.n != self.l.n:
            raise ValueError(f"degree mismatch: {self.m.n} != {self.l.n}")
        if self.m.signs:
            raise HypothesisViolation(
                "meridian has a non-zero sign vector; use TorusMonodromy.normalized"
            )
        if not is_commuting(self.m, self.l):
            raise NonCommutingError("meridian and longitude do not commute")

    @property
    def n(self) -> int:
        return self.m.n

    @cached_property
    def decomposition(self) -> CentralizerDecomposition:
        """l = l' v against the cycles of m."""
        return decompose(self.m.perm, self.l)

    @classmethod
    def normalized(cls, m: SignedPerm, l: SignedPerm) -> TorusMonodromy:
        """Conjugate (m, l) by (u, id) so the meridian loses its signs."""
        if not is_commuting(m, l):
            raise NonCommutingError("meridian and longitude do not commute")
        u = meridian_conjugator(m)
        if not u:
            return cls(m, l)
        g = SignedPerm.from_vector(m.n, u)  # an involution
        return cls(bn_mul(bn_mul(g, m), g), bn_mul(bn_mul(g, l), g))


@dataclass(frozen=True)
class ComponentData:
    """One component K~ of pi^{-1}(K).

    ``orbit`` holds canonical cycle indices of m; ``index_set`` the points
    (0-based) they cover. ``d`` counts cycles in the orbit with lambda = 1.
    """

    orbit: tuple[int, ...]
    index_set: frozenset[int]
    e: int
    t: int
    d: int
    alpha: int


def _orbit_sum(tau_prime: Permutation, v: int, t: int) -> int:
    """v + l'(v) + ... + l'^{t-1}(v) as a bitmask."""
    total = 0
    term = v
    for _ in range(t):
        total ^= term
        term = act_on_mask(tau_prime.images, term)
    return total


def components(tm: TorusMonodromy) -> list[ComponentData]:
    dec = tm.decomposition
    fact = orbit_factorization(tm.m.perm, dec)
    cycles = dec.cycles.cycles
    v = dec.vector
    out = []
    for orbit, index in zip(fact.orbits, fact.index_sets):
        lengths = {len(cycles[r]) for r in orbit}
        assert len(lengths) == 1, "cycles in one <l'>-orbit must share a length"
        t = len(orbit)
        total = _orbit_sum(dec.tau_prime, v, t)
        out.append(
            ComponentData(
                orbit=orbit,
                index_set=index,
                e=lengths.pop(),
                t=t,
                d=sum(dec.lambdas[r] for r in orbit),
                alpha=total >> min(index) & 1,
            )
        )
    return out


def alpha_pairing(tm: TorusMonodromy, c: ComponentData, k: int | None = None) -> int:
    """<[K~], alpha> as the k-th entry of v + l'(v) + ... + l'^{t-1}(v).

    With ``k=None`` every index of the component is read and they must agree.
    ``k`` is 0-based.
    """
    dec = tm.decomposition
    total = _orbit_sum(dec.tau_prime, dec.vector, c.t)
    if k is not None:
        if k not in c.index_set:
            raise ValueError(f"index {k + 1} is not in this component")
        return total >> k & 1
    entries = {total >> i & 1 for i in c.index_set}
    if len(entries) != 1:
        raise AssertionError(f"alpha entries disagree across component {sorted(c.index_set)}")
    return entries.pop()


def torus_integral(tm: TorusMonodromy) -> int:
    """Integral of gamma over the torus: phi(m, l)."""
    return phi(tm.m, tm.l)


@dataclass(frozen=True)
class TorusReport:
    integral: int
    divisor: int
    components: tuple[ComponentData, ...]

    @property
    def passed(self) -> bool:
        return self.integral == self.divisor


def verify_torus_identity(tm: TorusMonodromy) -> TorusReport:
    comps = components(tm)
    divisor = sum((c.e - 1) * alpha_pairing(tm, c) for c in comps) & 1
    return TorusReport(torus_integral(tm), divisor, tuple(comps))


@dataclass(frozen=True)
class DivisorReport:
    """Branch divisor paired with alpha, summed over all tori."""

    divisor: int
    integral: int
    tori: tuple[TorusReport, ...]

    @property
    def per_torus_ok(self) -> bool:
        return all(r.passed for r in self.tori)

    @property
    def vanishes(self) -> bool:
        return self.divisor == 0


def branch_divisor_pairing(tori: Sequence[TorusMonodromy]) -> DivisorReport:
    reports = tuple(verify_torus_identity(tm) for tm in tori)
    return DivisorReport(
        divisor=sum(r.divisor for r in reports) & 1,
        integral=sum(r.integral for r in reports) & 1,
        tori=reports,
    )
