"""The commutator pairing phi on commuting pairs of B_n.

``phi`` goes through the extension G_n directly. ``phi_closed_form`` never
touches G_n: it decomposes tau = tau' v against the cycles of sigma and sums
lambda_r (d_r - 1). The two are compared in the tests, so neither may be
written in terms of the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .central_extension import commutator, lift
from .group_core import (
    CycleDecomposition,
    Permutation,
    SignedPerm,
    _same_degree,
    act_on_mask,
    bn_mul,
    cycle_decomposition,
    is_commuting,
)


class NonCommutingError(ValueError):
    """phi and the decompositions are only defined on commuting pairs."""


@dataclass(frozen=True)
class CentralizerDecomposition:
    """tau = tau' v, v = sum_r lambda_r (indicator of cycle C_r of sigma)."""

    cycles: CycleDecomposition
    tau_prime: Permutation
    lambdas: tuple[int, ...]

    @property
    def vector(self) -> int:
        mask = 0
        for lam, cyc in zip(self.lambdas, self.cycles.cycles):
            if lam:
                for i in cyc:
                    mask |= 1 << i
        return mask

    def reassemble(self) -> SignedPerm:
        return bn_mul(SignedPerm.from_perm(self.tau_prime), SignedPerm.from_vector(self.tau_prime.n, self.vector))


@dataclass(frozen=True)
class OrbitFactorization:
    """Orbits O_y of <tau'> on the cycles of sigma, and tau = prod_y tau'_y v_y."""

    orbits: tuple[tuple[int, ...], ...]
    index_sets: tuple[frozenset[int], ...]
    factors: tuple[SignedPerm, ...]

    @property
    def z(self) -> int:
        return len(self.orbits)

    def product(self) -> SignedPerm:
        out = SignedPerm.identity(self.factors[0].n)
        for f in self.factors:
            out = bn_mul(out, f)
        return out


def _as_signed(sigma: Permutation | SignedPerm) -> SignedPerm:
    return sigma if isinstance(sigma, SignedPerm) else SignedPerm.from_perm(sigma)


def phi(sigma: Permutation | SignedPerm, tau: SignedPerm) -> int:
    """eps-exponent of [lift(sigma), lift(tau)] in G_n."""
    sigma = _as_signed(sigma)
    _same_degree(sigma.n, tau.n)
    if not is_commuting(sigma, tau):
        raise NonCommutingError(f"{sigma} and {tau} do not commute")
    comm = commutator(lift(sigma), lift(tau))
    assert comm.vec == 0 and comm.perm.is_identity(), "commutator of commuting lifts left the centre"
    return comm.central


def decompose(sigma: Permutation, tau: SignedPerm) -> CentralizerDecomposition:
    """The unique tau' in C_{S_n}(sigma) and lambdas with tau = tau' v."""
    _same_degree(sigma.n, tau.n)
    if not is_commuting(SignedPerm.from_perm(sigma), tau):
        raise NonCommutingError(f"{tau} does not commute with {sigma}")
    dec = cycle_decomposition(sigma)
    tau_prime = tau.perm
    # (tau', 0)(v, id) = (tau'.v, tau'), so v = tau'^-1 . signs
    v = act_on_mask(tau_prime.inverse().images, tau.signs)
    lambdas = tuple(v >> cyc[0] & 1 for cyc in dec.cycles)
    return CentralizerDecomposition(dec, tau_prime, lambdas)


def phi_closed_form(sigma: Permutation, tau: SignedPerm) -> int:
    """sum_r lambda_r (d_r - 1) mod 2."""
    dec = decompose(sigma, tau)
    return sum(lam * (len(cyc) - 1) for lam, cyc in zip(dec.lambdas, dec.cycles.cycles)) & 1


def phi_acycle(sigma: Permutation, tau: SignedPerm) -> int:
    """phi for a single k-cycle against the indicator of its support: k - 1."""
    _same_degree(sigma.n, tau.n)
    if not tau.perm.is_identity() or not tau.signs:
        raise ValueError("tau must be a non-zero vector")
    # a 1-cycle is only visible through tau's support
    dec = cycle_decomposition(sigma)
    cycle = dec.cycles[dec.cycle_of()[(tau.signs & -tau.signs).bit_length() - 1]]
    if any(len(c) > 1 for c in dec.cycles if c != cycle):
        raise ValueError(f"{sigma} is not a single cycle")
    if tau.signs != sum(1 << i for i in cycle):
        raise ValueError("tau must be the indicator vector of the cycle's support")
    return (len(cycle) - 1) & 1


def orbit_factorization(sigma: Permutation, dec: CentralizerDecomposition) -> OrbitFactorization:
    n = sigma.n
    cycles = dec.cycles.cycles
    owner = dec.cycles.cycle_of()
    tp = dec.tau_prime.images
    # tau' C tau'^-1 is the cycle through tau'(i) for any i in C
    parent = list(range(len(cycles)))

    def find(r: int) -> int:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for r, cyc in enumerate(cycles):
        a, b = find(r), find(owner[tp[cyc[0]]])
        if a != b:
            parent[max(a, b)] = min(a, b)

    groups: dict[int, list[int]] = {}
    for r in range(len(cycles)):
        groups.setdefault(find(r), []).append(r)
    # cycles are sorted by minimum point, so the root order is the order of min(I_y)
    orbits = tuple(tuple(groups[root]) for root in sorted(groups))

    v = dec.vector
    index_sets = []
    factors = []
    for orbit in orbits:
        index = frozenset(i for r in orbit for i in cycles[r])
        images = list(range(n))
        v_y = 0
        for i in index:
            images[i] = tp[i]
            v_y |= v & (1 << i)
        tp_y = Permutation(tuple(images))
        index_sets.append(index)
        factors.append(SignedPerm(act_on_mask(tp_y.images, v_y), tp_y))
    return OrbitFactorization(orbits, tuple(index_sets), tuple(factors))
