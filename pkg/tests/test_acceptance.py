"""Acceptance gate. Each test records one PASS/FAIL line, printed at the end of the run.

Exhaustive group-law checks build Cayley tables with the package's own
multiplication and then test every triple with numpy indexing.
"""

import io
import itertools
import math
import time
from importlib.resources import files
from pathlib import Path

import numpy as np
import pytest

from hyperoct.branched_cover import TorusMonodromy, alpha_pairing, verify_torus_identity
from hyperoct.central_extension import (
    GenWord,
    all_gn,
    all_hn,
    commutator,
    epsilon,
    evaluate_word,
    generator,
    gn_inv,
    gn_mul,
    hn_inv,
    hn_mul,
    lift,
    normal_form,
    unit,
)
from hyperoct.cli import main
from hyperoct.group_core import (
    SignedPerm,
    all_permutations,
    all_signed_perms,
    bn_mul,
    centralizer_sample,
    check_random_state,
    conjugate,
    random_permutation,
    random_signed_perm,
)
from hyperoct.pairing import phi, phi_closed_form

from oracles import brute_centralizer, commuting_pairs

SEED = 20261016
DATA = files("hyperoct") / "data"


def cayley_table(elements, mul):
    index = {g: i for i, g in enumerate(elements)}
    table = np.empty((len(elements), len(elements)), dtype=np.int64)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            table[i, j] = index[mul(g, h)]
    return table, index


def table_is_group(table, identity):
    """Exhaustive associativity, two-sided identity and inverses on a Cayley table."""
    n = len(table)
    r = np.arange(n)
    left = table[table[:, :, None], r[None, None, :]]   # (ab)c
    right = table[r[:, None, None], table[None, :, :]]  # a(bc)
    assoc = bool(np.array_equal(left, right))
    ident = bool(np.array_equal(table[identity], r) and np.array_equal(table[:, identity], r))
    inverses = bool(all((table[i] == identity).sum() == 1 and (table[:, i] == identity).sum() == 1 for i in r))
    return assoc and ident and inverses, n**3


def random_commuting_pair(rng, n):
    sigma = random_permutation(n, rng)
    tau = centralizer_sample(sigma, rng)
    g = random_signed_perm(n, rng)
    return conjugate(g, SignedPerm.from_perm(sigma)), conjugate(g, tau)


def test_c01_group_laws(criterion):
    with criterion(1, "group laws for H_n, G_n, B_n: exhaustive n=3 (<10 s), 10^4 random triples n=16") as c:
        start = time.perf_counter()
        n = 3
        triples = 0
        for elems, mul, one in [
            (list(all_hn(n)), hn_mul, unit(n)),
            (list(all_gn(n)), gn_mul, unit(n)),
            (list(all_signed_perms(n)), bn_mul, SignedPerm.identity(n)),
        ]:
            table, index = cayley_table(elems, mul)
            ok, count = table_is_group(table, index[one])
            assert ok
            triples += count
        elapsed = time.perf_counter() - start
        assert triples == 16**3 + 96**3 + 48**3
        assert elapsed < 10.0, f"exhaustive n=3 took {elapsed:.1f}s"

        rng = check_random_state(SEED)
        n = 16
        ident_h, ident_b = unit(n), SignedPerm.identity(n)
        for _ in range(10_000):
            a, b, d = (random_signed_perm(n, rng) for _ in range(3))
            assert bn_mul(bn_mul(a, b), d) == bn_mul(a, bn_mul(b, d))
            ga, gb, gd = (gn_mul(lift(x), epsilon(n)) if k else lift(x) for k, x in enumerate((a, b, d)))
            assert gn_mul(gn_mul(ga, gb), gd) == gn_mul(ga, gn_mul(gb, gd))
            assert gn_mul(ga, gn_inv(ga)) == ident_h == gn_mul(gn_inv(ga), ga)
            ha, hb, hd = (lift(SignedPerm.from_vector(n, x.signs)) for x in (a, b, d))
            assert hn_mul(hn_mul(ha, hb), hd) == hn_mul(ha, hn_mul(hb, hd))
            assert hn_mul(ha, hn_inv(ha)) == ident_h
            assert bn_mul(a, a.inverse()) == ident_b == bn_mul(a.inverse(), a)
            assert bn_mul(ident_b, a) == a == bn_mul(a, ident_b)
        c.note = f"{triples} exhaustive triples in {elapsed:.2f}s"


def test_c02_orders(criterion):
    with criterion(2, "|H_n| = 2^(n+1), |G_n| = 2^(n+1) n!, |B_n| = 2^n n! for n <= 4"):
        for n in range(1, 5):
            assert len(set(all_hn(n))) == 2 ** (n + 1)
            assert len(set(all_gn(n))) == 2 ** (n + 1) * math.factorial(n)
            assert len(set(all_signed_perms(n))) == 2**n * math.factorial(n)


def test_c03_relations(criterion):
    with criterion(3, "relations x_i^2 = eps^2 = 1, x_i x_j = eps x_j x_i, eps x_i = x_i eps for n <= 16"):
        for n in range(1, 17):
            one, eps = unit(n), epsilon(n)
            assert hn_mul(eps, eps) == one
            xs = [generator(n, i) for i in range(1, n + 1)]
            for i, x in enumerate(xs):
                assert hn_mul(x, x) == one
                assert hn_mul(eps, x) == hn_mul(x, eps)
                for j, y in enumerate(xs):
                    if i != j:
                        assert hn_mul(x, y) == hn_mul(eps, hn_mul(y, x))


def test_c04_lift_independence_and_symmetry(criterion):
    with criterion(4, "phi lift-independent and symmetric: all commuting pairs of B_3, 10^4 random n <= 16") as c:
        checked = 0
        pairs = list(commuting_pairs(list(all_signed_perms(3))))
        rng = check_random_state(SEED + 4)
        pairs += [random_commuting_pair(rng, int(rng.integers(1, 17))) for _ in range(10_000)]
        for g, h in pairs:
            eps = epsilon(g.n)
            values = {
                commutator(a, b)
                for a in (lift(g), gn_mul(eps, lift(g)))
                for b in (lift(h), gn_mul(eps, lift(h)))
            }
            assert len(values) == 1
            assert phi(g, h) == phi(h, g)
            checked += 1
        c.note = f"{checked} pairs"


def test_c05_bilinearity(criterion):
    with criterion(5, "phi is a homomorphism in each slot on C_{B_3}(sigma), exhaustive") as c:
        count = 0
        for sigma in all_signed_perms(3):
            cent = brute_centralizer(sigma, 3)
            values = {t: phi(sigma, t) for t in cent}
            for t1, t2 in itertools.product(cent, repeat=2):
                t12 = bn_mul(t1, t2)
                assert phi(sigma, t12) == values[t1] ^ values[t2]
                assert phi(t12, sigma) == phi(t1, sigma) ^ phi(t2, sigma)
                count += 1
        c.note = f"{count} triples"


def test_c06_closed_form(criterion):
    with criterion(6, "closed form equals commutator phi: exhaustive n <= 4, 10^4 random n <= 16") as c:
        count = 0
        for n in range(1, 5):
            for sigma in all_permutations(n):
                for tau in brute_centralizer(sigma, n):
                    assert phi_closed_form(sigma, tau) == phi(sigma, tau)
                    count += 1
        rng = check_random_state(SEED + 6)
        for _ in range(10_000):
            sigma = random_permutation(int(rng.integers(1, 17)), rng)
            tau = centralizer_sample(sigma, rng)
            assert phi_closed_form(sigma, tau) == phi(sigma, tau)
            count += 1
        c.note = f"{count} cases"


class _Sweep:
    def __init__(self):
        self.cases = 0
        self.identity_failures = 0
        self.components = 0
        self.alpha_failures = 0
        self.exhaustive_seconds = 0.0

    def check(self, tm):
        report = verify_torus_identity(tm)
        self.cases += 1
        self.identity_failures += not report.passed
        for comp in report.components:
            self.components += 1
            per_index = {alpha_pairing(tm, comp, k) for k in comp.index_set}
            if per_index != {comp.d % 2}:
                self.alpha_failures += 1


@pytest.fixture(scope="module")
def torus_sweep():
    exhaustive, randomized = _Sweep(), _Sweep()
    start = time.perf_counter()
    for n in range(1, 5):
        for sigma in all_permutations(n):
            m = SignedPerm.from_perm(sigma)
            for l in brute_centralizer(sigma, n):
                exhaustive.check(TorusMonodromy(m, l))
    exhaustive.exhaustive_seconds = time.perf_counter() - start

    rng = check_random_state(SEED + 7)
    for _ in range(100_000):
        sigma = random_permutation(int(rng.integers(5, 13)), rng)
        randomized.check(TorusMonodromy(SignedPerm.from_perm(sigma), centralizer_sample(sigma, rng)))
    return exhaustive, randomized


def test_c07_torus_identity(criterion, torus_sweep):
    exhaustive, randomized = torus_sweep
    with criterion(7, "per-torus identity: exhaustive n <= 4 (<1 min), 10^5 random 5 <= n <= 12") as c:
        assert exhaustive.identity_failures == 0
        assert exhaustive.exhaustive_seconds < 60
        assert randomized.cases == 100_000
        assert randomized.identity_failures == 0
        c.note = (
            f"{exhaustive.cases} exhaustive pairs in {exhaustive.exhaustive_seconds:.2f}s, "
            f"{randomized.cases} random"
        )


def test_c08_alpha_congruence(criterion, torus_sweep):
    exhaustive, randomized = torus_sweep
    with criterion(8, "alpha pairing = d mod 2 at every index of every component in suite 7") as c:
        assert exhaustive.alpha_failures == 0
        assert randomized.alpha_failures == 0
        c.note = f"{exhaustive.components + randomized.components} components"


def test_c09_normal_form(criterion):
    with criterion(9, "normal form round trip: 10^4 random words, length <= 50, n = 8"):
        n = 8
        rng = check_random_state(SEED + 9)
        by_element = {}
        for _ in range(10_000):
            length = int(rng.integers(0, 51))
            word = GenWord(n, tuple(int(t) for t in rng.integers(0, n + 1, size=length)))
            nf = normal_form(word)
            element = evaluate_word(word)
            assert nf.to_element(n) == element
            assert list(nf.indices) == sorted(set(nf.indices))
            by_element.setdefault(element, set()).add(nf)
        assert all(len(forms) == 1 for forms in by_element.values())
        # distinct elements never share a normal form
        all_forms = [f for forms in by_element.values() for f in forms]
        assert len(all_forms) == len(set(all_forms))


def _run(*argv):
    buf = io.StringIO()
    return main(list(argv), stdout=buf), buf.getvalue()


def test_c10_cli_golden(criterion):
    with criterion(10, "CLI: golden cover exits 0 with global pairing 0, violation fixtures exit 2, stable reports"):
        code, out = _run("check-cover", str(DATA / "trivial_double_cover.cover"), "--format", "tsv")
        assert code == 0
        assert "divisor sum\t0" in out.splitlines()
        code, out = _run("check-cover", str(DATA / "hopf_link.cover"), "--format", "tsv")
        assert code == 0 and "divisor sum\t0" in out.splitlines()
        assert _run("check-cover", str(DATA / "bad_relator.cover"))[0] == 2
        assert _run("check-cover", str(DATA / "branched_meridian.cover"))[0] == 2
        args = ("sample", "--n", "12", "--count", "300", "--seed", "7")
        first, second = _run(*args), _run(*args)
        assert first == second and first[0] == 0
        golden = Path(__file__).parent / "golden" / "sample_n6_seed7.txt"
        assert _run("sample", "--n", "6", "--count", "5", "--seed", "7")[1] == golden.read_text()
