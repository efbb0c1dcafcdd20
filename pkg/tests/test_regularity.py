import itertools

import numpy as np
import pytest

from polymorph import BooleanFunction, PreconditionError, make_named
from polymorph.boolfn import Restriction, noise_stability, restrict
from polymorph.regularity import (
    RegularityConfig,
    RestrictionTree,
    jones_decision_tree,
    jones_junta,
    jones_step_identity_check,
    noisy_to_lowdegree,
    regularity_check,
    restriction_variance_profile,
    stability_potential,
    tree_regular_fraction,
)
from polymorph.reproduce import _xor_tribes

from conftest import random_function


def kernel_stability(f: BooleanFunction, rho: float, p: float) -> float:
    """E[f(x) f(y)]: x ~ mu_p, each y_i copies x_i w.p. rho, else is redrawn from mu_p."""
    n = f.arity
    pts = list(itertools.product((0, 1), repeat=n))
    mu = lambda b: p if b else 1 - p
    pm = f.pm
    total = 0.0
    for ix, x in enumerate(pts):
        px = np.prod([mu(b) for b in x])
        for iy, y in enumerate(pts):
            k = np.prod([rho * (a == b) + (1 - rho) * mu(b) for a, b in zip(x, y)])
            # pts enumerate coordinate 1 last; table index has coordinate 1 as the LSB
            total += px * k * pm[int("".join(map(str, x)), 2)] * pm[int("".join(map(str, y)), 2)]
    return total


def reversed_bits(f: BooleanFunction) -> BooleanFunction:
    n = f.arity
    idx = np.arange(1 << n)
    rev = sum(((idx >> k) & 1) << (n - 1 - k) for k in range(n))
    return BooleanFunction(n, f.table[rev])


def flip_influence(f: BooleanFunction, i: int) -> float:
    idx = np.arange(1 << f.arity)
    return float(np.mean(f.table != f.table[idx ^ (1 << (i - 1))]))


class TestConfig:
    @pytest.mark.parametrize("kw", [{"d": 0}, {"tau": 0}, {"delta": 1.0}, {"epsilon": 0}, {"biases": ()}, {"biases": (1.0,)}])
    def test_invalid(self, kw):
        with pytest.raises(PreconditionError):
            RegularityConfig(**kw)

    def test_round_bound(self):
        cfg = RegularityConfig(tau=0.1, delta=0.5, epsilon=0.1, biases=(0.5, 0.25))
        assert cfg.round_bound == pytest.approx(2 / 0.005)


def test_kernel_oracle_matches_fourier():
    rng = np.random.default_rng(0)
    for _ in range(5):
        f = random_function(rng, 3)
        for rho, p in [(0.5, 0.5), (0.3, 0.25), (0.8, 0.7)]:
            g = reversed_bits(f)  # kernel oracle reads coordinate 1 as the MSB
            assert noise_stability(f, rho, p) == pytest.approx(kernel_stability(g, rho, p), abs=1e-12)


class TestRegularityCheck:
    def test_constant(self):
        r = regularity_check(BooleanFunction.constant(4, 1), RegularityConfig(tau=1e-9))
        assert r.regular

    def test_dictator(self):
        r = regularity_check(make_named("dictator", 3, index=1), RegularityConfig(d=1, tau=0.5))
        assert not r.regular and r.coordinate == 1 and r.value == pytest.approx(1.0)

    def test_maj9(self):
        f = make_named("majority", 9)
        r = regularity_check(f, RegularityConfig(d=2, tau=0.3))
        assert r.regular
        # low-degree influence never exceeds the flip influence C(8,4)/2^8
        assert r.value <= flip_influence(f, 1) == pytest.approx(70 / 256)

    def test_bad_mode(self, and2):
        with pytest.raises(PreconditionError):
            regularity_check(and2, RegularityConfig(), mode="other")


class TestNoisyToLowDegree:
    def test_d2(self):
        cfg = noisy_to_lowdegree(RegularityConfig(d=2, tau=0.1))
        assert cfg.delta == 0.5 and cfg.tau == pytest.approx(0.025)

    def test_d1_capped(self):
        cfg = noisy_to_lowdegree(RegularityConfig(d=1, tau=0.2))
        assert cfg.delta == 0.5 and cfg.tau == pytest.approx(0.1)

    def test_implication(self):
        rng = np.random.default_rng(3)
        passed = 0
        for k in range(100):
            n = int(rng.integers(2, 7))
            f = random_function(rng, n) if k % 2 else make_named("majority", n | 1 if n < 6 else 5)
            for d in (1, 2, 3):
                for tau in (0.3, 0.6, 1.2):
                    low = RegularityConfig(d=d, tau=tau)
                    if regularity_check(f, noisy_to_lowdegree(low), mode="noisy").regular:
                        passed += 1
                        assert regularity_check(f, low).regular
        assert passed > 20


class TestPotential:
    def test_empty_set(self, maj3):
        assert stability_potential(maj3, [], 0.4, [0.5]) == pytest.approx(noise_stability(maj3, 0.4))

    def test_dictator_fixed(self):
        assert stability_potential(make_named("dictator", 3, index=1), [1], 0.3, [0.5, 0.2]) == pytest.approx(2.0)

    def test_maj3_fix_3(self, maj3):
        # restrictions are AND and OR; each has Stab = (1 + rho)^2 / 4
        assert stability_potential(maj3, [3], 0.5, [0.5]) == pytest.approx(9 / 16)

    def test_tree_equals_set(self, maj3):
        tree = RestrictionTree()
        tree.split(3)
        assert stability_potential(maj3, tree, 0.5, [0.5, 0.3]) == pytest.approx(stability_potential(maj3, [3], 0.5, [0.5, 0.3]))

    def test_bad_set(self, maj3):
        with pytest.raises(PreconditionError):
            stability_potential(maj3, [4], 0.5, [0.5])


class TestStepIdentity:
    def test_dictator(self):
        lhs, rhs, diff = jones_step_identity_check(make_named("dictator", 4, index=2), 2, 0.3, 0.5)
        assert lhs == pytest.approx(1) and rhs == pytest.approx(1) and diff < 1e-12

    def test_constant(self):
        assert jones_step_identity_check(BooleanFunction.constant(3, 0), 1, 0.5, 0.3) == pytest.approx((1, 1, 0))

    def test_lhs_by_kernel(self, maj3):
        lhs, _, _ = jones_step_identity_check(maj3, 3, 0.5, 0.25)
        lo = restrict(maj3, Restriction(4, 0))
        hi = restrict(maj3, Restriction(4, 4))
        oracle = 0.75 * kernel_stability(reversed_bits(lo), 0.5, 0.25) + 0.25 * kernel_stability(reversed_bits(hi), 0.5, 0.25)
        assert lhs == pytest.approx(oracle, abs=1e-12)

    def test_random(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            n = int(rng.integers(1, 9))
            f = random_function(rng, n)
            i = int(rng.integers(1, n + 1))
            for rho in (0.25, 0.75):
                for p in (0.25, 0.5):
                    assert jones_step_identity_check(f, i, rho, p)[2] <= 1e-12

    def test_range(self, maj3):
        with pytest.raises(PreconditionError):
            jones_step_identity_check(maj3, 4, 0.5, 0.5)


class TestJunta:
    def test_already_regular(self):
        T, rep = jones_junta(make_named("majority", 9), RegularityConfig(tau=0.3))
        assert T == [] and rep.rounds == 0

    def test_xor_tribes(self):
        T, rep = jones_junta(_xor_tribes(), RegularityConfig(tau=0.05, delta=0.5, epsilon=0.1))
        assert 1 in T
        assert all(v >= 0.9 for v in rep.regular_fraction_per_bias.values())

    def test_random_rounds(self):
        rng = np.random.default_rng(7)
        cfg = RegularityConfig(tau=0.1, delta=0.5, epsilon=0.1, biases=(0.5, 0.3))
        for _ in range(50):
            T, rep = jones_junta(random_function(rng, int(rng.integers(2, 7))), cfg)
            assert rep.rounds <= cfg.round_bound
            steps = np.diff(rep.potential_trace)
            assert np.all(steps >= cfg.epsilon * cfg.delta * cfg.tau - 1e-12)
            assert rep.potential_trace[-1] <= len(cfg.biases) + 1e-12
            assert all(v >= 1 - cfg.epsilon - 1e-12 for v in rep.regular_fraction_per_bias.values())


class TestDecisionTree:
    def test_dictator(self):
        tree, rep = jones_decision_tree(make_named("dictator", 4, index=3), RegularityConfig(tau=0.5))
        assert tree.depth == 1 and tree.var == 3 and tree.to_text() == "[3 . .]"

    def test_maj5_leaves(self):
        cfg = RegularityConfig(d=1, tau=0.1, epsilon=0.1)
        f = make_named("majority", 5)
        tree, rep = jones_decision_tree(f, cfg)
        w = tree.leaf_weights(0.5)
        assert w.sum() == pytest.approx(1.0)
        ok = 0.0
        for weight, leaf in zip(w, tree.leaves()):
            sub = restrict(f, leaf.restriction)
            # every leaf of a majority tree is a threshold function of the free bits
            counts = sub.table.reshape(-1)
            ones = np.array([bin(k).count("1") for k in range(1 << sub.arity)])
            assert all(counts[a] <= counts[b] for a in range(len(ones)) for b in range(len(ones)) if (a & b) == a)
            ok += weight * regularity_check(sub, cfg, mode="noisy").regular
        assert ok >= 1 - cfg.epsilon
        assert tree.depth <= cfg.round_bound

    def test_reported_fraction_rechecked(self):
        cfg = RegularityConfig(tau=0.05, epsilon=0.1, biases=(0.5, 0.25))
        f = make_named("tribes", 9, width=3)
        tree, rep = jones_decision_tree(f, cfg)
        again = tree_regular_fraction(f, tree, cfg)
        for p in cfg.biases:
            assert again[p] == pytest.approx(rep.regular_fraction_per_bias[p])
            assert again[p] >= 0.9 - 1e-12

    def test_no_repeat_on_path(self):
        t = RestrictionTree()
        t.split(1)
        with pytest.raises(PreconditionError):
            t.children[0].split(1)
        with pytest.raises(PreconditionError):
            t.split(2)


@pytest.mark.parametrize("n", [11, 15])
def test_majority_keeps_variance(n):
    v = restriction_variance_profile(make_named("majority", n), 0.5, 1000, seed=0)
    assert np.mean(v >= 0.1) >= 0.9
