import itertools
from fractions import Fraction

import numpy as np
import pytest

from polymorph import BooleanFunction, PreconditionError, SizeLimitError, make_named
from polymorph.compose import (
    InputMatrix,
    agreement_exhaustive,
    agreement_monte_carlo,
    compose_sides,
    hoeffding_halfwidth,
    is_exact,
)

from conftest import random_function


def brute_agreement(f0, fs, g) -> Fraction:
    """Loop over every n x m matrix in plain Python."""
    n, m = f0.arity, g.arity
    good = 0
    for bits in itertools.product((0, 1), repeat=n * m):
        Z = [bits[i * m:(i + 1) * m] for i in range(n)]
        lhs = f0(*(g(*row) for row in Z))
        rhs = g(*(fs[j](*(Z[i][j] for i in range(n))) for j in range(m)))
        good += lhs == rhs
    return Fraction(good, 1 << (n * m))


class TestInputMatrix:
    def test_layout(self):
        Z = InputMatrix.from_rows([(1, 0), (0, 1), (1, 1)])
        assert Z.row(2).tolist() == [0, 1] and Z.col(1).tolist() == [1, 0, 1]

    def test_from_index_entry_order(self):
        # entry (i, j) sits at bit (i-1)*m + (j-1)
        Z = InputMatrix.from_index(2, 2, 0b0100)
        assert Z.as_array().tolist() == [[0, 0], [1, 0]]


class TestComposeSides:
    def test_dictator_any_g(self):
        rng = np.random.default_rng(0)
        f = make_named("dictator", 3, index=1)
        for _ in range(20):
            g = random_function(rng, 2)
            Z = InputMatrix(3, 2, rng.integers(0, 2, 6))
            lhs, rhs = compose_sides(f, [f, f], g, Z)
            assert lhs == rhs == g(*Z.row(1))

    def test_doctrinal_witness(self, maj3, and2):
        Z = InputMatrix.from_rows([(1, 1), (1, 0), (0, 1)])
        assert compose_sides(maj3, [maj3, maj3], and2, Z) == (0, 1)

    def test_or_family(self):
        or2 = make_named("or", 2, I={1, 2})
        for z in range(16):
            lhs, rhs = compose_sides(or2, [or2, or2], or2, InputMatrix.from_index(2, 2, z))
            assert lhs == rhs

    def test_dimension_mismatch(self, maj3, and2):
        with pytest.raises(PreconditionError):
            compose_sides(maj3, [maj3], and2, InputMatrix.from_index(3, 2, 0))


class TestExhaustive:
    def test_doctrinal_paradox(self, maj3, and2):
        r = agreement_exhaustive(maj3, None, and2)
        assert (r.numerator, r.denominator) == (58, 64) and r.halfwidth == 0

    def test_disagreements_have_paradox_rows(self, maj3, and2):
        bad = []
        for z in range(64):
            Z = InputMatrix.from_index(3, 2, z)
            lhs, rhs = compose_sides(maj3, [maj3, maj3], and2, Z)
            if lhs != rhs:
                bad.append(sorted(map(tuple, Z.as_array().tolist())))
        assert len(bad) == 6 and all(rows == [(0, 1), (1, 0), (1, 1)] for rows in bad)

    def test_against_brute_force(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            f0 = random_function(rng, n)
            fs = [random_function(rng, n) for _ in range(m)]
            g = random_function(rng, m)
            assert agreement_exhaustive(f0, fs, g).exact == brute_agreement(f0, fs, g)

    def test_dictators_always_agree(self):
        for m in (1, 2, 3):
            for code in range(1 << (1 << m)):
                g = BooleanFunction.from_int(m, code)
                for n in (1, 2, 3):
                    for i in range(1, n + 1):
                        assert agreement_exhaustive(make_named("dictator", n, index=i), None, g).exact == 1

    def test_dictators_m4_sampled(self):
        rng = np.random.default_rng(2)
        for _ in range(40):
            g = random_function(rng, 4)
            assert agreement_exhaustive(make_named("dictator", 2, index=2), None, g).exact == 1

    def test_parity_consistent_shifts(self, xor2):
        for I in ({1}, {1, 2}, {1, 2, 3}):
            f = make_named("xor", 3, I=I)
            assert agreement_exhaustive(f, None, xor2).exact == 1

    def test_size_limit(self, xor2):
        with pytest.raises(SizeLimitError):
            agreement_exhaustive(make_named("dictator", 15, index=1), None, xor2)

    def test_row_permutation_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            f0, f1, f2 = (random_function(rng, 3) for _ in range(3))
            g = random_function(rng, 2)
            perm = list(rng.permutation(3) + 1)
            base = agreement_exhaustive(f0, [f1, f2], g).exact
            permuted = agreement_exhaustive(f0.permuted(perm), [f1.permuted(perm), f2.permuted(perm)], g).exact
            assert base == permuted


class TestMonteCarlo:
    def test_halfwidth_formula(self):
        assert hoeffding_halfwidth(10**6) == pytest.approx(np.sqrt(np.log(2 / 0.01) / 2e6))

    def test_exact_polymorphism(self, and2):
        f = make_named("and", 4, I={1, 3})
        for seed in (0, 5):
            assert agreement_monte_carlo(f, None, and2, 5000, seed=seed).probability == 1.0

    def test_doctrinal_bracketed(self, maj3, and2):
        r = agreement_monte_carlo(maj3, None, and2, 10**6, seed=0)
        assert abs(r.probability - 58 / 64) <= r.halfwidth

    def test_deterministic(self, maj3, and2):
        a = agreement_monte_carlo(maj3, None, and2, 10_000, seed=9)
        b = agreement_monte_carlo(maj3, None, and2, 10_000, seed=9)
        assert a.probability == b.probability

    def test_random_baseline(self, xor2):
        f = random_function(np.random.default_rng(4), 12)
        r = agreement_monte_carlo(f, None, xor2, 10**6, seed=1)
        assert abs(r.probability - 0.5) <= 5 * r.halfwidth

    def test_brackets_exhaustive(self):
        rng = np.random.default_rng(5)
        misses = 0
        for k in range(50):
            n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            f0 = random_function(rng, n)
            fs = [random_function(rng, n) for _ in range(m)]
            g = random_function(rng, m)
            exact = agreement_exhaustive(f0, fs, g).probability
            mc = agreement_monte_carlo(f0, fs, g, 20_000, seed=k)
            misses += abs(mc.probability - exact) > mc.halfwidth
        assert misses <= 1

    def test_samples_positive(self, maj3, and2):
        with pytest.raises(PreconditionError):
            agreement_monte_carlo(maj3, None, and2, 0)

    def test_json_fields(self, maj3, and2):
        d = agreement_monte_carlo(maj3, None, and2, 100, seed=3).to_dict()
        assert {"probability", "method", "samples", "halfwidth", "seed"} <= d.keys() and d["schema"] == 1


class TestIsExact:
    def test_and_family(self, and2):
        assert is_exact("plain", make_named("and", 3, I={1, 2}), and2)

    def test_skew_or_and_nand(self):
        # f0 = OR, f1 = AND, g = NAND (the negated-literal OR in 0/1)
        nand = make_named("and", 2, I={1, 2}).negation()
        assert is_exact("skew", (make_named("or", 2, I={1, 2}), make_named("and", 2, I={1, 2})), nand)

    def test_maj3_and2(self, maj3, and2):
        assert not is_exact("plain", maj3, and2)


def test_row_index_checked():
    with pytest.raises(PreconditionError):
        InputMatrix.from_index(2, 2, 0).row(0)
