import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polymorph import BooleanFunction, FormatError, PreconditionError, SizeLimitError, format_function, make_named, parse_function
from polymorph.boolfn import (
    Restriction,
    apply_noise,
    biased_transform,
    character_correlation,
    clip,
    distance,
    find_certificates,
    fourier_transform,
    influence,
    inverse_biased_transform,
    inverse_fourier,
    low_degree_influence,
    noise_sensitivity,
    noise_stability,
    noisy_influence,
    noisy_influence_via_derivative,
    random_restriction,
    restrict,
    sample_noisy_pair,
    walsh_spectrum,
)

from conftest import random_function


def brute_coefficients(f: BooleanFunction, p: float) -> np.ndarray:
    """Direct sum E[F * phi_S] over all inputs, with the orthonormal p-biased characters."""
    n = f.arity
    out = np.zeros(1 << n)
    for x in range(1 << n):
        bits = [(x >> k) & 1 for k in range(n)]
        w = np.prod([p if b else 1 - p for b in bits])
        phi = [((-1) ** b - (1 - 2 * p)) / (2 * np.sqrt(p * (1 - p))) for b in bits]
        for S in range(1 << n):
            out[S] += w * f.pm[x] * np.prod([phi[k] for k in range(n) if S >> k & 1])
    return out


class TestFormat:
    def test_and2_table(self):
        f = parse_function("n=2 table=8")
        assert [f(*x) for x in itertools.product((0, 1), repeat=2)] == [0, 0, 0, 1]

    def test_maj3(self):
        assert parse_function("n=3 table=e8") == make_named("majority", 3)

    def test_length_mismatch_names_token(self):
        with pytest.raises(FormatError, match="ff1"):
            parse_function("n=2 table=ff1")

    def test_bad_hex(self):
        with pytest.raises(FormatError, match="zz"):
            parse_function("n=3 table=zz")

    def test_arity_cap(self):
        with pytest.raises((FormatError, SizeLimitError)):
            parse_function("n=25 table=0")

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10), st.data())
    def test_round_trip(self, n, data):
        bits = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
        f = BooleanFunction(n, bits)
        text = format_function(f)
        assert parse_function(text) == f
        assert format_function(parse_function(text)) == text


class TestNamed:
    def test_nxor(self):
        assert make_named("xor", 2, I={1, 2}, shift=1).table.tolist() == [1, 0, 0, 1]

    def test_and_singleton_is_dictator(self):
        assert make_named("and", 3, I={1}) == make_named("dictator", 3, index=1)

    def test_bad_index_set(self):
        with pytest.raises(PreconditionError):
            make_named("xor", 2, I={3})

    def test_tribes(self):
        f = make_named("tribes", 4, width=2)
        assert f(1, 1, 0, 0) == 1 and f(1, 0, 0, 1) == 0 and f(0, 0, 1, 1) == 1

    @pytest.mark.parametrize("x, y", [(2, 1), (-3, -1), (0.5, 0.5)])
    def test_clip(self, x, y):
        assert clip(x) == y


class TestFourier:
    def test_xor2(self, xor2):
        c = fourier_transform(xor2).coefficients
        assert np.allclose(c, [0, 0, 0, 1])

    def test_and2_min(self, and2_min):
        assert np.allclose(fourier_transform(and2_min).coefficients, [-0.5, 0.5, 0.5, 0.5])

    def test_maj3(self, maj3):
        c = fourier_transform(maj3).coefficients
        assert np.allclose(c, [0, 0.5, 0.5, 0, 0.5, 0, 0, -0.5])

    @pytest.mark.parametrize("p", [0.25, 0.5, 0.75, 0.1])
    def test_matches_direct_sum(self, p):
        rng = np.random.default_rng(3)
        for n in (1, 2, 3, 4):
            f = random_function(rng, n)
            assert np.allclose(fourier_transform(f, bias=p).coefficients, brute_coefficients(f, p), atol=1e-12)

    @pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
    def test_parseval(self, p):
        rng = np.random.default_rng(0)
        for n in range(0, 11):
            c = fourier_transform(random_function(rng, n), bias=p).coefficients
            assert abs(np.sum(c**2) - 1) <= 1e-12

    def test_level_zero_is_biased_mean(self):
        rng = np.random.default_rng(1)
        f = random_function(rng, 6)
        from polymorph.boolfn import measure_weights

        for p in (0.25, 0.6):
            assert fourier_transform(f, bias=p).coefficients[0] == pytest.approx(np.dot(measure_weights(6, p), f.pm))

    def test_round_trip_200(self):
        rng = np.random.default_rng(2)
        for k in range(200):
            n = int(rng.integers(0, 11))
            f = random_function(rng, n)
            p = (0.5, 0.25, 0.75)[k % 3]
            e = fourier_transform(f, bias=p)
            assert e.to_function() == f
            assert np.allclose(inverse_fourier(e), f.pm)

    def test_batched_transform(self):
        v = np.random.default_rng(4).normal(size=(5, 16))
        c = biased_transform(v, 0.3)
        assert np.allclose(inverse_biased_transform(c, 0.3), v)
        assert np.allclose(c[2], biased_transform(v[2], 0.3))

    def test_walsh_is_exact(self, maj3):
        assert walsh_spectrum(maj3).tolist() == [0, 4, 4, 0, 4, 0, 0, -4]

    def test_zero_one_view(self, and2):
        c = fourier_transform(and2, view="zero-one").coefficients
        # AND = (1 - x1 - x2 + x1x2)/4 in the +-1 variables
        assert np.allclose(c, [0.25, -0.25, -0.25, 0.25])

    def test_bad_bias(self, and2):
        with pytest.raises(PreconditionError):
            fourier_transform(and2, bias=1.0)


class TestInfluence:
    def test_maj3(self, maj3):
        assert influence(maj3, 1) == pytest.approx(0.5)

    def test_dictator(self):
        f = make_named("dictator", 2, index=1)
        assert influence(f, 1) == pytest.approx(1) and influence(f, 2) == pytest.approx(0)

    def test_xor_low_degree(self, xor2):
        assert low_degree_influence(xor2, 1, 1) == pytest.approx(0)

    def test_out_of_range(self, maj3):
        with pytest.raises(PreconditionError):
            influence(maj3, 4)

    def test_total_influence_two_ways(self):
        rng = np.random.default_rng(5)
        for p in (0.5, 0.3):
            f = random_function(rng, 7)
            e = fourier_transform(f, bias=p)
            total = sum(influence(f, i, p) for i in range(1, 8))
            assert total == pytest.approx(float(np.sum(e.levels * e.coefficients**2)), abs=1e-12)

    def test_noisy_character(self):
        f = make_named("xor", 4, I={1, 2, 4})
        assert noisy_influence(f, 2, 0.3) == pytest.approx(0.3**2)

    def test_noisy_maj3(self, maj3):
        assert noisy_influence(maj3, 1, 0.5) == pytest.approx(5 / 16)

    def test_noisy_constant(self):
        assert noisy_influence(make_named("constant", 3, value=1), 2, 0.5) == 0

    @pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
    def test_noisy_via_derivative(self, p):
        rng = np.random.default_rng(6)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            f = random_function(rng, n)
            i = int(rng.integers(1, n + 1))
            for rho in (0.2, 0.5, 0.9):
                assert abs(noisy_influence(f, i, rho, p) - noisy_influence_via_derivative(f, i, rho, p)) <= 1e-12


class TestStability:
    def test_character(self):
        f = make_named("xor", 3, I={1, 3})
        assert noise_stability(f, 0.4) == pytest.approx(0.16)

    def test_constant(self):
        f = make_named("constant", 3, value=0)
        assert noise_stability(f, 0.3) == pytest.approx(1) and noise_sensitivity(f, 0.3) == pytest.approx(0)

    def test_maj3(self, maj3):
        assert noise_stability(maj3, 0.5) == pytest.approx(13 / 32)

    def test_apply_noise(self, maj3):
        e = fourier_transform(maj3)
        half = apply_noise(e, 0.5).coefficients
        assert np.allclose(half, [0, 0.25, 0.25, 0, 0.25, 0, 0, -1 / 16])
        assert np.allclose(apply_noise(e, 1).coefficients, e.coefficients)
        assert np.allclose(apply_noise(e, 0).coefficients[1:], 0)

    @pytest.mark.parametrize("p", [0.5, 0.25])
    def test_sensitivity_against_sampling(self, p):
        f = make_named("majority", 5)
        rho, size = 0.6, 200_000
        s = sample_noisy_pair(5, rho, p, size, seed=11)
        fx, fy = f.evaluate(s.x), f.evaluate(s.y)
        est = np.mean(fx != fy)
        se = np.sqrt(est * (1 - est) / size)
        ns = noise_sensitivity(f, rho, p)
        assert ns == pytest.approx((1 - noise_stability(f, rho, p)) / 2)
        assert abs(est - ns) <= 3 * se

    def test_noisy_pair_marginals(self):
        s = sample_noisy_pair(6, 0.3, 0.25, 100_000, seed=2)
        assert abs(s.x.mean() - 0.25) < 0.005 and abs(s.y.mean() - 0.25) < 0.005


class TestRestrictions:
    def test_maj3_to_or(self, maj3):
        r = restrict(maj3, Restriction(0b100, 0b100))
        assert r == make_named("or", 2, I={1, 2})

    def test_empty(self, maj3):
        assert restrict(maj3, Restriction(0, 0)) == maj3

    def test_full(self, maj3):
        r = restrict(maj3, Restriction(0b111, 0b011))
        assert r.arity == 0 and r.table[0] == maj3(1, 1, 0)

    def test_mismatch(self):
        with pytest.raises(PreconditionError):
            Restriction(0b01, 0b10)

    def test_random_restriction_deterministic(self):
        assert random_restriction(10, 0.5, seed=3) == random_restriction(10, 0.5, seed=3)

    def test_random_restriction_rate(self):
        free = [len(random_restriction(20, 0.3, seed=s).free(20)) for s in range(500)]
        assert abs(np.mean(free) - 6) < 0.3


class TestDistance:
    def test_basic(self, maj3):
        assert distance(maj3, maj3) == 0
        assert distance(maj3, maj3.negation()) == 1
        assert distance(maj3, make_named("dictator", 3, index=1)) == pytest.approx(0.25)

    def test_correlation(self, maj3):
        assert character_correlation(maj3, {1, 2, 3}) == pytest.approx(0.5)

    def test_arity_mismatch(self, maj3, and2):
        with pytest.raises(PreconditionError):
            distance(maj3, and2)


class TestCertificates:
    def test_and2(self, and2):
        c = find_certificates(and2)
        assert c.alpha.pivot == 2 and c.alpha.assignment == ((1, 0),)
        assert c.beta.assignment == ((1, 1),) and c.beta.b == 0

    def test_xor2(self, xor2):
        assert find_certificates(xor2).alpha is None

    def test_maj3(self, maj3):
        # g(0,0,x3) = 0 for both x3; the mixed assignments (0,1)/(1,0) are sensitive
        c = find_certificates(maj3)
        assert c.alpha.pivot == 3 and c.alpha.assignment == ((1, 0), (2, 0))
        assert dict(c.beta.assignment) in ({1: 0, 2: 1}, {1: 1, 2: 0})

    def test_irrelevant_coordinate(self):
        with pytest.raises(PreconditionError):
            find_certificates(make_named("dictator", 2, index=1))

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_alpha_missing_only_for_parities(self, m):
        missing = []
        for code in range(1 << (1 << m)):
            g = BooleanFunction.from_int(m, code)
            if all(g.depends_on(j) for j in range(1, m + 1)) and find_certificates(g).alpha is None:
                missing.append(g)
        assert sorted(g.to_int() for g in missing) == sorted(
            make_named("xor", m, I=range(1, m + 1), shift=a).to_int() for a in (0, 1)
        )

    def test_certificates_are_valid(self):
        for code in range(256):
            g = BooleanFunction.from_int(3, code)
            if not all(g.depends_on(j) for j in (1, 2, 3)):
                continue
            c = find_certificates(g)
            for cert, sensitive in ((c.alpha, False), (c.beta, True)):
                if cert is None:
                    continue
                vals = []
                for xp in (0, 1):
                    x = dict(cert.assignment)
                    x[cert.pivot] = xp
                    vals.append(g(*(x[j] for j in (1, 2, 3))))
                if sensitive:
                    assert vals == [cert.b, 1 - cert.b]
                else:
                    assert vals[0] == vals[1]
