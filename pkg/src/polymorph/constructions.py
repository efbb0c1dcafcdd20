"""Lifted sign/threshold functions that approach the Gaussian lower bound.

A construction of inner dimension n and block size N acts on Nn coordinates
split into n consecutive blocks of N.  It looks only at the normalized block
sums s_i = (sum of block i) / sqrt(N), in the +-1 view.  One-dimensional
descriptors act on the aggregate (s_1 + ... + s_n) / sqrt(n).

For unbalanced g the function switches on the total sum: inputs near balance
(the columns of a uniform matrix) see q, inputs near E[g] Nn (the outputs of
g on the rows) see q0 applied to the centred and rescaled sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .boolfn import MAX_ARITY, BooleanFunction, fourier_transform, input_bits, popcounts
from .compose import EXHAUSTIVE_LIMIT, AgreementReport, _shard_sizes, agreement_exhaustive, hoeffding_halfwidth
from .errors import PreconditionError, SizeLimitError
from .gaussian import TRUNCATION, gamma_curve

Q0_GRID = 512


@dataclass(frozen=True)
class QSpec:
    """q(t) = +1 iff t >= theta; sign is theta = 0."""

    theta: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "QSpec":
        text = text.strip()
        if text == "sign":
            return cls(0.0)
        if text.startswith("threshold:"):
            try:
                return cls(float(text.split(":", 1)[1]))
            except ValueError:
                raise PreconditionError(f"bad threshold in q spec {text!r}") from None
        raise PreconditionError(f"q spec must be 'sign' or 'threshold:<theta>', got {text!r}")

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return np.where(np.asarray(t) >= self.theta, 1, -1).astype(np.int8)

    def label(self) -> str:
        return "sign" if self.theta == 0.0 else f"threshold:{self.theta:g}"


@dataclass(frozen=True)
class TabulatedSign:
    """Sign of a tabulated curve; zero crossings are placed by linear interpolation."""

    left: int
    crossings: tuple[float, ...]

    @classmethod
    def from_curve(cls, xs: np.ndarray, ys: np.ndarray) -> "TabulatedSign":
        s = np.where(ys >= 0, 1, -1)
        cross = []
        for k in np.flatnonzero(s[1:] != s[:-1]):
            x0, x1, y0, y1 = xs[k], xs[k + 1], ys[k], ys[k + 1]
            cross.append(float(x0 - y0 * (x1 - x0) / (y1 - y0)))
        return cls(int(s[0]), tuple(cross))

    def __call__(self, t: np.ndarray) -> np.ndarray:
        flips = np.searchsorted(np.asarray(self.crossings), np.asarray(t, dtype=float), side="right")
        return np.where(flips % 2 == 0, self.left, -self.left).astype(np.int8)


@dataclass(frozen=True, eq=False)
class LiftedConstruction:
    n: int
    N: int
    q: QSpec
    q0: Callable[[np.ndarray], np.ndarray] | None = None
    mean_g: Fraction = Fraction(0)

    @property
    def arity(self) -> int:
        return self.n * self.N

    @property
    def slice_threshold(self) -> Fraction:
        return self.mean_g / 2 * self.N * self.n

    def evaluate_sums(self, sums: np.ndarray) -> np.ndarray:
        """+-1 values from raw integer block sums, shape (..., n)."""
        sums = np.asarray(sums, dtype=float)
        total = sums.sum(axis=-1)
        near = self.q(total / math.sqrt(self.N * self.n))
        if self.q0 is None:
            return near
        mu = float(self.mean_g)
        far = self.q0((total - mu * self.N * self.n) / math.sqrt(self.N * self.n * (1.0 - mu * mu)))
        thr = float(self.slice_threshold)
        # closed on the q side; the region is mirrored when E[g] > 0
        on_q = total >= thr if mu < 0 else total <= thr
        return np.where(on_q, near, far).astype(np.int8)

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        """+-1 values on 0/1 inputs of shape (..., Nn)."""
        bits = np.asarray(bits)
        if bits.shape[-1] != self.arity:
            raise PreconditionError(f"expected {self.arity} input bits, got {bits.shape[-1]}")
        ones = bits.reshape(*bits.shape[:-1], self.n, self.N).sum(axis=-1, dtype=np.int64)
        return self.evaluate_sums(self.N - 2 * ones)

    def __call__(self, bits) -> np.ndarray:
        return self.evaluate(bits)

    def to_function(self) -> BooleanFunction:
        if self.arity > MAX_ARITY:
            raise SizeLimitError(f"arity {self.arity} exceeds {MAX_ARITY}; use the evaluator")
        return BooleanFunction.from_pm(self.evaluate(input_bits(self.arity)))


def lift_inner(q: QSpec, n: int, N: int) -> LiftedConstruction:
    if N < 1 or n < 1:
        raise PreconditionError("n and N must be positive")
    return LiftedConstruction(n, N, q)


def _mean_pm(g: BooleanFunction) -> Fraction:
    return Fraction(int(g.pm.sum()), 1 << g.arity)


def companion_sign(g: BooleanFunction, samples: int = 50_000, seed: int = 0, grid: int = Q0_GRID) -> TabulatedSign:
    """q0 = sign of gamma(x) = E[g(sgn G) | G_0 = x], tabulated over [-8, 8]."""
    xs = np.linspace(-TRUNCATION, TRUNCATION, grid)
    gam, _ = gamma_curve(g, xs, samples, seed)
    return TabulatedSign.from_curve(xs, gam)


def build_lower_bound_function(
    g: BooleanFunction, q: QSpec, N: int, n: int = 1, seed: int = 0, gamma_samples: int = 50_000,
) -> LiftedConstruction:
    if g.arity == 0 or g.is_constant():
        raise PreconditionError("g must be non-constant")
    base = lift_inner(q, n, N)
    mu = _mean_pm(g)
    if mu == 0:
        return base
    return LiftedConstruction(n, N, q, companion_sign(g, gamma_samples, seed), mu)


def _row_signs(g: BooleanFunction) -> tuple[np.ndarray, np.ndarray]:
    """Per row type t: g(t) and the inputs x_j(t), both +-1."""
    m = g.arity
    x = 1 - 2 * input_bits(m).astype(np.int64)
    return g.pm.astype(np.int64), x


def empirical_agreement(
    g: BooleanFunction, construction: LiftedConstruction, samples: int, seed: int = 0, shards: int = 16,
) -> AgreementReport:
    """Agreement of the construction with g over uniform (Nn) x m matrices.

    Small instances (Nn*m <= 20) are counted exhaustively.  Otherwise each
    sample draws, per block, the multinomial counts of the 2^m row types;
    block sums of rows and columns are linear in those counts.
    """
    if samples < 1:
        raise PreconditionError("samples must be positive")
    m, k = g.arity, construction.arity
    if k * m <= min(20, EXHAUSTIVE_LIMIT):
        return agreement_exhaustive(construction.to_function(), None, g)
    gv, x = _row_signs(g)
    probs = np.full(1 << m, 1.0 / (1 << m))
    good = 0
    for child, size in zip(np.random.SeedSequence(seed).spawn(shards), _shard_sizes(samples, shards)):
        rng = np.random.Generator(np.random.Philox(child))
        for lo in range(0, size, 1 << 16):
            b = min(1 << 16, size - lo)
            counts = rng.multinomial(construction.N, probs, size=(b, construction.n))
            lhs = construction.evaluate_sums(counts @ gv)
            cols = construction.evaluate_sums(np.moveaxis(counts @ x, -1, 0))  # (m, b)
            idx = ((cols < 0).astype(np.int64) << np.arange(m)[:, None]).sum(axis=0)
            good += int(np.count_nonzero(lhs == g.pm[idx]))
    return AgreementReport(
        "monte-carlo", samples, seed=seed, estimate=good / samples,
        halfwidth=hoeffding_halfwidth(samples),
        extra={"shards": shards, "N": construction.N, "n": construction.n, "q": construction.q.label()},
    )


@dataclass(frozen=True)
class DecayRow:
    N: int
    level: int
    max_abs: float


def fourier_decay_series(
    family: Callable[[int], LiftedConstruction], L: int, N_list: Sequence[int],
) -> list[DecayRow]:
    """max |f^(S)| over |S| = d for d = 1..L and each N, via exact transforms."""
    rows = []
    for N in N_list:
        f = family(N).to_function()
        c = np.abs(fourier_transform(f).coefficients)
        lv = popcounts(f.arity)
        for d in range(1, L + 1):
            sel = c[lv == d]
            rows.append(DecayRow(N, d, float(sel.max()) if sel.size else 0.0))
    return rows


def decay_ratios(rows: Sequence[DecayRow], level: int = 1) -> list[float]:
    vals = [r.max_abs for r in sorted(rows, key=lambda r: r.N) if r.level == level]
    return [b / a for a, b in zip(vals, vals[1:])]


def decay_to_csv(rows: Sequence[DecayRow]) -> str:
    return "N,level,max_abs\n" + "".join(f"{r.N},{r.level},{r.max_abs!r}\n" for r in rows)


def splitmix64(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = z + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _input_keys(bits: np.ndarray, seed: int) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint64)
    h = np.full(bits.shape[:-1], splitmix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF)), dtype=np.uint64)
    for lo in range(0, bits.shape[-1], 63):
        chunk = bits[..., lo:lo + 63]
        word = (chunk << np.arange(chunk.shape[-1], dtype=np.uint64)).sum(axis=-1, dtype=np.uint64)
        h = splitmix64(h ^ word)
    return h


def boolean_round(fractional: Callable[[np.ndarray], np.ndarray], seed: int = 0) -> Callable[[np.ndarray], np.ndarray]:
    """Round a [-1, 1]-valued evaluator to +-1 with matching pointwise expectation.

    The coin for input x is a splitmix64 hash of (seed, x), so the rounded
    function is deterministic and inputs are rounded independently.
    """
    def rounded(bits: np.ndarray) -> np.ndarray:
        v = np.asarray(fractional(bits), dtype=float)
        if np.any(np.abs(v) > 1.0) or np.any(np.isnan(v)):
            raise PreconditionError("fractional values must lie in [-1, 1]")
        u = (_input_keys(bits, seed) >> np.uint64(11)).astype(float) / float(1 << 53)
        return np.where(u < (1.0 + v) / 2.0, 1, -1).astype(np.int8)

    return rounded
