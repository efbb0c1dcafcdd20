"""Row/column compositions on n x m bit matrices and their agreement rates.

The left side applies g to every row and f0 to the results; the right side
applies f_j to column j and g (or a separate outer function h) to the results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .boolfn import BooleanFunction
from .errors import PreconditionError, SizeLimitError

EXHAUSTIVE_LIMIT = 28
CONFIDENCE = 0.99
_CHUNK = 1 << 20


@dataclass(frozen=True, eq=False)
class InputMatrix:
    """An n x m bit matrix; entry (i, j) sits at flat position (i-1)*m + (j-1)."""

    rows: int
    cols: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        b = np.array(self.bits, dtype=np.uint8).reshape(-1)
        if b.size != self.rows * self.cols:
            raise PreconditionError(f"expected {self.rows * self.cols} bits, got {b.size}")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "InputMatrix":
        arr = np.array(rows, dtype=np.uint8)
        return cls(arr.shape[0], arr.shape[1], arr.reshape(-1))

    @classmethod
    def from_index(cls, n: int, m: int, z: int) -> "InputMatrix":
        return cls(n, m, [(z >> k) & 1 for k in range(n * m)])

    def as_array(self) -> np.ndarray:
        return self.bits.reshape(self.rows, self.cols)

    def row(self, i: int) -> np.ndarray:
        if not 1 <= i <= self.rows:
            raise PreconditionError(f"row {i} out of range 1..{self.rows}")
        return self.as_array()[i - 1]

    def col(self, j: int) -> np.ndarray:
        if not 1 <= j <= self.cols:
            raise PreconditionError(f"column {j} out of range 1..{self.cols}")
        return self.as_array()[:, j - 1]


@dataclass(frozen=True)
class AgreementReport:
    """Pr[f0 o g^n = g o (f_1..f_m)] over uniform matrices, exact or sampled."""

    method: str
    samples: int
    seed: int | None = None
    numerator: int | None = None
    denominator: int | None = None
    estimate: float | None = None
    halfwidth: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def probability(self) -> float:
        if self.numerator is not None:
            return self.numerator / self.denominator
        return float(self.estimate)

    @property
    def exact(self) -> Fraction | None:
        if self.numerator is None:
            return None
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "probability": self.probability,
            "method": self.method,
            "samples": self.samples,
            "halfwidth": self.halfwidth,
            "confidence": CONFIDENCE,
            "seed": self.seed,
        }
        if self.numerator is not None:
            out["numerator"] = self.numerator
            out["denominator"] = self.denominator
        out.update(self.extra)
        return out


def hoeffding_halfwidth(samples: int, confidence: float = CONFIDENCE) -> float:
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))


def _check_dims(f0: BooleanFunction, fs: Sequence[BooleanFunction], g: BooleanFunction, h: BooleanFunction | None):
    n, m = f0.arity, g.arity
    if len(fs) != m:
        raise PreconditionError(f"need {m} column functions for g of arity {m}, got {len(fs)}")
    for j, f in enumerate(fs, 1):
        if f.arity != n:
            raise PreconditionError(f"f_{j} has arity {f.arity}, expected {n}")
    if h is not None and h.arity != m:
        raise PreconditionError(f"h has arity {h.arity}, expected {m}")
    return n, m


def sides_for(kind: str, functions, g: BooleanFunction) -> tuple[BooleanFunction, list[BooleanFunction]]:
    """Expand a plain/skew/multi argument into (f0, [f_1..f_m])."""
    m = g.arity
    if kind == "plain":
        f = functions[0] if isinstance(functions, (list, tuple)) else functions
        return f, [f] * m
    if kind == "skew":
        f0, f1 = functions
        return f0, [f1] * m
    if kind == "multi":
        functions = list(functions)
        if len(functions) != m + 1:
            raise PreconditionError(f"multi needs {m + 1} functions (f0..f{m}), got {len(functions)}")
        return functions[0], functions[1:]
    raise PreconditionError(f"kind must be plain, skew or multi, got {kind!r}")


def compose_sides(
    f0: BooleanFunction,
    fs: Sequence[BooleanFunction],
    g: BooleanFunction,
    Z: InputMatrix,
    h: BooleanFunction | None = None,
) -> tuple[int, int]:
    n, m = _check_dims(f0, fs, g, h)
    if (Z.rows, Z.cols) != (n, m):
        raise PreconditionError(f"matrix is {Z.rows}x{Z.cols}, expected {n}x{m}")
    a = Z.as_array()
    lhs = f0(*(g(*a[i]) for i in range(n)))
    rhs = (h or g)(*(fs[j](*a[:, j]) for j in range(m)))
    return lhs, rhs


def _sides_on_bits(f0, fs, g, h, bits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Both sides for a batch of matrices given as (batch, n, m) bit arrays."""
    n, m = bits.shape[1], bits.shape[2]
    b = bits.astype(np.int64)
    row_idx = (b << np.arange(m)).sum(axis=2)
    col_idx = (b << np.arange(n)[:, None]).sum(axis=1)
    lhs = f0.table[(g.table[row_idx].astype(np.int64) << np.arange(n)).sum(axis=1)]
    col_vals = np.stack([fs[j].table[col_idx[:, j]] for j in range(m)], axis=1).astype(np.int64)
    rhs = (h or g).table[(col_vals << np.arange(m)).sum(axis=1)]
    return lhs, rhs


def _count_disagreements(f0, fs, g, h) -> int:
    n, m = f0.arity, g.arity
    total = 1 << (n * m)
    row_mask = (1 << m) - 1
    gt = g.table.astype(np.int64)
    ht = (h or g).table
    ftabs = [f.table for f in fs]
    bad = 0
    for start in range(0, total, _CHUNK):
        z = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        lidx = np.zeros_like(z)
        for i in range(n):
            lidx |= gt[(z >> (i * m)) & row_mask] << i
        lhs = f0.table[lidx]
        ridx = np.zeros_like(z)
        for j in range(m):
            cidx = np.zeros_like(z)
            for i in range(n):
                cidx |= ((z >> (i * m + j)) & 1) << i
            ridx |= ftabs[j][cidx].astype(np.int64) << j
        bad += int(np.count_nonzero(lhs != ht[ridx]))
    return bad


def agreement_exhaustive(
    f0: BooleanFunction,
    fs: Sequence[BooleanFunction] | None,
    g: BooleanFunction,
    h: BooleanFunction | None = None,
) -> AgreementReport:
    """Exact agreement over all 2**(n*m) matrices.  ``fs=None`` means the plain case."""
    fs = [f0] * g.arity if fs is None else list(fs)
    n, m = _check_dims(f0, fs, g, h)
    if n * m > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(f"n*m = {n * m} exceeds the exhaustive limit {EXHAUSTIVE_LIMIT}")
    total = 1 << (n * m)
    return AgreementReport("exhaustive", total, numerator=total - _count_disagreements(f0, fs, g, h), denominator=total)


def agreement_monte_carlo(
    f0: BooleanFunction,
    fs: Sequence[BooleanFunction] | None,
    g: BooleanFunction,
    samples: int,
    seed: int = 0,
    shards: int = 16,
    h: BooleanFunction | None = None,
) -> AgreementReport:
    """Uniform-matrix estimate; streams are Philox children of SeedSequence(seed)."""
    fs = [f0] * g.arity if fs is None else list(fs)
    n, m = _check_dims(f0, fs, g, h)
    if samples < 1:
        raise PreconditionError("samples must be positive")
    counts = []
    for child, size in zip(np.random.SeedSequence(seed).spawn(shards), _shard_sizes(samples, shards)):
        rng = np.random.Generator(np.random.Philox(child))
        good = 0
        for lo in range(0, size, 1 << 16):
            k = min(1 << 16, size - lo)
            bits = rng.integers(0, 2, size=(k, n, m), dtype=np.uint8)
            lhs, rhs = _sides_on_bits(f0, fs, g, h, bits)
            good += int(np.count_nonzero(lhs == rhs))
        counts.append(good)
    est = sum(counts) / samples
    return AgreementReport(
        "monte-carlo", samples, seed=seed, estimate=est,
        halfwidth=hoeffding_halfwidth(samples), extra={"shards": shards},
    )


def _shard_sizes(samples: int, shards: int) -> list[int]:
    base, rem = divmod(samples, shards)
    return [base + (k < rem) for k in range(shards)]


def is_exact(kind: str, functions, g: BooleanFunction) -> bool:
    f0, fs = sides_for(kind, functions, g)
    n, m = _check_dims(f0, fs, g, None)
    if n * m > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(f"n*m = {n * m} exceeds the exhaustive limit {EXHAUSTIVE_LIMIT}")
    return _count_disagreements(f0, fs, g, None) == 0
