"""Boolean functions on {0,1}^n and their Fourier analysis.

A function is stored as its 0/1 truth table.  The entry at index
``sum(x_i * 2**(i-1))`` is f(x), so coordinate 1 is the least significant bit.
The +-1 view is F = (-1)**f, i.e. bit 0 <-> +1 and bit 1 <-> -1.

Coordinates and index sets in the public API are 1-based.  Subsets S of [n]
used to index Fourier coefficients are integer masks with bit ``i-1`` set
when ``i`` is in S.

Fourier expansions are taken with respect to the p-biased product measure
mu_p (each bit equals 1 with probability p) in the orthonormal basis

    phi_S(x) = prod_{i in S} ((-1)**x_i - (1 - 2p)) / (2 sqrt(p(1-p))).
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import FormatError, PreconditionError, SizeLimitError

MAX_ARITY = 24


@functools.lru_cache(maxsize=32)
def input_bits(n: int) -> np.ndarray:
    """All inputs of {0,1}^n as a read-only (2**n, n) uint8 array, column i-1 = x_i."""
    idx = np.arange(1 << n, dtype=np.int64)
    bits = ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    bits.setflags(write=False)
    return bits


@functools.lru_cache(maxsize=32)
def popcounts(n: int) -> np.ndarray:
    """Hamming weight of every mask in [0, 2**n)."""
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        out += (idx >> k) & 1
    out.setflags(write=False)
    return out


def mask_of(coords: Iterable[int]) -> int:
    mask = 0
    for i in coords:
        if i < 1:
            raise PreconditionError(f"coordinates are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def coords_of(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """An immutable function {0,1}^arity -> {0,1}."""

    arity: int
    table: np.ndarray

    def __post_init__(self) -> None:
        n = int(self.arity)
        if n < 0:
            raise PreconditionError(f"arity must be non-negative, got {n}")
        if n > MAX_ARITY:
            raise SizeLimitError(f"arity {n} exceeds the limit {MAX_ARITY}")
        t = np.array(self.table, dtype=np.uint8).reshape(-1)
        if t.size != 1 << n:
            raise PreconditionError(f"table length {t.size} != 2**{n}")
        if t.size and t.max() > 1:
            raise PreconditionError("table entries must be 0 or 1")
        t.setflags(write=False)
        object.__setattr__(self, "arity", n)
        object.__setattr__(self, "table", t)

    # construction -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, value: int) -> "BooleanFunction":
        if n > 16:
            raise SizeLimitError("from_int is intended for small arities")
        idx = np.arange(1 << n, dtype=object)
        return cls(n, np.array([(value >> int(k)) & 1 for k in idx], dtype=np.uint8))

    @classmethod
    def from_callable(cls, n: int, func: Callable[[tuple[int, ...]], int]) -> "BooleanFunction":
        return cls(n, [func(tuple(int(b) for b in row)) & 1 for row in input_bits(n)])

    @classmethod
    def from_pm(cls, values: Sequence[float] | np.ndarray) -> "BooleanFunction":
        """Build from +-1 values listed in input-index order."""
        v = np.asarray(values)
        if not np.all((v == 1) | (v == -1)):
            raise PreconditionError("+-1 view must contain only +1 and -1")
        n = int(v.size).bit_length() - 1
        return cls(n, (v < 0).astype(np.uint8))

    @classmethod
    def constant(cls, n: int, b: int) -> "BooleanFunction":
        return cls(n, np.full(1 << n, b & 1, dtype=np.uint8))

    # views ------------------------------------------------------------

    @property
    def pm(self) -> np.ndarray:
        return 1 - 2 * self.table.astype(np.int64)

    def to_int(self) -> int:
        return int.from_bytes(np.packbits(self.table, bitorder="little").tobytes(), "little")

    def __call__(self, *bits: int) -> int:
        if len(bits) == 1 and not isinstance(bits[0], (int, np.integer)):
            bits = tuple(bits[0])
        if len(bits) != self.arity:
            raise PreconditionError(f"expected {self.arity} bits, got {len(bits)}")
        return int(self.table[sum((b & 1) << k for k, b in enumerate(bits))])

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Vectorised evaluation on an (..., arity) array of bits."""
        x = np.asarray(x, dtype=np.int64)
        idx = (x << np.arange(self.arity)).sum(axis=-1)
        return self.table[idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.arity == other.arity and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.arity, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"BooleanFunction({format_function(self)!r})"

    # structure --------------------------------------------------------

    def is_constant(self) -> bool:
        return bool(self.table.min() == self.table.max())

    def depends_on(self, i: int) -> bool:
        if not 1 <= i <= self.arity:
            raise PreconditionError(f"coordinate {i} out of range 1..{self.arity}")
        h = 1 << (i - 1)
        t = self.table.reshape(-1, 2, h)
        return bool(np.any(t[:, 0, :] != t[:, 1, :]))

    def relevant(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.arity + 1) if self.depends_on(i))

    def negation(self) -> "BooleanFunction":
        return BooleanFunction(self.arity, 1 - self.table)

    def flip_inputs(self) -> "BooleanFunction":
        """x -> f(not x)."""
        return BooleanFunction(self.arity, self.table[::-1])

    def is_odd(self) -> bool:
        return bool(np.array_equal(self.table[::-1], 1 - self.table))

    def is_even(self) -> bool:
        return bool(np.array_equal(self.table[::-1], self.table))

    def on_coordinates(self, coords: Sequence[int]) -> "BooleanFunction":
        """The function y -> f(x) with x_{coords[k]} = y_{k+1} and all other bits 0.

        Intended for dropping irrelevant coordinates or reordering inputs.
        """
        coords = list(coords)
        if len(set(coords)) != len(coords) or any(not 1 <= c <= self.arity for c in coords):
            raise PreconditionError(f"invalid coordinate list {coords}")
        y = input_bits(len(coords)).astype(np.int64)
        idx = (y << (np.array(coords, dtype=np.int64) - 1)).sum(axis=1) if coords else np.zeros(1, np.int64)
        return BooleanFunction(len(coords), self.table[idx])

    def permuted(self, order: Sequence[int]) -> "BooleanFunction":
        """Reorder inputs so that new coordinate k+1 is old coordinate order[k]."""
        if sorted(order) != list(range(1, self.arity + 1)):
            raise PreconditionError(f"{order} is not a permutation of 1..{self.arity}")
        return self.on_coordinates(order)


# named functions --------------------------------------------------------


def _index_set(I: Iterable[int] | None, n: int) -> tuple[int, ...]:
    I = tuple(sorted(set(I or ())))
    if any(not 1 <= i <= n for i in I):
        raise PreconditionError(f"index set {set(I)} is not a subset of [1..{n}]")
    return I


def make_named(
    kind: str,
    n: int,
    *,
    I: Iterable[int] | None = None,
    index: int | None = None,
    shift: int = 0,
    value: int = 0,
    width: int | None = None,
) -> BooleanFunction:
    """Truth tables of the standard families.

    ``kind`` is one of ``dictator``, ``anti-dictator``, ``xor``, ``and``,
    ``or``, ``majority``, ``constant`` or ``tribes``.  ``xor`` is
    XOR over ``I`` plus ``shift``; ``and``/``or`` over the empty set are the
    constants 1/0.  ``majority`` outputs 1 iff strictly more than half the
    inputs are 1.  ``tribes`` is the OR of ANDs over consecutive blocks of
    ``width`` coordinates.
    """
    if n < 0 or n > MAX_ARITY:
        raise SizeLimitError(f"arity {n} outside 0..{MAX_ARITY}")
    x = input_bits(n)
    if kind in ("dictator", "anti-dictator"):
        if index is None or not 1 <= index <= n:
            raise PreconditionError(f"invalid dictator index {index} for arity {n}")
        t = x[:, index - 1].copy()
        return BooleanFunction(n, t if kind == "dictator" else 1 - t)
    if kind == "xor":
        I = _index_set(I, n)
        t = (x[:, [i - 1 for i in I]].sum(axis=1) + shift) & 1
        return BooleanFunction(n, t)
    if kind == "and":
        I = _index_set(I, n)
        return BooleanFunction(n, x[:, [i - 1 for i in I]].all(axis=1) if I else np.ones(1 << n))
    if kind == "or":
        I = _index_set(I, n)
        return BooleanFunction(n, x[:, [i - 1 for i in I]].any(axis=1) if I else np.zeros(1 << n))
    if kind == "majority":
        return BooleanFunction(n, 2 * x.sum(axis=1, dtype=np.int64) > n)
    if kind == "constant":
        return BooleanFunction.constant(n, value)
    if kind == "tribes":
        if not width or n % width:
            raise PreconditionError(f"tribes needs a width dividing {n}, got {width}")
        blocks = x.reshape(-1, n // width, width).all(axis=2)
        return BooleanFunction(n, blocks.any(axis=1))
    raise PreconditionError(f"unknown function kind {kind!r}")


def clip(x):
    """Clip to [-1, 1]; works on scalars and arrays."""
    out = np.clip(x, -1.0, 1.0)
    return float(out) if np.ndim(out) == 0 else out


# text format ------------------------------------------------------------

_FN_RE = re.compile(r"^\s*n=(\S*)\s+table=(\S*)\s*$")


def format_function(f: BooleanFunction) -> str:
    if f.arity < 3:
        digits = format(f.to_int(), "x")
    else:
        digits = np.packbits(f.table, bitorder="little").tobytes().hex()
    return f"n={f.arity} table={digits}"


def parse_function(text: str) -> BooleanFunction:
    """Parse ``n=<arity> table=<hex>``.

    The hex string holds the table as little-endian bytes, two digits per
    byte; arities below 3 use a single digit.
    """
    m = _FN_RE.match(text)
    if not m:
        bad = next((tok for tok in text.split() if not re.match(r"^(n|table)=", tok)), text.strip())
        raise FormatError(f"malformed function text, offending token {bad!r}")
    n_tok, hex_tok = m.groups()
    if not n_tok.isdigit():
        raise FormatError(f"bad arity token 'n={n_tok}'")
    n = int(n_tok)
    if n > MAX_ARITY:
        raise SizeLimitError(f"arity {n} exceeds the limit {MAX_ARITY}")
    if not hex_tok or not re.fullmatch(r"[0-9a-fA-F]+", hex_tok):
        raise FormatError(f"bad hex token 'table={hex_tok}'")
    expected = 1 if n < 3 else 1 << (n - 2)
    if len(hex_tok) != expected:
        raise FormatError(
            f"table length mismatch in 'table={hex_tok}': expected {expected} hex digits for n={n}"
        )
    if n < 3:
        v = int(hex_tok, 16)
        if v >> (1 << n):
            raise FormatError(f"table 'table={hex_tok}' has bits beyond 2**{n} entries")
        return BooleanFunction(n, [(v >> k) & 1 for k in range(1 << n)])
    raw = np.frombuffer(bytes.fromhex(hex_tok), dtype=np.uint8)
    return BooleanFunction(n, np.unpackbits(raw, bitorder="little"))


# Fourier analysis -------------------------------------------------------


def _check_bias(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise PreconditionError(f"bias must lie in (0, 1), got {p}")
    return p


def biased_transform(values: np.ndarray, p: float = 0.5) -> np.ndarray:
    """p-biased Fourier coefficients along the last axis (length 2**n)."""
    p = _check_bias(p)
    a = np.array(values, dtype=float)
    lead, size = a.shape[:-1], a.shape[-1]
    n = size.bit_length() - 1
    q, s = 1.0 - p, math.sqrt(p * (1.0 - p))
    h = 1
    for _ in range(n):
        a = a.reshape(*lead, -1, 2, h)
        v0 = a[..., 0, :].copy()
        v1 = a[..., 1, :].copy()
        a[..., 0, :] = q * v0 + p * v1
        a[..., 1, :] = s * (v0 - v1)
        h <<= 1
    return a.reshape(*lead, size)


def inverse_biased_transform(coeffs: np.ndarray, p: float = 0.5) -> np.ndarray:
    p = _check_bias(p)
    a = np.array(coeffs, dtype=float)
    lead, size = a.shape[:-1], a.shape[-1]
    n = size.bit_length() - 1
    up, down = math.sqrt(p / (1.0 - p)), math.sqrt((1.0 - p) / p)
    h = 1
    for _ in range(n):
        a = a.reshape(*lead, -1, 2, h)
        c0 = a[..., 0, :].copy()
        c1 = a[..., 1, :].copy()
        a[..., 0, :] = c0 + up * c1
        a[..., 1, :] = c0 - down * c1
        h <<= 1
    return a.reshape(*lead, size)


def walsh_spectrum(f: BooleanFunction) -> np.ndarray:
    """Exact integers 2**n * F^(S) of the +-1 view under the uniform measure."""
    a = f.pm.copy()
    h = 1
    for _ in range(f.arity):
        a = a.reshape(-1, 2, h)
        v0 = a[:, 0, :].copy()
        v1 = a[:, 1, :].copy()
        a[:, 0, :] = v0 + v1
        a[:, 1, :] = v0 - v1
        h <<= 1
    return a.reshape(-1)


@dataclass(frozen=True, eq=False)
class FourierExpansion:
    """Coefficients of a real function on {0,1}^n in the mu_p orthonormal basis."""

    arity: int
    bias: float
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.coefficients, dtype=float).reshape(-1)
        if c.size != 1 << self.arity:
            raise PreconditionError("coefficient vector must have length 2**arity")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def __getitem__(self, S: int | Iterable[int]) -> float:
        mask = S if isinstance(S, (int, np.integer)) else mask_of(S)
        return float(self.coefficients[mask])

    @property
    def levels(self) -> np.ndarray:
        return popcounts(self.arity)

    def level_weight(self, d: int) -> float:
        return float(np.sum(self.coefficients[self.levels == d] ** 2))

    def degree(self, tol: float = 1e-12) -> int:
        nz = np.abs(self.coefficients) > tol
        return int(self.levels[nz].max()) if nz.any() else -1

    def values(self) -> np.ndarray:
        return inverse_biased_transform(self.coefficients, self.bias)

    def to_function(self, view: str = "pm", tol: float = 1e-9) -> BooleanFunction:
        """Invert the expansion back to a Boolean function."""
        v = self.values()
        if view == "pm":
            r = np.round(v)
            if np.max(np.abs(v - r)) > tol or not np.all(np.abs(r) == 1):
                raise PreconditionError("expansion is not a +-1 valued function")
            return BooleanFunction.from_pm(r.astype(np.int64))
        r = np.round(v)
        if np.max(np.abs(v - r)) > tol or not np.all((r == 0) | (r == 1)):
            raise PreconditionError("expansion is not a 0/1 valued function")
        return BooleanFunction(self.arity, r.astype(np.uint8))


@functools.lru_cache(maxsize=512)
def _pm_coefficients(f: BooleanFunction, p: float) -> np.ndarray:
    c = biased_transform(f.pm, p)
    c.setflags(write=False)
    return c


def fourier_transform(f: BooleanFunction, view: str = "pm", bias: float = 0.5) -> FourierExpansion:
    if view not in ("pm", "zero-one"):
        raise PreconditionError(f"view must be 'pm' or 'zero-one', got {view!r}")
    bias = _check_bias(bias)
    if view == "pm":
        return FourierExpansion(f.arity, bias, _pm_coefficients(f, bias))
    return FourierExpansion(f.arity, bias, biased_transform(f.table, bias))


def inverse_fourier(e: FourierExpansion) -> np.ndarray:
    return e.values()


def _coord(f: BooleanFunction, i: int) -> int:
    if not 1 <= i <= f.arity:
        raise PreconditionError(f"coordinate {i} out of range 1..{f.arity}")
    return 1 << (i - 1)


def influence(f: BooleanFunction, i: int, p: float = 0.5) -> float:
    bit = _coord(f, i)
    c = _pm_coefficients(f, _check_bias(p))
    sel = (np.arange(c.size) & bit) != 0
    return float(np.sum(c[sel] ** 2))


def low_degree_influence(f: BooleanFunction, i: int, d: int, p: float = 0.5) -> float:
    bit = _coord(f, i)
    c = _pm_coefficients(f, _check_bias(p))
    sel = ((np.arange(c.size) & bit) != 0) & (popcounts(f.arity) <= d)
    return float(np.sum(c[sel] ** 2))


def noisy_influences_from_coefficients(c: np.ndarray, rho: float) -> np.ndarray:
    """Vector of sum_{S containing i} rho**(|S|-1) c(S)**2 for every coordinate.

    ``c`` may carry leading batch axes.
    """
    size = c.shape[-1]
    n = size.bit_length() - 1
    levels = popcounts(n)
    w = c**2 * np.where(levels > 0, float(rho) ** np.maximum(levels - 1, 0), 0.0)
    masks = np.arange(size)
    return np.stack([w[..., (masks >> k) & 1 == 1].sum(axis=-1) for k in range(n)], axis=-1) if n else np.zeros(c.shape[:-1] + (0,))


def noisy_influence(f: BooleanFunction, i: int, rho: float, p: float = 0.5) -> float:
    """sum_{S containing i} rho**(|S|-1) F^(S)**2 under mu_p."""
    bit = _coord(f, i)
    if not 0.0 <= rho <= 1.0:
        raise PreconditionError(f"rho must lie in [0, 1], got {rho}")
    c = _pm_coefficients(f, _check_bias(p))
    levels = popcounts(f.arity)
    sel = (np.arange(c.size) & bit) != 0
    return float(np.sum(float(rho) ** (levels[sel] - 1) * c[sel] ** 2))


def stability_of_values(values: np.ndarray, rho: float, p: float = 0.5) -> np.ndarray:
    """sum_S rho**|S| c(S)**2 for real values given along the last axis."""
    c = biased_transform(values, p)
    n = c.shape[-1].bit_length() - 1
    return np.sum(float(rho) ** popcounts(n) * c**2, axis=-1)


def derivative(f: BooleanFunction, i: int) -> np.ndarray:
    """Values of d_i F = F_{i->1} - F_{i->0} on {0,1}^(n-1), +-1 view."""
    h = _coord(f, i)
    t = f.pm.reshape(-1, 2, h)
    return (t[:, 1, :] - t[:, 0, :]).reshape(-1)


def noisy_influence_via_derivative(f: BooleanFunction, i: int, rho: float, p: float = 0.5) -> float:
    """p(1-p) Stab_rho(d_i F): the derivative form of the noisy influence."""
    p = _check_bias(p)
    return float(p * (1 - p) * stability_of_values(derivative(f, i), rho, p))


def noise_stability(f: BooleanFunction, rho: float, p: float = 0.5) -> float:
    if not -1.0 <= rho <= 1.0:
        raise PreconditionError(f"rho must lie in [-1, 1], got {rho}")
    c = _pm_coefficients(f, _check_bias(p))
    return float(np.sum(float(rho) ** popcounts(f.arity) * c**2))


def noise_sensitivity(f: BooleanFunction, rho: float, p: float = 0.5) -> float:
    """Pr[f(x) != f(y)] for (x, y) ~ N_rho^{mu_p}; rho is the copy probability."""
    return (1.0 - noise_stability(f, rho, p)) / 2.0


def apply_noise(e: FourierExpansion, rho: float) -> FourierExpansion:
    if not -1.0 <= rho <= 1.0:
        raise PreconditionError(f"rho must lie in [-1, 1], got {rho}")
    return FourierExpansion(e.arity, e.bias, e.coefficients * float(rho) ** e.levels)


def character_correlation(f: BooleanFunction, S: int | Iterable[int], p: float = 0.5) -> float:
    mask = S if isinstance(S, (int, np.integer)) else mask_of(S)
    if mask >> f.arity:
        raise PreconditionError(f"set {coords_of(mask)} not contained in [1..{f.arity}]")
    return abs(float(_pm_coefficients(f, _check_bias(p))[mask]))


def measure_weights(n: int, p: float = 0.5) -> np.ndarray:
    """mu_p probability of every input index."""
    p = _check_bias(p)
    k = popcounts(n)
    return p**k * (1.0 - p) ** (n - k)


def distance(f: BooleanFunction, g: BooleanFunction, p: float = 0.5) -> float:
    if f.arity != g.arity:
        raise PreconditionError(f"arity mismatch: {f.arity} vs {g.arity}")
    return float(np.sum(measure_weights(f.arity, p)[f.table != g.table]))


# restrictions -----------------------------------------------------------


@dataclass(frozen=True)
class Restriction:
    """Fixes the coordinates in mask ``fixed`` to the bits of ``values``."""

    fixed: int
    values: int

    def __post_init__(self) -> None:
        if self.fixed < 0 or self.values & ~self.fixed:
            raise PreconditionError("restriction assigns coordinates outside its fixed set")

    def free(self, n: int) -> tuple[int, ...]:
        return tuple(i for i in range(1, n + 1) if not self.fixed >> (i - 1) & 1)


def restrict(f: BooleanFunction, r: Restriction) -> BooleanFunction:
    """The restriction on the free coordinates, kept in increasing order."""
    if r.fixed >> f.arity:
        raise PreconditionError(f"restriction fixes coordinates beyond arity {f.arity}")
    free = np.array(r.free(f.arity), dtype=np.int64)
    y = input_bits(free.size).astype(np.int64)
    idx = r.values + ((y << (free - 1)).sum(axis=1) if free.size else 0)
    return BooleanFunction(int(free.size), f.table[np.atleast_1d(idx)])


def random_restriction(n: int, p: float, seed: int = 0) -> Restriction:
    """Each coordinate stays free with probability p; fixed ones get uniform bits."""
    rng = np.random.default_rng(seed)
    free = rng.random(n) < p
    bits = rng.integers(0, 2, size=n)
    fixed = sum(1 << k for k in range(n) if not free[k])
    values = sum(1 << k for k in range(n) if not free[k] and bits[k])
    return Restriction(fixed, values)


def restriction_tables(f: BooleanFunction, coords: Sequence[int]) -> np.ndarray:
    """Tables of f_{coords -> z} for every z, shape (2**|coords|, 2**(n-|coords|)).

    Row z uses bit k of z for coordinate coords[k]; the free coordinates keep
    their relative order.
    """
    coords = list(coords)
    free = [i for i in range(1, f.arity + 1) if i not in coords]
    z = input_bits(len(coords)).astype(np.int64)
    y = input_bits(len(free)).astype(np.int64)
    zi = (z << (np.array(coords, dtype=np.int64) - 1)).sum(axis=1) if coords else np.zeros(1, np.int64)
    yi = (y << (np.array(free, dtype=np.int64) - 1)).sum(axis=1) if free else np.zeros(1, np.int64)
    return f.table[zi[:, None] + yi[None, :]]


# noisy pairs ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NoisyPairSample:
    x: np.ndarray
    y: np.ndarray
    rho: float
    bias: float


def sample_noisy_pair(n: int, rho: float, p: float = 0.5, size: int = 1, seed: int = 0) -> NoisyPairSample:
    """Draw from N_rho^{mu_p}: x ~ mu_p, each y_i copies x_i w.p. rho, else is redrawn from mu_p."""
    p = _check_bias(p)
    rng = np.random.default_rng(seed)
    x = (rng.random((size, n)) < p).astype(np.uint8)
    fresh = (rng.random((size, n)) < p).astype(np.uint8)
    keep = rng.random((size, n)) < rho
    return NoisyPairSample(x, np.where(keep, x, fresh), float(rho), p)


# certificates -----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """An assignment to all coordinates but ``pivot``.

    For a sensitive certificate ``b`` is set and g(assignment, x_pivot) = x_pivot xor b.
    """

    pivot: int
    assignment: tuple[tuple[int, int], ...]
    b: int | None = None


@dataclass(frozen=True)
class Certificates:
    alpha: Certificate | None
    beta: Certificate


def find_certificates(g: BooleanFunction) -> Certificates:
    """Non-sensitive (alpha) and sensitive (beta) certificates of g.

    Pivots are tried from the last coordinate down; assignments in index order.
    ``alpha`` is None exactly when g is a parity of all its inputs (or its negation).
    """
    m = g.arity
    if m == 0:
        raise PreconditionError("g must have at least one coordinate")
    missing = [j for j in range(1, m + 1) if not g.depends_on(j)]
    if missing:
        raise PreconditionError(f"g does not depend on coordinate(s) {missing}")

    def pairs(pivot: int):
        h = 1 << (pivot - 1)
        t = g.table.reshape(-1, 2, h)
        others = [j for j in range(1, m + 1) if j != pivot]
        for k, row in enumerate(input_bits(m - 1)):
            hi, lo = divmod(sum(int(b) << (others[a] - 1) for a, b in enumerate(row)) if others else 0, 2 * h)
            yield tuple(zip(others, (int(b) for b in row))), int(t[hi, 0, lo]), int(t[hi, 1, lo])

    alpha = None
    for pivot in range(m, 0, -1):
        for assignment, v0, v1 in pairs(pivot):
            if v0 == v1:
                alpha = Certificate(pivot, assignment)
                break
        if alpha:
            break
    pivot = alpha.pivot if alpha else m
    beta = next(Certificate(pivot, a, v0) for a, v0, v1 in pairs(pivot) if v0 != v1)
    return Certificates(alpha, beta)
