"""Vectorised exactness checks over many candidate tuples at once.

Functions are handled by their integer code (``BooleanFunction.to_int``), so a
candidate tuple is just a tuple of ints.  Tuples follow the layout used across
the classify package: ``(f,)`` for plain, ``(f0, f1)`` for skew and
``(f0, f1, ..., fm)`` for multi.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from ..boolfn import BooleanFunction, input_bits
from ..errors import PreconditionError, SizeLimitError

KINDS = ("plain", "skew", "multi")
TUPLE_BUDGET = 1 << 16
_CELLS = 1 << 24


def all_tables(n: int) -> np.ndarray:
    """Row k is the truth table of the function with code k."""
    if n > 4:
        raise SizeLimitError(f"cannot list all functions of arity {n}")
    return input_bits(1 << n)


def table_of(code: int, n: int) -> np.ndarray:
    return all_tables(n)[code] if n <= 4 else np.array([(code >> k) & 1 for k in range(1 << n)], dtype=np.uint8)


def function_of(code: int, n: int) -> BooleanFunction:
    return BooleanFunction(n, table_of(code, n))


@functools.lru_cache(maxsize=64)
def matrix_maps(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Row indices (Z, n) into g and column indices (Z, m) into f for every matrix Z."""
    z = np.arange(1 << (n * m), dtype=np.int64)
    rows = np.stack([(z >> (i * m)) & ((1 << m) - 1) for i in range(n)], axis=1) if n else np.zeros((z.size, 0), np.int64)
    cols = np.zeros((z.size, m), dtype=np.int64)
    for j in range(m):
        for i in range(n):
            cols[:, j] |= ((z >> (i * m + j)) & 1) << i
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


def lhs_rows(F0: np.ndarray, g: BooleanFunction, n: int) -> np.ndarray:
    """f0(g(row_1), ..., g(row_n)) for a batch of f0 tables, shape (B, 2**(n*m))."""
    rows, _ = matrix_maps(n, g.arity)
    idx = (g.table[rows].astype(np.int64) << np.arange(n)).sum(axis=1)
    return F0[:, idx]


def rhs_rows(Fs: list[np.ndarray], h: BooleanFunction, n: int) -> np.ndarray:
    """h(f_1(col_1), ..., f_m(col_m)) for batches of column-function tables."""
    m = h.arity
    _, cols = matrix_maps(n, m)
    idx = np.zeros((Fs[0].shape[0], cols.shape[0]), dtype=np.int64)
    for j in range(m):
        idx |= Fs[j][:, cols[:, j]].astype(np.int64) << j
    return h.table[idx]


def check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got {kind!r}")


def exact_mask(kind: str, tuples: list[tuple[int, ...]], g: BooleanFunction, n: int) -> np.ndarray:
    """Boolean array: which candidate tuples are exact solutions for g."""
    check_kind(kind)
    m = g.arity
    if not tuples:
        return np.zeros(0, dtype=bool)
    codes = np.array(tuples, dtype=np.int64)
    width = {"plain": 1, "skew": 2, "multi": m + 1}[kind]
    if codes.shape[1] != width:
        raise PreconditionError(f"{kind} tuples need {width} functions, got {codes.shape[1]}")
    T = all_tables(n)
    step = max(1, _CELLS // (1 << (n * m)))
    out = np.empty(len(codes), dtype=bool)
    for lo in range(0, len(codes), step):
        c = codes[lo:lo + step]
        F0 = T[c[:, 0]]
        if kind == "plain":
            Fs = [F0] * m
        elif kind == "skew":
            Fs = [T[c[:, 1]]] * m
        else:
            Fs = [T[c[:, j]] for j in range(1, m + 1)]
        out[lo:lo + step] = np.all(lhs_rows(F0, g, n) == rhs_rows(Fs, g, n), axis=1)
    return out


def _row_keys(rows: np.ndarray) -> list[bytes]:
    packed = np.packbits(rows, axis=1)
    return [r.tobytes() for r in packed]


def enumerate_codes(kind: str, g: BooleanFunction, n: int, h: BooleanFunction | None = None) -> list[tuple[int, ...]]:
    """All exact solutions as code tuples, sorted.

    Left and right sides are tabulated separately for every candidate and
    matched by hashing their value rows, so the search is exhaustive.
    """
    check_kind(kind)
    m = g.arity
    h = h or g
    if n > 4 or (1 << (1 << n)) > TUPLE_BUDGET:
        raise SizeLimitError(f"2^(2^{n}) functions exceeds the enumeration budget")
    nf = 1 << (1 << n)
    if kind == "skew" and n > 3:
        raise SizeLimitError("skew enumeration supports n <= 3")
    if kind == "multi" and nf**m > TUPLE_BUDGET:
        raise SizeLimitError(f"{nf}^{m} column tuples exceeds the multi enumeration budget {TUPLE_BUDGET}")
    if n * m > 16:
        raise SizeLimitError(f"n*m = {n * m} too large for enumeration")
    T = all_tables(n)
    if kind == "plain":
        return [(k,) for k in np.flatnonzero(exact_mask("plain", [(k,) for k in range(nf)], g, n)).tolist()]
    left: dict[bytes, list[int]] = {}
    for k, key in enumerate(_row_keys(lhs_rows(T, g, n))):
        left.setdefault(key, []).append(k)
    if kind == "skew":
        right = _row_keys(rhs_rows([T] * m, h, n))
        out = [(f0, f1) for f1, key in enumerate(right) for f0 in left.get(key, ())]
    else:
        combos = np.array(list(itertools.product(range(nf), repeat=m)), dtype=np.int64).reshape(-1, m)
        right = _row_keys(rhs_rows([T[combos[:, j]] for j in range(m)], h, n))
        out = [(f0, *map(int, combos[r])) for r, key in enumerate(right) for f0 in left.get(key, ())]
    return sorted(out)
