"""Connectivity of (g(x), x) after interleaving g between two coupled coordinates.

Everything is in the +-1 view.  A distribution on {-1,1}^k is connected when,
for every cut 1 <= i < k, the bipartite graph joining prefix projections to
suffix projections through support points is connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .boolfn import BooleanFunction, input_bits
from .errors import PreconditionError, SizeLimitError

MAX_FACTOR_ARITY = 6

Point = tuple[int, ...]


@dataclass(frozen=True)
class SupportDistribution:
    k: int
    probabilities: dict[Point, Fraction]

    def __post_init__(self) -> None:
        for pt, pr in self.probabilities.items():
            if len(pt) != self.k or any(v not in (-1, 1) for v in pt):
                raise PreconditionError(f"support point {pt} is not in {{-1,1}}^{self.k}")
            if pr <= 0:
                raise PreconditionError(f"probability of {pt} must be positive")
        if sum(self.probabilities.values(), Fraction(0)) != 1:
            raise PreconditionError("probabilities must sum to 1")

    @property
    def support(self) -> list[Point]:
        return sorted(self.probabilities, reverse=True)


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    failing_index: int | None = None


def is_connected_distribution(d: SupportDistribution) -> Connectivity:
    """Check every prefix/suffix graph G_i, i = 1..k-1; report the first disconnected one."""
    pts = d.support
    for i in range(1, d.k):
        ds = DisjointSet()
        for pt in pts:
            left, right = ("L",) + pt[:i], ("R",) + pt[i:]
            ds.add(left)
            ds.add(right)
            ds.merge(left, right)
        if ds.n_subsets != 1:
            return Connectivity(False, i)
    return Connectivity(True)


def _factors_across(pm: np.ndarray, m: int, A: int) -> bool:
    """g(a,b) g(a0,b) g(a,b0) g(a0,b0) = 1 for all a, b, with a0 = b0 = 0."""
    idx = np.arange(1 << m)
    a, b = idx & A, idx & ~A & ((1 << m) - 1)
    return bool(np.all(pm * pm[b] * pm[a] * pm[0] == 1))


def decompose_product_factors(g: BooleanFunction) -> list[tuple[int, ...]]:
    """Finest partition of [m] with g a product of +-1 functions on the blocks.

    The splits (A, complement) that g factors across form a Boolean algebra;
    its atoms are the blocks.
    """
    m = g.arity
    if m > MAX_FACTOR_ARITY:
        raise SizeLimitError(f"factor search supports m <= {MAX_FACTOR_ARITY}, got {m}")
    if m == 0:
        return []
    pm = g.pm.astype(np.int64)
    full = (1 << m) - 1
    splits = [A for A in range(1, full) if _factors_across(pm, m, A)]
    blocks, seen = [], 0
    for j in range(m):
        if seen >> j & 1:
            continue
        atom = full
        for A in splits:
            atom &= A if A >> j & 1 else full & ~A
        blocks.append(tuple(i + 1 for i in range(m) if atom >> i & 1))
        seen |= atom
    _check_product(pm, m, blocks)
    return blocks


def _check_product(pm: np.ndarray, m: int, blocks: list[tuple[int, ...]]) -> None:
    idx = np.arange(1 << m)
    rebuilt = np.full(1 << m, int(pm[0]) ** (len(blocks) - 1), dtype=np.int64)
    for S in blocks:
        mask = sum(1 << (i - 1) for i in S)
        rebuilt = rebuilt * pm[idx & mask]
    if not np.array_equal(rebuilt, pm):
        raise RuntimeError(f"blocks {blocks} do not multiply back to g")


def reorder_for_connectivity(g: BooleanFunction) -> tuple[tuple[int, ...], SupportDistribution]:
    """Order (x_a, ..., g(x), x_b) with a, b in one indecomposable block, plus its uniform law.

    The returned permutation lists original coordinates in their new order;
    g is inserted just before the last one.
    """
    m = g.arity
    missing = [j for j in range(1, m + 1) if not g.depends_on(j)]
    if m == 0 or missing:
        raise PreconditionError(f"g does not depend on coordinate(s) {missing or 'any'}")
    blocks = decompose_product_factors(g)
    big = [S for S in blocks if len(S) >= 2]
    if not big:
        raise PreconditionError("g is a signed parity of its inputs (every factor block is a singleton)")
    a, b = big[0][0], big[0][-1]
    order = (a,) + tuple(j for j in range(1, m + 1) if j not in (a, b)) + (b,)
    x = 1 - 2 * input_bits(m).astype(np.int64)
    cols = [x[:, j - 1] for j in order]
    pts = np.column_stack(cols[:-1] + [g.pm.astype(np.int64), cols[-1]])
    w = Fraction(1, 1 << m)
    probs: dict[Point, Fraction] = {}
    for row in pts:
        key = tuple(int(v) for v in row)
        probs[key] = probs.get(key, Fraction(0)) + w
    return order, SupportDistribution(m + 1, probs)


def admissible(g: BooleanFunction) -> bool:
    """Depends on every coordinate and is not a signed parity."""
    if g.arity == 0 or any(not g.depends_on(j) for j in range(1, g.arity + 1)):
        return False
    return any(len(S) >= 2 for S in decompose_product_factors(g))


def connectivity_sweep(gs) -> list[tuple[BooleanFunction, tuple[int, ...], Connectivity]]:
    """Reorder and test each admissible g; returns only failures."""
    bad = []
    for g in gs:
        if not admissible(g):
            continue
        order, d = reorder_for_connectivity(g)
        c = is_connected_distribution(d)
        if not c.connected:
            bad.append((g, order, c))
    return bad
