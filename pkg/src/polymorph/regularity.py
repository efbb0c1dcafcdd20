"""Regularity of Boolean functions and the greedy noisy-influence algorithms.

Both algorithms grow a set (junta variant) or a decision tree of queried
variables.  Each round picks, for every restriction that is not noisy-regular
under some bias, the free variable of largest noisy influence.  The potential

    phi = sum over biases p of E_{restriction ~ mu_p} Stab_{1-delta}(restricted f)

never exceeds the number of biases and grows by more than eps*delta*tau per
round, which bounds the number of rounds.  Both facts are checked at run time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .boolfn import (
    BooleanFunction,
    Restriction,
    biased_transform,
    low_degree_influence,
    noise_stability,
    noisy_influence,
    noisy_influences_from_coefficients,
    popcounts,
    restrict,
    restriction_tables,
)
from .errors import PreconditionError, SizeLimitError

MAX_REGULARITY_ARITY = 20
_SLACK = 1e-12


@dataclass(frozen=True)
class RegularityConfig:
    d: int = 1
    tau: float = 0.1
    delta: float = 0.5
    epsilon: float = 0.1
    biases: tuple[float, ...] = (0.5,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "biases", tuple(float(p) for p in self.biases))
        if self.d < 1:
            raise PreconditionError(f"d must be at least 1, got {self.d}")
        if not self.tau > 0:
            raise PreconditionError(f"tau must be positive, got {self.tau}")
        if not 0 < self.delta < 1:
            raise PreconditionError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0 < self.epsilon < 1:
            raise PreconditionError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.biases or any(not 0 < p < 1 for p in self.biases):
            raise PreconditionError(f"biases must be a nonempty list in (0, 1), got {self.biases}")

    @property
    def rho(self) -> float:
        return 1.0 - self.delta

    @property
    def round_bound(self) -> float:
        """l / (eps * delta * tau)."""
        return len(self.biases) / (self.epsilon * self.delta * self.tau)


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    coordinate: int | None
    value: float


def regularity_check(f: BooleanFunction, config: RegularityConfig, p: float = 0.5, mode: str = "low-degree") -> RegularityResult:
    """Whether every (low-degree or noisy) influence is at most tau.

    ``coordinate`` is the coordinate of largest influence (lowest index on
    ties), reported whether or not the check passes; None for arity 0.
    """
    if mode == "low-degree":
        vals = [low_degree_influence(f, i, config.d, p) for i in range(1, f.arity + 1)]
    elif mode == "noisy":
        vals = [noisy_influence(f, i, config.rho, p) for i in range(1, f.arity + 1)]
    else:
        raise PreconditionError(f"mode must be 'low-degree' or 'noisy', got {mode!r}")
    if not vals:
        return RegularityResult(True, None, 0.0)
    k = int(np.argmax(vals))
    return RegularityResult(bool(vals[k] <= config.tau), k + 1, float(vals[k]))


def noisy_to_lowdegree(config: RegularityConfig) -> RegularityConfig:
    """Noisy-regularity parameters (delta = 1/d capped at 1/2, tau' = (1-delta)^d tau).

    A function that is (delta, tau')-noisy-regular is (d, tau)-regular.
    """
    delta = min(1.0 / config.d, 0.5)
    return RegularityConfig(config.d, (1 - delta) ** config.d * config.tau, delta, config.epsilon, config.biases)


# restriction statistics -------------------------------------------------


@dataclass(frozen=True)
class _LeafStats:
    weights: np.ndarray  # (leaves,) mu_p mass
    stability: np.ndarray  # (leaves,)
    noisy: np.ndarray  # (leaves, n) noisy influence per original coordinate (0 on fixed ones)


def _leaf_stats(f: BooleanFunction, leaves: Sequence[Restriction], rho: float, p: float) -> _LeafStats:
    """Stability and noisy influences of f restricted to every leaf, under mu_p."""
    n = f.arity
    weights, stab = np.empty(len(leaves)), np.empty(len(leaves))
    noisy = np.zeros((len(leaves), n))
    groups: dict[int, list[int]] = {}
    for k, r in enumerate(leaves):
        groups.setdefault(r.fixed, []).append(k)
    for fixed, members in groups.items():
        coords = [i for i in range(1, n + 1) if fixed >> (i - 1) & 1]
        free = [i for i in range(1, n + 1) if not fixed >> (i - 1) & 1]
        tabs = restriction_tables(f, coords)
        rows = np.array([_assignment_row(leaves[k], coords) for k in members], dtype=np.int64)
        vals = 1.0 - 2.0 * tabs[rows]
        c = biased_transform(vals, p)
        stab[members] = np.sum(rho ** popcounts(len(free)) * c**2, axis=1)
        if free:
            noisy[np.ix_(members, [i - 1 for i in free])] = noisy_influences_from_coefficients(c, rho)
        ones = np.array([bin(leaves[k].values).count("1") for k in members])
        weights[members] = p**ones * (1 - p) ** (len(coords) - ones)
    return _LeafStats(weights, stab, noisy)


def _assignment_row(r: Restriction, coords: Sequence[int]) -> int:
    return sum(((r.values >> (i - 1)) & 1) << k for k, i in enumerate(coords))


def _all_assignments(T: Sequence[int]) -> list[Restriction]:
    fixed = sum(1 << (i - 1) for i in T)
    out = []
    for z in range(1 << len(T)):
        out.append(Restriction(fixed, sum(((z >> k) & 1) << (i - 1) for k, i in enumerate(T))))
    return out


def _check_arity(f: BooleanFunction) -> None:
    if f.arity > MAX_REGULARITY_ARITY:
        raise SizeLimitError(f"regularity algorithms support arity <= {MAX_REGULARITY_ARITY}")


# decision trees ---------------------------------------------------------


@dataclass
class RestrictionTree:
    """A decision tree; a leaf has ``var`` None and carries its restriction."""

    restriction: Restriction = field(default_factory=lambda: Restriction(0, 0))
    var: int | None = None
    children: tuple["RestrictionTree", "RestrictionTree"] | None = None

    def leaves(self) -> list["RestrictionTree"]:
        if self.var is None:
            return [self]
        return self.children[0].leaves() + self.children[1].leaves()

    @property
    def depth(self) -> int:
        if self.var is None:
            return 0
        return 1 + max(c.depth for c in self.children)

    def split(self, var: int) -> None:
        if self.var is not None:
            raise PreconditionError("only leaves can be split")
        bit = 1 << (var - 1)
        if self.restriction.fixed & bit:
            raise PreconditionError(f"variable {var} already fixed on this path")
        r = self.restriction
        self.var = var
        self.children = (
            RestrictionTree(Restriction(r.fixed | bit, r.values)),
            RestrictionTree(Restriction(r.fixed | bit, r.values | bit)),
        )

    def leaf_weights(self, p: float) -> np.ndarray:
        """mu_p(T): the probability of reaching each leaf."""
        out = []
        for leaf in self.leaves():
            r = leaf.restriction
            ones = bin(r.values).count("1")
            out.append(p**ones * (1 - p) ** (bin(r.fixed).count("1") - ones))
        return np.array(out)

    def to_text(self) -> str:
        """Bracketed form: ``[i <0-subtree> <1-subtree>]`` with ``.`` for leaves."""
        if self.var is None:
            return "."
        return f"[{self.var} {self.children[0].to_text()} {self.children[1].to_text()}]"


# potential --------------------------------------------------------------


def _leaves_of(f: BooleanFunction, T) -> list[Restriction]:
    if isinstance(T, RestrictionTree):
        return [leaf.restriction for leaf in T.leaves()]
    T = sorted(set(T))
    if any(not 1 <= i <= f.arity for i in T):
        raise PreconditionError(f"set {T} is not contained in [1..{f.arity}]")
    return _all_assignments(T)


def stability_potential(f: BooleanFunction, T, rho: float, biases: Sequence[float]) -> float:
    """sum_k E_{z ~ mu_{p_k}} Stab_rho(f restricted by z), for a set T or a tree."""
    _check_arity(f)
    leaves = _leaves_of(f, T)
    return float(sum(np.dot(s.weights, s.stability) for s in (_leaf_stats(f, leaves, rho, p) for p in biases)))


def jones_step_identity_check(f: BooleanFunction, i: int, rho: float, p: float) -> tuple[float, float, float]:
    """(E_a Stab(f_{i->a}), Stab(f) + (1-rho) * noisy influence, difference)."""
    if not 1 <= i <= f.arity:
        raise PreconditionError(f"coordinate {i} out of range 1..{f.arity}")
    bit = 1 << (i - 1)
    lhs = (1 - p) * noise_stability(restrict(f, Restriction(bit, 0)), rho, p)
    lhs += p * noise_stability(restrict(f, Restriction(bit, bit)), rho, p)
    rhs = noise_stability(f, rho, p) + (1 - rho) * noisy_influence(f, i, rho, p)
    return lhs, rhs, abs(lhs - rhs)


# greedy algorithms ------------------------------------------------------


@dataclass
class JonesReport:
    rounds: int
    depth: int
    potential_trace: list[float]
    regular_fraction_per_bias: dict[float, float]
    round_bound: float
    junta: list[int] | None = None

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "rounds": self.rounds,
            "depth": self.depth,
            "potential_trace": self.potential_trace,
            "regular_fraction_per_bias": {str(k): v for k, v in self.regular_fraction_per_bias.items()},
            "round_bound": self.round_bound,
        }
        if self.junta is not None:
            out["junta"] = self.junta
        return out


def _survey(f, leaves, config):
    """Per bias: stats, regular mask over leaves and offending coordinates."""
    out = []
    for p in config.biases:
        s = _leaf_stats(f, leaves, config.rho, p)
        worst = np.argmax(s.noisy, axis=1) if f.arity else np.zeros(len(leaves), dtype=int)
        top = s.noisy[np.arange(len(leaves)), worst] if f.arity else np.zeros(len(leaves))
        regular = top <= config.tau
        out.append((p, s, regular, worst + 1))
    return out


def _potential(survey) -> float:
    return float(sum(np.dot(s.weights, s.stability) for _, s, _, _ in survey))


def _fractions(survey) -> dict[float, float]:
    return {p: float(np.dot(s.weights, regular)) for p, s, regular, _ in survey}


def _advance(trace: list[float], phi: float, config: RegularityConfig, rounds: int) -> None:
    gain = config.epsilon * config.delta * config.tau
    if phi < trace[-1] + gain - _SLACK:
        raise RuntimeError(f"potential grew by {phi - trace[-1]:.3g} < eps*delta*tau = {gain:.3g}")
    if phi > len(config.biases) + _SLACK:
        raise RuntimeError(f"potential {phi} exceeds the number of biases")
    if rounds > config.round_bound:
        raise RuntimeError(f"{rounds} rounds exceed the bound {config.round_bound:.3g}")
    trace.append(phi)


def _failing_bias(survey, epsilon: float):
    for p, s, regular, worst in survey:
        if np.dot(s.weights, ~regular) > epsilon:
            return regular, worst
    return None


def jones_junta(f: BooleanFunction, config: RegularityConfig) -> tuple[list[int], JonesReport]:
    """Grow a set T until every bias sees noisy-regular restrictions with probability >= 1 - eps."""
    _check_arity(f)
    T: list[int] = []
    survey = _survey(f, _all_assignments(T), config)
    trace = [_potential(survey)]
    rounds = 0
    while (fail := _failing_bias(survey, config.epsilon)) is not None:
        regular, worst = fail
        T = sorted(set(T) | {int(worst[k]) for k in np.flatnonzero(~regular)})
        rounds += 1
        survey = _survey(f, _all_assignments(T), config)
        _advance(trace, _potential(survey), config, rounds)
    return T, JonesReport(rounds, len(T), trace, _fractions(survey), config.round_bound, junta=T)


def jones_decision_tree(f: BooleanFunction, config: RegularityConfig) -> tuple[RestrictionTree, JonesReport]:
    """Same greedy, querying one variable per failing leaf so the tree deepens by at most one per round."""
    _check_arity(f)
    tree = RestrictionTree()
    survey = _survey(f, [tree.restriction], config)
    trace = [_potential(survey)]
    rounds = 0
    while (fail := _failing_bias(survey, config.epsilon)) is not None:
        regular, worst = fail
        leaves = tree.leaves()
        for k in np.flatnonzero(~regular):
            leaves[k].split(int(worst[k]))
        rounds += 1
        survey = _survey(f, [leaf.restriction for leaf in tree.leaves()], config)
        _advance(trace, _potential(survey), config, rounds)
    return tree, JonesReport(rounds, tree.depth, trace, _fractions(survey), config.round_bound)


def tree_regular_fraction(f: BooleanFunction, tree: RestrictionTree, config: RegularityConfig, mode: str = "noisy") -> dict[float, float]:
    """Re-check a tree leaf by leaf with regularity_check, weighting leaves by mu_p(T)."""
    out = {}
    for p in config.biases:
        w = tree.leaf_weights(p)
        ok = [regularity_check(restrict(f, leaf.restriction), config, p, mode).regular for leaf in tree.leaves()]
        out[p] = float(np.dot(w, ok))
    return out


def restriction_variance_profile(f: BooleanFunction, p: float, trials: int, seed: int = 0) -> np.ndarray:
    """Variance 1 - E[F]^2 of f under independent p-random restrictions (uniform measure)."""
    rng = np.random.default_rng(seed)
    out = np.empty(trials)
    n = f.arity
    for t in range(trials):
        free = rng.random(n) < p
        bits = rng.integers(0, 2, size=n)
        fixed = sum(1 << k for k in range(n) if not free[k])
        values = sum(1 << k for k in range(n) if not free[k] and bits[k])
        mean = float(restrict(f, Restriction(fixed, values)).pm.mean())
        out[t] = 1.0 - mean * mean
    return out


__all__ = [
    "RegularityConfig",
    "RegularityResult",
    "RestrictionTree",
    "JonesReport",
    "regularity_check",
    "noisy_to_lowdegree",
    "stability_potential",
    "jones_step_identity_check",
    "jones_junta",
    "jones_decision_tree",
    "tree_regular_fraction",
    "restriction_variance_profile",
]
