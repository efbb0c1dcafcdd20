"""Case lists for exact plain, skew and multi polymorphisms.

``generate_family`` instantiates every case over all parameter choices for a
fixed g; ``match_case`` goes the other way and labels a known solution.
Matching precedence when cases overlap: constants, dictators and
anti-dictators (including shifted dictators), parities, OR/AND families,
mixed OR/AND families, certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ..boolfn import BooleanFunction, coords_of, format_function, make_named, parse_function, walsh_spectrum
from ..compose import is_exact, sides_for
from ..errors import PreconditionError, SizeLimitError
from .engine import all_tables, check_kind, enumerate_codes, exact_mask, function_of

FAMILY_BUDGET = 1 << 22
PRECEDENCE = (
    "Constant", "Dictator", "AntiDictator", "XorFamily", "OrFamily", "AndFamily",
    "MixedOrAnd", "CertificateCase", "Unclassified",
)


@dataclass(frozen=True)
class CaseLabel:
    """One case of a classification theorem together with its parameters.

    ``params`` always carries ``n`` and ``m``; functions that the case leaves
    unconstrained (or constrains only implicitly) are stored as hex text under
    ``free`` so that :meth:`instantiate` reproduces the tuple bit for bit.
    """

    kind: str
    name: str
    params: dict = field(default_factory=dict)

    @property
    def classified(self) -> bool:
        return self.name != "Unclassified"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "case": self.name, "parameters": self.params}

    def instantiate(self) -> tuple[tuple[BooleanFunction, ...], BooleanFunction]:
        """Rebuild (functions, g) from the parameters."""
        return _build(self)


# shape detection --------------------------------------------------------


def constant_value(f: BooleanFunction) -> int | None:
    return int(f.table[0]) if f.is_constant() else None


def dictator_index(f: BooleanFunction) -> int | None:
    for i in range(1, f.arity + 1):
        if f == make_named("dictator", f.arity, index=i):
            return i
    return None


def antidictator_index(f: BooleanFunction) -> int | None:
    return dictator_index(f.negation()) if f.arity else None


def xor_params(f: BooleanFunction) -> tuple[tuple[int, ...], int] | None:
    """(I, a) with f = XOR_I + a, if f is an affine parity."""
    w = walsh_spectrum(f)
    nz = np.flatnonzero(w)
    if nz.size != 1:
        return None
    return coords_of(int(nz[0])), int(f.table[0])


def literal_form(f: BooleanFunction, outer: str) -> tuple[tuple[int, ...], dict[int, int]] | None:
    """(I, a) with f = OR_{i in I}(x_i + a_i) (or AND), if f has that shape."""
    rel = f.relevant()
    t = f.on_coordinates(rel).table
    special = 0 if outer == "or" else 1
    pts = np.flatnonzero(t == special)
    if pts.size != 1 or (not rel and t[0] != special):
        return None
    point = int(pts[0])
    bits = {i: (point >> k) & 1 for k, i in enumerate(rel)}
    return rel, bits if outer == "or" else {i: 1 - b for i, b in bits.items()}


def monotone_set(f: BooleanFunction, outer: str) -> tuple[int, ...] | None:
    lf = literal_form(f, outer)
    if lf is None or any(lf[1].values()):
        return None
    return lf[0]


# construction helpers ---------------------------------------------------


def _xor(n: int, I, a: int) -> BooleanFunction:
    return make_named("xor", n, I=I, shift=a)


def _lit(outer: str, n: int, I, a: dict[int, int] | None = None) -> BooleanFunction:
    base = make_named(outer, n, I=I)
    a = a or {}
    flip = sum(1 << (i - 1) for i, b in a.items() if b)
    return BooleanFunction(n, base.table[np.arange(1 << n) ^ flip])


def _neg_in_out(f: BooleanFunction) -> BooleanFunction:
    """x -> not f(not x)."""
    return f.flip_inputs().negation()


def _hex(f: BooleanFunction) -> str:
    return format_function(f)


def _slots(kind: str, m: int) -> list[str]:
    if kind == "plain":
        return ["f"]
    if kind == "skew":
        return ["f0", "f1"]
    return [f"f{j}" for j in range(m + 1)]


def _other(outer: str) -> str:
    return "and" if outer == "or" else "or"


# instantiation ----------------------------------------------------------


def _build(label: CaseLabel) -> tuple[tuple[BooleanFunction, ...], BooleanFunction]:
    p = label.params
    n, m, kind, name = p["n"], p["m"], label.kind, label.name
    side = p.get("side")
    s: dict[str, BooleanFunction] = {k: parse_function(v) for k, v in p.get("free", {}).items()}
    if name == "Constant":
        if side == "g":
            s["g"] = BooleanFunction.constant(m, p["b"])
        elif kind == "plain":
            s["f"] = BooleanFunction.constant(n, p["b"])
        else:
            s["f0"] = BooleanFunction.constant(n, p["a0"])
            s["f1"] = BooleanFunction.constant(n, p["a1"])
    elif name in ("Dictator", "AntiDictator") and side == "g":
        i = p["i"]
        s["g"] = make_named("dictator" if name == "Dictator" else "anti-dictator", m, index=i)
        src = s["f"] if kind == "plain" else s[f"f{i}" if kind == "multi" else "f1"]
        if kind != "plain":
            s["f0"] = src if name == "Dictator" else _neg_in_out(src)
    elif name == "Dictator":
        i = p["i"]
        if kind == "multi":
            for j, a in p["a"].items():
                s[f"f{j}"] = _xor(n, [i], a)
        else:
            for k in _slots(kind, m):
                s[k] = make_named("dictator", n, index=i)
    elif name == "AntiDictator":
        i = p["i"]
        if kind == "plain":
            s["f"] = make_named("anti-dictator", n, index=i)
        else:
            s["f1"] = make_named("anti-dictator", n, index=i)
            s["f0"] = s["f1"] if p["g_parity"] == "odd" else make_named("dictator", n, index=i)
    elif name == "XorFamily":
        I, J = p["I"], p["J"]
        s["g"] = _xor(m, J, p["b"])
        if kind == "plain":
            s["f"] = _xor(n, I, p["a"])
        else:
            for j, a in p["a"].items():
                s[f"f{j}"] = _xor(n, I, a)
    elif name in ("OrFamily", "AndFamily", "MixedOrAnd"):
        outer = p.get("outer", "or" if name == "OrFamily" else "and")
        I, J = p["I"], p["J"]
        flips = {int(j): b for j, b in p.get("flips", {}).items()}
        s["g"] = _lit(outer, m, J, flips)
        if kind == "plain":
            s["f"] = make_named(outer, n, I=I)
        elif kind == "skew":
            s["f0"] = make_named(outer, n, I=I)
            s["f1"] = make_named(_other(outer) if flips else outer, n, I=I)
        else:
            s["f0"] = make_named(outer, n, I=I)
            for j in J:
                s[f"f{j}"] = make_named(_other(outer) if flips.get(j) else outer, n, I=I)
    elif name == "CertificateCase":
        s["f0"] = BooleanFunction.constant(n, p["a0"])
        for j, b in p["a"].items():
            s[f"f{j}"] = BooleanFunction.constant(n, b)
    else:
        raise PreconditionError(f"cannot instantiate case {name!r}")
    return tuple(s[k] for k in _slots(kind, m)), s["g"]


# matching ---------------------------------------------------------------


def _label(kind, name, n, m, free: dict[str, BooleanFunction] | None = None, **params) -> CaseLabel:
    params = {"n": n, "m": m, **params}
    if free:
        params["free"] = {k: _hex(v) for k, v in free.items()}
    return CaseLabel(kind, name, params)


def _xor_condition_plain(I, J, a, b) -> bool:
    return (a * (len(J) - 1)) % 2 == (b * (len(I) - 1)) % 2


def _match_plain(f: BooleanFunction, g: BooleanFunction) -> CaseLabel:
    n, m = f.arity, g.arity
    ones_n, ones_m = (1 << n) - 1, (1 << m) - 1
    cg, cf = constant_value(g), constant_value(f)
    if cg is not None and f.table[cg * ones_n] == cg:
        return _label("plain", "Constant", n, m, {"f": f}, side="g", b=cg)
    if cf is not None and g.table[cf * ones_m] == cf:
        return _label("plain", "Constant", n, m, {"g": g}, side="f", b=cf)
    if (i := dictator_index(g)) is not None:
        return _label("plain", "Dictator", n, m, {"f": f}, side="g", i=i)
    if (i := dictator_index(f)) is not None:
        return _label("plain", "Dictator", n, m, {"g": g}, side="f", i=i)
    if (i := antidictator_index(g)) is not None and f.is_odd():
        return _label("plain", "AntiDictator", n, m, {"f": f}, side="g", i=i)
    if (i := antidictator_index(f)) is not None and g.is_odd():
        return _label("plain", "AntiDictator", n, m, {"g": g}, side="f", i=i)
    xf, xg = xor_params(f), xor_params(g)
    if xf and xg and _xor_condition_plain(xf[0], xg[0], xf[1], xg[1]):
        return _label("plain", "XorFamily", n, m, I=list(xf[0]), J=list(xg[0]), a=xf[1], b=xg[1])
    for outer, name in (("or", "OrFamily"), ("and", "AndFamily")):
        I, J = monotone_set(f, outer), monotone_set(g, outer)
        if I is not None and J is not None:
            return _label("plain", name, n, m, I=list(I), J=list(J))
    return CaseLabel("plain", "Unclassified", {"n": n, "m": m})


def _match_skew(f0: BooleanFunction, f1: BooleanFunction, g: BooleanFunction) -> CaseLabel:
    n, m = f0.arity, g.arity
    ones_n, ones_m = (1 << n) - 1, (1 << m) - 1
    cg, c0, c1 = constant_value(g), constant_value(f0), constant_value(f1)
    if cg is not None and f0.table[cg * ones_n] == cg:
        return _label("skew", "Constant", n, m, {"f0": f0, "f1": f1}, side="g", b=cg)
    if c0 is not None and c1 is not None and g.table[c1 * ones_m] == c0:
        return _label("skew", "Constant", n, m, {"g": g}, side="f", a0=c0, a1=c1)
    if (j := dictator_index(g)) is not None and f0 == f1:
        return _label("skew", "Dictator", n, m, {"f1": f1}, side="g", i=j)
    if (i := dictator_index(f0)) is not None and f0 == f1:
        return _label("skew", "Dictator", n, m, {"g": g}, side="f", i=i)
    if (j := antidictator_index(g)) is not None and f0 == _neg_in_out(f1):
        return _label("skew", "AntiDictator", n, m, {"f1": f1}, side="g", i=j)
    if (i := antidictator_index(f1)) is not None:
        if f0 == f1 and g.is_odd():
            return _label("skew", "AntiDictator", n, m, {"g": g}, side="f", i=i, g_parity="odd")
        if f0 == make_named("dictator", n, index=i) and g.is_even():
            return _label("skew", "AntiDictator", n, m, {"g": g}, side="f", i=i, g_parity="even")
    x0, x1, xg = xor_params(f0), xor_params(f1), xor_params(g)
    if x0 and x1 and xg and x0[0] == x1[0]:
        I, J, b = x0[0], xg[0], xg[1]
        if (x0[1] + b * (len(I) - 1)) % 2 == (x1[1] * len(J)) % 2:
            return _label("skew", "XorFamily", n, m, I=list(I), J=list(J), a={0: x0[1], 1: x1[1]}, b=b)
    for outer, name in (("or", "OrFamily"), ("and", "AndFamily")):
        I, J = monotone_set(f0, outer), monotone_set(g, outer)
        if I is not None and J is not None and f1 == f0:
            return _label("skew", name, n, m, I=list(I), J=list(J))
    for outer in ("or", "and"):
        I = monotone_set(f0, outer)
        lf = literal_form(g, outer)
        if I is not None and lf and all(lf[1].values()) and f1 == make_named(_other(outer), n, I=I):
            return _label("skew", "MixedOrAnd", n, m, I=list(I), J=list(lf[0]), outer=outer, flips={j: 1 for j in lf[0]})
    return CaseLabel("skew", "Unclassified", {"n": n, "m": m})


def _certificate_set(fs, f0, g) -> tuple[list[int], dict[int, int]] | None:
    b0 = constant_value(f0)
    if b0 is None:
        return None
    m = g.arity
    consts = [j for j in range(1, m + 1) if fs[j - 1].is_constant()]
    idx = np.arange(1 << m)
    for size in range(len(consts) + 1):
        for J in itertools.combinations(consts, size):
            sel = np.ones(1 << m, dtype=bool)
            for j in J:
                sel &= ((idx >> (j - 1)) & 1) == fs[j - 1].table[0]
            if np.all(g.table[sel] == b0):
                return list(J), {j: int(fs[j - 1].table[0]) for j in J}
    return None


def _match_multi(f0: BooleanFunction, fs: list[BooleanFunction], g: BooleanFunction) -> CaseLabel:
    n, m = f0.arity, g.arity
    names = {f"f{j}": f for j, f in enumerate([f0, *fs])}
    ones_n = (1 << n) - 1
    cg = constant_value(g)
    rel = g.relevant()

    def free_except(*skip) -> dict[str, BooleanFunction]:
        return {k: v for k, v in names.items() if k not in skip}

    if cg is not None and f0.table[cg * ones_n] == cg:
        return _label("multi", "Constant", n, m, names, side="g", b=cg)
    if (i := dictator_index(g)) is not None and f0 == fs[i - 1]:
        return _label("multi", "Dictator", n, m, free_except("f0"), side="g", i=i)
    if (i := antidictator_index(g)) is not None and f0 == _neg_in_out(fs[i - 1]):
        return _label("multi", "AntiDictator", n, m, free_except("f0"), side="g", i=i)
    d = dictator_index(f0) or antidictator_index(f0)
    if d is not None:
        shifts: dict[int, int] | None = {0: int(f0.table[0])}
        for j in rel:
            fj = fs[j - 1]
            if fj == make_named("dictator", n, index=d):
                shifts[j] = 0
            elif fj == make_named("anti-dictator", n, index=d):
                shifts[j] = 1
            else:
                shifts = None
                break
        if shifts is not None:
            flip = sum(1 << (j - 1) for j in rel if shifts[j])
            if np.array_equal(g.table[np.arange(1 << m) ^ flip], g.table ^ shifts[0]):
                skip = [f"f{j}" for j in shifts]
                return _label("multi", "Dictator", n, m, {"g": g, **free_except(*skip)}, side="f", i=d, a=shifts)
    xg = xor_params(g)
    if xg is not None:
        J, b = xg
        xs = [xor_params(f) for f in [f0] + [fs[j - 1] for j in J]]
        if all(xs) and len({x[0] for x in xs}) == 1:
            I = xs[0][0]
            a = {0: xs[0][1], **{j: xs[k + 1][1] for k, j in enumerate(J)}}
            if (a[0] + b * (len(I) - 1)) % 2 == sum(a[j] for j in J) % 2:
                skip = [f"f{j}" for j in a]
                return _label("multi", "XorFamily", n, m, free_except(*skip), I=list(I), J=list(J), a=a, b=b)
    for outer in ("or", "and"):
        I = monotone_set(f0, outer)
        lf = literal_form(g, outer)
        if I is None or lf is None:
            continue
        J, flips = lf
        want = {j: make_named(_other(outer) if flips[j] else outer, n, I=I) for j in J}
        if all(fs[j - 1] == want[j] for j in J):
            skip = ["f0"] + [f"f{j}" for j in J]
            if any(flips.values()):
                return _label("multi", "MixedOrAnd", n, m, free_except(*skip), I=list(I), J=list(J), outer=outer, flips=flips)
            return _label("multi", "OrFamily" if outer == "or" else "AndFamily", n, m, free_except(*skip), I=list(I), J=list(J))
    cert = _certificate_set(fs, f0, g)
    if cert is not None:
        J, a = cert
        skip = ["f0"] + [f"f{j}" for j in J]
        return _label("multi", "CertificateCase", n, m, {"g": g, **free_except(*skip)}, J=J, a=a, a0=int(f0.table[0]))
    return CaseLabel("multi", "Unclassified", {"n": n, "m": m})


def classify_tuple(kind: str, functions, g: BooleanFunction) -> CaseLabel:
    """Label a tuple without checking exactness first."""
    check_kind(kind)
    f0, fs = sides_for(kind, functions, g)
    if kind == "plain":
        return _match_plain(f0, g)
    if kind == "skew":
        return _match_skew(f0, fs[0], g)
    return _match_multi(f0, list(fs), g)


def match_case(kind: str, functions, g: BooleanFunction) -> CaseLabel:
    if not is_exact(kind, functions, g):
        raise PreconditionError(f"the given functions are not an exact {kind} polymorphism of g")
    return classify_tuple(kind, functions, g)


# template generation ----------------------------------------------------


def _subsets(k: int) -> Iterator[tuple[int, ...]]:
    for size in range(k + 1):
        yield from itertools.combinations(range(1, k + 1), size)


def _code(f: BooleanFunction) -> int:
    return f.to_int()


def _codes_where(mask: np.ndarray) -> list[int]:
    return np.flatnonzero(mask).tolist()


def _plain_candidates(g: BooleanFunction, n: int) -> Iterator[tuple[int, ...]]:
    m = g.arity
    T = all_tables(n)
    every = range(T.shape[0])
    odd = _codes_where(np.all(T[:, ::-1] == 1 - T, axis=1))
    for b in (0, 1):
        if g.is_constant() and g.table[0] == b:
            yield from ((c,) for c in _codes_where(T[:, b * (T.shape[1] - 1)] == b))
        if g.table[b * ((1 << m) - 1)] == b:
            yield (_code(BooleanFunction.constant(n, b)),)
    for i in range(1, m + 1):
        if g == make_named("dictator", m, index=i):
            yield from ((c,) for c in every)
        if g == make_named("anti-dictator", m, index=i):
            yield from ((c,) for c in odd)
    for i in range(1, n + 1):
        yield (_code(make_named("dictator", n, index=i)),)
        if g.is_odd():
            yield (_code(make_named("anti-dictator", n, index=i)),)
    for J in _subsets(m):
        for b in (0, 1):
            if g != _xor(m, J, b):
                continue
            for I in _subsets(n):
                for a in (0, 1):
                    if _xor_condition_plain(I, J, a, b):
                        yield (_code(_xor(n, I, a)),)
        for outer in ("or", "and"):
            if g == make_named(outer, m, I=J):
                for I in _subsets(n):
                    yield (_code(make_named(outer, n, I=I)),)


def _skew_candidates(g: BooleanFunction, n: int) -> Iterator[tuple[int, ...]]:
    m = g.arity
    T = all_tables(n)
    nf = T.shape[0]
    top = T.shape[1] - 1
    flip = {c: _code(_neg_in_out(function_of(c, n))) for c in range(nf)}
    for b in (0, 1):
        if g.is_constant() and g.table[0] == b:
            for c0 in _codes_where(T[:, b * top] == b):
                yield from ((c0, c1) for c1 in range(nf))
    for a0 in (0, 1):
        for a1 in (0, 1):
            if g.table[a1 * ((1 << m) - 1)] == a0:
                yield (_code(BooleanFunction.constant(n, a0)), _code(BooleanFunction.constant(n, a1)))
    for j in range(1, m + 1):
        if g == make_named("dictator", m, index=j):
            yield from ((c, c) for c in range(nf))
        if g == make_named("anti-dictator", m, index=j):
            yield from ((flip[c], c) for c in range(nf))
    for i in range(1, n + 1):
        d, nd = _code(make_named("dictator", n, index=i)), _code(make_named("anti-dictator", n, index=i))
        yield (d, d)
        if g.is_odd():
            yield (nd, nd)
        if g.is_even():
            yield (d, nd)
    for J in _subsets(m):
        for b in (0, 1):
            if g == _xor(m, J, b):
                for I in _subsets(n):
                    for a0, a1 in itertools.product((0, 1), repeat=2):
                        if (a0 + b * (len(I) - 1)) % 2 == (a1 * len(J)) % 2:
                            yield (_code(_xor(n, I, a0)), _code(_xor(n, I, a1)))
        for outer in ("or", "and"):
            if g == make_named(outer, m, I=J):
                for I in _subsets(n):
                    c = _code(make_named(outer, n, I=I))
                    yield (c, c)
            if g == _lit(outer, m, J, {j: 1 for j in J}):
                for I in _subsets(n):
                    yield (_code(make_named(outer, n, I=I)), _code(make_named(_other(outer), n, I=I)))


def _multi_candidates(g: BooleanFunction, n: int) -> Iterator[tuple[int, ...]]:
    m = g.arity
    T = all_tables(n)
    nf = T.shape[0]
    top = T.shape[1] - 1
    rel = g.relevant()

    def fill(fixed: dict[int, int | list[int]]) -> Iterator[tuple[int, ...]]:
        """Tuples (f0..fm) with the given slots fixed (or ranging over lists), others arbitrary."""
        choices = []
        for j in range(m + 1):
            v = fixed.get(j)
            choices.append(range(nf) if v is None else ([v] if isinstance(v, int) else v))
        yield from itertools.product(*choices)

    for b in (0, 1):
        if g.is_constant() and g.table[0] == b:
            yield from fill({0: _codes_where(T[:, b * top] == b)})
    for i in range(1, m + 1):
        for kind in ("dictator", "anti-dictator"):
            if g == make_named(kind, m, index=i):
                for c in range(nf):
                    c0 = c if kind == "dictator" else _code(_neg_in_out(function_of(c, n)))
                    yield from fill({0: c0, i: c})
    # certificate
    for b0 in (0, 1):
        for J in _subsets(m):
            for bits in itertools.product((0, 1), repeat=len(J)):
                idx = np.arange(1 << m)
                sel = np.ones(1 << m, dtype=bool)
                for j, bj in zip(J, bits):
                    sel &= ((idx >> (j - 1)) & 1) == bj
                if np.all(g.table[sel] == b0):
                    fixed = {0: _code(BooleanFunction.constant(n, b0))}
                    fixed.update({j: _code(BooleanFunction.constant(n, bj)) for j, bj in zip(J, bits)})
                    yield from fill(fixed)
    # shifted dictators
    for i in range(1, n + 1):
        for a in itertools.product((0, 1), repeat=m + 1):
            if any(a[j] for j in range(1, m + 1) if j not in rel):
                continue
            flip = sum(1 << (j - 1) for j in rel if a[j])
            if np.array_equal(g.table[np.arange(1 << m) ^ flip], g.table ^ a[0]):
                yield from fill({j: _code(_xor(n, [i], a[j])) for j in [0, *rel]})
    for J in _subsets(m):
        for b in (0, 1):
            if g == _xor(m, J, b):
                for I in _subsets(n):
                    for a in itertools.product((0, 1), repeat=len(J) + 1):
                        if (a[0] + b * (len(I) - 1)) % 2 == sum(a[1:]) % 2:
                            fixed = {0: _code(_xor(n, I, a[0]))}
                            fixed.update({j: _code(_xor(n, I, aj)) for j, aj in zip(J, a[1:])})
                            yield from fill(fixed)
        for outer in ("or", "and"):
            for bits in itertools.product((0, 1), repeat=len(J)):
                flips = dict(zip(J, bits))
                if g != _lit(outer, m, J, flips):
                    continue
                for I in _subsets(n):
                    fixed = {0: _code(make_named(outer, n, I=I))}
                    fixed.update({j: _code(make_named(_other(outer) if flips[j] else outer, n, I=I)) for j in J})
                    yield from fill(fixed)


def family_candidates(kind: str, g: BooleanFunction, n: int) -> list[tuple[int, ...]]:
    """Deduplicated template instances (as code tuples) before verification."""
    check_kind(kind)
    if n > 4 or g.arity > 4:
        raise SizeLimitError("template generation supports n <= 4 and m <= 4")
    gen = {"plain": _plain_candidates, "skew": _skew_candidates, "multi": _multi_candidates}[kind](g, n)
    seen: set[tuple[int, ...]] = set()
    for t in gen:
        seen.add(t)
        if len(seen) > FAMILY_BUDGET:
            raise SizeLimitError(f"template family exceeds {FAMILY_BUDGET} tuples")
    return sorted(seen)


def _to_functions(codes: tuple[int, ...], n: int) -> tuple[BooleanFunction, ...]:
    return tuple(function_of(c, n) for c in codes)


def generate_family(kind: str, g: BooleanFunction, n: int) -> list[tuple[BooleanFunction, ...]]:
    """Every solution produced by the case templates, each verified exact.

    Tuples are ``(f,)``, ``(f0, f1)`` or ``(f0, ..., fm)`` and come sorted by
    truth-table code.  A template instance that fails verification is a bug in
    the templates and raises ``RuntimeError``.
    """
    codes = family_candidates(kind, g, n)
    ok = exact_mask(kind, codes, g, n)
    if not ok.all():
        bad = codes[int(np.flatnonzero(~ok)[0])]
        raise RuntimeError(f"template instance {bad} is not an exact {kind} solution")
    return [_to_functions(c, n) for c in codes]


def enumerate_exact(kind: str, g: BooleanFunction, n: int) -> list[tuple[BooleanFunction, ...]]:
    """Brute-force list of every exact solution, sorted by truth-table code.

    Limits: plain needs 2^(2^n) <= 2^16; skew needs n <= 3; multi needs at most
    2^16 column tuples (so m <= 2 at n = 2, m = 1 at n = 3).
    """
    return [_to_functions(c, n) for c in enumerate_codes(kind, g, n)]
