"""Exact multilinear polynomials over +-1 variables and the f0 o g^n = h o (f_1..f_m) classifier.

Variables take values in {-1, 1}, so x_i**2 = 1 and a monomial is a subset
mask; multiplying monomials XORs their masks.  Coefficients are Fractions,
which keeps the dyadic Fourier coefficients of Boolean functions exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..boolfn import BooleanFunction, coords_of, walsh_spectrum
from ..errors import PreconditionError, SizeLimitError
from .cases import CaseLabel

POLY_VARIABLE_LIMIT = 16


@dataclass(frozen=True, eq=False)
class MultilinearPoly:
    nvars: int
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(k): Fraction(v) for k, v in self.coeffs.items() if v != 0}
        if any(k >> self.nvars for k in clean):
            raise PreconditionError("monomial uses a variable beyond nvars")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_function(cls, f: BooleanFunction) -> "MultilinearPoly":
        """The +-1 view of f as its (uniform) Fourier polynomial."""
        w = walsh_spectrum(f)
        d = 1 << f.arity
        return cls(f.arity, {int(s): Fraction(int(w[s]), d) for s in np.flatnonzero(w)})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultilinearPoly":
        return cls(nvars, {0: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultilinearPoly":
        return cls(nvars, {1 << (i - 1): Fraction(1)})

    @classmethod
    def product_form(cls, nvars: int, A, shifts: Mapping[int, object], B) -> "MultilinearPoly":
        """A * prod_{i in shifts} (x_i + shifts[i]) - B."""
        p = cls.constant(nvars, A)
        for i, k in shifts.items():
            p = p * (cls.variable(nvars, i) + cls.constant(nvars, k))
        return p - cls.constant(nvars, B)

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return MultilinearPoly(max(self.nvars, other.nvars), out)

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly(self.nvars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultilinearPoly":
        if not isinstance(other, MultilinearPoly):
            return MultilinearPoly(self.nvars, {k: v * Fraction(other) for k, v in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for (a, x), (b, y) in itertools.product(self.coeffs.items(), other.coeffs.items()):
            out[a ^ b] = out.get(a ^ b, 0) + x * y
        return MultilinearPoly(max(self.nvars, other.nvars), out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((bin(k).count("1") for k in self.coeffs), default=-1)

    def evaluate(self, x: Sequence[int]) -> Fraction:
        """Value at a +-1 point."""
        total = Fraction(0)
        for k, v in self.coeffs.items():
            sign = 1
            for i in coords_of(k):
                sign *= x[i - 1]
            total += v * sign
        return total

    def remap(self, nvars: int, mapping: Sequence[int]) -> "MultilinearPoly":
        """Rename variable i to mapping[i-1] inside a space of nvars variables."""
        out = {}
        for k, v in self.coeffs.items():
            out[sum(1 << (mapping[i - 1] - 1) for i in coords_of(k))] = v
        return MultilinearPoly(nvars, out)

    def substitute(self, polys: Sequence["MultilinearPoly"], nvars: int) -> "MultilinearPoly":
        """self(polys[0], ..., polys[k-1]).

        Products are reduced with x**2 = 1, which is exact as long as the
        substituted polynomials take +-1 values (or use disjoint variables).
        """
        out = MultilinearPoly(nvars)
        for k, v in self.coeffs.items():
            term = MultilinearPoly.constant(nvars, v)
            for i in coords_of(k):
                term = term * polys[i - 1]
            out = out + term
        return out


def poly_compose_identity(f0, fs, g, h) -> tuple[bool, MultilinearPoly]:
    """Compare f0 o g^n and h o (f_1..f_m) as polynomials in the n*m matrix variables.

    Accepts BooleanFunctions or MultilinearPolys.  Variable z_ij has number
    (i-1)*m + j.  Returns (identity holds, LHS - RHS).
    """
    P = [x if isinstance(x, MultilinearPoly) else MultilinearPoly.from_function(x) for x in (f0, *fs, g, h)]
    p0, pfs, pg, ph = P[0], P[1:-2], P[-2], P[-1]
    n, m = p0.nvars, pg.nvars
    if len(pfs) != m or ph.nvars != m or any(p.nvars != n for p in pfs):
        raise PreconditionError("dimension mismatch between f0, f_1..f_m, g and h")
    N = n * m
    if N > POLY_VARIABLE_LIMIT:
        raise SizeLimitError(f"{N} matrix variables exceed the limit {POLY_VARIABLE_LIMIT}")
    rows = [pg.remap(N, [i * m + j + 1 for j in range(m)]) for i in range(n)]
    cols = [pfs[j].remap(N, [i * m + j + 1 for i in range(n)]) for j in range(m)]
    diff = p0.substitute(rows, N) - ph.substitute(cols, N)
    return diff.is_zero(), diff


# product forms ----------------------------------------------------------


@dataclass(frozen=True)
class ProductForm:
    """``Parity`` (f = sign * prod_S x_i, S nonempty), ``SinglePoint`` or ``NotOfForm``."""

    kind: str
    sign: int | None = None
    S: tuple[int, ...] = ()
    point: tuple[int, ...] = ()
    value: int | None = None


def product_form_decompose(f: BooleanFunction) -> ProductForm:
    """Classify the +-1 view of f.

    Parity is checked first, so a function of one variable such as x_1 comes
    back as Parity.  Constants are NotOfForm.
    """
    if f.arity < 1:
        raise PreconditionError("product form needs at least one variable")
    w = walsh_spectrum(f)
    nz = np.flatnonzero(w)
    if nz.size == 1 and nz[0] != 0:
        return ProductForm("Parity", sign=int(np.sign(w[nz[0]])), S=coords_of(int(nz[0])))
    pm = f.pm
    for v in (1, -1):
        hits = np.flatnonzero(pm == v)
        if hits.size == 1 and pm.size > 1:
            x = int(hits[0])
            return ProductForm("SinglePoint", point=tuple(1 - 2 * ((x >> k) & 1) for k in range(f.arity)), value=v)
    return ProductForm("NotOfForm")


# general f0 o g^n = h o (f_1..f_m) --------------------------------------


def _pm_const(f: BooleanFunction) -> int | None:
    return 1 - 2 * int(f.table[0]) if f.is_constant() else None


def _plug_constants(h: BooleanFunction, fs: Sequence[BooleanFunction]) -> BooleanFunction:
    """H: h with every constant f_j plugged in (kept on all m coordinates)."""
    m = h.arity
    idx = np.arange(1 << m)
    for j, f in enumerate(fs):
        if f.is_constant():
            bit = 1 << j
            idx = (idx & ~bit) | (int(f.table[0]) * bit)
    return BooleanFunction(m, h.table[idx])


def _signed_dictator(f: BooleanFunction) -> tuple[int, int] | None:
    """(i, sign) with F = sign * x_i in the +-1 view."""
    pf = product_form_decompose(f) if f.arity else ProductForm("NotOfForm")
    if pf.kind == "Parity" and len(pf.S) == 1:
        return pf.S[0], pf.sign
    return None


def _flip_pm(f: BooleanFunction, signs: Mapping[int, int]) -> BooleanFunction:
    """y -> F(s_1 y_1, ..., s_m y_m) for signs s_j in {+1, -1}."""
    flip = sum(1 << (j - 1) for j, s in signs.items() if s == -1)
    return BooleanFunction(f.arity, f.table[np.arange(1 << f.arity) ^ flip])


def _scaled(f: BooleanFunction, s: int) -> BooleanFunction:
    return f if s == 1 else f.negation()


def match_fgh_case(f0, fs, g, h, check: bool = True) -> CaseLabel:
    """Label an exact solution of f0 o g^n = h o (f_1..f_m) with cases (i)-(v).

    Everything is read in the +-1 view.  J lists the non-constant f_j, H is h
    with the constant f_j plugged in, K is the set of coordinates g or H
    depend on and U the coordinates f0 and the f_j (j in K) depend on.
    """
    from ..compose import agreement_exhaustive

    fs = list(fs)
    n, m = f0.arity, g.arity
    if check:
        rep = agreement_exhaustive(f0, fs, g, h=h)
        if rep.numerator != rep.denominator:
            raise PreconditionError("not an exact solution of f0 o g^n = h o (f_1..f_m)")
    base = {"n": n, "m": m}
    J = [j for j in range(1, m + 1) if not fs[j - 1].is_constant()]
    H = _plug_constants(h, fs)
    c0 = _pm_const(f0)
    if c0 is not None and H.is_constant() and _pm_const(H) == c0:
        return CaseLabel("fgh", "FghCase", {**base, "case": "i", "J": J, "value": c0})
    if g.is_constant() and H.is_constant():
        gv = int(g.table[0])
        if f0.table[gv * ((1 << n) - 1)] == H.table[0]:
            return CaseLabel("fgh", "FghCase", {**base, "case": "ii", "J": J, "g": _pm_const(g), "H": _pm_const(H)})
    K = sorted(set(g.relevant()) | set(H.relevant()))
    if len(K) == 1 and K[0] in J:
        j = K[0]
        dg, dH = _signed_dictator(g), _signed_dictator(H)
        if dg and dH and dg[0] == dH[0] == j:
            gamma, eta = dg[1], dH[1]
            lhs = f0 if gamma == 1 else f0.flip_inputs()
            if lhs == _scaled(fs[j - 1], eta):
                return CaseLabel("fgh", "FghCase", {**base, "case": "iii", "j": j, "gamma": gamma, "eta": eta, "J": J})
    dicts = [_signed_dictator(f) for f in [f0] + [fs[j - 1] for j in J]]
    if all(dicts) and len({d[0] for d in dicts}) == 1:
        i = dicts[0][0]
        phi = {0: dicts[0][1], **{j: d[1] for j, d in zip(J, dicts[1:])}}
        if _scaled(g, phi[0]) == _flip_pm(H, {j: phi[j] for j in J}):
            return CaseLabel("fgh", "FghCase", {**base, "case": "iv", "i": i, "phi": phi, "J": J})
    if K and set(K) <= set(J):
        U = sorted(set(f0.relevant()).union(*(fs[j - 1].relevant() for j in K)))
        label = _match_product_case(f0, fs, g, H, K, U, base, J)
        if label is not None:
            return label
    return CaseLabel("fgh", "Unclassified", base)


def _match_product_case(f0, fs, g, H, K, U, base, J) -> CaseLabel | None:
    if not U:
        return None
    gK, HK = g.on_coordinates(K), H.on_coordinates(K)
    parts = [f0.on_coordinates(U)] + [fs[j - 1].on_coordinates(U) for j in K]
    if (set(g.relevant()) | set(H.relevant())) != set(K):
        return None
    forms = [product_form_decompose(x) for x in [gK, HK, *parts]]
    full_K, full_U = tuple(range(1, len(K) + 1)), tuple(range(1, len(U) + 1))
    if all(p.kind == "Parity" for p in forms) and all(p.S == full_K for p in forms[:2]) and all(p.S == full_U for p in forms[2:]):
        gamma, eta = forms[0].sign, forms[1].sign
        phi = [p.sign for p in forms[2:]]
        lhs = phi[0] * gamma ** len(U)
        rhs = eta * int(np.prod(phi[1:]))
        if lhs == rhs:
            return CaseLabel("fgh", "FghCase", {
                **base, "case": "v", "subcase": "a", "K": K, "U": U, "J": J,
                "gamma": gamma, "eta": eta, "phi": {0: phi[0], **dict(zip(K, phi[1:]))},
            })
    if all(p.kind == "SinglePoint" for p in forms):
        pg, pH, pf0, *pfj = forms
        kappa0, B0 = pg.value, pH.value
        ok = (
            len(set(pf0.point)) == 1 and pf0.point[0] == kappa0 and pf0.value == B0
            and all(len(set(p.point)) == 1 for p in pfj)
        )
        kappa = dict(zip(K, pg.point))
        B = dict(zip(K, pH.point))
        ok = ok and all(p.point[0] == kappa[j] and p.value == B[j] for j, p in zip(K, pfj))
        if ok:
            return CaseLabel("fgh", "FghCase", {
                **base, "case": "v", "subcase": "b", "K": K, "U": U, "J": J,
                "kappa": {0: kappa0, **kappa}, "B": {0: B0, **B},
            })
    return None


def enumerate_fgh(n: int, m: int) -> Iterable[tuple]:
    """Every exact (f0, f_1..f_m, g, h) over all g, h of arity m."""
    from .engine import enumerate_codes, function_of

    for gc in range(1 << (1 << m)):
        g = function_of(gc, m)
        for hc in range(1 << (1 << m)):
            h = function_of(hc, m)
            for codes in enumerate_codes("multi", g, n, h=h):
                yield function_of(codes[0], n), [function_of(c, n) for c in codes[1:]], g, h
