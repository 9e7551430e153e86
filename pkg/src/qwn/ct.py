"""Truncated Laurent series, constant terms and integral formulas for Macdonald polynomials.

Contour integrals are formal constant-term extractions.  A series is
truncated by a linear *weight* ``w(e) = -sum_v e_v h_v`` with integer heights
``h_v``: every factor ``1/(1-u)`` is expanded in positive powers of ``u``,
which is only allowed when ``w(u) > 0``, so the expansion direction is fixed
by the heights.  Each series remembers the weight up to which its stored
terms are exact (``valid``); extraction refuses to read terms past it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .coeffs import ONE, ZERO, QTRat, P, Q, T, qpow, qt
from .fock import FockVector, pbw_basis, weight_rs
from .symfunc import (Partition, SymPoly, basis_convert, conjugate, inner_product_pq,
                      macdonald_apply, macdonald_poly, partitions_of, z_lambda)

__all__ = [
    "UnsoundTruncation", "TruncatedLaurent", "constant_term", "kernel_Pi", "delta_C_factors",
    "macdonald_via_integral", "screening_integral", "macdonald_apply_ct", "q_shift_via_powersums",
    "verify_lemmas", "LemmaReport", "completeness_residual", "IntegralError",
]

INF = math.inf


class UnsoundTruncation(ArithmeticError):
    """A requested coefficient lies beyond the exact part of a truncated series."""


class IntegralError(ArithmeticError):
    pass


@dataclass
class TruncatedLaurent:
    variables: tuple
    heights: tuple
    bound: int
    terms: dict = field(default_factory=dict)
    valid: float = INF

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.heights = tuple(self.heights)
        if len(self.heights) != len(self.variables):
            raise ValueError("one height per variable")
        clean = {}
        dropped = False
        for e, c in self.terms.items():
            c = qt(c)
            if c.is_zero():
                continue
            if self.weight(e) > self.bound:
                dropped = True
                continue
            clean[tuple(e)] = c
        self.terms = clean
        if dropped:
            self.valid = min(self.valid, self.bound)

    # ---- construction ---------------------------------------------------
    def _like(self, terms, valid=INF, bound=None) -> "TruncatedLaurent":
        return TruncatedLaurent(self.variables, self.heights, self.bound if bound is None else bound,
                                terms, valid)

    @classmethod
    def constant(cls, variables, heights, bound, c=ONE) -> "TruncatedLaurent":
        return cls(variables, heights, bound, {(0,) * len(variables): c})

    def monomial(self, exps: dict, c=ONE) -> "TruncatedLaurent":
        e = tuple(exps.get(v, 0) for v in self.variables)
        return self._like({e: c})

    def geometric(self, exps: dict, c=ONE, bound=None) -> "TruncatedLaurent":
        """``1 / (1 - c u)`` with ``u`` the monomial ``exps``, expanded in powers of ``u``."""
        bound = self.bound if bound is None else bound
        e = tuple(exps.get(v, 0) for v in self.variables)
        w = self.weight(e)
        if w <= 0:
            raise ValueError(f"cannot expand 1/(1-u) for u of weight {w} <= 0")
        terms = {}
        ck = ONE
        k = 0
        while k * w <= bound:
            terms[tuple(k * x for x in e)] = ck
            ck = ck * c
            k += 1
        return self._like(terms, valid=bound, bound=bound)

    # ---- queries ----------------------------------------------------------
    def weight(self, e) -> int:
        return -sum(x * h for x, h in zip(e, self.heights))

    def min_weight(self) -> float:
        return min((self.weight(e) for e in self.terms), default=INF)

    @property
    def clipped(self) -> bool:
        return self.valid < INF

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: dict) -> QTRat:
        e = tuple(exps.get(v, 0) for v in self.variables)
        if self.weight(e) > self.valid:
            raise UnsoundTruncation(f"coefficient of {exps} lies past the exact window")
        return self.terms.get(e, ZERO)

    # ---- arithmetic -------------------------------------------------------
    def _check(self, other):
        if other.variables != self.variables or other.heights != self.heights:
            raise ValueError("series live in different variable sets")

    def __add__(self, other: "TruncatedLaurent") -> "TruncatedLaurent":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return self._like(out, min(self.valid, other.valid), min(self.bound, other.bound))

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()}, self.valid)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedLaurent":
        c = qt(c)
        return self._like({e: x * c for e, x in self.terms.items()}, self.valid)

    def __mul__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return self.scale(other)
        return self.times(other, min(self.bound, other.bound))

    def times(self, other: "TruncatedLaurent", bound) -> "TruncatedLaurent":
        """Product kept up to weight ``bound``."""
        self._check(other)
        valid = min(self.valid + other.min_weight(), other.valid + self.min_weight())
        b_terms = sorted(other.terms.items(), key=lambda kv: self.weight(kv[0]))
        b_weights = [self.weight(e) for e, _ in b_terms]
        out: dict = {}
        dropped = False
        for ea, ca in self.terms.items():
            wa = self.weight(ea)
            for (eb, cb), wb in zip(b_terms, b_weights):
                if wa + wb > bound:
                    dropped = True
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, ZERO) + ca * cb
        if dropped:
            valid = min(valid, bound)
        return self._like(out, valid, bound)

    __rmul__ = scale

    def shift_variable(self, var: str, c) -> "TruncatedLaurent":
        """Substitute ``var -> c * var``."""
        c = qt(c)
        i = self.variables.index(var)
        return self._like({e: x * c ** e[i] for e, x in self.terms.items()}, self.valid)

    def map_coeffs(self, fn) -> "TruncatedLaurent":
        return self._like({e: fn(c) for e, c in self.terms.items()}, self.valid)

    def __repr__(self):
        flag = "" if not self.clipped else f", exact to weight {self.valid}"
        return f"TruncatedLaurent({len(self.terms)} terms in {self.variables}{flag})"


def constant_term(f: TruncatedLaurent, vars) -> TruncatedLaurent:
    """Coefficient of the zero exponent in ``vars``, as a series in the rest."""
    vars = list(vars)
    if not vars:
        return f
    idx = [f.variables.index(v) for v in vars]
    keep = [i for i in range(len(f.variables)) if i not in idx]
    if f.valid < 0:
        raise UnsoundTruncation(f"series is exact only up to weight {f.valid}; the constant term needs 0")
    out: dict = {}
    for e, c in f.terms.items():
        if all(e[i] == 0 for i in idx):
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, ZERO) + c
    res = TruncatedLaurent(tuple(f.variables[i] for i in keep), tuple(f.heights[i] for i in keep),
                           f.bound, out, f.valid)
    return res


# ---- kernels --------------------------------------------------------------------

def _product(variables, heights, bound, finite, geometric) -> TruncatedLaurent:
    """Exact finite factors times ``1/(1 - c u)`` factors, exact up to ``bound``."""
    acc = TruncatedLaurent.constant(variables, heights, INF)
    for f in finite:
        acc = acc * f
    floor = acc.min_weight()
    if floor == INF:
        return TruncatedLaurent(variables, heights, bound)
    sbound = bound - floor
    series = TruncatedLaurent.constant(variables, heights, sbound)
    for exps, c in geometric:
        series = series * series.geometric(exps, c, sbound)
    out = acc.times(series, bound)
    return TruncatedLaurent(variables, heights, bound, out.terms, out.valid)


def _p_at(beta: int) -> QTRat:
    return P.substitute_beta(beta)


def _pi_factors(xs, ys, beta: int, variant: str, xinv=False, yinv=False, yscale=ONE):
    """Factors of ``Pi(x^{+-1}, c y^{+-1})`` as (finite, geometric) lists of exponent dicts."""
    finite, geometric = [], []
    for x in xs:
        for y in ys:
            u = {x: -1 if xinv else 1}
            u[y] = u.get(y, 0) + (-1 if yinv else 1)
            if variant == "Pi":
                geometric += [(u, qpow(k) * yscale) for k in range(beta)]
            elif variant == "PiTilde":
                finite.append((u, yscale))
            else:
                raise ValueError(f"variant must be 'Pi' or 'PiTilde', got {variant!r}")
    return finite, geometric


def _binomial(variables, heights, exps, c) -> TruncatedLaurent:
    """``1 + c u``."""
    z = (0,) * len(variables)
    e = tuple(exps.get(v, 0) for v in variables)
    terms = {z: ONE}
    terms[e] = terms.get(e, ZERO) + c
    return TruncatedLaurent(variables, heights, INF, terms)


def _powersum_exp(xs, ys, variables, heights, bound) -> TruncatedLaurent:
    """``exp(sum_n (1/n) (1-t^n)/(1-q^n) p_n(x) p_n(y))`` for generic ``t``."""
    log = TruncatedLaurent(variables, heights, bound)
    for n in range(1, int(bound) // 2 + 1):
        c = (1 - T ** n) / (1 - Q ** n) / n
        terms = {}
        for x in xs:
            for y in ys:
                e = tuple(n if v in (x, y) else 0 for v in variables)
                terms[e] = c
        log = log + TruncatedLaurent(variables, heights, bound, terms)
    if log.min_weight() <= 0:
        raise ValueError("the logarithm needs positive weight")
    out = TruncatedLaurent.constant(variables, heights, bound)
    power = TruncatedLaurent.constant(variables, heights, bound)
    k = 1
    while True:
        power = (power * log).scale(Fraction(1, k))
        if power.is_zero():
            break
        out = out + power
        k += 1
    return TruncatedLaurent(variables, heights, bound, out.terms, bound)


def kernel_Pi(xvars, yvars, variant: str = "Pi", beta: int | None = None, degree: int = 4) -> TruncatedLaurent:
    """The Cauchy kernel in ``x`` and ``y`` up to degree ``degree`` in ``x``.

    The kernel is balanced (equal degree in ``x`` and ``y``), so the window
    is total degree ``2 * degree``.  ``beta=None`` keeps ``t`` generic and
    uses the power-sum exponential; an integer ``beta`` uses the product form
    with ``t = q^beta``.
    """
    variables = tuple(xvars) + tuple(yvars)
    heights = (-1,) * len(variables)
    bound = 2 * degree
    if variant == "PiTilde":
        out = TruncatedLaurent.constant(variables, heights, bound)
        for x in xvars:
            for y in yvars:
                out = out * _binomial(variables, heights, {x: 1, y: 1}, ONE)
        return out
    if variant != "Pi":
        raise ValueError(f"variant must be 'Pi' or 'PiTilde', got {variant!r}")
    if beta is None:
        return _powersum_exp(xvars, yvars, variables, heights, bound)
    _, geometric = _pi_factors(xvars, yvars, beta, "Pi")
    return _product(variables, heights, bound, [], geometric)


def _delta_C_parts(xs, beta: int, pfac: QTRat, with_monomial=True):
    """Finite factors and geometric factors of ``Delta(x) C(x)`` for one group."""
    n = len(xs)
    delta = []
    for i in range(n):
        for j in range(n):
            if i != j:
                delta += [({xs[j]: 1, xs[i]: -1}, -qpow(k)) for k in range(beta)]
    c_num, c_geo = [], []
    for i in range(n):
        for j in range(i + 1, n):
            c_num += [({xs[j]: 1, xs[i]: -1}, -qpow(k) * pfac) for k in range(beta)]
            c_geo += [({xs[i]: 1, xs[j]: -1}, qpow(k)) for k in range(beta)]
    mono = {xs[i]: (n + 1 - 2 * (i + 1)) * beta for i in range(n)} if with_monomial else {}
    return delta, c_num, c_geo, mono


def delta_C_factors(xvars, beta: int, r: int | None = None, bound: int = 6):
    """``(Delta(x), C(x))`` for one group of ``r`` integration variables.

    ``C`` expands ``1/(1 - q^k x_i/x_j)`` (``i < j``) in positive powers of
    ``x_i/x_j``: heights grow along the group and ``bound`` caps the weight.
    """
    xs = tuple(xvars)
    if r is not None and r != len(xs):
        raise ValueError("r must equal the number of variables")
    if not isinstance(beta, int) or beta < 1:
        raise ValueError("beta must be a positive integer")
    heights = tuple(range(1, len(xs) + 1))
    delta, c_num, c_geo, mono = _delta_C_parts(xs, beta, _p_at(beta))
    Delta = TruncatedLaurent.constant(xs, heights, INF)
    for e, c in delta:
        Delta = Delta * _binomial(xs, heights, e, c)
    fin = [_binomial(xs, heights, e, c) for e, c in c_num]
    fin.append(TruncatedLaurent.constant(xs, heights, INF).monomial(mono))
    C = _product(xs, heights, bound, fin, c_geo)
    return TruncatedLaurent(xs, heights, bound, Delta.terms), C


# ---- integral formulas ------------------------------------------------------------

def _to_sympoly(f: TruncatedLaurent, zs) -> SymPoly:
    """Read a symmetric polynomial in ``zs`` off a series (checking symmetry)."""
    out: dict = {}
    idx = [f.variables.index(z) for z in zs]
    seen: dict = {}
    for e, c in f.terms.items():
        ez = tuple(e[i] for i in idx)
        if any(x < 0 for x in ez):
            raise IntegralError("result has negative powers of z")
        seen[ez] = c
    for ez, c in seen.items():
        for perm in set(permutations(ez)):
            if seen.get(perm, ZERO) != c:
                raise IntegralError("result is not symmetric in z")
        if list(ez) == sorted(ez, reverse=True):
            out[Partition(x for x in ez if x)] = c
    return SymPoly("m", out)


def _group_names(r):
    return [[f"x{a}_{j}" for j in range(1, ra + 1)] for a, ra in enumerate(r, start=1)]


def macdonald_via_integral(r, s, M: int, beta: int, variant: str = "Pi", with_C: bool = True) -> SymPoly:
    """Constant term of the screening integrand against ``Pi(z, 1/x^1)``.

    ``(r, s)`` lists the rectangles ``(s_a^{r_a})``; the result lives in
    ``M`` variables with ``t = q^beta``.  ``with_C=False`` replaces the
    pseudo-constant ``C`` by 1.
    """
    r, s = list(r), list(s)
    if not isinstance(beta, int) or beta < 1:
        raise ValueError("beta must be a positive integer")
    if len(r) != len(s):
        raise ValueError("r and s need equal length")
    if any(r[i] < r[i + 1] for i in range(len(r) - 1)):
        raise ValueError("r must be weakly decreasing")
    zs = [f"z{i}" for i in range(1, M + 1)]
    groups = _group_names(r)
    xs = [x for g in groups for x in g]
    variables = tuple(zs + xs)
    heights = (0,) * M + tuple(range(1, len(xs) + 1))
    pfac = _p_at(beta)
    one = TruncatedLaurent.constant(variables, heights, INF)

    finite = []
    fin_e, geometric = _pi_factors(zs, groups[0], beta, variant, yinv=True) if groups else ([], [])
    finite += [_binomial(variables, heights, e, c) for e, c in fin_e]
    for a, g in enumerate(groups):
        nxt = groups[a + 1] if a + 1 < len(groups) else []
        fe, ge = _pi_factors(g, nxt, beta, "Pi", yinv=True)
        geometric += ge
        delta, c_num, c_geo, mono = _delta_C_parts(g, beta, pfac, with_monomial=with_C)
        if not with_C:
            c_num, c_geo = [], []
        finite += [_binomial(variables, heights, e, c) for e, c in delta + c_num]
        geometric += c_geo
        mono = {x: mono.get(x, 0) + s[a] for x in g}
        finite.append(one.monomial(mono))
    integrand = _product(variables, heights, 0, finite, geometric)
    res = constant_term(integrand, xs)
    poly = _to_sympoly(res, zs)
    if poly.is_zero():
        raise IntegralError(f"integral vanishes for r={r}, s={s}, M={M}, beta={beta}")
    return poly


def screening_integral(N: int, r, s, beta: int, sign: str = "+") -> FockVector:
    """Singular vector ``prod S(x) |tilde alpha>`` read off by constant terms.

    The component on a PBW monomial ``prod alpha^{a_k}_{-n_k}`` is the constant
    term of the contraction kernel times ``prod p_{n_k}(x^{a_k}) / (1 - q^{-n_k})``
    over multiplicities.  Coefficients are specialised to ``t = q^beta``.
    """
    if sign != "+" and beta != 1:
        raise ValueError("the t-screening route needs beta = 1 (1/beta must be an integer too)")
    if not isinstance(beta, int) or beta < 1:
        raise ValueError("beta must be a positive integer")
    r, s = list(r), list(s)
    weight, _ = weight_rs(N, r, s, sign)
    G = sum(x * y for x, y in zip(r, s))
    if G == 0:
        return FockVector.highest(weight)
    groups = _group_names(r)
    xs = [x for g in groups for x in g]
    # later groups sit below earlier ones so that x^{a+1}/x^a has positive weight
    heights, base = [], 0
    for g in reversed(groups):
        heights = list(range(base + 1, base + len(g) + 1)) + heights
        base += len(g)
    heights = tuple(heights)
    variables = tuple(xs)
    pfac = _p_at(beta)
    one = TruncatedLaurent.constant(variables, heights, INF)
    finite, geometric = [], []
    for a, g in enumerate(groups):
        nxt = groups[a + 1] if a + 1 < len(groups) else []
        _, ge = _pi_factors(g, nxt, beta, "Pi", xinv=True, yscale=pfac)
        geometric += ge
        delta, c_num, c_geo, mono = _delta_C_parts(g, beta, pfac)
        finite += [_binomial(variables, heights, e, c) for e, c in delta + c_num]
        geometric += c_geo
        for x in g:
            mono[x] = mono.get(x, 0) - s[a]
        finite.append(one.monomial(mono))
    if sign == "+":
        mode_factor = lambda n: 1 / (1 - qpow(-n))
    else:
        mode_factor = lambda n: -1 / (1 - qpow(-n))
    # power-sum insertions weigh at least -G * max(height), so the kernel must be exact that far
    kernel_series = _product(variables, heights, G * max(heights), finite, geometric)
    terms = {}
    for mono in pbw_basis(N, G):
        ins = one
        for a, n in mono:
            g = groups[a - 1] if a - 1 < len(groups) else []
            if not g:
                ins = None
                break
            psum = TruncatedLaurent(variables, heights, INF, {tuple(n if v == x else 0 for v in variables): ONE for x in g})
            ins = ins * psum.scale(mode_factor(n))
        if ins is None:
            continue
        mult = 1
        for k in _multiplicities(mono).values():
            mult *= math.factorial(k)
        c = constant_term(kernel_series * ins, xs).terms.get((), ZERO)
        if not c.is_zero():
            terms[mono] = c / mult
    vec = FockVector(weight, terms)
    if vec.is_zero():
        raise IntegralError(f"screening integral vanishes for N={N}, r={r}, s={s}")
    return vec


def _multiplicities(mono) -> dict:
    out: dict = {}
    for x in mono:
        out[x] = out.get(x, 0) + 1
    return out


# ---- power-sum form of the Macdonald operator --------------------------------------

def _e1_coeff(k: int) -> dict:
    """Coefficient of ``xi^k`` in ``exp(sum (1 - t^-n) p_n xi^n / n)`` as p-basis dict."""
    out = {}
    for mu in partitions_of(k):
        c = qt(Fraction(1, z_lambda(mu)))
        for part in mu:
            c = c * (1 - T ** (-part))
        out[mu] = c
    return out


def macdonald_apply_ct(f: SymPoly, N: int) -> SymPoly:
    """Macdonald operator in ``N`` variables through its power-sum constant-term form.

    The derivation exponential translates ``p_n -> p_n + (q^n - 1) xi^-n``;
    the multiplication exponential supplies the matching ``xi^k``, and the
    constant term in ``xi`` pairs them.  Returns the m-basis realisation in
    ``N`` variables.
    """
    g = basis_convert(f, "p")
    ct: dict = {}
    for lam, c in g.coeffs.items():
        parts = list(lam)
        for size in range(len(parts) + 1):
            for picked in combinations(range(len(parts)), size):
                k = sum(parts[i] for i in picked)
                coef = c
                for i in picked:
                    coef = coef * (Q ** parts[i] - 1)
                rest = [parts[i] for i in range(len(parts)) if i not in picked]
                for mu, e in _e1_coeff(k).items():
                    key = Partition(sorted(rest + list(mu), reverse=True))
                    ct[key] = ct.get(key, ZERO) + coef * e
    out = SymPoly("p", ct).scale(T ** N / (T - 1)) - g.scale(1 / (T - 1))
    return out.truncate_length(N)


def q_shift_via_powersums(f: SymPoly, i: int, N: int) -> dict:
    """``f(x_1..q x_i..x_N)`` computed as ``f(p_n -> p_n + (q^n - 1) x_i^n)``.

    Returns a dict from exponent tuples to coefficients (not symmetric).
    """
    g = basis_convert(f, "p")
    out: dict = {}
    for lam, c in g.coeffs.items():
        poly = {(0,) * N: c}
        for part in lam:
            nxt: dict = {}
            for e, d in poly.items():
                for j in range(N):
                    scale = Q ** part if j == i else ONE
                    e2 = tuple(x + (part if k == j else 0) for k, x in enumerate(e))
                    nxt[e2] = nxt.get(e2, ZERO) + d * scale
            poly = nxt
        for e, d in poly.items():
            out[e] = out.get(e, ZERO) + d
    return {e: d for e, d in out.items() if not d.is_zero()}


def _expand_m(f: SymPoly, N: int) -> dict:
    """Monomial-basis symmetric function as an explicit polynomial dict in N variables."""
    out: dict = {}
    for lam, c in basis_convert(f, "m").coeffs.items():
        if len(lam) > N:
            continue
        for perm in set(permutations(lam.padded(N))):
            out[perm] = out.get(perm, ZERO) + c
    return out


def q_shift_direct(f: SymPoly, i: int, N: int) -> dict:
    out = {}
    for e, c in _expand_m(f, N).items():
        out[e] = c * Q ** e[i]
    return out


# ---- kernel completeness and switching -------------------------------------------

def _pi_pp(n: int, variant: str) -> dict:
    """Degree-``n`` part of the kernel in the ``p (x) p`` basis."""
    out = {}
    for lam in partitions_of(n):
        c = qt(Fraction(1, z_lambda(lam)))
        if variant == "Pi":
            for part in lam:
                c = c * (1 - T ** part) / (1 - Q ** part)
        else:
            c = c * (-1) ** (lam.weight - len(lam))
        out[(lam, lam)] = c
    return out


def _tensor(f: SymPoly, g: SymPoly, basis: str = "p") -> dict:
    f = basis_convert(f, basis)
    g = basis_convert(g, basis)
    return {(a, b): c * d for a, c in f.coeffs.items() for b, d in g.coeffs.items()}


def _accumulate(acc: dict, d: dict, c=ONE):
    for k, v in d.items():
        acc[k] = acc.get(k, ZERO) + v * c


def completeness_residual(degree: int, variant: str = "Pi") -> dict:
    """Kernel minus its Macdonald expansion in ``p (x) p``, up to ``degree``; empty when exact."""
    resid: dict = {}
    for n in range(degree + 1):
        _accumulate(resid, _pi_pp(n, variant))
        for lam in partitions_of(n):
            P_l = macdonald_poly(lam, max(n, 1))
            if variant == "Pi":
                norm = inner_product_pq(P_l, P_l)
                _accumulate(resid, _tensor(P_l, P_l), -1 / norm)
            else:
                dual = macdonald_poly(conjugate(lam), max(n, 1)).swap_qt()
                _accumulate(resid, _tensor(P_l, dual), -ONE)
    return {k: v for k, v in resid.items() if not v.is_zero()}


def kernel_pp_realized(xs, ys, degree: int, variant: str = "Pi") -> dict:
    """The ``p (x) p`` kernel expanded into explicit monomials in ``xs`` and ``ys``."""
    out: dict = {}
    Nx, Ny = len(xs), len(ys)
    for n in range(degree + 1):
        for (lam, mu), c in _pi_pp(n, variant).items():
            fx = _expand_m(SymPoly.single("p", lam), Nx)
            fy = _expand_m(SymPoly.single("p", mu), Ny)
            for ex, a in fx.items():
                for ey, b in fy.items():
                    key = ex + ey
                    out[key] = out.get(key, ZERO) + c * a * b
    return {k: v for k, v in out.items() if not v.is_zero()}


def _h_tilde(f: SymPoly, n: int) -> SymPoly:
    Hf = macdonald_apply(basis_convert(f, "m").truncate_length(n), n)
    return (Hf.scale(T - 1) + f.truncate_length(n)).scale(T ** (-n))


def kernel_switch_residual(N: int, M: int, degree: int) -> dict:
    """``H~_N(x) Pi - H~_M(y) Pi`` in ``m_N (x) m_M``; empty when the identity holds."""
    resid: dict = {}
    for n in range(degree + 1):
        for (lam, mu), c in _pi_pp(n, "Pi").items():
            px = SymPoly.single("p", lam)
            py = SymPoly.single("p", mu)
            _accumulate(resid, _tensor(_h_tilde(px, N), py.truncate_length(M), "m"), c)
            _accumulate(resid, _tensor(px.truncate_length(N), _h_tilde(py, M), "m"), -c)
    return {k: v for k, v in resid.items() if not v.is_zero()}


# ---- lemma checks -----------------------------------------------------------------

@dataclass
class LemmaReport:
    case: str
    params: dict
    match: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"case": self.case, "params": self.params, "match": self.match, "detail": self.detail}


def _proportional(f: SymPoly, g: SymPoly):
    from .screening import proportionality
    return proportionality(f, g)


def _galilean(lam, r: int, s: int) -> LemmaReport:
    lam = Partition(lam)
    if len(lam) > r:
        raise ValueError("lambda must have at most r parts")
    lhs = macdonald_poly(Partition(x + s for x in lam.padded(r)), r)
    rhs = SymPoly("m", {Partition(x + s for x in mu.padded(r)): c
                        for mu, c in macdonald_poly(lam, r).coeffs.items()})
    ok = lhs == rhs
    return LemmaReport("galilean", {"lambda": list(lam), "r": r, "s": s}, ok,
                       "" if ok else f"residual {lhs - rhs}")


def particle_number_integral(lam, M: int, N: int, beta: int, variant: str = "Pi") -> SymPoly:
    """``CT_y[Pi(x, 1/y) Delta(y) C(y) P_lam(y)]`` with ``M`` y's and ``N`` x's."""
    lam = Partition(lam)
    xs = [f"x{i}" for i in range(1, N + 1)]
    ys = [f"y{j}" for j in range(1, M + 1)]
    variables = tuple(xs + ys)
    heights = (0,) * N + tuple(range(1, M + 1))
    pfac = _p_at(beta)
    sub = lambda c: c.substitute_beta(beta)
    fin_e, geometric = _pi_factors(xs, ys, beta, variant, yinv=True)
    finite = [_binomial(variables, heights, e, c) for e, c in fin_e]
    delta, c_num, c_geo, mono = _delta_C_parts(ys, beta, pfac)
    finite += [_binomial(variables, heights, e, c) for e, c in delta + c_num]
    geometric += c_geo
    one = TruncatedLaurent.constant(variables, heights, INF)
    finite.append(one.monomial(mono))
    py = {}
    for e, c in _expand_m(macdonald_poly(lam, M), M).items():
        py[(0,) * N + e] = sub(c)
    finite.append(TruncatedLaurent(variables, heights, INF, py))
    integrand = _product(variables, heights, 0, finite, geometric)
    return _to_sympoly(constant_term(integrand, ys), xs)


def _particle_number(lam, M: int, N: int, beta: int) -> LemmaReport:
    lam = Partition(lam)
    sub = lambda c: c.substitute_beta(beta)
    out = []
    ok = True
    for variant in ("Pi", "PiTilde"):
        got = particle_number_integral(lam, M, N, beta, variant)
        if variant == "Pi":
            target = macdonald_poly(lam, N)
        else:
            target = macdonald_poly(conjugate(lam), N).swap_qt() if len(conjugate(lam)) <= N else None
        if target is None:
            good = got.is_zero()
        else:
            good = _proportional(got, target.map_coeffs(sub)) is not None
        ok = ok and good
        out.append(f"{variant}:{'ok' if good else 'mismatch'}")
    return LemmaReport("particle_number", {"lambda": list(lam), "M": M, "N": N, "beta": beta}, ok, " ".join(out))


def _kernel_switch(N: int, M: int, degree: int) -> LemmaReport:
    resid = kernel_switch_residual(N, M, degree)
    return LemmaReport("kernel_switch", {"N": N, "M": M, "degree": degree}, not resid,
                       f"{len(resid)} nonzero residual terms")


def verify_lemmas(case: str, **params) -> LemmaReport:
    if case == "galilean":
        return _galilean(params["lam"], params["r"], params["s"])
    if case == "particle_number":
        return _particle_number(params["lam"], params["M"], params["N"], params.get("beta", 1))
    if case == "kernel_switch":
        return _kernel_switch(params["N"], params["M"], params.get("degree", 3))
    raise ValueError(f"unknown lemma case {case!r}")
