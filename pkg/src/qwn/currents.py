"""Fundamental vertices, W-currents, the vertex operator V and their relations.

Every relation check extracts one coefficient ``z^-n w^-m`` from both sides of
an identity of formal distributions acting on a Fock vector and returns the
difference.  Delta functions are never expanded: ``delta(c w/z) F(w)`` simply
contributes ``c^n F_{m+n}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .coeffs import ONE, ZERO, Mono, QTRat, Q, T, ppow, tpow, qt
from .fock import FockVector, HighestWeight, h_in_alpha_basis, pbw_basis
from .vertex import Current, VertexOp, identity_op, normal_product

__all__ = [
    "SeriesCoeffs", "TruncationError", "ModeTable", "exp_series", "f_series", "g_series",
    "lambda_op", "lambda_current", "w_current", "vertex_op", "lambda_mode", "w_mode",
    "vertex_mode", "nop_mode", "exchange_coefficient", "delta_coefficient",
    "check_current_relation", "check_lambda_exchange", "check_miura",
    "check_vertex_relation", "check_delta_identity", "check_deformed_delta",
]


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesCoeffs:
    name: str
    order: int
    coeffs: tuple

    def __getitem__(self, ell):
        return self.coeffs[ell] if 0 <= ell <= self.order else ZERO


def exp_series(a, order: int) -> list:
    """Taylor coefficients of ``exp(sum_{n>0} a(n) x^n)`` up to ``x^order``."""
    an = [None] + [a(n) for n in range(1, order + 1)]
    out = [ONE]
    for ell in range(1, order + 1):
        acc = ZERO
        for n in range(1, ell + 1):
            if not an[n].is_zero():
                acc = acc + an[n] * out[ell - n] * n
        out.append(acc / ell)
    return out


def series_product(*series, order: int) -> list:
    out = [ONE] + [ZERO] * order
    for s in series:
        new = [ZERO] * (order + 1)
        for i, a in enumerate(out):
            if a.is_zero():
                continue
            for j in range(order + 1 - i):
                if not s[j].is_zero():
                    new[i + j] = new[i + j] + a * s[j]
        out = new
    return out


def _scaled(coeffs, u: Mono) -> list:
    return [c * u.qt_power(ell) for ell, c in enumerate(coeffs)]


@lru_cache(maxsize=None)
def f_series(i: int, j: int, N: int, order: int) -> SeriesCoeffs:
    """Coefficients of the structure function ``f^{ij}(x)``, ``i <= j``."""
    if i > j:
        raise ValueError("f_series needs i <= j; use f^{ji} = f^{ij}")

    def a(n):
        return ((1 - Q ** n) * (1 - T ** (-n)) * (1 - ppow(i * n)) / (1 - ppow(n))
                * (1 - ppow((N - j) * n)) / (1 - ppow(N * n)) * ppow(Fraction((j - i) * n, 2)) / n)

    return SeriesCoeffs(f"f({i},{j})", order, tuple(exp_series(a, order)))


@lru_cache(maxsize=None)
def g_series(side: str, N: int, order: int) -> SeriesCoeffs:
    """Coefficients of ``g^L`` or ``g^R``."""
    if side == "L":
        def a(n):
            return (1 - T ** n) * (1 - ppow(n)) / (1 - ppow(N * n)) * ppow(Fraction(n, 2)) / n
        lead = tpow(Fraction(-1, N))
    elif side == "R":
        def a(n):
            return (1 - T ** (-n)) * (1 - ppow(-n)) / (1 - ppow(-N * n)) * ppow(Fraction(-n, 2)) / n
        lead = ONE
    else:
        raise ValueError("side must be 'L' or 'R'")
    return SeriesCoeffs(f"g{side}", order, tuple(c * lead for c in exp_series(a, order)))


# ---- currents ---------------------------------------------------------------

@lru_cache(maxsize=None)
def lambda_op(i: int, N: int) -> VertexOp:
    """Fundamental vertex ``Lambda_i(z)``."""
    offset = Fraction(N + 1, 2) - i
    return VertexOp(
        N, ("Lambda", i, N),
        create=lambda n: h_in_alpha_basis(i, -n, N),
        annih=lambda n: h_in_alpha_basis(i, n, N),
        prefactor=lambda w: w.h_zero(i).q_power() * ppow(offset),
    )


def lambda_current(i: int, N: int) -> Current:
    return Current.of(lambda_op(i, N))


@lru_cache(maxsize=None)
def w_current(i: int, N: int) -> Current:
    """``W^i(z)``; ``W^0 = 1`` and ``W^i = 0`` beyond ``N``."""
    if i == 0:
        return Current.of(identity_op(N))
    if i > N or i < 0:
        return Current(N)
    terms = []
    for js in combinations(range(1, N + 1), i):
        factors = tuple((lambda_op(j, N), Mono.p(Fraction(i - 1, 2) - k)) for k, j in enumerate(js))
        terms.append((ONE, normal_product(factors)))
    return Current(N, terms)


@lru_cache(maxsize=None)
def vertex_op(N: int) -> VertexOp:
    """``V(z)``; its weight shift lowers ``A_1`` by one."""
    dA = (-1,) + (0,) * (N - 2)
    return VertexOp(
        N, ("V", N),
        create=lambda n: [-c * ppow(Fraction(n, 2)) / (1 - Q ** (-n)) for c in h_in_alpha_basis(1, -n, N)],
        annih=lambda n: [-c * ppow(Fraction(-n, 2)) / (1 - Q ** n) for c in h_in_alpha_basis(1, n, N)],
        kappa=lambda w: -w.h_zero(1),
        shift=(dA, (0,) * (N - 1)),
    )


def _guard(v: FockVector, need: int, cap):
    if cap is not None and cap < need:
        raise TruncationError(f"grade cap {cap} is below the required {need}")


def lambda_mode(i: int, k: int, v: FockVector, cap=None) -> FockVector:
    _guard(v, v.max_grade() + max(0, -k), cap)
    return lambda_op(i, v.N).mode(k, v)


def w_mode(i: int, k: int, v: FockVector, cap=None) -> FockVector:
    _guard(v, v.max_grade() + max(0, -k), cap)
    return w_current(i, v.N).mode(k, v)


def vertex_mode(k: int, v: FockVector, cap=None) -> FockVector:
    """Mode ``k`` of ``V(z)`` counted relative to its ``z^kappa`` offset."""
    _guard(v, v.max_grade() + max(0, -k), cap)
    return vertex_op(v.N).mode(k, v)


def nop_mode(i: int, j: int, r: Mono, k: int, v: FockVector, cap=None) -> FockVector:
    """Mode ``k`` of the ordering ``W^i(r w) W^j(w)`` weighted by ``f^{ij}``."""
    N = v.N
    g = v.max_grade()
    _guard(v, g + abs(k), cap)
    Wi, Wj = w_current(i, N), w_current(j, N)
    mmax = max(g - k, g - 1, 0)
    f = f_series(min(i, j), max(i, j), N, mmax + 1)
    out = FockVector(v.weight)
    for m in range(mmax + 1):
        first = Wj.mode(k + m, v)
        second = Wi.mode(m + 1, v)
        if first.is_zero() and second.is_zero():
            continue
        a = Wi.mode(-m, first) if not first.is_zero() else None
        b = Wj.mode(k - m - 1, second) if not second.is_zero() else None
        for ell in range(m + 1):
            if f[ell].is_zero():
                continue
            if a is not None:
                out = out + a.scale(f[ell] * r.qt_power(m - ell))
            if b is not None:
                out = out + b.scale(f[ell] * r.qt_power(ell - m - 1))
    return out


def exchange_coefficient(X: Current, Y: Current, left, right, n: int, m: int, v: FockVector) -> FockVector:
    """Coefficient of ``z^-n w^-m`` in ``L(w/z) X(z) Y(w) - Y(w) X(z) R(z/w)``.

    ``left`` and ``right`` are coefficient sequences of the two series.
    """
    g = v.max_grade()
    out = None
    for ell in range(max(0, g - m) + 1):
        if left[ell].is_zero():
            continue
        inner = Y.mode(m + ell, v)
        if inner.is_zero():
            continue
        term = X.mode(n - ell, inner).scale(left[ell])
        out = term if out is None else out + term
    for ell in range(max(0, g - n) + 1):
        if right[ell].is_zero():
            continue
        inner = X.mode(n + ell, v)
        if inner.is_zero():
            continue
        term = -Y.mode(m - ell, inner).scale(right[ell])
        out = term if out is None else out + term
    if out is None:
        out = FockVector(X.target(Y.target(v.weight)))
    return out


def delta_coefficient(c: Mono, G: Current, n: int, m: int, v: FockVector) -> FockVector:
    """Coefficient of ``z^-n w^-m`` in ``delta(c w / z) G(w)``."""
    return G.mode(m + n, v).scale(c.qt_power(n))


def _c0() -> QTRat:
    return (1 - Q) * (1 - T ** -1) / (1 - ppow(1))


class _NopCurrent:
    """Adapter exposing ``nop_mode`` through the ``mode`` interface."""

    def __init__(self, i, j, r, d):
        self.i, self.j, self.r, self.d = i, j, r, d

    def mode(self, k, v):
        return nop_mode(self.i, self.j, self.r, k, v).scale(self.d.qt_power(-k))


def current_relation_rhs(i: int, j: int, n: int, m: int, v: FockVector) -> FockVector:
    N = v.N
    if i > 2:
        raise ValueError("closed right-hand sides are available for i = 1, 2 only")
    c0 = _c0()
    half = Fraction(1, 2)
    out = FockVector(v.weight)
    coef = -c0
    for k in range(1, min(i, N - j) + 1):
        if k > 1:
            ell = k - 1
            coef = coef * (1 - Q * ppow(ell)) * (1 - T ** -1 * ppow(ell)) / ((1 - ppow(ell)) * (1 - ppow(ell + 1)))
        up = _NopCurrent(i - k, j + k, Mono.p(Fraction(j - i, 2)), Mono.p(k * half))
        down = _NopCurrent(i - k, j + k, Mono.p(Fraction(i - j, 2)), Mono.p(-k * half))
        out = out + delta_coefficient(Mono.p(Fraction(j - i, 2) + k), up, n, m, v).scale(coef)
        out = out - delta_coefficient(Mono.p(Fraction(i - j, 2) - k), down, n, m, v).scale(coef)
    if i == 2 and j + 2 <= N:
        W = w_current(j + 2, N)
        pp = ppow(2)
        pj = ppow(j)
        up = (W.at(Mono.p(1)).scale(pp / (1 - pp)) + W.scale(1 / (1 - pj)))
        down = (W.scale(pj / (1 - pj)) + W.at(Mono.p(-1)).scale(1 / (1 - pp)))
        c2 = c0 * c0
        out = out + delta_coefficient(Mono.p(Fraction(j, 2)), up, n, m, v).scale(c2)
        out = out - delta_coefficient(Mono.p(Fraction(-j, 2)), down, n, m, v).scale(c2)
    return out


def check_current_relation(i: int, j: int, n: int, m: int, v: FockVector, cap=None) -> FockVector:
    """Residual of the ``W^i W^j`` exchange relation at ``z^-n w^-m`` on ``v``."""
    if i > j:
        raise ValueError("need i <= j")
    _guard(v, v.max_grade() + abs(n) + abs(m), cap)
    N = v.N
    g = v.max_grade()
    order = g + abs(n) + abs(m) + 1
    f = f_series(i, j, N, order)
    lhs = exchange_coefficient(w_current(i, N), w_current(j, N), f, f, n, m, v)
    return lhs - current_relation_rhs(i, j, n, m, v)


def check_lambda_exchange(i: int, j: int, n: int, m: int, v: FockVector) -> FockVector:
    """Residual of the ``Lambda_i Lambda_j`` exchange relation (``i <= j``)."""
    N = v.N
    order = v.max_grade() + abs(n) + abs(m) + 1
    f = f_series(1, 1, N, order)
    X, Y = lambda_current(i, N), lambda_current(j, N)
    lhs = exchange_coefficient(X, Y, f, f, n, m, v)
    if i == j:
        return lhs
    c0 = _c0()
    rhs = FockVector(v.weight)
    for c in (Mono(), Mono.p(1)):
        G = Current.of(normal_product(((lambda_op(i, N), c), (lambda_op(j, N), Mono()))))
        term = delta_coefficient(c, G, n, m, v).scale(c0)
        rhs = rhs + (term if c == Mono() else -term)
    return lhs - rhs


def check_miura(N: int, grade: int, v: FockVector = None) -> list:
    """Compare the expanded Miura product with the W-currents.

    Returns ``[(power_of_shift, mode, state, residual)]`` for every state of
    grade ``<= grade`` (or the single vector ``v``) and ``|mode| <= grade``.
    """
    if v is not None:
        states = [v]
    else:
        weight = HighestWeight(N, range(1, N), range(2, N + 1))
        states = [FockVector(weight, {mono: ONE}) for g in range(grade + 1) for mono in pbw_basis(N, g)]
    expansions = {}
    for chosen in range(2 ** N):
        picks = [(chosen >> k) & 1 for k in range(N)]  # 1 = Lambda, 0 = shift
        shifts = 0
        factors = []
        for k in range(1, N + 1):
            if picks[k - 1]:
                factors.append((lambda_op(k, N), Mono.p(1 - k + shifts)))
            else:
                shifts += 1
        expansions.setdefault(shifts, []).append(
            ((-1) ** len(factors), normal_product(tuple(factors)) if factors else identity_op(N)))
    report = []
    for e, terms in sorted(expansions.items()):
        lhs_cur = Current(N, terms)
        i = N - e
        d = Mono.p(Fraction(1 - i, 2))
        for state in states:
            for k in range(-grade, grade + 1):
                lhs = lhs_cur.mode(k, state)
                rhs = w_current(i, N).mode(k, state).scale((-1) ** i * d.qt_power(-k))
                report.append((e, k, state, lhs - rhs))
    return report


def check_vertex_relation(N: int, n: int, m: int, v: FockVector, i: int = 1) -> FockVector:
    """Residual of the exchange relation between ``W^i`` and ``V``.

    Left side ``prod_l gL(w p^(l-1)/z) W^i(z p^((1-i)/2)) V(w)`` minus the
    reversed product with ``gR``; the right side carries a single delta
    function at ``z = w p^(1/2)``.
    """
    g = v.max_grade()
    order = g + abs(n) + abs(m) + 1
    gl = g_series("L", N, order).coeffs
    gr = g_series("R", N, order).coeffs
    left = series_product(*[_scaled(gl, Mono.p(l - 1)) for l in range(1, i + 1)], order=order)
    right = series_product(*[_scaled(gr, Mono.p(1 - l)) for l in range(1, i + 1)], order=order)
    X = w_current(i, N).at(Mono.p(Fraction(1 - i, 2)))
    V = Current.of(vertex_op(N))
    lhs = exchange_coefficient(X, V, left, right, n, m, v)
    terms = []
    for js in combinations(range(2, N + 1), i - 1):
        factors = [(vertex_op(N), Mono.q(-1))]
        factors += [(lambda_op(j, N), Mono.p(Fraction(3, 2) - l)) for l, j in enumerate(js, start=2)]
        terms.append((ONE, normal_product(tuple(factors))))
    K = Current(N, terms).scale(ppow(Fraction(N - 1, 2)) * (T ** -1 - 1))
    rhs = delta_coefficient(Mono.p(Fraction(1, 2)), K, n, m, v)
    return lhs - rhs


# ---- formal series identities ------------------------------------------------

def check_delta_identity(order: int) -> list:
    """Residuals of the two-sided delta identity for ``x^k``, ``|k| <= order``."""
    pos = exp_series(lambda n: (1 - Q ** n) * (1 - T ** (-n)) / n, order)
    neg = exp_series(lambda n: (1 - Q ** (-n)) * (1 - T ** n) / n, order)
    c0 = _c0()
    out = []
    for k in range(-order, order + 1):
        lhs = pos[k] if k > 0 else (-neg[-k] if k < 0 else pos[0] - neg[0])
        out.append((k, lhs - c0 * (1 - ppow(k))))
    return out


class _RPoly(dict):
    """Laurent polynomial in a formal variable ``r`` with QTRat coefficients."""

    def __add__(self, other):
        out = _RPoly(self)
        for e, c in other.items():
            out[e] = out.get(e, ZERO) + c
        return _RPoly({e: c for e, c in out.items() if not c.is_zero()})

    def __neg__(self):
        return _RPoly({e: -c for e, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, _RPoly):
            other = _RPoly({0: qt(other)})
        out: dict = {}
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                out[e1 + e2] = out.get(e1 + e2, ZERO) + c1 * c2
        return _RPoly({e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def scale_r(self, u: QTRat):
        """``f(r) -> f(u r)``."""
        return _RPoly({e: c * u ** e for e, c in self.items()})


def _r(e=1, c=ONE):
    return _RPoly({e: qt(c)})


def _exp_series_r(a, order):
    out = [_r(0)]
    for ell in range(1, order + 1):
        acc = _RPoly()
        for n in range(1, ell + 1):
            acc = acc + a(n) * out[ell - n] * n
        out.append(acc * qt(Fraction(1, ell)))
    return out


def check_deformed_delta(order: int) -> list:
    """Residuals of the delta identity carrying ``(1 + r^n)`` at symbolic ``r``.

    Each coefficient is cleared of the denominators ``(1-r)(1-pr)(r-p)`` and
    compared as a Laurent polynomial in ``r``, which also covers the limits
    ``r -> 1, p, 1/p``.
    """
    pos = _exp_series_r(lambda n: (_r(0) + _r(n)) * ((1 - Q ** n) * (1 - T ** (-n)) / n), order)
    neg = _exp_series_r(lambda n: (_r(0) + _r(-n)) * ((1 - Q ** (-n)) * (1 - T ** n) / n), order)
    c0 = _c0()
    p = ppow(1)
    clear = (_r(0) - _r(1)) * (_r(0) - _r(1, p)) * (_r(1) - _r(0, p))
    out = []
    for k in range(-order, order + 1):
        if k > 0:
            lhs = pos[k]
        elif k < 0:
            lhs = -neg[-k]
        else:
            lhs = pos[0] - neg[0]
        a = (_r(0) - _r(1, Q)) * (_r(0) - _r(1, T ** -1)) * (_r(0) - _r(k, p ** k)) * (_r(1) - _r(0, p))
        b = (_r(1) - _r(0, Q)) * (_r(1) - _r(0, T ** -1)) * (_r(k) - _r(0, p ** k)) * (_r(0) - _r(1, p))
        rhs = (a - b) * c0
        out.append((k, lhs * clear - rhs))
    return out


class ModeTable:
    """Modes of a current on all PBW states up to a grade cap."""

    def __init__(self, current: Current, weight: HighestWeight, cap: int):
        self.current = current
        self.weight = weight
        self.cap = cap
        self._table: dict = {}

    def apply(self, k: int, v: FockVector) -> FockVector:
        if v.weight != self.weight:
            raise ValueError("vector lives over a different weight")
        if v.max_grade() > self.cap or v.max_grade() - k > self.cap:
            raise TruncationError(f"grade cap {self.cap} exceeded")
        out = FockVector(self.current.target(self.weight))
        for mono, c in v.terms.items():
            key = (k, mono)
            hit = self._table.get(key)
            if hit is None:
                hit = self.current.mode(k, FockVector(self.weight, {mono: ONE}))
                self._table[key] = hit
            out = out + hit.scale(c)
        return out
