"""Exact coefficient field Q(q^(1/d), t^(1/d)).

Every coefficient in the package is a :class:`QTRat`: a reduced fraction of
two integer polynomials in ``X = q^(1/d)`` and ``Y = t^(1/d)``.  The default
lattice is ``d = 2`` (half-integer powers of ``q`` and ``t``); zero-mode
eigenvalues of rank-``N`` bosons can require ``d = 2N`` and values are lifted
to a common lattice on demand, then pushed back to the smallest even ``d``.

Polynomial arithmetic and GCDs are delegated to ``python-flint``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Union

import flint

__all__ = [
    "QTRat", "Mono", "BetaExp", "CoefficientError", "PoleError",
    "NotRepresentableError", "ZERO", "ONE", "Q", "T", "P",
    "qpow", "tpow", "ppow", "qt", "qt_normalize", "qt_substitute_beta",
    "qt_evaluate", "parse_qt",
]

_CTX = flint.fmpz_mpoly_ctx.get(("X", "Y"), "lex")
_X, _Y = _CTX.gens()
_P1 = _CTX.constant(1)
_P0 = _CTX.constant(0)


class CoefficientError(ArithmeticError):
    """Base class for coefficient-field failures."""


class PoleError(CoefficientError, ZeroDivisionError):
    """Division by zero, or evaluation at a pole."""


class NotRepresentableError(CoefficientError):
    """A value would leave Q(q^(1/d), t^(1/d))."""


Number = Union[int, Fraction]


def _terms(poly) -> dict:
    return {(int(e[0]), int(e[1])): int(c) for e, c in poly.to_dict().items()}


def _exps_gcd(poly, acc: int) -> int:
    for e in poly.monoms():
        acc = gcd(acc, e[0], e[1])
        if acc == 1:
            break
    return acc


class QTRat:
    """Element of Q(q^(1/d), t^(1/d)) in canonical reduced form.

    Invariants: ``gcd(num, den) = 1``; the lex-leading coefficient of ``den``
    is positive; zero is ``0/1`` on ``d = 2``.  The lattice ``d`` may be
    larger than needed during arithmetic; hashing and rendering use the
    smallest even ``d`` (see ``reduced``).
    """

    __slots__ = ("num", "den", "d", "_hash")

    def __init__(self, num, den=None, d: int = 2):
        # trusted constructor; use _make() for unreduced input
        self.num = num
        self.den = _P1 if den is None else den
        self.d = d
        self._hash = None

    @staticmethod
    def _make(num, den, d: int = 2) -> "QTRat":
        if den.is_zero():
            raise PoleError("division by zero in Q(q,t)")
        if num.is_zero():
            return ZERO
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        return QTRat(num, den, d)

    def reduced(self) -> "QTRat":
        """Same value on the smallest even lattice."""
        d = self.d
        if d == 2:
            return self
        s = _exps_gcd(self.num, d // 2)
        if s > 1:
            s = _exps_gcd(self.den, s)
        if s == 1:
            return self
        return QTRat(self.num.deflate([s, s]), self.den.deflate([s, s]), d // s)

    # ---- coercion -------------------------------------------------------
    @staticmethod
    def coerce(x) -> "QTRat":
        if isinstance(x, QTRat):
            return x
        if isinstance(x, int):
            return QTRat(_CTX.constant(x)) if x else ZERO
        if isinstance(x, Fraction):
            if x == 0:
                return ZERO
            return QTRat(_CTX.constant(x.numerator), _CTX.constant(x.denominator))
        raise TypeError(f"cannot coerce {type(x).__name__} to QTRat")

    def _lift(self, d: int):
        k = d // self.d
        if k == 1:
            return self.num, self.den
        return self.num.inflate([k, k]), self.den.inflate([k, k])

    def _align(self, other: "QTRat"):
        if self.d == other.d:
            return self.num, self.den, other.num, other.den, self.d
        d = lcm(self.d, other.d)
        a, b = self._lift(d)
        c, e = other._lift(d)
        return a, b, c, e, d

    # ---- field operations ----------------------------------------------
    def __add__(self, other):
        try:
            other = QTRat.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        an, ad, bn, bd, d = self._align(other)
        if ad == bd:
            return QTRat._make(an + bn, ad, d)
        if ad.is_one():
            return QTRat._make(an * bd + bn, bd, d)
        if bd.is_one():
            return QTRat._make(an + bn * ad, ad, d)
        g = ad.gcd(bd)
        if g.is_one():
            return QTRat._make(an * bd + bn * ad, ad * bd, d)
        ad_g = ad / g
        bd_g = bd / g
        return QTRat._make(an * bd_g + bn * ad_g, ad_g * bd, d)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return QTRat(-self.num, self.den, self.d)

    def __sub__(self, other):
        try:
            other = QTRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QTRat.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            other = QTRat.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        an, ad, bn, bd, d = self._align(other)
        if not bd.is_one():
            g1 = an.gcd(bd)
            if not g1.is_one():
                an = an / g1
                bd = bd / g1
        if not ad.is_one():
            g2 = bn.gcd(ad)
            if not g2.is_one():
                bn = bn / g2
                ad = ad / g2
        num = an * bn
        den = ad * bd
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QTRat(num, den, d)

    __rmul__ = __mul__

    def inverse(self) -> "QTRat":
        if self.num.is_zero():
            raise PoleError("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QTRat(num, den, self.d)

    def __truediv__(self, other):
        try:
            other = QTRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QTRat.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        return QTRat(self.num ** k, self.den ** k, self.d)

    # ---- predicates / comparison ---------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        try:
            other = QTRat.coerce(other)
        except TypeError:
            return NotImplemented
        if self.d == other.d:
            return self.num == other.num and self.den == other.den
        an, ad, bn, bd, _ = self._align(other)
        return an == bn and ad == bd

    def __hash__(self):
        if self._hash is None:
            r = self.reduced()
            self._hash = hash((r.d, tuple(sorted(_terms(r.num).items())),
                               tuple(sorted(_terms(r.den).items()))))
        return self._hash

    # ---- structure -----------------------------------------------------
    def monomial(self):
        """Return ``(c, q_exp, t_exp)`` if the value is ``c q^a t^b``, else None."""
        if len(self.num) != 1 or len(self.den) != 1:
            return None
        (ne, nc), = _terms(self.num).items()
        (de, dc), = _terms(self.den).items()
        c = Fraction(nc, dc)
        return (c, Fraction(ne[0] - de[0], self.d), Fraction(ne[1] - de[1], self.d))

    def swap_qt(self) -> "QTRat":
        """Exchange the roles of q and t."""
        return QTRat._make(self.num.compose(_Y, _X), self.den.compose(_Y, _X), self.d)

    def substitute_beta(self, beta: int) -> "QTRat":
        """Specialise ``t = q^beta`` for a positive integer ``beta``."""
        if not isinstance(beta, int) or beta < 1:
            raise ValueError("beta must be a positive integer")
        xb = _X ** beta
        num = self.num.compose(_X, xb)
        den = self.den.compose(_X, xb)
        if den.is_zero():
            raise PoleError("denominator vanishes at t = q^beta")
        return QTRat._make(num, den, self.d)

    def evaluate(self, q0: Number, t0: Number) -> Fraction:
        """Exact value at rational ``q = q0``, ``t = t0``."""
        q0, t0 = Fraction(q0), Fraction(t0)
        num = _eval_poly(self.num, q0, t0, self.d)
        den = _eval_poly(self.den, q0, t0, self.d)
        if den == 0:
            raise PoleError(f"pole at q={q0}, t={t0}")
        return num / den

    def has_t(self) -> bool:
        return any(e[1] for e in _terms(self.num)) or any(e[1] for e in _terms(self.den))

    # ---- rendering -----------------------------------------------------
    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"QTRat({self.to_str()!r})"

    def to_str(self) -> str:
        """Canonical text form, bit-exact across runs."""
        if self.num.is_zero():
            return "0"
        self = self.reduced()
        content = int(self.den.content())
        num = {e: Fraction(c, content) for e, c in _terms(self.num).items()}
        den = {e: Fraction(c, content) for e, c in _terms(self.den).items()}
        ns = _render_poly(num, self.d)
        if len(den) == 1 and (0, 0) in den:
            return ns
        return f"({ns})/({_render_poly(den, self.d)})"


def _root(x: Fraction, k: int) -> Fraction:
    if k == 1:
        return x
    if x < 0 and k % 2 == 0:
        raise NotRepresentableError(f"no real {k}-th root of {x}")
    sign = -1 if x < 0 else 1
    out = []
    for n in (abs(x.numerator), x.denominator):
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** k == n:
                out.append(cand)
                break
        else:
            r = _iroot(n, k)
            if r ** k != n:
                raise NotRepresentableError(f"{x} is not a perfect {k}-th power")
            out.append(r)
    return sign * Fraction(out[0], out[1])


def _iroot(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _eval_poly(poly, q0: Fraction, t0: Fraction, d: int) -> Fraction:
    total = Fraction(0)
    roots = {}
    for (a, b), c in _terms(poly).items():
        val = Fraction(c)
        for base, e in ((q0, a), (t0, b)):
            if e == 0:
                continue
            f = Fraction(e, d)
            key = (base, f.denominator)
            if key not in roots:
                if base == 0:
                    roots[key] = Fraction(0)
                else:
                    roots[key] = _root(base, f.denominator)
            val *= roots[key] ** f.numerator
        total += val
    return total


def _render_exp(sym: str, e: Fraction) -> str:
    if e == 1:
        return sym
    if e.denominator == 1:
        return f"{sym}^{e.numerator}"
    return f"{sym}^({e.numerator}/{e.denominator})"


def _render_poly(terms: dict, d: int) -> str:
    parts = []
    for (a, b) in sorted(terms):
        c = terms[(a, b)]
        mono = []
        if a:
            mono.append(_render_exp("q", Fraction(a, d)))
        if b:
            mono.append(_render_exp("t", Fraction(b, d)))
        m = "*".join(mono)
        neg = c < 0
        ac = -c if neg else c
        if not m:
            body = str(ac)
        elif ac == 1:
            body = m
        else:
            body = f"{ac}*{m}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(r"^(?:(?P<c>\d+(?:/\d+)?)\*?)?(?P<m>.*)$")
_FACTOR_RE = re.compile(r"^(?P<s>[qt])(?:\^(?:\((?P<f>-?\d+/\d+)\)|(?P<i>-?\d+)))?$")


def _parse_poly(text: str) -> dict:
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    sign = 1
    if text[0] == "-":
        sign, text = -1, text[1:]
    pieces = re.split(r" ([+-]) ", text)
    out = {}
    signs = [sign] + [1 if s == "+" else -1 for s in pieces[1::2]]
    for s, term in zip(signs, pieces[0::2]):
        m = _TERM_RE.match(term)
        coeff = Fraction(m.group("c")) if m.group("c") else Fraction(1)
        mono = m.group("m")
        qe = te = Fraction(0)
        if mono:
            for factor in mono.split("*"):
                fm = _FACTOR_RE.match(factor)
                if fm is None:
                    raise ValueError(f"bad factor {factor!r}")
                e = Fraction(fm.group("f") or fm.group("i") or 1)
                if fm.group("s") == "q":
                    qe += e
                else:
                    te += e
        elif not m.group("c"):
            raise ValueError(f"bad term {term!r}")
        key = (qe, te)
        out[key] = out.get(key, Fraction(0)) + s * coeff
    return out


def _dict_to_qt(terms: dict) -> QTRat:
    acc = ZERO
    for (qe, te), c in terms.items():
        acc = acc + c * qpow(qe) * tpow(te)
    return acc


def parse_qt(text: str) -> QTRat:
    """Inverse of :meth:`QTRat.to_str`."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m:
        return _dict_to_qt(_parse_poly(m.group(1))) / _dict_to_qt(_parse_poly(m.group(2)))
    return _dict_to_qt(_parse_poly(text))


ZERO = QTRat(_P0, _P1, 2)
ONE = QTRat(_P1, _P1, 2)


def _mono_qt(qe: Fraction, te: Fraction, c: Number = 1) -> QTRat:
    qe, te = Fraction(qe), Fraction(te)
    d = lcm(2, qe.denominator, te.denominator)
    if d % 2:
        d *= 2
    a, b = int(qe * d), int(te * d)
    num_exp = (max(a, 0), max(b, 0))
    den_exp = (max(-a, 0), max(-b, 0))
    c = Fraction(c)
    num = _CTX.from_dict({num_exp: c.numerator})
    den = _CTX.from_dict({den_exp: c.denominator})
    return QTRat._make(num, den, d)


def qpow(e: Number) -> QTRat:
    """``q**e`` for rational ``e``."""
    return _mono_qt(Fraction(e), Fraction(0))


def tpow(e: Number) -> QTRat:
    """``t**e`` for rational ``e``."""
    return _mono_qt(Fraction(0), Fraction(e))


def ppow(e: Number) -> QTRat:
    """``p**e`` with ``p = q/t``."""
    e = Fraction(e)
    return _mono_qt(e, -e)


def qt(x) -> QTRat:
    return QTRat.coerce(x)


Q = qpow(1)
T = tpow(1)
P = ppow(1)


class BetaExp(NamedTuple):
    """Exponent ``beta*x + y + z/beta`` with rational ``x, y, z``."""

    beta: Fraction = Fraction(0)
    one: Fraction = Fraction(0)
    inv: Fraction = Fraction(0)

    def __add__(self, other):
        return BetaExp(self.beta + other.beta, self.one + other.one, self.inv + other.inv)

    def __neg__(self):
        return BetaExp(-self.beta, -self.one, -self.inv)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BetaExp":
        c = Fraction(c)
        return BetaExp(self.beta * c, self.one * c, self.inv * c)

    def q_power(self) -> QTRat:
        """``q**self`` using ``t = q**beta``."""
        if self.inv:
            raise NotRepresentableError("q^(1/beta) is not in Q(q,t)")
        return tpow(self.beta) * qpow(self.one)

    def t_power(self) -> QTRat:
        """``t**self``."""
        if self.beta:
            raise NotRepresentableError("t^beta is not in Q(q,t)")
        return tpow(self.one) * qpow(self.inv)


class Mono(NamedTuple):
    """Monomial ``q**q_exp * t**t_exp`` used as an argument multiplier."""

    q_exp: Fraction = Fraction(0)
    t_exp: Fraction = Fraction(0)

    @staticmethod
    def p(e: Number = 1) -> "Mono":
        e = Fraction(e)
        return Mono(e, -e)

    @staticmethod
    def q(e: Number = 1) -> "Mono":
        return Mono(Fraction(e), Fraction(0))

    @staticmethod
    def t(e: Number = 1) -> "Mono":
        return Mono(Fraction(0), Fraction(e))

    def __mul__(self, other):
        return Mono(self.q_exp + other.q_exp, self.t_exp + other.t_exp)

    def inv(self) -> "Mono":
        return Mono(-self.q_exp, -self.t_exp)

    def power(self, k: Number) -> "Mono":
        k = Fraction(k)
        return Mono(self.q_exp * k, self.t_exp * k)

    def to_qt(self) -> QTRat:
        return _mono_qt(self.q_exp, self.t_exp)

    def qt_power(self, k: int) -> QTRat:
        return _mono_qt(self.q_exp * k, self.t_exp * k)

    def exp_power(self, e: BetaExp) -> QTRat:
        """``self**e`` where ``e`` depends on beta."""
        out = ONE
        if self.q_exp:
            out = out * e.scale(self.q_exp).q_power()
        if self.t_exp:
            out = out * e.scale(self.t_exp).t_power()
        return out


def qt_normalize(num, den=None, d: int = 2) -> QTRat:
    """Canonical form of ``num/den``.

    ``num`` and ``den`` may be QTRat/int/Fraction values or dicts mapping
    ``(i, j)`` lattice exponents of ``q^(1/d)``, ``t^(1/d)`` to rationals.
    """
    def conv(x):
        if isinstance(x, dict):
            return _dict_to_qt({(Fraction(i, d), Fraction(j, d)): Fraction(c) for (i, j), c in x.items()})
        return QTRat.coerce(x)

    n = conv(num)
    if den is None:
        return n
    dd = conv(den)
    if dd.is_zero():
        raise PoleError("zero denominator")
    return n / dd


def qt_substitute_beta(x: QTRat, beta: int) -> QTRat:
    return QTRat.coerce(x).substitute_beta(beta)


def qt_evaluate(x: QTRat, q0: Number, t0: Number) -> Fraction:
    return QTRat.coerce(x).evaluate(q0, t0)
