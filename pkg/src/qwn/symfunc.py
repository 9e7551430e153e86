"""Partitions, monomial/power-sum bases and Macdonald polynomials.

The Macdonald operator acts on symmetric polynomials in exactly ``M``
variables.  Its matrix on monomial symmetric functions is obtained by exact
polynomial division by the Vandermonde determinant, and ``P_lambda`` is then
solved by back-substitution down the dominance order.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable

import flint

from .coeffs import ONE, ZERO, QTRat, Q, T, qpow, tpow, qt

__all__ = [
    "Partition", "SymPoly", "partitions_of", "dominance_leq", "conjugate",
    "basis_convert", "macdonald_apply", "macdonald_eigenvalue",
    "macdonald_poly", "inner_product_pq", "z_lambda", "p_to_m_row",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        parts = tuple(x for x in parts if x != 0) if all(x >= 0 for x in parts) else parts
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicities(self) -> dict:
        out: dict = {}
        for x in self:
            out[x] = out.get(x, 0) + 1
        return out

    def padded(self, m: int) -> tuple:
        if len(self) > m:
            raise ValueError(f"{self} has more than {m} parts")
        return tuple(self) + (0,) * (m - len(self))

    def __repr__(self):
        return f"Partition({list(self)})"


def partitions_of(n: int, max_parts: int | None = None) -> list[Partition]:
    """All partitions of ``n`` with at most ``max_parts`` parts, reverse-lex order."""
    if n < 0:
        return []
    limit = n if max_parts is None else max_parts
    out: list[Partition] = []

    def rec(rem, largest, prefix):
        if rem == 0:
            out.append(Partition(prefix))
            return
        if len(prefix) == limit:
            return
        for k in range(min(rem, largest), 0, -1):
            rec(rem - k, k, prefix + [k])

    rec(n, n, [])
    return out


def dominance_leq(mu, lam) -> bool:
    """True iff ``mu`` is dominated by ``lam``."""
    if sum(mu) != sum(lam):
        raise ValueError("dominance order needs partitions of equal weight")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def conjugate(lam) -> Partition:
    if not lam:
        return Partition(())
    return Partition(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def z_lambda(lam) -> int:
    out = 1
    for k, m in Partition(lam).multiplicities().items():
        out *= k ** m * factorial(m)
    return out


@dataclass
class SymPoly:
    """Symmetric function ``sum c_lambda b_lambda`` in basis ``"m"`` or ``"p"``."""

    basis: str
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in ("m", "p"):
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for lam, c in self.coeffs.items():
            c = qt(c)
            if not c.is_zero():
                clean[Partition(lam)] = c
        self.coeffs = clean

    @classmethod
    def one(cls, basis: str = "m") -> "SymPoly":
        return cls(basis, {Partition(()): ONE})

    @classmethod
    def single(cls, basis: str, lam, c=ONE) -> "SymPoly":
        return cls(basis, {Partition(lam): c})

    def __add__(self, other: "SymPoly") -> "SymPoly":
        if other.basis != self.basis:
            other = basis_convert(other, self.basis)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, ZERO) + c
        return SymPoly(self.basis, out)

    def __neg__(self):
        return SymPoly(self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymPoly":
        c = qt(c)
        return SymPoly(self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            a = basis_convert(self, "p")
            b = basis_convert(other, "p")
            out: dict = {}
            for l1, c1 in a.coeffs.items():
                for l2, c2 in b.coeffs.items():
                    key = Partition(sorted(l1 + l2, reverse=True))
                    out[key] = out.get(key, ZERO) + c1 * c2
            return basis_convert(SymPoly("p", out), self.basis)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        if other.basis != self.basis:
            other = basis_convert(other, self.basis)
        return self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set:
        return {lam.weight for lam in self.coeffs}

    def map_coeffs(self, fn) -> "SymPoly":
        return SymPoly(self.basis, {k: fn(v) for k, v in self.coeffs.items()})

    def swap_qt(self) -> "SymPoly":
        return self.map_coeffs(lambda c: c.swap_qt())

    def negate_variables(self) -> "SymPoly":
        """``f(z) -> f(-z)``."""
        f = basis_convert(self, "p")
        out = SymPoly("p", {lam: (-c if lam.weight % 2 else c) for lam, c in f.coeffs.items()})
        return basis_convert(out, self.basis)

    def truncate_length(self, m: int) -> "SymPoly":
        """Realise in ``m`` variables: drop monomials ``m_mu`` with more than ``m`` parts."""
        f = basis_convert(self, "m")
        return SymPoly("m", {lam: c for lam, c in f.coeffs.items() if len(lam) <= m})

    def sorted_terms(self) -> list:
        return sorted(self.coeffs.items(), key=lambda kv: (-kv[0].weight, _revlex_key(kv[0])))

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"partition": list(lam), "coeff": c.to_str()} for lam, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymPoly":
        from .coeffs import parse_qt
        return cls(data["basis"], {Partition(t["partition"]): parse_qt(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        body = " + ".join(f"({c})*{self.basis}{list(lam)}" for lam, c in self.sorted_terms())
        return f"SymPoly[{body or '0'}]"


def _revlex_key(lam):
    # partitions_of order: larger first in lex
    return tuple(-x for x in lam) + (0,)


# ---- power sums <-> monomials ----------------------------------------------

@lru_cache(maxsize=None)
def p_to_m_row(lam: Partition) -> dict:
    """``p_lam`` expanded in monomials: ``{mu: int}``."""
    lam = Partition(lam)
    n = lam.weight
    out = {}
    for mu in partitions_of(n):
        c = _count_fillings(tuple(lam), tuple(mu))
        if c:
            out[mu] = c
    return out


def _count_fillings(parts: tuple, target: tuple) -> int:
    # number of maps parts -> slots with slot sums equal to target
    @lru_cache(maxsize=None)
    def rec(i, rem):
        if i == len(parts):
            return 1 if all(r == 0 for r in rem) else 0
        total = 0
        for j, r in enumerate(rem):
            if r >= parts[i]:
                nxt = rem[:j] + (r - parts[i],) + rem[j + 1:]
                total += rec(i + 1, nxt)
        return total

    return rec(0, target)


@lru_cache(maxsize=None)
def _m_to_p_row(mu: Partition) -> dict:
    """``m_mu`` expanded in power sums: ``{lam: Fraction}``."""
    mu = Partition(mu)
    row = p_to_m_row(mu)  # p_mu = R_mumu m_mu + sum_{nu > mu} R_munu m_nu
    out = {mu: Fraction(1)}
    for nu, c in row.items():
        if nu == mu:
            continue
        for lam, d in _m_to_p_row(nu).items():
            out[lam] = out.get(lam, Fraction(0)) - c * d
    diag = Fraction(row[mu])
    return {lam: v / diag for lam, v in out.items() if v}


def basis_convert(f: SymPoly, target: str) -> SymPoly:
    if f.basis == target:
        return f
    out: dict = {}
    table = p_to_m_row if target == "m" else _m_to_p_row
    for lam, c in f.coeffs.items():
        for mu, r in table(lam).items():
            out[mu] = out.get(mu, ZERO) + c * Fraction(r)
    return SymPoly(target, out)


# ---- Macdonald operator -----------------------------------------------------

@lru_cache(maxsize=None)
def _poly_ctx(m: int):
    names = tuple(f"z{i}" for i in range(m)) + ("q", "t")
    return flint.fmpz_mpoly_ctx.get(names, "lex")


@lru_cache(maxsize=None)
def _vandermonde_data(m: int):
    ctx = _poly_ctx(m)
    gens = ctx.gens()
    z, t = gens[:m], gens[m + 1]
    vdm = ctx.constant(1)
    for i in range(m):
        for j in range(i + 1, m):
            vdm *= z[i] - z[j]
    weights = []
    for i in range(m):
        w = ctx.constant(-1 if i % 2 else 1)
        for j in range(m):
            if j != i:
                w *= t * z[i] - z[j]
        for j in range(m):
            for k in range(j + 1, m):
                if i not in (j, k):
                    w *= z[j] - z[k]
        weights.append(w)
    return vdm, weights


def _monomial_poly(mu: Partition, m: int, shift_var: int | None = None):
    ctx = _poly_ctx(m)
    terms = {}
    for alpha in set(permutations(mu.padded(m))):
        qexp = alpha[shift_var] if shift_var is not None else 0
        terms[alpha + (qexp, 0)] = 1
    return ctx.from_dict(terms)


def _poly_qt_to_qtrat(poly_terms: dict) -> QTRat:
    acc = ZERO
    for (qe, te), c in poly_terms.items():
        acc = acc + c * qpow(qe) * tpow(te)
    return acc


@lru_cache(maxsize=None)
def _h_on_monomial(mu: Partition, m: int) -> dict:
    """``H m_mu`` in ``m`` variables as ``{nu: QTRat}``."""
    mu = Partition(mu)
    if len(mu) > m:
        return {}
    vdm, weights = _vandermonde_data(m)
    num = _poly_ctx(m).constant(0)
    for i in range(m):
        num += weights[i] * _monomial_poly(mu, m, shift_var=i)
    res = num / vdm
    grouped: dict = {}
    for exps, c in res.to_dict().items():
        zexp = tuple(int(e) for e in exps[:m])
        if any(zexp[i] < zexp[i + 1] for i in range(m - 1)):
            continue
        grouped.setdefault(zexp, {})[(int(exps[m]), int(exps[m + 1]))] = int(c)
    out = {}
    for zexp, poly in grouped.items():
        out[Partition(zexp)] = _poly_qt_to_qtrat(poly)
    return out


def macdonald_apply(f: SymPoly, m: int) -> SymPoly:
    """Apply the Macdonald operator in ``m`` variables; result in ``f``'s basis."""
    g = basis_convert(f, "m")
    for lam in g.coeffs:
        if len(lam) > m:
            raise ValueError(f"m={m} variables cannot carry m_{list(lam)}")
    out: dict = {}
    for lam, c in g.coeffs.items():
        for nu, h in _h_on_monomial(lam, m).items():
            out[nu] = out.get(nu, ZERO) + c * h
    return basis_convert(SymPoly("m", out), f.basis)


def macdonald_eigenvalue(lam, m: int) -> QTRat:
    lam = Partition(lam)
    if len(lam) > m:
        raise ValueError(f"partition {list(lam)} has more than {m} parts")
    out = ZERO
    for i, part in enumerate(lam.padded(m), start=1):
        out = out + T ** (m - i) * Q ** part
    return out


class EigenvalueCollision(ArithmeticError):
    pass


_POLY_CACHE: dict = {}
_POLY_LOCK = threading.Lock()


def macdonald_poly(lam, m: int) -> SymPoly:
    """Monic Macdonald polynomial ``P_lam`` in ``m`` variables (monomial basis)."""
    lam = Partition(lam)
    if len(lam) > m:
        raise ValueError(f"partition {list(lam)} needs at least {len(lam)} variables")
    key = (lam, m)
    hit = _POLY_CACHE.get(key)
    if hit is not None:
        return hit
    n = lam.weight
    eps = macdonald_eigenvalue(lam, m)
    below = [mu for mu in partitions_of(n, m) if dominance_leq(mu, lam)]
    coeff = {lam: ONE}
    for mu in below:  # reverse-lex: dominating partitions come first
        if mu == lam:
            continue
        acc = ZERO
        for nu, c in coeff.items():
            h = _h_on_monomial(nu, m).get(mu)
            if h is not None:
                acc = acc + c * h
        diag = _h_on_monomial(mu, m)[mu]
        gap = eps - diag
        if gap.is_zero():
            raise EigenvalueCollision(f"eigenvalues of {list(lam)} and {list(mu)} coincide")
        if not acc.is_zero():
            coeff[mu] = acc / gap
    out = SymPoly("m", coeff)
    with _POLY_LOCK:
        _POLY_CACHE.setdefault(key, out)
    return _POLY_CACHE[key]


def inner_product_pq(f: SymPoly, g: SymPoly) -> QTRat:
    """Power-sum scalar product ``<p_l, p_m> = delta z_l prod (1-q^l_i)/(1-t^l_i)``."""
    f = basis_convert(f, "p")
    g = basis_convert(g, "p")
    out = ZERO
    for lam, c in f.coeffs.items():
        d = g.coeffs.get(lam)
        if d is None:
            continue
        norm = qt(z_lambda(lam))
        for part in lam:
            norm = norm * (1 - Q ** part) / (1 - T ** part)
        out = out + c * d * norm
    return out
