"""Deformed Heisenberg algebra, highest weights and Fock modules.

States are written in the PBW basis of root-boson creation modes
``alpha^a_{-n}`` (``a = 1..N-1``, ``n >= 1``).  A monomial is a sorted tuple
of ``(a, n)`` pairs.  Fundamental bosons ``h^i_n`` are linearly dependent and
are always resolved into root bosons before they act.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .coeffs import ONE, ZERO, BetaExp, QTRat, Q, T, ppow, qt

__all__ = [
    "HighestWeight", "FockVector", "alpha_commutator", "h_in_alpha_basis",
    "h_commutator", "h_alpha_commutator", "weight_rs", "annihilate", "create",
    "pairing", "pbw_basis", "cartan",
]


def cartan(a: int, b: int) -> int:
    return 2 if a == b else (-1 if abs(a - b) == 1 else 0)


def _theta(cond: bool) -> int:
    return 1 if cond else 0


@dataclass(frozen=True)
class HighestWeight:
    """Weight with ``alpha^a = sqrt(beta) A_a - B_a / sqrt(beta)``."""

    N: int
    A: tuple
    B: tuple

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("rank N must be at least 2")
        object.__setattr__(self, "A", tuple(Fraction(x) for x in self.A))
        object.__setattr__(self, "B", tuple(Fraction(x) for x in self.B))
        if len(self.A) != self.N - 1 or len(self.B) != self.N - 1:
            raise ValueError(f"weight data must have N-1 = {self.N - 1} entries")

    @classmethod
    def vacuum(cls, N: int) -> "HighestWeight":
        return cls(N, (0,) * (N - 1), (0,) * (N - 1))

    def alpha_zero(self, a: int) -> BetaExp:
        """Eigenvalue of ``sqrt(beta) alpha^a_0``."""
        return BetaExp(self.A[a - 1], -self.B[a - 1], Fraction(0))

    def alpha_zero_inv(self, a: int) -> BetaExp:
        """Eigenvalue of ``alpha^a_0 / sqrt(beta)``."""
        return BetaExp(Fraction(0), self.A[a - 1], -self.B[a - 1])

    def h_zero(self, i: int) -> BetaExp:
        """Eigenvalue of ``sqrt(beta) h^i_0``."""
        x = y = Fraction(0)
        for a in range(1, self.N):
            c = _theta(i <= a) - Fraction(a, self.N)
            x += c * self.A[a - 1]
            y += c * self.B[a - 1]
        return BetaExp(x, -y, Fraction(0))

    def shifted(self, dA=None, dB=None) -> "HighestWeight":
        A = self.A if dA is None else tuple(x + y for x, y in zip(self.A, dA))
        B = self.B if dB is None else tuple(x + y for x, y in zip(self.B, dB))
        return HighestWeight(self.N, A, B)

    def to_json(self) -> dict:
        conv = lambda v: [int(x) if x.denominator == 1 else str(x) for x in v]
        return {"N": self.N, "A": conv(self.A), "B": conv(self.B)}


def weight_rs(N: int, r, s, sign: str = "+"):
    """Weights ``(alpha_{r,s}, tilde alpha_{r,s})`` labelling a singular vector.

    For ``sign='-'`` the roles of ``sqrt(beta)`` and ``-1/sqrt(beta)`` are
    exchanged, which swaps the two integer lists.
    """
    r, s = list(r), list(s)
    if len(r) != N - 1 or len(s) != N - 1:
        raise ValueError("r and s need N-1 entries")
    if any(x < 0 for x in r + s):
        raise ValueError("r and s must be non-negative")
    if any(r[i] < r[i + 1] for i in range(len(r) - 1)):
        raise ValueError("r must be weakly decreasing")
    rr = [0] + r + [0]
    up = [1 + rr[a] - rr[a - 1] for a in range(1, N)]
    down = [1 - rr[a] + rr[a + 1] for a in range(1, N)]
    ss = [1 + x for x in s]
    if sign == "+":
        return HighestWeight(N, up, ss), HighestWeight(N, down, ss)
    if sign == "-":
        return HighestWeight(N, ss, up), HighestWeight(N, ss, down)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@lru_cache(maxsize=None)
def alpha_commutator(a: int, n: int, b: int, m: int, N: int) -> QTRat:
    """``[alpha^a_n, alpha^b_m]``."""
    for x in (a, b):
        if not 1 <= x <= N - 1:
            raise ValueError(f"root index {x} outside 1..{N - 1}")
    if n + m != 0 or n == 0:
        return ZERO
    pn = ppow(-n)
    bracket = ZERO
    if a == b:
        bracket = 1 + pn
    elif b == a + 1:
        bracket = qt(-1)
    elif b == a - 1:
        bracket = -pn
    else:
        return ZERO
    return -(1 - Q ** n) * (1 - T ** (-n)) * bracket / n


@lru_cache(maxsize=None)
def h_in_alpha_basis(i: int, n: int, N: int) -> tuple:
    """Coefficients ``c_a`` with ``h^i_n = sum_a c_a alpha^a_n``."""
    if not 1 <= i <= N:
        raise ValueError(f"index {i} outside 1..{N}")
    P = ppow(n)
    powers = [P ** j for j in range(N + 1)]
    total = sum(powers[1:], ZERO)
    out = []
    for a in range(1, N):
        tail = sum(powers[a + 1:], ZERO)
        out.append(tail / total - _theta(a < i))
    return tuple(out)


def h_commutator(i: int, n: int, j: int, m: int, N: int) -> QTRat:
    """``[h^i_n, h^j_m]`` from the fundamental boson relations."""
    if n + m != 0 or n == 0:
        return ZERO
    num = 1 - ppow((N * _theta(i == j) - 1) * n)
    return -(1 - Q ** n) * (1 - T ** (-n)) * num / (1 - ppow(N * n)) * ppow(N * n * _theta(i < j)) / n


def h_alpha_commutator(i: int, n: int, b: int, m: int, N: int) -> QTRat:
    """``[h^i_n, alpha^b_m]`` evaluated through the root-boson expansion."""
    out = ZERO
    for a, c in enumerate(h_in_alpha_basis(i, n, N), start=1):
        if not c.is_zero():
            out = out + c * alpha_commutator(a, n, b, m, N)
    return out


@dataclass
class FockVector:
    weight: HighestWeight
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            c = qt(c)
            if not c.is_zero():
                clean[tuple(sorted(mono))] = c
        self.terms = clean

    @classmethod
    def highest(cls, weight: HighestWeight) -> "FockVector":
        return cls(weight, {(): ONE})

    @classmethod
    def zero(cls, weight: HighestWeight) -> "FockVector":
        return cls(weight, {})

    @property
    def N(self) -> int:
        return self.weight.N

    def _check(self, other):
        if other.weight != self.weight:
            raise ValueError(f"weight mismatch: {self.weight} vs {other.weight}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return FockVector(self.weight, out)

    def __neg__(self):
        return FockVector(self.weight, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        c = qt(c)
        if c.is_zero():
            return FockVector(self.weight)
        return FockVector(self.weight, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.weight == other.weight and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set:
        return {grade(m) for m in self.terms}

    def max_grade(self) -> int:
        return max(self.grades(), default=0)

    def coefficient(self, mono) -> QTRat:
        return self.terms.get(tuple(sorted(mono)), ZERO)

    def to_json(self) -> dict:
        return {
            "weight": self.weight.to_json(),
            "terms": [{"modes": [list(x) for x in m], "coeff": c.to_str()}
                      for m, c in sorted(self.terms.items())],
        }

    def __repr__(self):
        body = " + ".join(f"({c})*{list(m)}" for m, c in sorted(self.terms.items()))
        return f"FockVector[{body or '0'}]"


def grade(mono) -> int:
    return sum(n for _, n in mono)


def _annihilate_mono(a: int, n: int, mono: tuple, N: int) -> dict:
    out: dict = {}
    for b, m in set(mono):
        if m != n:
            continue
        c = alpha_commutator(a, n, b, -m, N)
        if c.is_zero():
            continue
        idx = mono.index((b, m))
        rest = mono[:idx] + mono[idx + 1:]
        out[rest] = out.get(rest, ZERO) + c * mono.count((b, m))
    return out


def annihilate(a: int, n: int, v: FockVector) -> FockVector:
    """``alpha^a_n v`` for ``n > 0``."""
    if n <= 0:
        raise ValueError("annihilation mode must be positive")
    out: dict = {}
    for mono, c in v.terms.items():
        for rest, d in _annihilate_mono(a, n, mono, v.N).items():
            out[rest] = out.get(rest, ZERO) + c * d
    return FockVector(v.weight, out)


def create(a: int, n: int, v: FockVector) -> FockVector:
    """``alpha^a_{-n} v`` for ``n > 0``."""
    if n <= 0:
        raise ValueError("creation mode must be positive")
    return FockVector(v.weight, {tuple(sorted(m + ((a, n),))): c for m, c in v.terms.items()})


def pairing(bra: FockVector, ket: FockVector) -> QTRat:
    """Contragredient pairing with ``<alpha|alpha> = 1`` and ``alpha_{-n}^+ = alpha_n``."""
    if bra.weight != ket.weight:
        raise ValueError("pairing needs equal weights")
    total = ZERO
    for mono, c in bra.terms.items():
        w = ket
        for a, n in mono:
            w = annihilate(a, n, w)
            if w.is_zero():
                break
        total = total + c * w.coefficient(())
    return total


def _partitions_any(n: int):
    if n == 0:
        yield ()
        return

    def rec(rem, largest):
        if rem == 0:
            yield ()
            return
        for k in range(min(rem, largest), 0, -1):
            for tail in rec(rem - k, k):
                yield (k,) + tail

    yield from rec(n, n)


def pbw_basis(N: int, g: int) -> list:
    """PBW monomials of grade ``g`` in sorted order."""
    out = set()
    for parts in _partitions_any(g):
        labels = [list(combinations_with_replacement(range(1, N), parts.count(k))) for k in sorted(set(parts))]
        _combine(sorted(set(parts)), labels, 0, (), out)
    return sorted(out)


def _combine(sizes, labels, idx, acc, out):
    if idx == len(sizes):
        out.add(tuple(sorted(acc)))
        return
    for choice in labels[idx]:
        _combine(sizes, labels, idx + 1, acc + tuple((a, sizes[idx]) for a in choice), out)
