"""Normal-ordered exponential vertex operators acting on Fock vectors.

A vertex operator here is

    O(z) = :exp(sum_n C_n . alpha_{-n} z^n + sum_n D_n . alpha_n z^-n): * s(w) * z^kappa(w)

followed by a shift of the highest weight, where ``s`` and ``kappa`` are read
off the weight of the state it acts on.  Modes are counted relative to
``kappa``: ``O(z) = z^kappa sum_k O_k z^-k``, so ``O_k`` lowers the grade by
``k``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeffs import ONE, ZERO, BetaExp, Mono, QTRat
from .fock import FockVector, HighestWeight, alpha_commutator

__all__ = ["VertexOp", "Current", "normal_product", "identity_op"]

_ZERO_EXP = BetaExp(Fraction(0), Fraction(0), Fraction(0))


class VertexOp:
    def __init__(self, N, key, create=None, annih=None, prefactor=None, kappa=None, shift=None):
        self.N = N
        self.key = key
        self._create_fn = create
        self._annih_fn = annih
        self._prefactor = prefactor
        self._kappa = kappa
        self.shift = shift  # (dA, dB) or None
        self._cre: dict = {}
        self._ann: dict = {}
        self._contract: dict = {}
        self._cache: dict = {}

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, VertexOp) and self.key == other.key

    def __repr__(self):
        return f"VertexOp{self.key}"

    def create_coeffs(self, n: int) -> tuple:
        """Coefficients of ``alpha^a_{-n} z^n`` in the exponent (``n > 0``)."""
        got = self._cre.get(n)
        if got is None:
            got = tuple(self._create_fn(n)) if self._create_fn else (ZERO,) * (self.N - 1)
            self._cre[n] = got
        return got

    def annih_coeffs(self, n: int) -> tuple:
        """Coefficients of ``alpha^a_n z^-n`` in the exponent (``n > 0``)."""
        got = self._ann.get(n)
        if got is None:
            got = tuple(self._annih_fn(n)) if self._annih_fn else (ZERO,) * (self.N - 1)
            self._ann[n] = got
        return got

    def prefactor(self, w: HighestWeight) -> QTRat:
        return self._prefactor(w) if self._prefactor else ONE

    def kappa(self, w: HighestWeight) -> BetaExp:
        return self._kappa(w) if self._kappa else _ZERO_EXP

    def target(self, w: HighestWeight) -> HighestWeight:
        if self.shift is None:
            return w
        return w.shifted(*self.shift)

    def _contraction(self, n: int) -> list:
        # [sum_a D_n[a] alpha^a_n, alpha^b_{-n}] for each b
        got = self._contract.get(n)
        if got is None:
            D = self.annih_coeffs(n)
            got = []
            for b in range(1, self.N):
                acc = ZERO
                for a in range(1, self.N):
                    if not D[a - 1].is_zero():
                        acc = acc + D[a - 1] * alpha_commutator(a, n, b, -n, self.N)
                got.append(acc)
            self._contract[n] = got
        return got

    def _lower(self, n: int, vec: dict) -> dict:
        contr = self._contraction(n)
        out: dict = {}
        for mono, c in vec.items():
            for b, m in set(mono):
                if m != n or contr[b - 1].is_zero():
                    continue
                idx = mono.index((b, m))
                rest = mono[:idx] + mono[idx + 1:]
                out[rest] = out.get(rest, ZERO) + c * contr[b - 1] * mono.count((b, m))
        return out

    def _raise(self, n: int, vec: dict) -> dict:
        C = self.create_coeffs(n)
        out: dict = {}
        for mono, c in vec.items():
            for b in range(1, self.N):
                if C[b - 1].is_zero():
                    continue
                new = tuple(sorted(mono + ((b, n),)))
                out[new] = out.get(new, ZERO) + c * C[b - 1]
        return out

    def _exp_action(self, k: int, mono: tuple) -> dict:
        key = (k, mono)
        got = self._cache.get(key)
        if got is not None:
            return got
        g = sum(n for _, n in mono)
        ys = [{mono: ONE}]
        for a in range(1, g + 1):
            acc: dict = {}
            for n in range(1, a + 1):
                for m, c in self._lower(n, ys[a - n]).items():
                    acc[m] = acc.get(m, ZERO) + c * n
            ys.append({m: c / a for m, c in acc.items() if not c.is_zero()})
        out: dict = {}
        for a in range(max(0, k), g + 1):
            if not ys[a]:
                continue
            xs = [ys[a]]
            for c_deg in range(1, a - k + 1):
                acc = {}
                for n in range(1, c_deg + 1):
                    for m, c in self._raise(n, xs[c_deg - n]).items():
                        acc[m] = acc.get(m, ZERO) + c * n
                xs.append({m: c / c_deg for m, c in acc.items() if not c.is_zero()})
            for m, c in xs[a - k].items():
                out[m] = out.get(m, ZERO) + c
        out = {m: c for m, c in out.items() if not c.is_zero()}
        self._cache[key] = out
        return out

    def mode(self, k: int, v: FockVector) -> FockVector:
        w = v.weight
        out: dict = {}
        for mono, c in v.terms.items():
            for m, d in self._exp_action(k, mono).items():
                out[m] = out.get(m, ZERO) + c * d
        s = self.prefactor(w)
        return FockVector(self.target(w), {m: c * s for m, c in out.items()})


def identity_op(N: int) -> VertexOp:
    return VertexOp(N, ("id", N))


def _add_shift(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (tuple(x + y for x, y in zip(a[0], b[0])), tuple(x + y for x, y in zip(a[1], b[1])))


@lru_cache(maxsize=None)
def normal_product(factors: tuple) -> VertexOp:
    """``:prod_i O_i(u_i z):`` for ``factors = ((O_i, u_i), ...)`` with ``u_i`` a Mono.

    All zero modes are read on the weight of the state the product acts on.
    """
    N = factors[0][0].N

    def create(n):
        out = [ZERO] * (N - 1)
        for op, u in factors:
            un = u.qt_power(n)
            for a, c in enumerate(op.create_coeffs(n)):
                if not c.is_zero():
                    out[a] = out[a] + un * c
        return out

    def annih(n):
        out = [ZERO] * (N - 1)
        for op, u in factors:
            un = u.qt_power(-n)
            for a, c in enumerate(op.annih_coeffs(n)):
                if not c.is_zero():
                    out[a] = out[a] + un * c
        return out

    def prefactor(w):
        out = ONE
        for op, u in factors:
            out = out * op.prefactor(w)
            kap = op.kappa(w)
            if kap != _ZERO_EXP:
                out = out * u.exp_power(kap)
        return out

    def kappa(w):
        out = _ZERO_EXP
        for op, _ in factors:
            out = out + op.kappa(w)
        return out

    shift = None
    for op, _ in factors:
        shift = _add_shift(shift, op.shift)
    key = ("np",) + tuple((op.key, u) for op, u in factors)
    return VertexOp(N, key, create, annih, prefactor, kappa, shift)


class Current:
    """Finite linear combination of vertex operators sharing a weight shift."""

    def __init__(self, N: int, terms=()):
        self.N = N
        self.terms = [(QTRat.coerce(c), op) for c, op in terms if not QTRat.coerce(c).is_zero()]

    @classmethod
    def of(cls, op: VertexOp, c=ONE) -> "Current":
        return cls(op.N, [(c, op)])

    def __add__(self, other: "Current") -> "Current":
        return Current(self.N, self.terms + other.terms)

    def scale(self, c) -> "Current":
        c = QTRat.coerce(c)
        return Current(self.N, [(c * d, op) for d, op in self.terms])

    def at(self, u: Mono) -> "Current":
        """The current with argument ``u z``."""
        if u == Mono():
            return self
        return Current(self.N, [(c, normal_product(((op, u),))) for c, op in self.terms])

    def target(self, w: HighestWeight) -> HighestWeight:
        return self.terms[0][1].target(w) if self.terms else w

    def kappa(self, w: HighestWeight) -> BetaExp:
        return self.terms[0][1].kappa(w) if self.terms else _ZERO_EXP

    def mode(self, k: int, v: FockVector) -> FockVector:
        out = FockVector(self.target(v.weight))
        for c, op in self.terms:
            out = out + op.mode(k, v).scale(c)
        return out
