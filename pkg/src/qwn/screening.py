"""Screening currents, singular vectors and their Macdonald correlators."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffs import ONE, ZERO, Mono, QTRat, Q, T, ppow
from .currents import TruncationError, w_current, lambda_op
from .fock import (FockVector, HighestWeight, cartan, h_alpha_commutator, h_in_alpha_basis,
                   pbw_basis, weight_rs)
from .linalg import nullspace
from .symfunc import Partition, SymPoly, basis_convert, conjugate, macdonald_poly
from .vertex import Current, VertexOp, normal_product

__all__ = [
    "screening_op", "a_op", "screening_mode", "check_screening_commutator",
    "find_singular_vector", "singular_space", "singular_grade", "SingularVectorError", "correlation", "rectangles_partition",
    "TheoremReport", "verify_macdonald_theorem", "singular_vector_ct",
]


class SingularVectorError(ArithmeticError):
    pass


def _root_shift(N: int, a: int):
    return tuple(cartan(a, b) for b in range(1, N))


def _unit(N: int, a: int, c: QTRat) -> list:
    out = [ZERO] * (N - 1)
    out[a - 1] = c
    return out


@lru_cache(maxsize=None)
def screening_op(a: int, sign: str, N: int) -> VertexOp:
    """``S^a_+`` or ``S^a_-``."""
    zeros = (0,) * (N - 1)
    if sign == "+":
        return VertexOp(
            N, ("S", a, "+", N),
            create=lambda n: _unit(N, a, 1 / (1 - Q ** (-n))),
            annih=lambda n: _unit(N, a, 1 / (1 - Q ** n)),
            kappa=lambda w: w.alpha_zero(a),
            shift=(_root_shift(N, a), zeros),
        )
    if sign == "-":
        return VertexOp(
            N, ("S", a, "-", N),
            create=lambda n: _unit(N, a, -1 / (1 - T ** (-n))),
            annih=lambda n: _unit(N, a, -1 / (1 - T ** n)),
            kappa=lambda w: -w.alpha_zero_inv(a),
            shift=(zeros, _root_shift(N, a)),
        )
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")



@lru_cache(maxsize=None)
def a_op(i: int, sign: str, N: int) -> VertexOp:
    """The operator appearing in the total difference of the screening commutator."""
    S = screening_op(i, sign, N)
    if sign == "+":
        def create(n):
            return [(x - Q ** (-n) * y) / (1 - Q ** (-n))
                    for x, y in zip(h_in_alpha_basis(i, -n, N), h_in_alpha_basis(i + 1, -n, N))]

        def annih(n):
            return [(x - Q ** n * y) / (1 - Q ** n)
                    for x, y in zip(h_in_alpha_basis(i, n, N), h_in_alpha_basis(i + 1, n, N))]

        offset = Fraction(N + 1, 2) - i - 1
        prefactor = lambda w: w.h_zero(i + 1).q_power() * ppow(offset)
    else:
        def create(n):
            return [-(T ** (-n) * x - y) / (1 - T ** (-n))
                    for x, y in zip(h_in_alpha_basis(i, -n, N), h_in_alpha_basis(i + 1, -n, N))]

        def annih(n):
            return [-(T ** n * x - y) / (1 - T ** n)
                    for x, y in zip(h_in_alpha_basis(i, n, N), h_in_alpha_basis(i + 1, n, N))]

        offset = Fraction(N + 1, 2) - i
        prefactor = lambda w: w.h_zero(i).q_power() * ppow(offset)
    return VertexOp(N, ("A", i, sign, N), create, annih, prefactor, S._kappa, S.shift)


def screening_mode(a: int, sign: str, k: int, v: FockVector, cap=None) -> FockVector:
    """Mode ``k`` of ``S^a_sign`` relative to its ``z^kappa`` offset."""
    if cap is not None and cap < v.max_grade() + max(0, -k):
        raise TruncationError(f"grade cap {cap} too small")
    return screening_op(a, sign, v.N).mode(k, v)


def check_screening_commutator(N: int, a: int, sign: str, n: int, m: int, v: FockVector, cap=None) -> list:
    """Residuals of the screening commutator, one per power of the p-shift.

    Left side: the ``D^e`` coefficient of ``[:prod (D - Lambda_k(z p^(1-k))):, S^a(w)]``
    at ``z^-n`` and relative ``w``-mode ``m``.  Right side: the total q- or
    t-difference of the ``A^a`` insertion, expanded the same way.
    """
    if cap is not None and cap < v.max_grade() + abs(n) + abs(m):
        raise TruncationError(f"grade cap {cap} too small")
    S = Current.of(screening_op(a, sign, N))
    xi = Mono.q(1) if sign == "+" else Mono.t(1)
    pref = (1 - Q) * (1 - T ** -1) if sign == "+" else (1 - Q ** -1) * (1 - T)
    kappa = S.kappa(v.weight)
    xi_k = xi.exp_power(kappa)
    rhs_terms: dict = {}

    # left block k < a, middle (delta, A, shift), right block k > a + 1
    def expand(k, shifts, sign_acc, left, right, delta_c):
        if k > N:
            rhs_terms.setdefault(shifts, []).append((sign_acc, tuple(left), tuple(right), delta_c))
            return
        if k == a:
            expand(a + 2, shifts + 1, sign_acc, left, right, Mono.p(a - 1 - shifts))
            return
        expand(k + 1, shifts + 1, sign_acc, left, right, delta_c)
        expand(k + 1, shifts, -sign_acc, left + [(k, shifts)] if k < a else left,
               right + [(k, shifts)] if k > a else right, delta_c)

    expand(1, 0, 1, [], [], None)
    out = []
    for e in range(N + 1):
        i = N - e
        d = Mono.p(Fraction(1 - i, 2))
        W = w_current(i, N)
        lhs = (W.mode(n, S.mode(m, v)) - S.mode(m, W.mode(n, v))).scale((-1) ** i * d.qt_power(-n))
        rhs = FockVector(lhs.weight)
        for sgn, left, right, c in rhs_terms.get(e, []):
            factors = [(lambda_op(k, N), Mono.p(1 - k + s) * c) for k, s in left]
            factors.append((a_op(a, sign, N), Mono()))
            factors += [(lambda_op(k, N), Mono.p(1 - k + s) * c) for k, s in right]
            G = normal_product(tuple(factors))
            diff = (1 - xi.qt_power(1 - m) * xi_k) / (1 - xi.to_qt())
            rhs = rhs + G.mode(m + n, v).scale(pref * sgn * c.qt_power(n) * diff)
        out.append((e, lhs - rhs))
    return out


# ---- singular vectors ---------------------------------------------------------

def rectangles_partition(r, s) -> Partition:
    """``sum_a (s_a^{r_a})``: row ``j`` has length ``sum of s_a over r_a >= j``."""
    rows = max(r, default=0)
    return Partition(sum(sa for ra, sa in zip(r, s) if ra >= j) for j in range(1, rows + 1))


def _normalize(v: FockVector) -> FockVector:
    lead = min(v.terms)
    return v.scale(1 / v.terms[lead])


def singular_grade(r, s) -> int:
    """Grade of the screening-built singular vector.

    The kernel factors have total degree zero in the integration variables,
    so only ``prod x^-s`` fixes the degree: ``sum_a r_a s_a``.
    """
    return sum(ra * sa for ra, sa in zip(r, s))


def _positive_mode_rows(weight: HighestWeight, basis: list) -> list:
    N = weight.N
    g = sum(n for _, n in basis[0])
    rows = []
    for i in range(1, N):
        cur = w_current(i, N)
        for k in range(1, g + 1):
            images = [cur.mode(k, FockVector(weight, {mono: ONE})) for mono in basis]
            keys = sorted(set().union(*(im.terms for im in images)))
            rows += [[im.coefficient(key) for im in images] for key in keys]
    return rows


def singular_space(weight: HighestWeight, g: int) -> list:
    """All grade-``g`` vectors killed by every positive W-mode."""
    basis = pbw_basis(weight.N, g)
    null = nullspace(_positive_mode_rows(weight, basis), len(basis))
    return [FockVector(weight, dict(zip(basis, vec))) for vec in null]


def find_singular_vector(N: int, r, s, sign: str = "+", grade=None) -> FockVector:
    """Singular vector over ``alpha_{r,s}`` from the null space of positive W-modes.

    Lower grades can carry singular vectors of other types, so the search
    happens directly at the grade of the screening construction.
    """
    weight, _ = weight_rs(N, r, s, sign)
    g = singular_grade(r, s) if grade is None else grade
    if g == 0:
        return FockVector.highest(weight)
    space = singular_space(weight, g)
    if len(space) > 1:
        raise SingularVectorError(f"null space of dimension {len(space)} at grade {g}")
    if not space:
        raise SingularVectorError(f"no singular vector at grade {g}")
    return _normalize(space[0])


def correlation(v: FockVector, max_degree=None) -> SymPoly:
    """Pair ``v`` with the positive-mode half of a product of vertex operators."""
    if max_degree is not None and v.max_grade() > max_degree:
        raise TruncationError("vector grade exceeds max_degree")
    N = v.N
    out: dict = {}
    for mono, c in v.terms.items():
        coef = c
        for a, n in mono:
            coef = coef * (-h_alpha_commutator(1, n, a, -n, N) / (1 - Q ** n))
        lam = Partition(sorted((n for _, n in mono), reverse=True))
        out[lam] = out.get(lam, ZERO) + coef
    return SymPoly("p", out)


@dataclass
class TheoremReport:
    N: int
    r: tuple
    s: tuple
    sign: str
    lam: Partition
    grade: int
    match: bool
    scalar: QTRat

    def to_json(self) -> dict:
        return {"N": self.N, "r": list(self.r), "s": list(self.s), "sign": self.sign,
                "lambda": list(self.lam), "grade": self.grade, "match": self.match,
                "scalar": self.scalar.to_str()}


def proportionality(f: SymPoly, g: SymPoly):
    """Scalar ``c`` with ``f = c g`` or ``None``."""
    f = basis_convert(f, "m")
    g = basis_convert(g, "m")
    if g.is_zero():
        return None
    lead = max(g.coeffs)
    c = f.coeffs.get(lead, ZERO) / g.coeffs[lead]
    if c.is_zero() or f != g.scale(c):
        return None
    return c


def theorem_target(r, s, sign: str, M: int) -> SymPoly:
    lam = rectangles_partition(r, s)
    if sign == "+":
        return macdonald_poly(lam, M)
    # measured: the S_- correlator follows P_{lambda'}(-z; q, t) with no (q, t) swap
    return macdonald_poly(conjugate(lam), M).negate_variables()


def verify_macdonald_theorem(N: int, r, s, sign: str = "+", M=None) -> TheoremReport:
    lam = rectangles_partition(r, s)
    target_lam = lam if sign == "+" else conjugate(lam)
    M = M if M is not None else max(lam.weight, 1)
    if len(target_lam) > M:
        raise ValueError(f"need at least {len(target_lam)} variables")
    chi = find_singular_vector(N, r, s, sign)
    corr = correlation(chi).truncate_length(M)
    target = theorem_target(r, s, sign, M)
    c = proportionality(corr, target)
    return TheoremReport(N, tuple(r), tuple(s), sign, lam, chi.max_grade(), c is not None, c if c is not None else ZERO)


def singular_vector_ct(N: int, r, s, beta: int, sign: str = "+") -> FockVector:
    """Singular vector from the constant-term form of the screening integral.

    Coefficients live in Q(q^(1/2)) with ``t = q^beta``.
    """
    from .ct import screening_integral
    return screening_integral(N, r, s, beta, sign)
