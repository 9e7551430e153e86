"""Batches of exact checks with uniform records, shared by the CLI and the tests."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coeffs import ONE
from .currents import (check_current_relation, check_delta_identity, check_deformed_delta,
                       check_lambda_exchange, check_miura, check_vertex_relation)
from .fock import FockVector, HighestWeight, pbw_basis
from .screening import check_screening_commutator, verify_macdonald_theorem

__all__ = ["Check", "default_weight", "random_weight", "states_up_to", "SUITES", "run_suite"]


@dataclass
class Check:
    name: str
    params: dict
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "ok": self.ok, **self.detail}


def default_weight(N: int) -> HighestWeight:
    return HighestWeight(N, range(1, N), range(2, N + 1))


def random_weight(N: int, seed: int) -> HighestWeight:
    rng = random.Random(seed)
    return HighestWeight(N, [rng.randint(-3, 3) for _ in range(N - 1)], [rng.randint(-3, 3) for _ in range(N - 1)])


def states_up_to(weight: HighestWeight, grade: int) -> list:
    return [FockVector(weight, {mono: ONE}) for g in range(grade + 1) for mono in pbw_basis(weight.N, g)]


def _label(v: FockVector) -> list:
    (mono,) = v.terms
    return [list(x) for x in mono]


def relations(N: int, grade: int, modes: int, weight=None) -> list:
    """Every ``W^i W^j`` relation with ``i <= j <= min(N-1, 2)`` and the Lambda exchanges."""
    weight = weight or default_weight(N)
    out = []
    top = min(N - 1, 2)
    for v in states_up_to(weight, grade):
        for n in range(-modes, modes + 1):
            for m in range(-modes, modes + 1):
                for i in range(1, top + 1):
                    for j in range(i, top + 1):
                        res = check_current_relation(i, j, n, m, v)
                        out.append(Check("W-relation", {"N": N, "i": i, "j": j, "n": n, "m": m,
                                                        "state": _label(v)}, res.is_zero()))
                for i in range(1, N + 1):
                    for j in range(i, N + 1):
                        res = check_lambda_exchange(i, j, n, m, v)
                        out.append(Check("Lambda-exchange", {"N": N, "i": i, "j": j, "n": n, "m": m,
                                                             "state": _label(v)}, res.is_zero()))
    return out


def miura(N: int, grade: int) -> list:
    return [Check("miura", {"N": N, "shift_power": e, "mode": k, "state": _label(s)}, res.is_zero())
            for e, k, s, res in check_miura(N, grade)]


def screening(N: int, grade: int, modes: int, signs=("+", "-"), weight=None) -> list:
    weight = weight or default_weight(N)
    out = []
    for sign in signs:
        for a in range(1, N):
            for v in states_up_to(weight, grade):
                for n in range(-modes, modes + 1):
                    for m in range(-modes, modes + 1):
                        res = check_screening_commutator(N, a, sign, n, m, v)
                        ok = all(r.is_zero() for _, r in res)
                        out.append(Check("screening", {"N": N, "a": a, "sign": sign, "n": n, "m": m,
                                                       "state": _label(v)}, ok))
    return out


def vertex(N: int, grade: int, modes: int, weight=None) -> list:
    weight = weight or default_weight(N)
    out = []
    for i in range(1, N):
        for v in states_up_to(weight, grade):
            for n in range(-modes, modes + 1):
                for m in range(-modes, modes + 1):
                    res = check_vertex_relation(N, n, m, v, i)
                    out.append(Check("vertex", {"N": N, "i": i, "n": n, "m": m, "state": _label(v)},
                                     res.is_zero()))
    return out


def macdonald(N: int, r, s, sign: str = "+") -> list:
    rep = verify_macdonald_theorem(N, r, s, sign)
    return [Check("macdonald", {"N": N, "r": list(r), "s": list(s), "sign": sign},
                  rep.match and not rep.scalar.is_zero(), {"report": rep.to_json()})]


def formal(delta_order: int = 8, formula_order: int = 6) -> list:
    out = [Check("delta-identity", {"k": k}, res.is_zero()) for k, res in check_delta_identity(delta_order)]
    out += [Check("deformed-delta", {"k": k}, not res) for k, res in check_deformed_delta(formula_order)]
    return out


def integral(cases) -> list:
    from .ct import macdonald_via_integral
    from .screening import proportionality, rectangles_partition
    from .symfunc import macdonald_poly
    out = []
    for r, s, M, beta in cases:
        lam = rectangles_partition(r, s)
        got = macdonald_via_integral(r, s, M, beta)
        target = macdonald_poly(lam, M).map_coeffs(lambda c: c.substitute_beta(beta))
        c = proportionality(got, target)
        out.append(Check("integral", {"r": list(r), "s": list(s), "M": M, "beta": beta, "lambda": list(lam)},
                         c is not None, {"scalar": c.to_str() if c is not None else None}))
    return out


def lemmas(cases) -> list:
    from .ct import verify_lemmas
    out = []
    for case, params in cases:
        rep = verify_lemmas(case, **params)
        out.append(Check(f"lemma-{case}", rep.params, rep.match, {"detail": rep.detail}))
    return out


INTEGRAL_CASES = [((1,), (1,), 2, 1), ((1,), (2,), 2, 1), ((2,), (1,), 2, 1),
                  ((1,), (1,), 3, 2), ((1,), (2,), 3, 2), ((2,), (1,), 3, 2),
                  ((2, 1), (1, 1), 3, 1)]

LEMMA_CASES = [
    ("galilean", {"lam": (1,), "r": 2, "s": 1}),
    ("galilean", {"lam": (2,), "r": 2, "s": 2}),
    ("galilean", {"lam": (1, 1), "r": 3, "s": 1}),
    ("galilean", {"lam": (2, 1), "r": 2, "s": 1}),
    ("particle_number", {"lam": (1,), "M": 2, "N": 2, "beta": 1}),
    ("particle_number", {"lam": (2,), "M": 2, "N": 3, "beta": 2}),
    ("particle_number", {"lam": (1, 1), "M": 2, "N": 3, "beta": 2}),
    ("particle_number", {"lam": (2, 1), "M": 3, "N": 3, "beta": 1}),
    ("kernel_switch", {"N": 2, "M": 2, "degree": 3}),
    ("kernel_switch", {"N": 2, "M": 3, "degree": 3}),
]


def run_suite(name: str, N: int = 2, grade: int = 1, modes: int = 1, r=None, s=None, sign="+",
              weight=None) -> list:
    if name == "relations":
        return relations(N, grade, modes, weight)
    if name == "miura":
        return miura(N, grade)
    if name == "screening":
        return screening(N, grade, modes, weight=weight)
    if name == "vertex":
        return vertex(N, grade, modes, weight)
    if name == "macdonald":
        return macdonald(N, r if r is not None else (1,) * (N - 1), s if s is not None else (1,) * (N - 1), sign)
    if name == "integral":
        return integral(INTEGRAL_CASES)
    if name == "lemmas":
        return lemmas(LEMMA_CASES)
    if name == "formal":
        return formal()
    if name == "all":
        out = []
        for sub in ("formal", "relations", "miura", "screening", "vertex", "macdonald", "integral", "lemmas"):
            out += run_suite(sub, N, grade, modes, r, s, sign, weight)
        return out
    raise ValueError(f"unknown suite {name!r}")


SUITES = ("relations", "miura", "screening", "vertex", "macdonald", "integral", "lemmas", "formal", "all")
