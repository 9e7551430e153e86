import math

import pytest
from hypothesis import given, strategies as st

from qwn.coeffs import ONE, Q, T, ZERO, qt
from qwn.ct import (IntegralError, TruncatedLaurent, UnsoundTruncation, completeness_residual,
                    constant_term, delta_C_factors, kernel_Pi, kernel_pp_realized, macdonald_apply_ct,
                    macdonald_via_integral, q_shift_direct, q_shift_via_powersums, verify_lemmas)
from qwn.symfunc import SymPoly, macdonald_apply, macdonald_poly, partitions_of

INF = math.inf


def laurent(variables, heights, terms, bound=INF):
    return TruncatedLaurent(variables, heights, bound, terms)


def test_constant_term_examples():
    f = laurent(("x",), (1,), {(1,): 1, (0,): 1, (-1,): 1})
    assert constant_term(f, ["x"]).terms == {(): ONE}
    g = laurent(("x", "y"), (1, 2), {(1, -1): 1, (0, 0): 2, (-1, 1): 1})
    assert constant_term(g, ["x", "y"]).terms == {(): qt(2)}
    assert constant_term(g, []) is g


def test_constant_term_refuses_clipped_window():
    base = TruncatedLaurent.constant(("x",), (-1,), 2)
    series = base.geometric({"x": 1})  # exact up to degree 2
    shifted = series * base.monomial({"x": -3})
    assert shifted.clipped
    with pytest.raises(UnsoundTruncation):
        constant_term(shifted, ["x"])
    with pytest.raises(ValueError):
        base.geometric({"x": -1})


def test_kernel_first_order():
    K = kernel_Pi(["x1", "x2"], ["y1", "y2"], "Pi", None, 2)
    assert K.coefficient({"x1": 1, "y2": 1}) == (1 - T) / (1 - Q)
    assert K.coefficient({"x1": 1}) == ZERO


def test_kernel_beta_one_is_geometric_product():
    K = kernel_Pi(["x"], ["y"], "Pi", 1, 5)
    assert K.terms == {(k, k): ONE for k in range(6)}
    generic = kernel_Pi(["x"], ["y"], "Pi", None, 5).map_coeffs(lambda c: c.substitute_beta(1))
    assert generic.terms == K.terms


@pytest.mark.parametrize("beta", [1, 2, 3])
def test_kernel_product_form_agrees_with_exponential(beta):
    xs, ys = ["x1", "x2"], ["y1", "y2"]
    product_form = kernel_Pi(xs, ys, "Pi", beta, 4)
    exp_form = kernel_Pi(xs, ys, "Pi", None, 4).map_coeffs(lambda c: c.substitute_beta(beta))
    assert product_form.terms == exp_form.terms


def test_kernel_tilde_degree_one():
    K = kernel_Pi(["x1", "x2"], ["y1"], "PiTilde", None, 1)
    assert K.terms == {(0, 0, 0): ONE, (1, 0, 1): ONE, (0, 1, 1): ONE}


@pytest.mark.parametrize("variant", ["Pi", "PiTilde"])
def test_kernel_matches_power_sum_form(variant):
    xs, ys = ["x1", "x2"], ["y1", "y2"]
    K = kernel_Pi(xs, ys, variant, None, 4)
    assert K.terms == kernel_pp_realized(xs, ys, 4, variant)


@pytest.mark.parametrize("variant", ["Pi", "PiTilde"])
def test_completeness_degree_three(variant):
    assert completeness_residual(3, variant) == {}


def test_delta_and_C_at_beta_one():
    Delta, C = delta_C_factors(["x1", "x2"], 1, 2)
    assert Delta.terms == {(0, 0): qt(2), (-1, 1): -ONE, (1, -1): -ONE}
    # (1 - x2/x1)/(1 - x1/x2) * x1/x2 collapses to -1 when p = 1
    assert C.terms == {(0, 0): -ONE}


@pytest.mark.parametrize("beta,r", [(2, 2), (3, 2), (2, 3)])
def test_C_pseudo_constant(beta, r):
    xs = [f"x{i}" for i in range(1, r + 1)]
    _, C = delta_C_factors(xs, beta, r, bound=8)
    for x in xs:
        assert C.shift_variable(x, Q).terms == C.terms
    # a formal series invariant under every q-shift is a constant
    assert list(C.terms) == [(0,) * r]


@pytest.mark.parametrize("r,s,M,target", [
    ((1,), (1,), 2, {(1,): 1}),
    ((1,), (2,), 2, {(2,): 1, (1, 1): 1}),
    ((2, 1), (1, 1), 3, {(2, 1): 1, (1, 1, 1): 2}),
])
def test_integral_at_beta_one_gives_schur(r, s, M, target):
    got = macdonald_via_integral(r, s, M, 1)
    lead = max(got.coeffs)
    assert got.scale(1 / got.coeffs[lead]) == SymPoly("m", target)


def test_integral_beta_two_matches_macdonald():
    got = macdonald_via_integral((1,), (2,), 2, 2)
    target = macdonald_poly((2,), 2).map_coeffs(lambda c: c.substitute_beta(2))
    lead = (2,)
    assert got.scale(1 / got.coeffs[lead]) == target


@pytest.mark.parametrize("beta", [1, 2])
def test_integral_without_C(beta):
    for r, s, M in [((1,), (2,), 2), ((2,), (1,), 3), ((2, 1), (1, 1), 3)]:
        if beta == 2 and len(r) > 1:
            continue
        a = macdonald_via_integral(r, s, M, beta)
        b = macdonald_via_integral(r, s, M, beta, with_C=False)
        lead = max(a.coeffs)
        assert a.scale(1 / a.coeffs[lead]) == b.scale(1 / b.coeffs[lead])


def test_integral_vanishing_is_reported():
    with pytest.raises(IntegralError):
        macdonald_via_integral((2,), (1,), 1, 1)


def test_operator_form_examples():
    assert macdonald_apply_ct(SymPoly.one("p"), 3) == SymPoly.one().scale((T ** 3 - 1) / (T - 1))
    assert macdonald_apply_ct(SymPoly.single("p", (1,)), 2) == SymPoly.single("p", (1,)).scale(T * Q + 1)


@pytest.mark.parametrize("n", range(0, 4))
def test_operator_forms_agree(n):
    for mu in partitions_of(n):
        for N in range(max(len(mu), 1), 4):
            f = SymPoly.single("m", mu)
            assert macdonald_apply_ct(f, N) == macdonald_apply(f, N)


@pytest.mark.parametrize("n", range(0, 4))
def test_q_shift_through_power_sums(n):
    for mu in partitions_of(n):
        for N in range(max(len(mu), 1), 4):
            f = SymPoly.single("m", mu)
            for i in range(N):
                assert q_shift_via_powersums(f, i, N) == q_shift_direct(f, i, N)


def test_lemma_examples():
    rep = verify_lemmas("galilean", lam=(1,), r=2, s=1)
    assert rep.match
    assert macdonald_poly((2, 1), 2) == SymPoly("m", {(2, 1): 1})  # (x1 + x2) x1 x2
    assert verify_lemmas("particle_number", lam=(1,), M=2, N=2, beta=1).match
    assert verify_lemmas("kernel_switch", N=2, M=3, degree=3).match
    with pytest.raises(ValueError):
        verify_lemmas("nonsense")


exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
polys = st.dictionaries(exps, st.integers(-3, 3), max_size=4)


@given(polys, polys, polys)
def test_laurent_ring_laws(a, b, c):
    V, H = ("x", "y"), (1, 3)
    fa, fb, fc = (laurent(V, H, t) for t in (a, b, c))
    assert (fa * fb).terms == (fb * fa).terms
    assert ((fa * fb) * fc).terms == (fa * (fb * fc)).terms
    assert constant_term(fa + fb, ["x"]).terms == (constant_term(fa, ["x"]) + constant_term(fb, ["x"])).terms


@given(polys, st.integers(0, 6))
def test_truncated_product_is_exact_below_bound(a, bound):
    V, H = ("x", "y"), (-1, -1)  # weight = total degree
    f = laurent(V, H, a)
    g = TruncatedLaurent.constant(V, H, bound).geometric({"x": 1, "y": 1})
    full = laurent(V, H, a) * laurent(V, H, {(k, k): 1 for k in range(bound + 8)})
    prod = f.times(g, bound)
    for e, c in full.terms.items():
        if f.weight(e) <= min(prod.valid, bound):
            assert prod.terms.get(e, ZERO) == c
