from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qwn.coeffs import ONE, Q, T, ZERO, qt
from qwn.symfunc import (Partition, SymPoly, basis_convert, conjugate,
                         dominance_leq, inner_product_pq, macdonald_apply, macdonald_eigenvalue,
                         macdonald_poly, partitions_of, z_lambda)


def test_partitions():
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions_of(4, 2) == [(4,), (3, 1), (2, 2)]
    assert conjugate((3, 1)) == (2, 1, 1)
    assert z_lambda((2, 1, 1)) == 4
    assert dominance_leq((2, 2), (3, 1)) and not dominance_leq((3, 1), (2, 2))
    assert Partition((2, 0, 1)) == (2, 1)


def test_power_sum_expansion():
    # p_1^2 = m_2 + 2 m_11
    assert basis_convert(SymPoly.single("p", (1, 1)), "m") == SymPoly("m", {(2,): 1, (1, 1): 2})
    # m_11 = (p_1^2 - p_2) / 2
    assert basis_convert(SymPoly.single("m", (1, 1)), "p") == SymPoly(
        "p", {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)})


def test_p2_known_value():
    P2 = macdonald_poly((2,), 2)
    assert P2.coeffs[Partition((1, 1))] == (1 + Q) * (1 - T) / (1 - Q * T)
    assert macdonald_poly((1, 1), 2) == SymPoly.single("m", (1, 1))


def test_macdonald_operator_small():
    assert macdonald_apply(SymPoly.single("p", (1,)), 2) == SymPoly.single("p", (1,)).scale(1 + Q * T)
    assert macdonald_apply(SymPoly.one(), 3) == SymPoly.one().scale(1 + T + T ** 2)


def _ssyt_count(shape, content):
    """Semistandard tableaux of ``shape`` with the given content (Kostka number)."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    n = len(content)
    count = 0
    for filling in product(range(n), repeat=len(cells)):
        if any(filling.count(k) != content[k] for k in range(n)):
            continue
        f = dict(zip(cells, filling))
        rows_ok = all(f[(i, j)] <= f[(i, j + 1)] for (i, j) in cells if (i, j + 1) in f)
        cols_ok = all(f[(i, j)] < f[(i + 1, j)] for (i, j) in cells if (i + 1, j) in f)
        count += rows_ok and cols_ok
    return count


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1)])
def test_t_equals_q_gives_schur(lam):
    n = sum(lam)
    P = macdonald_poly(lam, n).map_coeffs(lambda c: c.substitute_beta(1))
    for mu in partitions_of(n):
        assert P.coeffs.get(mu, ZERO) == qt(_ssyt_count(lam, mu))


@pytest.mark.parametrize("n", range(1, 5))
def test_eigen_and_triangularity(n):
    for lam in partitions_of(n):
        for M in range(len(lam), n + 1):
            P = macdonald_poly(lam, M)
            assert macdonald_apply(P, M) == P.scale(macdonald_eigenvalue(lam, M))
            assert all(dominance_leq(mu, lam) for mu in P.coeffs)
            assert P.coeffs[lam] == ONE


def test_orthogonality_degree_3():
    lams = partitions_of(3)
    for a in lams:
        for b in lams:
            ip = inner_product_pq(macdonald_poly(a, 3), macdonald_poly(b, 3))
            assert ip.is_zero() == (a != b)


def test_stability_in_variable_count():
    big = macdonald_poly((2, 1), 4)
    assert macdonald_poly((2, 1), 3) == big.truncate_length(3)


def test_negate_variables():
    f = SymPoly("m", {(2,): 1, (1,): 1})
    assert f.negate_variables() == SymPoly("m", {(2,): 1, (1,): -1})


def test_json_roundtrip():
    P = macdonald_poly((2, 1), 3)
    assert SymPoly.from_json(P.to_json()) == P


def test_too_many_parts():
    with pytest.raises(ValueError):
        macdonald_poly((1, 1, 1), 2)


@given(st.dictionaries(st.sampled_from(partitions_of(3) + partitions_of(2)), st.integers(-5, 5), max_size=4))
def test_basis_roundtrip(coeffs):
    f = SymPoly("m", coeffs)
    assert basis_convert(basis_convert(f, "p"), "m") == f


@given(st.sampled_from([lam for n in range(1, 5) for lam in partitions_of(n)]),
       st.sampled_from([lam for n in range(1, 4) for lam in partitions_of(n)]))
def test_product_matches_m_expansion(a, b):
    # product through the p-basis equals the product of explicit polynomials in enough variables
    from qwn.ct import _expand_m
    n = sum(a) + sum(b)
    fa, fb = SymPoly.single("m", a), SymPoly.single("m", b)
    lhs = _expand_m(fa * fb, n)
    pa, pb = _expand_m(fa, n), _expand_m(fb, n)
    rhs = {}
    for ea, ca in pa.items():
        for eb, cb in pb.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            rhs[e] = rhs.get(e, ZERO) + ca * cb
    assert lhs == {e: c for e, c in rhs.items() if not c.is_zero()}
