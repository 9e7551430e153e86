import pytest

from qwn.coeffs import ONE
from qwn.fock import FockVector, HighestWeight, weight_rs
from qwn.screening import (check_screening_commutator, correlation,
                           find_singular_vector, proportionality, rectangles_partition, singular_grade,
                           singular_space, singular_vector_ct, theorem_target, verify_macdonald_theorem)
from qwn.suites import default_weight, states_up_to
from qwn.symfunc import SymPoly, conjugate, macdonald_poly


def test_rectangles():
    assert rectangles_partition([2, 1], [1, 1]) == (2, 1)
    assert rectangles_partition([1], [2]) == (2,)
    assert rectangles_partition([2], [2]) == (2, 2)
    assert rectangles_partition([0], [0]) == ()
    assert singular_grade([2, 1], [1, 1]) == 3


@pytest.mark.parametrize("sign", ["+", "-"])
def test_screening_commutator_rank_two(sign):
    for v in states_up_to(default_weight(2), 1):
        for n in (-1, 0, 1):
            for m in (-1, 0, 1):
                assert all(r.is_zero() for _, r in check_screening_commutator(2, 1, sign, n, m, v))


def test_screening_commutator_rank_three_sample():
    v = states_up_to(default_weight(3), 1)[1]
    for a in (1, 2):
        assert all(r.is_zero() for _, r in check_screening_commutator(3, a, "+", 1, -1, v))


def test_singular_vector_rank_two():
    chi = find_singular_vector(2, [1], [1])
    assert chi.max_grade() == 1 and len(chi.terms) == 1
    top = find_singular_vector(2, [0], [0])
    assert top == FockVector.highest(weight_rs(2, [0], [0])[0])


def test_singular_space_empty_on_generic_weight():
    assert singular_space(HighestWeight(2, [5], [-3]), 2) == []


def test_rank_three_lower_grade_has_other_singular_vectors():
    # why the search runs at the screening grade rather than the first nonzero grade
    w, _ = weight_rs(3, [2, 1], [1, 1])
    assert len(singular_space(w, 2)) == 2
    assert len(singular_space(w, 3)) == 1


def test_correlation_of_highest_weight():
    v = FockVector.highest(default_weight(2))
    assert correlation(v) == SymPoly.one("p")


@pytest.mark.parametrize("r,s", [([1], [1]), ([1], [2]), ([2], [1]), ([2], [2])])
def test_theorem_rank_two(r, s):
    rep = verify_macdonald_theorem(2, r, s)
    assert rep.match and not rep.scalar.is_zero()
    assert rep.lam == rectangles_partition(r, s)


def test_theorem_rank_three_two_rows():
    rep = verify_macdonald_theorem(3, [1, 1], [1, 1])
    assert rep.match and rep.lam == (2,)


@pytest.mark.parametrize("r,s", [([1], [1]), ([1], [2]), ([2], [1]), ([3], [1])])
def test_dual_route_unswapped(r, s):
    rep = verify_macdonald_theorem(2, r, s, "-")
    assert rep.match


def test_dual_route_swapped_reading_fails_beyond_hooks():
    # P_{lambda'}(-z; t, q) is not proportional once lambda' has a two-box row
    chi = find_singular_vector(2, [2], [1], "-")
    lam = rectangles_partition([2], [1])
    corr = correlation(chi).truncate_length(2)
    swapped = macdonald_poly(conjugate(lam), 2).swap_qt().negate_variables()
    assert proportionality(corr, swapped) is None
    assert proportionality(corr, theorem_target([2], [1], "-", 2)) is not None


@pytest.mark.parametrize("N,r,s,beta", [(2, [1], [1], 1), (2, [2], [1], 2), (2, [2], [2], 1),
                                      (3, [1, 1], [1, 1], 1)])
def test_constant_term_route_matches_null_space(N, r, s, beta):
    generic = find_singular_vector(N, r, s)
    special = singular_vector_ct(N, r, s, beta)
    a = {m: c.substitute_beta(beta) for m, c in generic.terms.items()}
    a = {m: c for m, c in a.items() if not c.is_zero()}  # coefficients can vanish at integer beta
    lead = min(a)
    ratio = special.terms[lead] / a[lead]
    assert set(a) == set(special.terms)
    assert all(special.terms[m] == ratio * a[m] for m in a)


def test_proportionality_helper():
    f = SymPoly("m", {(1,): 2})
    assert proportionality(f, SymPoly("m", {(1,): 1})) == 2 * ONE
    assert proportionality(SymPoly("m", {(2,): 1}), SymPoly("m", {(1, 1): 1})) is None
