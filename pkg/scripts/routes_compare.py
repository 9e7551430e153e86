"""Compare the two routes to singular vectors and the integral formula at integer beta."""
import argparse
import time

from qwn.ct import macdonald_via_integral
from qwn.screening import find_singular_vector, proportionality, rectangles_partition, singular_vector_ct
from qwn.symfunc import macdonald_poly

CASES = [(2, [1], [1]), (2, [1], [2]), (2, [2], [1]), (2, [2], [2]), (3, [1, 1], [1, 1]), (3, [2, 1], [1, 1])]


def proportional_vectors(generic, special, beta):
    a = {m: c.substitute_beta(beta) for m, c in generic.terms.items()}
    a = {m: c for m, c in a.items() if not c.is_zero()}
    if set(a) != set(special.terms):
        return False
    lead = min(a)
    ratio = special.terms[lead] / a[lead]
    return all(special.terms[m] == ratio * a[m] for m in a)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=int, nargs="+", default=[1, 2])
    args = ap.parse_args()
    print(f"{'N':>2} {'r':>7} {'s':>7} {'beta':>4} {'vectors':>8} {'integral':>8} {'seconds':>8}")
    for beta in args.beta:
        for N, r, s in CASES:
            t0 = time.perf_counter()
            vec_ok = proportional_vectors(find_singular_vector(N, r, s), singular_vector_ct(N, r, s, beta), beta)
            lam = rectangles_partition(r, s)
            M = max(len(lam), 1)
            integral = macdonald_via_integral(r, s, M, beta)
            target = macdonald_poly(lam, M).map_coeffs(lambda c: c.substitute_beta(beta))
            int_ok = proportionality(integral, target) is not None
            print(f"{N:>2} {str(r):>7} {str(s):>7} {beta:>4} {str(vec_ok):>8} {str(int_ok):>8} "
                  f"{time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
