"""Which parameter convention does the t-screening correlator follow?

For each (r, s) at rank 2 the correlator of the S_- singular vector is compared
with P_{lambda'}(+-z) in both the (q, t) and the (t, q) readings.
"""
import argparse

from qwn.screening import correlation, find_singular_vector, proportionality, rectangles_partition
from qwn.symfunc import conjugate, macdonald_poly


def candidates(lam, M):
    dual = conjugate(lam)
    base = macdonald_poly(dual, M)
    return {
        "P_dual(z; q,t)": base,
        "P_dual(-z; q,t)": base.negate_variables(),
        "P_dual(z; t,q)": base.swap_qt(),
        "P_dual(-z; t,q)": base.swap_qt().negate_variables(),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--max-s", type=int, default=2)
    args = ap.parse_args()
    for r in range(1, args.max_r + 1):
        for s in range(1, args.max_s + 1):
            if r * s > 4:
                continue
            lam = rectangles_partition([r], [s])
            M = max(len(conjugate(lam)), 1)
            corr = correlation(find_singular_vector(2, [r], [s], "-")).truncate_length(M)
            hits = [name for name, f in candidates(lam, M).items() if proportionality(corr, f) is not None]
            print(f"r={r} s={s} lambda={list(lam)}: {', '.join(hits) or 'none'}")


if __name__ == "__main__":
    main()
