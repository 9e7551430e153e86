"""Null-space dimension of the positive W-modes, grade by grade, over alpha_{r,s}."""
import argparse
import time

from qwn.fock import weight_rs
from qwn.screening import singular_grade, singular_space


def parse(text):
    return [int(x) for x in text.split(",")]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=3)
    ap.add_argument("--r", default="2,1")
    ap.add_argument("--s", default="1,1")
    ap.add_argument("--sign", default="+", choices=["+", "-"])
    args = ap.parse_args()
    r, s = parse(args.r), parse(args.s)
    weight, _ = weight_rs(args.rank, r, s, args.sign)
    top = singular_grade(r, s)
    print(f"weight {weight.to_json()}, screening grade {top}")
    for g in range(1, top + 1):
        t0 = time.perf_counter()
        dim = len(singular_space(weight, g))
        print(f"grade {g}: null space dim {dim}  ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
