"""Time each verification suite at the sizes used by the acceptance criteria."""
import time

from qwn import suites

RUNS = [
    ("formal", lambda: suites.formal(8, 6)),
    ("miura N=2,3", lambda: suites.miura(2, 2) + suites.miura(3, 1)),
    ("vertex N=2,3", lambda: suites.vertex(2, 1, 1) + suites.vertex(3, 1, 1)),
    ("screening N=2", lambda: suites.screening(2, 2, 2)),
    ("screening N=3 +", lambda: suites.screening(3, 2, 2, signs=("+",))),
    ("relations N=2", lambda: suites.relations(2, 2, 2)),
    ("relations N=3", lambda: suites.relations(3, 2, 2)),
    ("integral", lambda: suites.integral(suites.INTEGRAL_CASES)),
    ("lemmas", lambda: suites.lemmas(suites.LEMMA_CASES)),
]


def main():
    for name, run in RUNS:
        t0 = time.perf_counter()
        checks = run()
        bad = sum(not c.ok for c in checks)
        print(f"{name:<18} {len(checks):>5} checks  {bad} failing  {time.perf_counter() - t0:7.1f}s", flush=True)


if __name__ == "__main__":
    main()
