"""Command-line entry point: ``python -m qwn <command> ...``.

Exit status: 0 all checks pass, 1 mathematical mismatch, 2 usage error,
3 truncation too small for the requested check.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from filelock import FileLock

from .currents import TruncationError
from .ct import UnsoundTruncation, kernel_Pi, macdonald_via_integral
from .screening import (SingularVectorError, correlation, find_singular_vector,
                        singular_vector_ct, verify_macdonald_theorem)
from .suites import SUITES, default_weight, random_weight, run_suite
from .symfunc import Partition, SymPoly, basis_convert, macdonald_apply, macdonald_eigenvalue, macdonald_poly

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3
CACHE_ENV = "QWN_CACHE_DIR"
SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    rank: int = 2
    lam: tuple | None = None
    r: tuple | None = None
    s: tuple | None = None
    vars: int | None = None
    beta: str = "generic"
    grade: int = 1
    degree: int = 4
    modes: int = 1
    sign: str = "+"
    basis: str = "m"
    fmt: str = "json"
    cache_dir: str | None = None
    use_cache: bool = True
    seed: int | None = None

    def __post_init__(self):
        for name in ("rank", "grade", "degree", "modes"):
            if getattr(self, name) < 0:
                raise UsageError(f"--{name} must be non-negative")
        if self.rank < 2:
            raise UsageError("--rank must be at least 2")
        if self.vars is not None and self.vars < 1:
            raise UsageError("--vars must be positive")
        if self.beta != "generic":
            try:
                b = int(self.beta)
            except ValueError:
                raise UsageError(f"--beta must be 'generic' or a positive integer, got {self.beta!r}") from None
            if b < 1:
                raise UsageError("--beta must be positive")

    @property
    def int_beta(self) -> int:
        if self.beta == "generic":
            raise UsageError("this command needs an integer --beta")
        return int(self.beta)


# ---- cache ----------------------------------------------------------------------

def cache_dir(config: RunConfig) -> Path:
    root = config.cache_dir or os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "qwn"
    return Path(root)


def _cache_key(lam: Partition, M: int) -> str:
    blob = json.dumps({"lambda": list(lam), "vars": M, "schema": SCHEMA_VERSION}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def cached_poly(lam: Partition, M: int, config: RunConfig) -> SymPoly:
    """``P_lam`` in ``M`` variables, through the content-addressed cache."""
    if not config.use_cache:
        return macdonald_poly(lam, M)
    root = cache_dir(config)
    root.mkdir(parents=True, exist_ok=True)
    key = _cache_key(lam, M)
    path = root / f"{key}.json"
    with FileLock(str(root / f"{key}.lock")):
        if path.exists():
            try:
                data = json.loads(path.read_text())
                if data.get("schema") == SCHEMA_VERSION and data.get("lambda") == list(lam) and data.get("vars") == M:
                    return SymPoly.from_json(data["poly"])
            except (ValueError, KeyError, TypeError):
                pass  # corrupt entries are recomputed
        poly = macdonald_poly(lam, M)
        payload = {"schema": SCHEMA_VERSION, "lambda": list(lam), "vars": M, "poly": poly.to_json()}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True))
        tmp.replace(path)
        return poly


# ---- parsing helpers -------------------------------------------------------------

def parse_int_list(text: str, what: str) -> tuple:
    try:
        vals = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers, got {text!r}") from None
    if any(v < 0 for v in vals):
        raise UsageError(f"{what} entries must be non-negative")
    return vals


def parse_partition(text: str) -> Partition:
    vals = parse_int_list(text, "--lambda")
    if any(v == 0 for v in vals) or list(vals) != sorted(vals, reverse=True):
        raise UsageError(f"--lambda must be weakly decreasing positive integers, got {text!r}")
    return Partition(vals)


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _rs(config: RunConfig):
    r = _need(config.r, "--r")
    s = _need(config.s, "--s")
    if len(r) != config.rank - 1 or len(s) != config.rank - 1:
        raise UsageError(f"--r and --s need rank-1 = {config.rank - 1} entries")
    return r, s


# ---- commands ---------------------------------------------------------------------

def cmd_poly(config: RunConfig) -> tuple:
    lam = _need(config.lam, "--lambda")
    M = config.vars if config.vars is not None else max(len(lam), 1)
    if len(lam) > M:
        raise UsageError(f"--vars {M} is too small for a partition with {len(lam)} parts")
    poly = cached_poly(lam, M, config)
    report = {"command": "poly", "lambda": list(lam), "vars": M,
              "poly": basis_convert(poly, config.basis).to_json()}
    status = EXIT_OK
    if config.use_cache:
        fresh = macdonald_poly(lam, M)
        report["cache_coherent"] = fresh == poly
        status = EXIT_OK if fresh == poly else EXIT_MISMATCH
    return report, status


def cmd_eigen(config: RunConfig) -> tuple:
    lam = _need(config.lam, "--lambda")
    M = config.vars if config.vars is not None else max(len(lam), 1)
    if len(lam) > M:
        raise UsageError(f"--vars {M} is too small for a partition with {len(lam)} parts")
    poly = cached_poly(lam, M, config)
    eps = macdonald_eigenvalue(lam, M)
    ok = macdonald_apply(poly, M) == poly.scale(eps)
    return ({"command": "eigen", "lambda": list(lam), "vars": M, "eigenvalue": eps.to_str(), "ok": ok},
            EXIT_OK if ok else EXIT_MISMATCH)


def cmd_singular(config: RunConfig, ct_check: bool = False) -> tuple:
    r, s = _rs(config)
    vec = find_singular_vector(config.rank, r, s, config.sign)
    report = {"command": "singular", "rank": config.rank, "r": list(r), "s": list(s), "sign": config.sign,
              "grade": vec.max_grade(), "vector": vec.to_json()}
    status = EXIT_OK
    if ct_check:
        beta = config.int_beta
        other = singular_vector_ct(config.rank, r, s, beta, config.sign)
        ok = _proportional_vectors(vec, other, beta)
        report["ct_check"] = {"beta": beta, "proportional": ok}
        status = EXIT_OK if ok else EXIT_MISMATCH
    return report, status


def _proportional_vectors(generic, special, beta: int) -> bool:
    a = {m: c.substitute_beta(beta) for m, c in generic.terms.items()}
    b = special.terms
    if set(a) != set(b) or not a:
        return False
    lead = min(a)
    ratio = b[lead] / a[lead]
    return all(b[m] == ratio * a[m] for m in a)


def cmd_correlate(config: RunConfig) -> tuple:
    r, s = _rs(config)
    vec = find_singular_vector(config.rank, r, s, config.sign)
    corr = correlation(vec)
    rep = verify_macdonald_theorem(config.rank, r, s, config.sign, config.vars)
    report = {"command": "correlate", "correlator": basis_convert(corr, config.basis).to_json(),
              "theorem": rep.to_json()}
    return report, EXIT_OK if rep.match else EXIT_MISMATCH


def cmd_ct(config: RunConfig, variant: str, kernel: bool) -> tuple:
    beta = config.int_beta
    if kernel:
        M = config.vars or 2
        xs = [f"x{i}" for i in range(1, M + 1)]
        ys = [f"y{i}" for i in range(1, M + 1)]
        ser = kernel_Pi(xs, ys, variant, beta, config.degree)
        terms = [{"exponents": list(e), "coeff": c.to_str()} for e, c in sorted(ser.terms.items())]
        return {"command": "ct", "kernel": variant, "variables": xs + ys, "degree": config.degree,
                "terms": terms, "clipped": ser.clipped}, EXIT_OK
    r = _need(config.r, "--r")
    s = _need(config.s, "--s")
    from .screening import rectangles_partition, proportionality
    lam = rectangles_partition(r, s)
    M = config.vars if config.vars is not None else max(len(lam), 1)
    got = macdonald_via_integral(r, s, M, beta, variant)
    if variant == "Pi":
        target = cached_poly(lam, M, config)
    else:
        from .symfunc import conjugate
        target = cached_poly(conjugate(lam), M, config).swap_qt()
    c = proportionality(got, target.map_coeffs(lambda x: x.substitute_beta(beta)))
    report = {"command": "ct", "variant": variant, "r": list(r), "s": list(s), "vars": M, "beta": beta,
              "lambda": list(lam), "poly": basis_convert(got, config.basis).to_json(),
              "proportional": c is not None, "scalar": c.to_str() if c is not None else None}
    return report, EXIT_OK if c is not None else EXIT_MISMATCH


def cmd_verify(config: RunConfig, suite: str) -> tuple:
    weight = random_weight(config.rank, config.seed) if config.seed is not None else default_weight(config.rank)
    checks = run_suite(suite, N=config.rank, grade=config.grade, modes=config.modes,
                       r=config.r, s=config.s, sign=config.sign, weight=weight)
    ok = all(c.ok for c in checks)
    report = {"command": "verify", "suite": suite, "rank": config.rank, "grade": config.grade,
              "modes": config.modes, "seed": config.seed, "weight": weight.to_json(),
              "passed": sum(c.ok for c in checks), "total": len(checks), "ok": ok,
              "checks": [c.to_json() for c in checks]}
    return report, EXIT_OK if ok else EXIT_MISMATCH


# ---- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, default=2, help="rank N of the algebra")
    common.add_argument("--lambda", dest="lam", help="partition, e.g. 2,1")
    common.add_argument("--r", help="rectangle heights r_1,...,r_{N-1}")
    common.add_argument("--s", help="rectangle widths s_1,...,s_{N-1}")
    common.add_argument("--sign", choices=["+", "-"], default="+", help="screening type")
    common.add_argument("--vars", type=int, help="number of variables M")
    common.add_argument("--beta", default="generic", help="'generic' or a positive integer (t = q^beta)")
    common.add_argument("--grade", type=int, default=1, help="maximal grade of test states")
    common.add_argument("--degree", type=int, default=4, help="degree cap for kernels")
    common.add_argument("--window", type=int, help="alias for --degree on ct kernels")
    common.add_argument("--modes", type=int, default=1, help="maximal |mode| in relation checks")
    common.add_argument("--basis", choices=["m", "p"], default="m")
    common.add_argument("--format", dest="fmt", choices=["json", "text"], default="json")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV} or ~/.cache/qwn)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--seed", type=int, help="draw a random highest weight for verify suites")

    parser = argparse.ArgumentParser(prog="qwn", description="Quantum W_N algebras and Macdonald polynomials")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("poly", parents=[common], help="Macdonald polynomial P_lambda")
    sub.add_parser("eigen", parents=[common], help="eigenvalue check H P = eps P")
    sp = sub.add_parser("singular", parents=[common], help="singular vector over alpha_{r,s}")
    sp.add_argument("--ct-check", action="store_true", help="compare with the constant-term route")
    sub.add_parser("correlate", parents=[common], help="correlator of a singular vector")
    cp = sub.add_parser("ct", parents=[common], help="integral formula by constant terms")
    cp.add_argument("--variant", choices=["Pi", "PiTilde"], default="Pi")
    cp.add_argument("--kernel", action="store_true", help="print the truncated kernel instead")
    vp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vp.add_argument("--suite", choices=SUITES, required=True)
    return parser


def _config(ns) -> RunConfig:
    degree = ns.window if ns.window is not None else ns.degree
    return RunConfig(
        command=ns.command, rank=ns.rank,
        lam=parse_partition(ns.lam) if ns.lam else None,
        r=parse_int_list(ns.r, "--r") if ns.r else None,
        s=parse_int_list(ns.s, "--s") if ns.s else None,
        vars=ns.vars, beta=ns.beta, grade=ns.grade, degree=degree, modes=ns.modes, sign=ns.sign,
        basis=ns.basis, fmt=ns.fmt, cache_dir=ns.cache_dir, use_cache=not ns.no_cache, seed=ns.seed,
    )


def _dispatch(config: RunConfig, ns) -> tuple:
    if config.command == "poly":
        return cmd_poly(config)
    if config.command == "eigen":
        return cmd_eigen(config)
    if config.command == "singular":
        return cmd_singular(config, ns.ct_check)
    if config.command == "correlate":
        return cmd_correlate(config)
    if config.command == "ct":
        return cmd_ct(config, ns.variant, ns.kernel)
    return cmd_verify(config, ns.suite)


def _render_text(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = _config(ns)
        report, status = _dispatch(config, ns)
    except (TruncationError, UnsoundTruncation) as exc:
        report, status = {"error": "truncation", "message": str(exc)}, EXIT_TRUNCATION
    except ValueError as exc:
        print(f"qwn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularVectorError as exc:
        report, status = {"error": "singular-vector", "message": str(exc)}, EXIT_MISMATCH
    text = json.dumps(report, sort_keys=True, indent=2) if ns.fmt == "json" else _render_text(report)
    if ns.out:
        Path(ns.out).write_text(text + "\n")
    else:
        print(text)
    return status


def config_to_json(config: RunConfig) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(config).items()}
