"""Batch experiment driver.

Subcommands run one module's experiment and emit a diff-able table (CSV with
'.' decimals and 12 significant digits, or JSON).  A plain key=value config
file can seed any flag; explicit flags win.  Exit codes: 0 success, 2 config
error, 3 numeric-certification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from pslab.arith import FloorCertificationError, ProblemParams, sigma_of_c

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def write_table(path, fmt, title, columns, rows, summary=None):
    rows = [[_fmt(v) for v in row] for row in rows]
    summary = {k: _fmt(v) for k, v in (summary or {}).items()}
    if fmt == "json":
        doc = {"title": title, "columns": list(columns), "rows": rows, "summary": summary}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {title}"]
        for k, v in summary.items():
            lines.append(f"# {k} = {v}")
        lines.append(",".join(columns))
        lines.extend(",".join(row) for row in rows)
        text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _parse_config_file(path):
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", default=None, help="key=value config file; flags override")
    p.add_argument("--c", default=None, help="exponent as exact rational a/b")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--sigma-variant", choices=["theorem", "conservative"], default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="output path ('-' for stdout)")
    p.add_argument("--format", choices=["csv", "json"], default=None)


_DEFAULTS = {
    "c": "11/10",
    "N": 1000,
    "M": None,
    "eps": 0.01,
    "sigma_variant": "theorem",
    "threads": 1,
    "seed": 1,
    "out": "-",
    "format": "csv",
    "n0": 4,
    "n_list": None,
    "x_points": 16,
}


def _resolve(args) -> dict:
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        file_vals = _parse_config_file(args.config)
        for k, v in file_vals.items():
            if k not in cfg:
                raise ValueError(f"unknown config key {k!r}")
            cfg[k] = v
    for k in cfg:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    # normalize types (config-file values arrive as strings)
    cfg["N"] = int(cfg["N"])
    cfg["M"] = int(cfg["M"]) if cfg["M"] is not None else cfg["N"]
    cfg["eps"] = float(cfg["eps"])
    cfg["threads"] = int(cfg["threads"])
    cfg["seed"] = int(cfg["seed"])
    cfg["n0"] = int(cfg["n0"])
    cfg["x_points"] = int(cfg["x_points"])
    c = Fraction(cfg["c"])
    sigma_of_c(c, cfg["sigma_variant"])  # validates the range
    cfg["c"] = c
    return cfg


def _params(cfg) -> ProblemParams:
    return ProblemParams(
        c=cfg["c"],
        bigN=cfg["N"],
        bigM=cfg["M"],
        eps=cfg["eps"],
        sigma_variant=cfg["sigma_variant"],
    )


def cmd_exceptional(cfg) -> None:
    from pslab.exceptional import build_rep_table, exceptional_set

    rep = exceptional_set(cfg["c"], cfg["N"], cfg["n0"])
    table = build_rep_table(cfg["c"], cfg["N"])
    if cfg["format"] == "json":
        doc = {
            "c": str(cfg["c"]),
            "N": cfg["N"],
            "n0": cfg["n0"],
            "density": rep.density,
            "exceptional": rep.exceptional,
            "dyadic_Z": {str(k): v for k, v in rep.dyadic_Z.items()},
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        if cfg["out"] in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(cfg["out"], "w") as fh:
                fh.write(text)
        return
    rows = [(n, int(table.counts[n])) for n in range(cfg["n0"], cfg["N"] + 1)]
    write_table(
        cfg["out"],
        "csv",
        "representation counts R(n) (ordered prime pairs) and exceptional density",
        ["n", "R(n)"],
        rows,
        summary={
            "c": str(cfg["c"]),
            "exceptional_count": len(rep.exceptional),
            "density": rep.density,
        },
    )


def cmd_majorarc(cfg) -> None:
    from pslab.circle import main_term, major_arc_integral_exact
    from pslab.parallel import deterministic_map

    params = _params(cfg)
    if cfg["n_list"]:
        ns = [int(s) for s in str(cfg["n_list"]).split(",")]
    else:
        rng = np.random.default_rng(cfg["seed"])
        M = cfg["M"]
        ns = sorted(int(v) for v in rng.integers(M // 2 + 1, M + 1, size=8))
    g = params.gamma_float

    def work(n):
        integral = major_arc_integral_exact(params, n)
        mt = main_term(n, g)
        return (n, integral, mt, integral / mt)

    rows = deterministic_map(work, ns, cfg["threads"])
    write_table(
        cfg["out"],
        cfg["format"],
        "central-interval integral of T^2 e(-xn) vs stationary main term"
        " Gamma(1+g)^2/Gamma(2g) n^(2g-1) (ratio dimensionless)",
        ["n", "integral", "main_term", "ratio"],
        rows,
        summary={"c": str(cfg["c"]), "M": cfg["M"], "omega": params.omega},
    )


def cmd_moment4(cfg) -> None:
    from pslab.circle import minor_arc_moment

    params = _params(cfg)
    rep = minor_arc_moment(params, power=4)
    cf = params.c_float
    rhs = params.bigX ** (4.0 - cf - cf * params.sigma + params.eps)
    write_table(
        cfg["out"],
        cfg["format"],
        "complementary-arc fourth moment of |T| vs power-saving target"
        " X^(4-c-c*sigma+eps)",
        ["M", "X", "moment4", "target", "ratio", "rel_change", "n_nodes"],
        [(cfg["M"], params.bigX, rep.value, rhs, rep.value / rhs, rep.rel_change, rep.n_nodes)],
        summary={"c": str(cfg["c"]), "omega": params.omega},
    )


def cmd_bounds(cfg) -> None:
    from pslab.exceptional import bound_ratio_report

    params = _params(cfg)
    rep = bound_ratio_report(params, n_x=cfg["x_points"], seed=cfg["seed"])
    rows = [
        ("complete", X, x, lhs, rhs, ratio) for (X, x, lhs, rhs, ratio) in rep.complete_sum_rows
    ] + [("prime", X, x, lhs, rhs, ratio) for (X, x, lhs, rhs, ratio) in rep.prime_sum_rows]
    write_table(
        cfg["out"],
        cfg["format"],
        "minor-arc bound ratios: complete sums vs X^(2-c-c*sigma+eps/2)+X^(1-c)/||x||,"
        " prime sums vs X^(1-c*sigma/2+eps/4)",
        ["kind", "X", "x", "lhs", "rhs", "ratio"],
        rows,
        summary={
            "max_complete_ratio": rep.max_complete_ratio,
            "max_prime_ratio": rep.max_prime_ratio,
            "H_complete": rep.H_complete,
            "H_prime": rep.H_prime,
            "Q": rep.Q,
        },
    )


def cmd_bprocess(cfg) -> None:
    from pslab.parallel import deterministic_map
    from pslab.vdc import b_process_conjugate, power_phase

    cf = float(cfg["c"])
    Xs = [1000, 10000]
    alphas = [2.0**-k for k in range(6)]
    jobs = [(a, X) for X in Xs for a in alphas]

    def work(job):
        a, X = job
        phase = power_phase(a, cf, float(X))
        out = b_process_conjugate(phase, X // 2, X)
        return (a, X, phase.F, out.discrepancy, out.error_budget, out.c_fitted)

    rows = deterministic_map(work, jobs, cfg["threads"])
    write_table(
        cfg["out"],
        cfg["format"],
        "stationary-phase transform residual |direct - transformed| vs budget"
        " log(F/X+2) + X F^(-1/2) (fitted constant dimensionless)",
        ["alpha", "X", "F", "discrepancy", "budget", "fitted_C"],
        rows,
        summary={"max_fitted_C": max(r[5] for r in rows)},
    )


def cmd_hbident(cfg) -> None:
    import pslab.hb as hb

    X = min(cfg["N"], 10000)
    dec = hb.decompose(X, rng_seed=cfg["seed"])
    lam = hb.lambda_array(X)
    rng = np.random.default_rng(cfg["seed"])
    residuals = []
    for _ in range(16):
        garr = np.zeros(X + 1, dtype=np.complex128)
        garr[1:] = rng.uniform(-1, 1, X) + 1j * rng.uniform(-1, 1, X)
        want = complex(math.fsum(lam * garr.real), math.fsum(lam * garr.imag))
        got = dec.evaluate(garr)
        residuals.append(abs(got - want) / max(float(np.sum(lam)), 1.0))
    write_table(
        cfg["out"],
        cfg["format"],
        "von Mangoldt bilinear decomposition: recombination residuals"
        " (relative to psi(X))",
        ["g_index", "relative_residual"],
        [(i, r) for i, r in enumerate(residuals)],
        summary={
            "X": X,
            "type1_terms": dec.n_type1,
            "type2_terms": dec.n_type2,
            "params_ok": dec.params_ok,
            "advisory": dec.advisory,
            "max_residual": max(residuals),
        },
    )


def cmd_expsum(cfg) -> None:
    from pslab.expsum import t_sum

    params = _params(cfg)
    rng = np.random.default_rng(cfg["seed"])
    xs = np.sort(rng.uniform(0.0, 1.0, cfg["x_points"]))
    rows = []
    for x in xs:
        r = t_sum(params, float(x))
        rows.append((float(x), r.value.real, r.value.imag, abs(r.value), r.terms))
    write_table(
        cfg["out"],
        cfg["format"],
        "weighted prime exponential sum T(x) = sum_{p<=M^gamma} log p e(x[p^c])",
        ["x", "re", "im", "abs", "terms"],
        rows,
        summary={"c": str(cfg["c"]), "M": cfg["M"]},
    )


_COMMANDS = {
    "exceptional": cmd_exceptional,
    "majorarc": cmd_majorarc,
    "moment4": cmd_moment4,
    "bounds": cmd_bounds,
    "bprocess": cmd_bprocess,
    "hbident": cmd_hbident,
    "expsum": cmd_expsum,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pslab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        _add_common(p)
        if name == "exceptional":
            p.add_argument("--n0", type=int, default=None)
        if name == "majorarc":
            p.add_argument("--n-list", default=None, help="comma-separated n values")
        if name in ("bounds", "expsum"):
            p.add_argument("--x-points", type=int, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code not in (0, None) else 0
    try:
        cfg = _resolve(args)
    except (ValueError, OSError, ZeroDivisionError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        _COMMANDS[args.command](cfg)
    except FloorCertificationError as e:
        print(f"numeric certification failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except Exception as e:
        from pslab.circle import GridTooCoarseError

        if isinstance(e, GridTooCoarseError):
            print(f"numeric certification failure: {e}", file=sys.stderr)
            return EXIT_NUMERIC
        raise
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
