"""Command-line front end.

Every subcommand writes one or more numeric tables as CSV (blank line
between tables, header row first) or as a JSON document.

    betajacobi evaluate --n 100 --alpha 0 --beta 0 --f exp --x 0.5
    betajacobi moments --n 10 --m-max 6 --verify
    betajacobi profile --n 6 --alpha 0
    betajacobi asymptotics --l 2 --x 0.5
    betajacobi iterate --alpha 0 --beta 0 --p 0,1 --measure
"""
import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from ._accel import BACKEND
from .asymptotics import (
    DerivativeBundle,
    even_moment_limit,
    odd_moment_limit,
    richardson_extrapolate,
    voronovskaya_limit,
)
from .errors import BetaJacobiError, ToleranceError
from .iterates import (
    boundary_iterate_limit,
    iterate_limit,
    iterate_polynomial,
    limit_measure_moment,
    mu_moments,
)
from .moments import moment_grid, moment_oracle, second_moment_closed, symmetric_profile
from .operator import OperatorConfig, Polynomial, evaluate

EXIT_USAGE = 2
EXIT_TOLERANCE = 3
VERIFY_TOL = 1e-9
FD_STEP = 1e-4

DEFAULTS = {
    "n": 10,
    "alpha": 0.0,
    "beta": 0.0,
    "x": None,
    "x_grid": "0:1:11",
    "m_max": 4,
    "l": 1,
    "k_max": 6,
    "iters": 100,
    "tol": 1e-12,
    "format": "csv",
    "out": None,
    "verify": False,
    "measure": False,
    "f": "exp",
    "p": "0,1",
    "ns": "200,400,800,1600,3200",
}


class UsageError(Exception):
    pass


# builtins are vectorized; poly:<coeffs> is handled separately
BUILTINS = {
    "exp": np.exp,
    "sin": np.sin,
    "abs-shift": lambda t: np.abs(np.asarray(t, dtype=float) - 0.5),
}


def parse_function(name):
    """Return (callable, Polynomial or None) for a --f argument."""
    if name in BUILTINS:
        return BUILTINS[name], None
    if name.startswith("poly:"):
        poly = Polynomial(_float_list(name[5:], "poly coefficients"))
        return poly, poly
    raise UsageError(
        f"unknown function {name!r}; expected one of {sorted(BUILTINS)} or poly:c0,c1,..."
    )


def _float_list(text, what):
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse {what}: {text!r}") from None
    if not vals:
        raise UsageError(f"empty {what}")
    return vals


def finite_difference_bundle(f, x, h=FD_STEP):
    """f, f', f'' at x by central differences; error O(h^2)."""
    f0 = float(f(x))
    fp = float(f(x + h))
    fm = float(f(x - h))
    return DerivativeBundle(x, (f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)))


def x_values(cfg):
    if cfg["x"] is not None:
        xs = cfg["x"] if isinstance(cfg["x"], list) else [cfg["x"]]
        return np.array([float(v) for v in xs])
    try:
        start, stop, count = cfg["x_grid"].split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise UsageError(f"--x-grid must be start:stop:count, got {cfg['x_grid']!r}") from None
    if count < 1:
        raise UsageError("--x-grid count must be >= 1")
    if not (0.0 <= start <= 1.0 and 0.0 <= stop <= 1.0):
        raise UsageError("--x-grid must lie in [0, 1]")
    return np.linspace(start, stop, count)


def _op_config(cfg):
    return OperatorConfig.make(cfg["n"], cfg["alpha"], cfg["beta"])


def cmd_evaluate(cfg):
    f, poly = parse_function(cfg["f"])
    op = _op_config(cfg)
    rows = []
    for x in x_values(cfg):
        value = evaluate(op, f, x, cfg["tol"])
        if poly is not None:
            bundle = DerivativeBundle.of_polynomial(poly, x, 2)
        else:
            bundle = finite_difference_bundle(f, x)
        predicted = bundle.values[0] + voronovskaya_limit(bundle, op.alpha, op.beta) / op.n
        rows.append([x, value, predicted])
    return [("evaluate", ["x", "value", "first_order_prediction"], rows)], 0


def cmd_moments(cfg):
    op = _op_config(cfg)
    m_max = cfg["m_max"]
    xs = x_values(cfg)
    table = moment_grid(op, xs, m_max)
    header = ["x"] + [f"T{m}" for m in range(m_max + 1)]
    rows = []
    status = 0
    for x, values in zip(xs, table):
        row = [x] + values.tolist()
        if cfg["verify"]:
            dev = max(
                abs(values[m] - moment_oracle(op, x, m, cfg["tol"])) for m in range(m_max + 1)
            )
            row.append(dev)
            if dev > VERIFY_TOL:
                status = EXIT_TOLERANCE
        rows.append(row)
    if cfg["verify"]:
        header.append("max_oracle_deviation")
    return [("moments", header, rows)], status


def cmd_profile(cfg):
    n, alpha = cfg["n"], cfg["alpha"]
    profile = symmetric_profile(n, alpha)
    op = OperatorConfig.make(n, alpha, alpha)
    series = [[x, second_moment_closed(op, x)] for x in x_values(cfg)]
    summary = [
        [
            profile.n,
            profile.alpha,
            profile.critical_alpha,
            profile.shape.name,
            profile.endpoint_value,
            profile.midpoint_value,
        ]
    ]
    print(
        f"shape={profile.shape.name} n={n} alpha={_fmt(alpha)} "
        f"critical_alpha={_fmt(profile.critical_alpha)}",
        file=sys.stderr,
    )
    return [
        ("series", ["x", "T2"], series),
        (
            "profile",
            ["n", "alpha", "critical_alpha", "shape", "endpoint_value", "midpoint_value"],
            summary,
        ),
    ], 0


def cmd_asymptotics(cfg):
    l = cfg["l"]
    if l < 1:
        raise UsageError("--l must be >= 1")
    ns = [int(v) for v in _float_list(cfg["ns"], "--ns")]
    if len(ns) < 3 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise UsageError("--ns needs at least 3 strictly increasing values")
    alpha, beta = cfg["alpha"], cfg["beta"]
    seq_rows, summary = [], []
    for x in x_values(cfg):
        even, odd = [], []
        for n in ns:
            T = moment_grid(OperatorConfig.make(n, alpha, beta), np.array([x]), 2 * l)[0]
            even.append(n**l * T[2 * l])
            odd.append(n**l * T[2 * l - 1])
            seq_rows.append([x, n, even[-1], odd[-1]])
        ev, od = richardson_extrapolate(ns, even), richardson_extrapolate(ns, odd)
        ev_t, od_t = even_moment_limit(l, x), odd_moment_limit(l, alpha, beta, x)
        summary.append([x, l, ev, ev_t, abs(ev - ev_t), od, od_t, abs(od - od_t)])
    return [
        ("sequence", ["x", "n", "even_scaled", "odd_scaled"], seq_rows),
        (
            "extrapolation",
            [
                "x",
                "l",
                "even_extrapolated",
                "even_target",
                "even_error",
                "odd_extrapolated",
                "odd_target",
                "odd_error",
            ],
            summary,
        ),
    ], 0


def _iteration_schedule(iters):
    ms, m = [], 1
    while m < iters:
        ms.append(m)
        m *= 2
    ms.append(iters)
    return ms


def cmd_iterate(cfg):
    p = Polynomial(_float_list(cfg["p"], "--p"))
    op = _op_config(cfg)
    xs = x_values(cfg)
    iters = cfg["iters"]
    if iters < 1:
        raise UsageError("--iters must be >= 1")
    if op.params.is_regular:
        limit = np.full(xs.shape, iterate_limit(op, p))
    else:
        limit = boundary_iterate_limit(op.params, p(0.0), p(1.0), xs)
    dev_rows = []
    for m in _iteration_schedule(iters):
        dev_rows.append([m, float(np.max(np.abs(iterate_polynomial(op, p, m)(xs) - limit)))])
    tables = [
        ("iterates", ["m", "sup_deviation"], dev_rows),
        ("limit", ["x", "limit_value"], [[x, v] for x, v in zip(xs, limit)]),
    ]
    if cfg["measure"]:
        if op.params.is_regular:
            mu = mu_moments(op, cfg["k_max"]).moments
            rows = []
            for k in range(cfg["k_max"] + 1):
                lim = limit_measure_moment(op.alpha, op.beta, k)
                rows.append([k, mu[k], lim, abs(mu[k] - lim)])
            tables.append(("measure", ["k", "mu_n", "mu_limit", "abs_diff"], rows))
        else:
            print(f"--measure skipped: {op.case_tag.name} has no limit measure", file=sys.stderr)
    return tables, 0


COMMANDS = {
    "evaluate": cmd_evaluate,
    "moments": cmd_moments,
    "profile": cmd_profile,
    "asymptotics": cmd_asymptotics,
    "iterate": cmd_iterate,
}


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def render_csv(tables):
    blocks = []
    for _, header, rows in tables:
        lines = [",".join(header)] + [",".join(_fmt(v) for v in row) for row in rows]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def _json_value(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def render_json(tables, cfg):
    name, header, rows = tables[0]
    doc = {
        "config": cfg,
        "columns": header,
        "rows": [[_json_value(v) for v in row] for row in rows],
        "tables": {
            t_name: {"columns": t_header, "rows": [[_json_value(v) for v in r] for r in t_rows]}
            for t_name, t_header, t_rows in tables
        },
        "meta": {
            "tool": "betajacobi",
            "version": __version__,
            "backend": BACKEND,
            "tol": cfg["tol"],
            "verify_tol": VERIFY_TOL,
            "fd_step": FD_STEP,
        },
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--x", type=float, help="single evaluation point (overrides --x-grid)")
    common.add_argument("--x-grid", dest="x_grid", metavar="START:STOP:COUNT")
    common.add_argument("--m-max", dest="m_max", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--k-max", dest="k_max", type=int)
    common.add_argument("--iters", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--verify", action="store_true", default=None)
    common.add_argument("--measure", action="store_true", default=None)
    common.add_argument("--config", metavar="PATH", help="JSON file of defaults; flags win")
    common.add_argument("--f", help="exp | sin | abs-shift | poly:c0,c1,...")
    common.add_argument("--p", help="polynomial coefficients c0,c1,... for iterate")
    common.add_argument("--ns", help="increasing n values for asymptotics")

    parser = argparse.ArgumentParser(prog="betajacobi", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(args):
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if not cfg["tol"] > 0:
        raise UsageError("--tol must be positive")
    if cfg["format"] not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        tables, status = COMMANDS[args.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"betajacobi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceError as exc:
        print(f"betajacobi: tolerance failure: {exc} (best={exc.value!r})", file=sys.stderr)
        return EXIT_TOLERANCE
    except BetaJacobiError as exc:
        print(f"betajacobi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = dict(cfg, command=args.command)
    text = render_json(tables, cfg) if cfg["format"] == "json" else render_csv(tables)
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
