"""Command-line front-end.

Commands::

    hypersimplex constants --n 2..10 [--format csv|json]
    hypersimplex verify <suite> [--n A..B] [--seed S] [--samples K]
    hypersimplex delta --simplex file.json --m M
    hypersimplex census --z RE,IM
    hypersimplex figure <kind> [--z RE,IM] [--chords a,b;c,d] [--vertices x,y;...] --out f.svg

Exit codes: 0 success, 1 a verification or computation failed, 2 usage error.
The environment variable ``HYPERSIMPLEX_SEED`` replaces the default seed 0.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from . import figures, skeleton
from ._maximin import MaximinOptions
from .disphenoid import disphenoid_maximizer_census
from .errors import HyperSimplexError, InvalidInput, InvalidParameter
from .simplex import incenter_inradius, regular_ideal_simplex, simplex_from_json
from .verify import LOG_1_SQRT2, SUITES, run_suite

N_MIN, N_MAX = 2, 64


class UsageError(Exception):
    pass


def parse_range(text):
    """``"A..B"`` or ``"A"`` as an inclusive range inside ``[2, 64]``."""
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}") from exc
    if not N_MIN <= lo <= hi <= N_MAX:
        raise argparse.ArgumentTypeError(f"range {text!r} must lie within {N_MIN}..{N_MAX}")
    return range(lo, hi + 1)


def parse_complex(text):
    try:
        re_, im = (float(s) for s in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from exc
    return complex(re_, im)


def parse_pairs(text):
    try:
        return [tuple(float(s) for s in part.split(",")) for part in text.split(";")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected x,y;x,y;..., got {text!r}") from exc


def default_seed():
    raw = os.environ.get("HYPERSIMPLEX_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"HYPERSIMPLEX_SEED={raw!r} is not an integer")


def constants_rows(n_range):
    rows = []
    for n in n_range:
        s = regular_ideal_simplex(n)
        data = incenter_inradius(s)
        mu = skeleton.dist_to_face(data.incenter, skeleton.Face(s, (0, 1))).distance
        r_exp = math.atanh(1.0 / n)
        mu_exp = math.atanh(math.sqrt((n - 1) / (2.0 * n)))
        rows.append(
            {
                "n": n,
                "atanh_inv_n": r_exp,
                "atanh_mu": mu_exp,
                "inradius": data.inradius,
                "mu": mu,
                "inradius_residual": abs(data.inradius - r_exp),
                "mu_residual": abs(mu - mu_exp),
            }
        )
    return rows


def cmd_constants(args, out):
    rows = constants_rows(args.n)
    limit = {"n": "inf", "mu": LOG_1_SQRT2, "gap": LOG_1_SQRT2 - rows[-1]["mu"]}
    if args.format == "json":
        json.dump({"rows": rows, "limit": limit}, out, indent=2)
        out.write("\n")
        return 0
    cols = list(rows[0]) + ["gap"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([r["n"]] + [f"{r[c]:.15g}" for c in cols[1:-1]] + [""])
    w.writerow(["inf", "", "", "", f"{limit['mu']:.15g}", "", "", f"{limit['gap']:.15g}"])
    out.write(buf.getvalue())
    return 0


def cmd_verify(args, out):
    checks = run_suite(args.suite, args.n, args.seed, args.samples)
    ok = True
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        out.write(f"{status} {args.suite}/{c.name} worst={c.worst:.3e} tol={c.tol:.3e}\n")
        if not c.passed:
            ok = False
            out.write(json.dumps({"suite": args.suite, "invariant": c.name, "case": c.failure}) + "\n")
    return 0 if ok else 1


def cmd_delta(args, out):
    try:
        with open(args.simplex) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.simplex}: {exc}")
    s = simplex_from_json(doc)
    if not 0 <= args.m < s.n:
        raise UsageError(f"need 0 <= m < n = {s.n}")
    opts = skeleton.OptimizerOptions(seed=args.seed)
    report = skeleton.enumerate_local_maximizers(s, args.m, opts)
    json.dump(report.to_json(), out, indent=2)
    out.write("\n")
    return 0


def cmd_census(args, out):
    res = disphenoid_maximizer_census(args.z, MaximinOptions(seed=args.seed))
    json.dump(
        {
            "z": [args.z.real, args.z.imag],
            "local": res.local,
            "global": res.global_,
            "values": res.values.tolist(),
            "points": res.points.tolist(),
        },
        out,
        indent=2,
    )
    out.write("\n")
    return 0


def cmd_figure(args, out):
    if args.kind == "config-hyperplanes":
        svg = figures.config_hyperplanes(args.chords) if args.chords else figures.config_hyperplanes()
    elif args.kind == "incentred-model":
        svg = figures.incentred_model_figure(args.vertices)
    else:
        z = args.z if args.z is not None else complex(0.2, 1.3)
        svg = figures.disphenoid_figure(z, MaximinOptions(seed=args.seed))
    with open(args.out, "w", newline="\n") as fh:
        fh.write(svg)
    out.write(f"wrote {args.out}\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hypersimplex", description="Inradius and skeleton distances of hyperbolic simplices.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="table of the inradius and edge-distance constants")
    c.add_argument("--n", type=parse_range, default=parse_range("2..10"))
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.set_defaults(func=cmd_constants)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--n", type=parse_range, default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--samples", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("delta", help="distance from a simplex to its m-skeleton")
    d.add_argument("--simplex", required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--seed", type=int, default=None)
    d.set_defaults(func=cmd_delta)

    z = sub.add_parser("census", help="maximizer counts for a disphenoid")
    z.add_argument("--z", type=parse_complex, required=True)
    z.add_argument("--seed", type=int, default=None)
    z.set_defaults(func=cmd_census)

    f = sub.add_parser("figure", help="write an SVG figure")
    f.add_argument("kind", choices=sorted(figures.FIGURES))
    f.add_argument("--out", required=True)
    f.add_argument("--z", type=parse_complex, default=None)
    f.add_argument("--chords", type=parse_pairs, default=None, help="endpoint angles in degrees: a,b;c,d")
    f.add_argument("--vertices", type=parse_pairs, default=None, help="Klein points: x,y;x,y;x,y")
    f.add_argument("--seed", type=int, default=None)
    f.set_defaults(func=cmd_figure)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args, out)
    except (UsageError, InvalidParameter, InvalidInput) as exc:
        sys.stderr.write(f"hypersimplex: error: {exc}\n")
        return 2
    except HyperSimplexError as exc:
        sys.stderr.write(f"hypersimplex: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
