"""Command-line interface: verification suites, samplers, kernel and gap
tables, and edge asymptotics, with machine-readable outputs.

Rational parameters are accepted as 'p/q' strings so exactness survives the
process boundary.  Every run echoes its resolved configuration (as a JSON
header line for CSV, or a leading object for JSON-lines).  Exit codes:
0 success, 1 a verification or statistical gate failed, 2 usage error.

A --threads flag is accepted for interface stability; execution is
sequential regardless, which keeps byte-identical replays trivially true.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import edge as edge_mod
from . import identities, kernel, measure, montecarlo
from . import rsk as rsk_mod
from .partitions import partitions_up_to


def _fractions(text):
    return tuple(Fraction(part) for part in text.split(",") if part)


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_echo(args):
    cfg = {k: str(v) for k, v in sorted(vars(args).items()) if k != "func"}
    return cfg


def _run_verify(args):
    xs, ys, t, d = _fractions(args.x), _fractions(args.y), Fraction(args.t), args.deg
    reports = []
    suite = args.suite
    if suite in ("cauchy", "all"):
        reports.append(identities.verify_t_cauchy(xs, ys, t, d))
    if suite in ("dual-cauchy", "all"):
        reports.append(identities.verify_dual_cauchy(xs, ys, t, d))
    if suite in ("gessel-length", "all"):
        for k in args.k:
            reports.append(identities.verify_gessel_length(xs, ys, t, k, d))
    if suite in ("gessel-row", "all"):
        for h in args.row:
            reports.append(identities.verify_gessel_row(xs, ys, t, h, d))
    if suite in ("normalization", "all"):
        reports.append(identities.verify_measure_normalization(xs, ys, t, d))
    lines = [json.dumps({"config": _config_echo(args)})]
    lines += [json.dumps(r.to_json()) for r in reports]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if all(r.ok for r in reports) else 1


def _format_tableau(rows, letters=True):
    if letters:
        return [[rsk_mod.format_letter(c) for c in row] for row in rows]
    return [list(row) for row in rows]


def _run_rsk(args):
    if args.inverse:
        pair = json.loads(args.inverse)
        s_tab = tuple(
            tuple(rsk_mod.parse_letter(c) for c in row) for row in pair["S"]
        )
        u_tab = tuple(tuple(row) for row in pair["U"])
        try:
            matrix = rsk_mod.inverse_rsk(
                s_tab, u_tab, encoding=args.encoding, tie_order=args.tie_order
            )
        except rsk_mod.NotInImage as exc:
            _emit(args, json.dumps({"error": f"not in image: {exc}"}) + "\n")
            return 1
        _emit(args, json.dumps({"config": _config_echo(args),
                                "A": matrix.to_json()}) + "\n")
        return 0
    matrix = rsk_mod.AMatrix.from_json(json.loads(args.matrix))
    s_tab, u_tab = rsk_mod.rsk(matrix, args.encoding, args.tie_order)
    word = [code for _, code in rsk_mod.biword(matrix, args.encoding, args.tie_order)]
    out = {
        "config": _config_echo(args),
        "S": _format_tableau(s_tab),
        "U": [list(r) for r in u_tab],
        "shape": list(rsk_mod.shape_of(s_tab)),
        "lis": rsk_mod.lis_marked(word),
    }
    _emit(args, json.dumps(out) + "\n")
    return 0


def _csv_text(header_cfg, rows):
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(header_cfg) + "\n")
    writer = csv.writer(buf)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _run_sample(args):
    rows = [["shape", "count", "exact_prob"]]
    code = 0
    if args.model == "matrix":
        params = measure.TSchurParams.from_lists(
            _fractions(args.x), _fractions(args.y), Fraction(args.t)
        )
        m, n = len(params.xs), len(params.ys)
        report = measure.pushforward_check(
            m, n, params, args.trials, args.dmax, args.seed
        )
        counts = {}
        import numpy as np

        seeds = np.random.default_rng(args.seed).integers(0, 2 ** 63 - 1,
                                                          size=args.trials)
        for k in range(args.trials):
            mat = measure.sample_matrix_model(m, n, params, int(seeds[k]))
            s_tab, _ = rsk_mod.rsk(mat)
            shape = rsk_mod.shape_of(s_tab)
            counts[shape] = counts.get(shape, 0) + 1
        for lam in partitions_up_to(args.dmax):
            rows.append(
                [json.dumps(list(lam)), counts.get(tuple(lam), 0),
                 repr(float(params.prob(lam)))]
            )
        code = 0 if report.passed else 1
    elif args.model == "plancherel":
        import numpy as np

        rng = np.random.default_rng(args.seed)
        counts = {}
        for _ in range(args.trials):
            size = int(rng.poisson(args.kappa))
            shape = montecarlo.insertion_shape(
                [rsk_mod.letter_code(int(v) + 1, False) for v in rng.permutation(size)]
            )
            counts[shape] = counts.get(shape, 0) + 1
        pl = measure.TPlancherelParams(
            a=math.sqrt(args.kappa), b=math.sqrt(args.kappa), t=0.0
        )
        for lam in partitions_up_to(args.dmax):
            rows.append(
                [json.dumps(list(lam)), counts.get(tuple(lam), 0),
                 repr(measure.plancherel_prob(pl, lam))]
            )
    elif args.model == "tz":
        import numpy as np

        params = measure.TZParams.make(args.z, args.zprime, args.xi, args.t)
        lams = list(partitions_up_to(args.dmax))
        probs = [measure.tz_prob(params, lam) for lam in lams]
        if any(p < 0 for p in probs):
            _emit(args, json.dumps({"error": "negative mass outside the "
                                             "positivity regime"}) + "\n")
            return 1
        tail = max(0.0, 1.0 - sum(probs))
        rng = np.random.default_rng(args.seed)
        draws = rng.multinomial(args.trials, [*probs, tail])
        for lam, p, c in zip(lams, probs, draws):
            rows.append([json.dumps(list(lam)), int(c), repr(p)])
        rows.append([json.dumps(["TAIL"]), int(draws[-1]), repr(tail)])
    _emit(args, _csv_text(_config_echo(args), rows))
    return code


def _run_kernel(args):
    params = measure.TSchurParams.from_lists(
        _fractions(args.x), _fractions(args.y), Fraction(args.t)
    )
    sym = kernel.symbol(params, (args.lo, args.hi))
    window = kernel.kernel_window(sym, args.lo, args.hi)
    _emit(args, _csv_text(_config_echo(args), window.to_csv_rows()))
    return 0


def _run_gap(args):
    rows = [["h", "gap", "error_bound"]]
    if args.plancherel is not None:
        sym = kernel.plancherel_symbol(
            args.a, args.b, Fraction(args.t),
            (min(args.h_values), max(args.h_values) + 64),
        )
    else:
        params = measure.TSchurParams.from_lists(
            _fractions(args.x), _fractions(args.y), Fraction(args.t)
        )
        sym = kernel.symbol(
            params, (min(args.h_values), max(args.h_values) + 64)
        )
    for h in args.h_values:
        val, bound = kernel.gap_probability(sym, h, L=args.trunc)
        rows.append([h, repr(val), repr(bound)])
    _emit(args, _csv_text(_config_echo(args), rows))
    return 0


def _run_edge(args):
    rows = [["check", "parameter", "value"]]
    code = 0
    if args.saddle:
        a, tau, t = (float(Fraction(v)) for v in args.saddle)
        sad = edge_mod.saddle_constants(a, tau, t)
        for k, v in sad.to_json().items():
            rows.append(["saddle", k, repr(v)])
        if max(sad.phi1_residual, sad.phi2_residual) > 1e-12:
            code = 1
    if args.tw2:
        for s in args.tw2:
            rows.append(["tw2_cdf", s, repr(edge_mod.tw2_cdf(float(s)))])
    if args.bessel_airy:
        reports = edge_mod.bessel_to_airy_check([float(k) for k in args.bessel_airy])
        for rep in reports:
            rows.append(["bessel_airy_max_dev", rep.scale_parameter,
                         repr(rep.max_deviation)])
            rows.append(["bessel_airy_mixed", rep.scale_parameter,
                         repr(rep.mixed_max)])
        devs = [rep.max_deviation for rep in reports]
        if any(b >= a for a, b in zip(devs, devs[1:])):
            code = 1
    if args.rect:
        ns = [int(v) for v in args.rect]
        reports = edge_mod.rect_edge_check(
            ns, float(Fraction(args.alpha)), float(Fraction(args.tau)),
            float(Fraction(args.t))
        )
        for rep in reports:
            rows.append(["rect_max_dev", rep.scale_parameter,
                         repr(rep.max_deviation)])
            rows.append(["rect_minor_dev", rep.scale_parameter,
                         repr(rep.minor_deviation)])
    _emit(args, _csv_text(_config_echo(args), rows))
    return code


def _run_ascent(args):
    import numpy as np

    rng = np.random.default_rng(args.seed)
    counts = {}
    for _ in range(args.trials):
        mp = montecarlo.random_marked_permutation(args.n, Fraction(args.t), rng)
        length = montecarlo.t_ascent_length(mp)
        counts[length] = counts.get(length, 0) + 1
    out = {
        "config": _config_echo(args),
        "n": args.n,
        "t": str(args.t),
        "trials": args.trials,
        "length_counts": {str(k): v for k, v in sorted(counts.items())},
    }
    _emit(args, json.dumps(out) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tschur",
        description="deformed Schur measures: exact identities, marked "
        "insertion, determinantal kernels, edge asymptotics",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; runs sequentially")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run exact identity suites")
    p.add_argument("--suite", default="all",
                   choices=["cauchy", "dual-cauchy", "gessel-length",
                            "gessel-row", "normalization", "all"])
    p.add_argument("--x", required=True, help="comma list of rationals")
    p.add_argument("--y", required=True)
    p.add_argument("--t", default="0")
    p.add_argument("--deg", type=int, default=6)
    p.add_argument("--k", type=int, nargs="*", default=[1, 2, 3])
    p.add_argument("--row", type=int, nargs="*", default=[1, 2])
    p.add_argument("--output")
    p.set_defaults(func=_run_verify)

    p = sub.add_parser("rsk", help="insertion correspondence on a matrix")
    p.add_argument("--matrix", help='JSON rows of {"v": int, "p": bool}')
    p.add_argument("--inverse", help='JSON {"S": [["1\'","1"]], "U": [[1,1]]}')
    p.add_argument("--encoding", default=rsk_mod.DEFAULT_ENCODING,
                   choices=["single-mark", "all-marks"])
    p.add_argument("--tie-order", default=rsk_mod.DEFAULT_TIE_ORDER,
                   choices=["alpha-increasing", "marked-decreasing"])
    p.add_argument("--output")
    p.set_defaults(func=_run_rsk)

    p = sub.add_parser("sample", help="samplers with shape histograms")
    p.add_argument("--model", required=True, choices=["matrix", "plancherel", "tz"])
    p.add_argument("--x", default="")
    p.add_argument("--y", default="")
    p.add_argument("--t", default="0")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--z", default="2")
    p.add_argument("--zprime", default="2")
    p.add_argument("--xi", default="1/10")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--output")
    p.set_defaults(func=_run_sample)

    p = sub.add_parser("kernel", help="kernel window as CSV")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--t", default="0")
    p.add_argument("--lo", type=int, default=-4)
    p.add_argument("--hi", type=int, default=4)
    p.add_argument("--output")
    p.set_defaults(func=_run_kernel)

    p = sub.add_parser("gap", help="P(lambda_1 <= h) tables")
    p.add_argument("--x", default="")
    p.add_argument("--y", default="")
    p.add_argument("--t", default="0")
    p.add_argument("--plancherel", type=float, default=None,
                   help="use the Poissonized symbol with this kappa")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--h-values", type=int, nargs="+", default=[0, 1, 2, 3])
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--output")
    p.set_defaults(func=_run_gap)

    p = sub.add_parser("edge", help="edge asymptotics checks")
    p.add_argument("--saddle", nargs=3, metavar=("ALPHA", "TAU", "T"))
    p.add_argument("--tw2", nargs="*", type=float)
    p.add_argument("--bessel-airy", nargs="*", type=float)
    p.add_argument("--rect", nargs="*", type=int)
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--tau", default="1")
    p.add_argument("--t", default="-1")
    p.add_argument("--output")
    p.set_defaults(func=_run_edge)

    p = sub.add_parser("ascent", help="ascent-pair length experiments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", default="0")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=_run_ascent)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, rsk_mod.NotInImage) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
