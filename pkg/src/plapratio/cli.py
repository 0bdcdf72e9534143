"""Command-line front end.

Exit codes: 0 success, 1 falsified inequality (exact lambda2 only), 2 usage
error, 3 regime inapplicable, 4 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .audit import audit_moment_origins, audit_proof_chain
from .bounds import ProblemParams, constants_table, ratio_bound
from .exceptions import ConvergenceError, InvalidParameterError, NoBoundAvailableError
from .report import fmt12
from .solver1d import Interval1D, ratio_1d, shoot_eigenvalue
from .solver_nd import eigenpair_to_text, principal_eigenpair
from .sweep import DOMAINS, make_domain, rows_to_csv, run_instance, run_sweep, second_eigenvalue

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_INAPPLICABLE = 3
EXIT_NONCONVERGENCE = 4


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def _str_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _g(x):
    return "n/a" if x is None else f"{x:.12g}"


def cmd_bound(args):
    params = ProblemParams(args.p, args.n)
    consts = constants_table(params)
    rb = ratio_bound(params)
    if args.json:
        out = {
            "p": fmt12(params.p),
            "n": params.n_dim,
            "m": fmt12(consts.m),
            "m_hat": fmt12(consts.m_hat),
            "k_hat": fmt12(consts.k_hat),
            "bound_eq7": None if rb.ratio_bound_eq7 is None else fmt12(rb.ratio_bound_eq7),
            "bound_eq9": None if rb.ratio_bound_eq9 is None else fmt12(rb.ratio_bound_eq9),
            "best": fmt12(rb.best),
        }
        print(json.dumps(out))
    else:
        print(f"p={_g(params.p)} N={params.n_dim} regime={consts.regime.value}")
        print(f"m={_g(consts.m)} m_hat={_g(consts.m_hat)} k_hat={_g(consts.k_hat)}")
        if consts.m_max_profile != consts.m:
            print(f"(max-profile value of m: {_g(consts.m_max_profile)})")
        print(f"bound_eq7={_g(rb.ratio_bound_eq7)} bound_eq9={_g(rb.ratio_bound_eq9)} best={_g(rb.best)}")
    return EXIT_OK


def cmd_solve1d(args):
    if args.modes < 1 or args.modes > 4:
        raise InvalidParameterError("--modes must be between 1 and 4")
    interval = Interval1D(0.0, args.length)
    modes = [shoot_eigenvalue(interval, args.p, n, tol=args.tol) for n in range(1, args.modes + 1)]
    for m in modes:
        print(f"lambda_{m.n} = {m.lam:.12g}  (interior zeros: {m.zeros}, steps: {m.steps})")
    if len(modes) >= 2:
        ratio = modes[1].lam / modes[0].lam
        ref = ratio_1d(args.p)
        print(f"ratio = {ratio:.12g}")
        print(f"2^p = {ref:.12g}")
        print(f"relative error = {abs(ratio - ref) / ref:.3e}")
    return EXIT_OK


def cmd_solve(args):
    row, eig1 = run_instance(args.domain, args.p, args.grid, args.tol, args.max_iter, args.axis)
    print(f"domain={args.domain} N={row.n_dim} p={row.p:.12g} grid={args.grid}")
    print(f"lambda1 = {row.lambda1:.12g}  (iterations {eig1.iterations}, residual {eig1.residual:.3e})")
    print(f"lambda2 = {row.lambda2:.12g}  [{row.estimate_kind}]")
    print(f"ratio = {row.ratio:.12g}")
    print(f"bound_eq7 = {_g(row.bound_eq7)}  bound_eq9 = {_g(row.bound_eq9)}  best = {_g(row.best_bound)}")
    if args.dump:
        out = Path(args.dump)
        out.mkdir(parents=True, exist_ok=True)
        (out / "phi1.txt").write_text(eigenpair_to_text(eig1))
    if not row.applicable:
        print("verdict: inapplicable (no bound for this p and N)")
        return EXIT_INAPPLICABLE
    if row.satisfied:
        print("verdict: satisfied")
        return EXIT_OK
    if row.inconclusive:
        print("verdict: inconclusive (upper estimate exceeds bound)")
        return EXIT_OK
    print("verdict: FALSIFIED")
    return EXIT_FALSIFIED


def cmd_audit(args):
    domain = make_domain(args.domain, args.grid)
    eig1 = principal_eigenpair(domain, args.p, tol=args.tol, max_iter=args.max_iter)
    lam2, kind = second_eigenvalue(domain, float(args.p), eig1, args.axis)
    report = audit_proof_chain(eig1, lam2, float(args.p), one_sided=(kind == "UPPER"))
    report.entries.extend(audit_moment_origins(eig1, float(args.p)))
    text = report.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_FALSIFIED if report.violations else EXIT_OK


def cmd_sweep(args):
    rows = run_sweep(args.p_list, args.domains, args.grid, args.tol, args.max_iter,
                     n_list=args.n_list, workers=args.workers)
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_FALSIFIED if any(r.falsifying for r in rows) else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="plapratio", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="constants and ratio bounds for (p, N)")
    b.add_argument("p", type=float)
    b.add_argument("n", type=int)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    s1 = sub.add_parser("solve1d", help="exact 1-D spectrum by shooting")
    s1.add_argument("p", type=float)
    s1.add_argument("--length", type=float, default=1.0)
    s1.add_argument("--modes", type=int, default=2)
    s1.add_argument("--tol", type=float, default=1e-9)
    s1.set_defaults(func=cmd_solve1d)

    def solver_flags(sp):
        sp.add_argument("--domain", choices=sorted(DOMAINS), default="square")
        sp.add_argument("--p", type=float, required=True)
        sp.add_argument("--grid", type=int, default=128)
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--max-iter", type=int, default=20000)
        sp.add_argument("--axis", type=int, default=0)

    s = sub.add_parser("solve", help="principal eigenpair, lambda2 and the bound verdict")
    solver_flags(s)
    s.add_argument("--dump", metavar="DIR", help="write the eigenfunction snapshot to DIR/phi1.txt")
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("audit", help="JSON audit of every inequality on one instance")
    solver_flags(a)
    a.add_argument("--out", metavar="FILE")
    a.set_defaults(func=cmd_audit)

    w = sub.add_parser("sweep", help="CSV table over p values and domains")
    w.add_argument("--p-list", type=_float_list, default=[1.5, 2.0, 3.0], help="comma-separated exponents")
    w.add_argument("--n-list", type=_int_list, default=None, help="keep only domains of these dimensions")
    w.add_argument("--domains", type=_str_list, default=["interval", "square"],
                   help=f"comma-separated labels from {{{','.join(sorted(DOMAINS))}}}")
    w.add_argument("--grid", type=int, default=128)
    w.add_argument("--tol", type=float, default=1e-8)
    w.add_argument("--max-iter", type=int, default=20000)
    w.add_argument("--workers", type=int, default=1, help="worker processes (output order is fixed)")
    w.add_argument("--out", metavar="FILE")
    w.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoBoundAvailableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
