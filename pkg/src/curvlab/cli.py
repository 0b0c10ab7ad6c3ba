"""``curvlab`` command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage
or parse errors. For ``model`` the weakly Einstein residuals are properties
of the model, so they are reported but do not affect the exit status.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import lie, report
from .kappa_mu import ParameterError
from .tensor import DEFAULT_TOL

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvlab", description="Curvature identity checks for almost contact models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("model", help="report on one catalog model or model file")
    m.add_argument("spec", help="g-lambda:n:lam, milnor:c1:c2:c3, sphere:n, "
                                "contact-km:n:kappa:mu, cosym-km:n:kappa:mu, or a file path")
    m.add_argument("--tol", type=float, default=DEFAULT_TOL)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=("all",) + report.SUITES)
    v.add_argument("--tol", type=float, default=None,
                   help="override the per-identity tolerance of residual checks")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")

    s = sub.add_parser("sweep", help="weakly Einstein residuals on a (kappa, mu) grid")
    s.add_argument("--family", required=True, choices=("contact", "cosym"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kappa", required=True, help="A..B")
    s.add_argument("--mu", required=True, help="C..D")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    return p


def cmd_model(args) -> int:
    rep = report.model_report(args.spec, tol=args.tol, seed=args.seed)
    _emit(report.dumps(rep), args.out)
    return EXIT_PASS if rep["checks_pass"] else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = report.DEFAULT_GRID
    if args.tol is not None:
        from dataclasses import replace
        cfg = replace(cfg, identity_tol=args.tol)
    summary = report.verify_summary(args.suite, seed=args.seed, cfg=cfg)
    for c in summary["checks"]:
        status = "pass" if c["pass"] else "FAIL"
        print(f"{c['name']}: {status} (residual {c['residual']:.3g} < {c['tolerance']:.3g})",
              file=sys.stderr)
    _emit(report.dumps(summary), args.out)
    return EXIT_PASS if summary["pass"] else EXIT_FAIL


def cmd_sweep(args) -> int:
    res = report.sweep(args.family, args.n, report.parse_range(args.kappa),
                       report.parse_range(args.mu), args.steps, tol=args.tol, jobs=args.jobs)
    _emit(report.dumps(res), args.out)
    return EXIT_PASS


def _join_ranges(argv: list[str]) -> list[str]:
    # "--kappa -2..0.5" would otherwise read -2..0.5 as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--kappa", "--mu") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_join_ranges(argv))
        handler = {"model": cmd_model, "verify": cmd_verify, "sweep": cmd_sweep}[args.command]
        return handler(args)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (report.SpecError, ParameterError, lie.ModelError, ValueError) as exc:
        print(f"curvlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
