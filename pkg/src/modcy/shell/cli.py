"""modcy command line.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 degenerate
input or bad reduction.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr
from fractions import Fraction

from .. import detcy, toddlab
from ..errors import CacheCorrupt, DegenerateInput, InconsistentConditions, InconsistentFit, SingularFit
from ..froblab.basis import parse_basis
from ..froblab.families import fraction_str, get_family
from ..froblab.fitting import fit, validate
from ..froblab.kummer import kummer_counts
from ..froblab.scan import moment, scan
from ..linsys import Condition, reduce_mod_p, solve_conditions
from ..planegeom.curves import format_polynomial
from ..planegeom.points import P1P1, P2, ProjPoint
from ..series import ap, coefficients, euler_factor, format_poly, hecke_check, lookup
from ..constructions import CONDITIONS, system
from .config import Config, ConfigError, load_config
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _primes(text: str) -> list[int]:
    """'7,11,13' or '7-31' (every good prime in range is picked by the caller)."""
    if "-" in text and "," not in text:
        lo, hi = (int(x) for x in text.split("-"))
        return [lo, hi]
    return [int(x) for x in text.split(",") if x]


def _form(args):
    try:
        return lookup(args.level, args.weight)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _points(text: str, p: int | None) -> list[ProjPoint]:
    return [ProjPoint.parse(tok, p, P2) for tok in text.split()]


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report)


def cmd_eta(args, cfg):
    spec = _form(args)
    a = coefficients(spec, args.prec)
    terms = " ".join(f"{n}:{c}" for n, c in enumerate(a) if n)
    return EXIT_OK, f"form {spec.label} recipe {spec.recipe}\ncoefficients {terms}\n"


def cmd_ap(args, cfg):
    if args.n < 1:
        raise UsageError("--n must be positive")
    return EXIT_OK, f"{ap(_form(args), args.n)}\n"


def cmd_euler(args, cfg):
    return EXIT_OK, format_poly(euler_factor(_form(args), args.prime)) + "\n"


def cmd_hecke(args, cfg):
    bad = hecke_check(_form(args), args.prec)
    lines = [f"form {args.level}.{args.weight} n<{args.prec} violations {len(bad)}"] + [str(v) for v in bad]
    return (EXIT_FAIL if bad else EXIT_OK), "\n".join(lines) + "\n"


def cmd_linsys(args, cfg):
    if args.construction:
        if args.construction not in CONDITIONS:
            raise UsageError(f"unknown construction {args.construction!r}; known: {', '.join(CONDITIONS)}")
        S = system(args.construction)
    else:
        if not args.condition:
            raise UsageError("give --construction or at least one --condition")
        ambient = P1P1 if args.ambient == "P1xP1" else P2
        S = solve_conditions(ambient, [Condition.parse(c) for c in args.condition])
    text = S.describe()
    if args.prime is not None:
        text += "\n" + "\n".join(f"mod {args.prime}: {format_polynomial(C.coeffs, S.ambient)}"
                                 for C in reduce_mod_p(S, args.prime))
    return EXIT_OK, text + "\n"


def cmd_scan(args, cfg):
    T = scan(get_family(args.family), args.prime, cfg.cache)
    return EXIT_OK, T.render() + "\n"


def cmd_moments(args, cfg):
    F = get_family(args.family)
    T = scan(F, args.prime, cfg.cache)
    return EXIT_OK, moment(T, args.r or F.r).render() + "\n"


def _good_range(F, text):
    if "-" in text:
        lo, hi = _primes(text)
        return F.good_primes(lo, hi)
    return _primes(text)


def cmd_fit(args, cfg):
    F = get_family(args.family)
    model = fit(F, parse_basis(args.basis), _good_range(F, args.primes), r=args.r, cache=cfg.cache)
    return EXIT_OK, model.render() + "\n"


def cmd_validate(args, cfg):
    F = get_family(args.family)
    model = fit(F, parse_basis(args.basis), _good_range(F, args.fit_primes), r=args.r, cache=cfg.cache)
    report = validate(model, _good_range(F, args.primes), cache=cfg.cache)
    return (EXIT_OK if report.ok else EXIT_FAIL), model.render() + "\n" + report.render() + "\n"


def cmd_verify(args, cfg):
    name = args.suite or args.name
    if name is None:
        raise UsageError("name a suite: " + ", ".join(SUITES))
    if name == "all":
        results = [run_suite(n, cfg) for n in SUITES]
    elif name in SUITES:
        results = [run_suite(name, cfg)]
    else:
        raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    text = "\n".join(r.render() for r in results)
    return (EXIT_OK if all(r.ok for r in results) else EXIT_FAIL), text


def cmd_kummer(args, cfg):
    k = kummer_counts(args.A, args.B, args.prime)
    return EXIT_OK, (f"curve y^2 = x^3 + {args.A}x + {args.B} p {args.prime}\n"
                     f"a {k.a} f2 {k.f2}\nsingular_quotient {k.singular_quotient_count}\n"
                     f"smooth_model {k.smooth_model_count}\n")


def _field_str(x) -> str:
    return fraction_str(x) if isinstance(x, Fraction) else str(x)


def cmd_detcy(args, cfg):
    p = args.prime
    pts = _points(args.points, p)
    if args.action == "rank":
        return EXIT_OK, f"rank {detcy.rank_profile(pts, p)}\n"
    if args.action == "det":
        d = detcy.det6(pts, p)
        return EXIT_OK, f"det {_field_str(d)}\nv6_member {'yes' if d == 0 else 'no'}\n"
    if p is None:
        raise UsageError(f"detcy {args.action} needs --prime")
    if args.action == "fibre":
        return EXIT_OK, f"fibre {detcy.fibre_cubic(pts, p)}\n"
    if args.q is None:
        raise UsageError("detcy tau needs --q")
    Q = ProjPoint.parse(args.q, p, P2)
    return EXIT_OK, f"tau {detcy.tau_fibre(pts, Q, p).key()}\n"


def cmd_todd(args, cfg):
    lines = []
    if args.m is not None:
        lines.append(f"Todd_{args.m} = {toddlab.todd_polynomial(args.m)}")
    lines.append("m top_chern_coefficient")
    for m in range(1, args.max + 1):
        lines.append(f"{m} {fraction_str(toddlab.top_chern_coefficient(m))}")
    return EXIT_OK, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modcy", description="Exact checks on modular elliptic families.")
    parser.add_argument("--config", help="flat key=value configuration file")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def form_args(sp):
        sp.add_argument("--level", type=int, required=True)
        sp.add_argument("--weight", type=int, required=True)

    sp = sub.add_parser("eta", help="q-expansion of a registry form")
    form_args(sp)
    sp.add_argument("--prec", type=int, default=12)
    sp.set_defaults(func=cmd_eta)

    sp = sub.add_parser("ap", help="n-th coefficient of a registry form")
    form_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_ap)

    sp = sub.add_parser("euler", help="local factor at a prime")
    form_args(sp)
    sp.add_argument("--prime", type=int, required=True)
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("hecke", help="Hecke identities up to a precision")
    form_args(sp)
    sp.add_argument("--prec", type=int, default=1000)
    sp.set_defaults(func=cmd_hecke)

    sp = sub.add_parser("linsys", help="solve a linear system of curves")
    sp.add_argument("--construction")
    sp.add_argument("--condition", action="append", default=[])
    sp.add_argument("--ambient", choices=("P2", "P1xP1"), default="P2")
    sp.add_argument("--prime", type=int)
    sp.set_defaults(func=cmd_linsys)

    for name, func in (("scan", cmd_scan), ("moments", cmd_moments)):
        sp = sub.add_parser(name)
        sp.add_argument("--family", required=True)
        sp.add_argument("--prime", type=int, required=True)
        if name == "moments":
            sp.add_argument("--r", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("fit", help="exact fit of moments against a basis")
    sp.add_argument("--family", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--primes", required=True, help="comma list or lo-hi range of good primes")
    sp.add_argument("--r", type=int)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("validate", help="fit, then check residuals on more primes")
    sp.add_argument("--family", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--fit-primes", required=True)
    sp.add_argument("--primes", required=True)
    sp.add_argument("--r", type=int)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("verify", aliases=["suite"], help="run a named suite (or 'all')")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--suite")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("kummer")
    sp.add_argument("--A", type=int, required=True)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--prime", type=int, required=True)
    sp.set_defaults(func=cmd_kummer)

    sp = sub.add_parser("detcy", help="section matrix rank/det, fibre cubic, involution")
    sp.add_argument("action", choices=("rank", "det", "fibre", "tau"))
    sp.add_argument("--points", required=True, help="space-separated points such as '1:2:3 0:1:5'")
    sp.add_argument("--prime", type=int)
    sp.add_argument("--q")
    sp.set_defaults(func=cmd_detcy)

    sp = sub.add_parser("todd")
    sp.add_argument("--m", type=int)
    sp.add_argument("--max", type=int, default=19)
    sp.set_defaults(func=cmd_todd)
    return parser


def run(argv: list[str], config: Config | None = None) -> tuple[int, str]:
    """Execute a command line; returns (exit code, report text)."""
    parser = build_parser()
    try:
        with redirect_stderr(io.StringIO()):
            args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        cfg = config if config is not None else load_config(args.config)
        return args.func(args, cfg)
    except SystemExit as exc:  # --help
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), parser.format_help()
    except (UsageError, ConfigError, OSError) as exc:
        return EXIT_USAGE, f"usage error: {exc}\n"
    except (DegenerateInput, InconsistentConditions, CacheCorrupt) as exc:
        return EXIT_DEGENERATE, f"degenerate input: {type(exc).__name__}: {exc}\n"
    except (SingularFit, InconsistentFit) as exc:
        return EXIT_FAIL, f"fit failed: {type(exc).__name__}: {exc}\n"
    except KeyError as exc:
        return EXIT_USAGE, f"usage error: {exc.args[0]}\n"
    except ValueError as exc:
        return EXIT_USAGE, f"usage error: {exc}\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
