import argparse
import logging
import os
import sys
from typing import Callable, Sequence

import colorama  # type: ignore
from colorama import Fore, Style

from cylab.arrangement import ModuliPointP1, ModuliPointPn, from_moduli, is_general_position
from cylab.errors import CylabError, InputError, InvariantBreach
from cylab.higgs import (
    COARSE_MODULI_NOTE,
    ETA_ASSUMPTION,
    build_eigen_higgs,
    check_maximality,
    hodge_from_higgs,
    yukawa_length,
)
from cylab.hodge import (
    check_n,
    eigenspace_dims,
    galois_orbit,
    hodge_middle,
    kunneth_middle_dim,
    unit_group_order,
    w_unif_exists,
    w_unif_routes,
)
from cylab.kummer import gale_dual, group_data, is_smooth_Y, singular_coordinate_pairs
from cylab.moduli_iso import gamma_moduli, normalization_trace
from cylab.report import DEFAULT_SEED, cmd_report
from cylab.resolution import (
    DEFAULT_RULES,
    MUTANTS,
    h11_report,
    init_cyclic_cover,
    run_resolution,
    step_limit_from_env,
    strata_dot,
)
from cylab.selftest import CheckResult, run_checks
from cylab.storage.jsonfile import open_store
from cylab.utils import dump_json, parse_rational_list

EXIT_OK = 0
EXIT_BREACH = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"

logger = logging.getLogger(__name__)


class UsageError(ValueError): ...


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def emit(payload: dict) -> None:
    print(dump_json(payload))


def resolve_step_limit(args: argparse.Namespace) -> int:
    if getattr(args, "step_limit", None) is not None:
        if args.step_limit <= 0:
            raise UsageError("--step-limit must be positive")
        return args.step_limit

    return step_limit_from_env()


def cmd_report_view(args: argparse.Namespace) -> int:
    report = cmd_report(args.n, args.seed, args.resolve_n5, resolve_step_limit(args))
    emit(report.to_dict())

    if args.out:
        with open_store(args.out) as store:
            store.write(report.to_dict())

    return EXIT_OK


def cmd_resolve(args: argparse.Namespace) -> int:
    n = args.n
    if (args.m is None) != (args.r is None):
        raise UsageError("--m and --r must be given together")

    if args.m is None:
        r = check_n(n)
        m = n + 3
    else:
        m, r = args.m, args.r

    state = init_cyclic_cover(n, m, r)

    on_step: Callable | None = None
    if args.dot_dir:
        os.makedirs(args.dot_dir, exist_ok=True)

        def on_step(current, record):
            path = os.path.join(args.dot_dir, f"step_{record.step:04d}.dot")
            with open(path, "w", encoding="UTF-8") as file:
                file.write(strata_dot(current))

        with open(os.path.join(args.dot_dir, "step_0000.dot"), "w", encoding="UTF-8") as file:
            file.write(strata_dot(state))

    log = run_resolution(
        state, step_limit=resolve_step_limit(args), check_oracle=args.oracle, on_step=on_step
    )
    payload = log.to_dict(trace=args.trace)
    h21 = hodge_middle(n).values[1] if (n, m, r) == (3, 6, 3) else None
    payload["h11_model"] = h11_report(log, h21, full_census=args.trace)
    emit(payload)
    return EXIT_OK


def cmd_gamma(args: argparse.Namespace) -> int:
    t = parse_rational_list(args.t)
    if len(t) != args.n:
        raise UsageError(f"--t needs {args.n} coordinates, got {len(t)}")

    point = ModuliPointP1(t)
    trace = normalization_trace(point)
    formula = gamma_moduli(point)
    if formula != trace.point:
        raise InvariantBreach(f"closed formula {formula.s} differs from normalization {trace.s}")

    emit({"n": args.n, "t": list(point.t), "s": list(formula.s), "normalization": trace.to_dict()})
    return EXIT_OK


def cmd_hodge(args: argparse.Namespace) -> int:
    r = check_n(args.n)
    emit(
        {
            "n": args.n,
            "r": r,
            "hodge_row": list(hodge_middle(args.n).values),
            "eigen_table": eigenspace_dims(r).to_dict(),
            "unit_group_order": unit_group_order(r),
            "orbit_of_1": sorted(galois_orbit(r, 1)),
            "w_unif": w_unif_exists(args.n),
            "w_unif_routes": w_unif_routes(args.n),
            "kunneth_middle_dim": kunneth_middle_dim(args.n),
        }
    )
    return EXIT_OK


def cmd_higgs(args: argparse.Namespace) -> int:
    higgs = build_eigen_higgs(args.n)
    emit(
        {
            "n": args.n,
            "dim_base": higgs.dim_base,
            "summands": [summand.to_dict() for summand in higgs.summands],
            "hodge_row": list(hodge_from_higgs(higgs).values),
            "yukawa_length": yukawa_length(higgs),
            "maximal": check_maximality(higgs),
            "assumptions": [ETA_ASSUMPTION, COARSE_MODULI_NOTE],
        }
    )
    return EXIT_OK


def cmd_kummer(args: argparse.Namespace) -> int:
    if args.arrangement:
        with open_store(args.arrangement) as store:
            arrangement = store.read_arrangement()
    elif args.s:
        arrangement = from_moduli(ModuliPointPn(parse_rational_list(args.s)))
    else:
        raise UsageError("kummer needs --s or --arrangement")

    if args.n is not None and args.n != arrangement.n:
        raise UsageError(f"--n {args.n} does not match the arrangement (n={arrangement.n})")

    data = gale_dual(arrangement, r=args.r)
    emit(
        {
            "arrangement": arrangement.to_dict(),
            **data.to_dict(),
            "smooth": is_smooth_Y(data),
            "general_position": is_general_position(arrangement),
            "singular_pairs": [list(pair) for pair in singular_coordinate_pairs(data)],
            "groups": group_data(data.r, data.m).to_dict(),
        }
    )
    return EXIT_OK


def print_table(results: list[CheckResult]) -> None:
    for result in results:
        if result.passed is None:
            mark = Fore.YELLOW + "SKIP"
        elif result.passed:
            mark = Fore.GREEN + "PASS"
        else:
            mark = Fore.RED + "FAIL"
        print(f"{mark}{Style.RESET_ALL}  {result.name:<40} {result.seconds:7.2f}s  {result.detail}")


def cmd_selftest(args: argparse.Namespace) -> int:
    rules = MUTANTS[args.inject_fault] if args.inject_fault else DEFAULT_RULES
    results = run_checks(seed=args.seed, quick=args.quick, rules=rules)

    if args.json:
        emit({"seed": args.seed, "quick": args.quick, "results": [result.to_dict() for result in results]})
    else:
        print_table(results)

    return EXIT_OK if all(result.passed is not False for result in results) else EXIT_BREACH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylab", description="Exact toolkit for cyclic-cover Calabi-Yau families"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    report = commands.add_parser("report", help="full pipeline for one n")
    report.add_argument("--n", type=int, required=True)
    report.add_argument("--seed", type=int, default=DEFAULT_SEED)
    report.add_argument("--resolve-n5", action="store_true", help="also resolve n=5")
    report.add_argument("--step-limit", type=int)
    report.add_argument("--out", type=str, help="also write the report to this JSON file")
    report.set_defaults(handler=cmd_report_view)

    resolve = commands.add_parser("resolve", help="run the crepant resolution")
    resolve.add_argument("--n", type=int, required=True)
    resolve.add_argument("--m", type=int)
    resolve.add_argument("--r", type=int)
    resolve.add_argument("--trace", action="store_true")
    resolve.add_argument("--step-limit", type=int)
    resolve.add_argument("--oracle", action="store_true", help="check the chart oracle every step")
    resolve.add_argument("--dot-dir", type=str)
    resolve.set_defaults(handler=cmd_resolve)

    gamma = commands.add_parser("gamma", help="moduli isomorphism at a point")
    gamma.add_argument("--n", type=int, required=True)
    gamma.add_argument("--t", type=str, required=True)
    gamma.set_defaults(handler=cmd_gamma)

    hodge = commands.add_parser("hodge", help="Hodge and eigenspace numbers")
    hodge.add_argument("--n", type=int, required=True)
    hodge.set_defaults(handler=cmd_hodge)

    higgs = commands.add_parser("higgs", help="Higgs skeleton and Yukawa length")
    higgs.add_argument("--n", type=int, required=True)
    higgs.set_defaults(handler=cmd_higgs)

    kummer = commands.add_parser("kummer", help="Gale dual and Kummer cover")
    kummer.add_argument("--n", type=int)
    kummer.add_argument("--s", type=str)
    kummer.add_argument("--r", type=int)
    kummer.add_argument("--arrangement", type=str)
    kummer.set_defaults(handler=cmd_kummer)

    selftest = commands.add_parser("selftest", help="desk-scale invariant suite")
    selftest.add_argument("--quick", action="store_true", help="skip the n=5 resolution")
    selftest.add_argument("--seed", type=int, default=DEFAULT_SEED)
    selftest.add_argument("--json", action="store_true")
    selftest.add_argument("--inject-fault", choices=sorted(MUTANTS))
    selftest.set_defaults(handler=cmd_selftest)

    return parser


def fail(code: int, error: BaseException) -> int:
    emit({"error": type(error).__name__, "message": str(error)})
    print(Fore.RED + f"{type(error).__name__}: {error}", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    colorama.init(autoreset=True)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)

    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except (InputError, UsageError, FileNotFoundError) as error:
        return fail(EXIT_USAGE, error)
    except ValueError as error:
        # malformed rationals, JSON or environment values
        return fail(EXIT_USAGE, error)
    except CylabError as error:
        return fail(EXIT_BREACH, error)
