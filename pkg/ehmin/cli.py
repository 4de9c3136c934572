"""Command-line front end.

    ehmin ehmin STATE [GA flags] [--trace FILE] [--bits]
    ehmin verify STATE [GA flags] [--bits]
    ehmin random (--dims 2,2,2 | --fermion P,N) [--seed S] [--out FILE]
    ehmin fermion {ehmin,slater} FILE [GA flags] [--trace FILE] [--bits]
    ehmin entropy STATE [--bits]

Reports go to stdout as JSON, logs to stderr. Exit codes: 0 success, 2 bad
input file or usage, 3 invalid GA configuration, 4 any other domain error.
"""

import argparse
import logging
import math
import sys
from collections.abc import Sequence
from typing import Optional

from pydantic import BaseModel

from ehmin import config
from ehmin.models.errors import EhminError, InvalidConfig, StateFileError
from ehmin.models.schemas import EhminResult, GAConfig
from ehmin.services import (
    fermion_service,
    ga_service,
    io_service,
    objective_service,
    oracle_service,
    state_service,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_DOMAIN = 4

# report fields holding entropies, rescaled by --bits
ENTROPY_FIELDS = {
    "value",
    "ehmin",
    "oracle_value",
    "gap",
    "entropy",
    "meas_entropy",
    "von_neumann_entropy",
}

GA_FLAGS = [
    ("n_gen", int),
    ("n_population", int),
    ("n_bad", int),
    ("p_mut", float),
    ("m_mut", float),
    ("m_init", float),
    ("n_epochs", int),
    ("epsilon", float),
    ("n_term", int),
    ("n_islands", int),
    ("p_mig", float),
    ("seed", int),
    ("n_workers", int),
    ("n_rounds", int),
    ("shrink", float),
]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text}")


def _add_ga_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("genetic algorithm")
    for name, kind in GA_FLAGS:
        default = GAConfig.model_fields[name].default
        group.add_argument(
            "--" + name.replace("_", "-"),
            type=kind,
            default=None,
            help=f"default {'auto' if default is None else default}",
        )
    group.add_argument(
        "--no-elitism", dest="elitism", action="store_const", const=False
    )
    parser.add_argument("--trace", help="write per-epoch records as JSON lines")


def _add_bits(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--bits", action="store_true", help="report entropies in bits, not nats"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehmin", description="Minimal measurement entropy of pure states"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    ehmin = commands.add_parser("ehmin", help="E_Hmin of a qudit state file")
    ehmin.add_argument("state")
    _add_ga_flags(ehmin)
    _add_bits(ehmin)

    verify = commands.add_parser("verify", help="compare E_Hmin with a closed form")
    verify.add_argument("state")
    _add_ga_flags(verify)
    _add_bits(verify)

    random = commands.add_parser("random", help="write a seeded random state")
    kind = random.add_mutually_exclusive_group(required=True)
    kind.add_argument("--dims", type=_int_list, help="subsystem dimensions, e.g. 2,2,2")
    kind.add_argument("--fermion", type=_int_list, metavar="P,N")
    random.add_argument("--seed", type=int, default=0)
    random.add_argument("--out", help="output file (stdout if omitted)")

    fermion = commands.add_parser("fermion", help="fermionic states")
    fermion.add_argument("action", choices=["ehmin", "slater"])
    fermion.add_argument("state")
    _add_ga_flags(fermion)
    _add_bits(fermion)

    entropy = commands.add_parser("entropy", help="measurement entropy of a state")
    entropy.add_argument("state")
    _add_bits(entropy)

    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _ga_config(args: argparse.Namespace) -> GAConfig:
    overrides = {name: getattr(args, name) for name, _ in GA_FLAGS}
    return ga_service.build_config(elitism=args.elitism, **overrides)


def _emit(report: BaseModel, bits: bool = False) -> None:
    data = report.model_dump(exclude={"trace"})
    if bits:
        for key in ENTROPY_FIELDS & data.keys():
            if data[key] is not None:
                data[key] = data[key] / math.log(2)
        report = type(report).model_validate({**data, "trace": []})
    print(report.model_dump_json(exclude={"trace"}, indent=2))


def _write_trace(result: EhminResult, path: Optional[str]) -> None:
    if path:
        io_service.write_trace(result.trace, path)


# -------- COMMANDS --------
def cmd_ehmin(args: argparse.Namespace) -> None:
    s = io_service.load_state(args.state)
    result = objective_service.ehmin(s, _ga_config(args))
    _write_trace(result, args.trace)
    _emit(result, args.bits)


def cmd_verify(args: argparse.Namespace) -> None:
    s = io_service.load_state(args.state)
    _emit(oracle_service.verify(s, _ga_config(args)), args.bits)


def cmd_random(args: argparse.Namespace) -> None:
    if args.fermion is not None:
        if len(args.fermion) != 2:
            raise StateFileError("--fermion takes exactly two integers P,N")
        p, n = args.fermion
        f = fermion_service.random_fermion_state(p, n, args.seed)
        if args.out:
            io_service.write_fermion(f, args.out)
        else:
            print(io_service.dump_fermion(f))
        return

    s = state_service.random_state(args.dims, args.seed)
    if args.out:
        io_service.write_state(s, args.out)
    else:
        print(io_service.dump_state(s))


def cmd_fermion(args: argparse.Namespace) -> None:
    f = io_service.load_fermion(args.state)
    if args.action == "slater":
        _emit(fermion_service.slater_report(f), args.bits)
        return
    result = fermion_service.ehmin_fermion(f, _ga_config(args))
    _write_trace(result, args.trace)
    _emit(result, args.bits)


def cmd_entropy(args: argparse.Namespace) -> None:
    s = io_service.load_state(args.state)
    _emit(oracle_service.entropy_report(s), args.bits)


COMMANDS = {
    "ehmin": cmd_ehmin,
    "verify": cmd_verify,
    "random": cmd_random,
    "fermion": cmd_fermion,
    "entropy": cmd_entropy,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        COMMANDS[args.command](args)
    except StateFileError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except InvalidConfig as e:
        logger.error("invalid configuration: %s", e)
        return EXIT_CONFIG
    except EhminError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_DOMAIN
    except OSError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
