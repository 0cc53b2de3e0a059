"""`greedy-check` command: verify the weak greedy rate bound on random dictionaries."""

import argparse
import json
from concurrent.futures import ThreadPoolExecutor

import pandas as pd

from l2boost.cli.dependencies import add_common_arguments, config_from_args
from l2boost.cli.schemas import GreedyCheckConfig
from l2boost.error_handlers import EXIT_OK
from l2boost.exceptions import BoundViolation
from l2boost.repositories import ResultRepository
from l2boost.services.greedy_theory import BoundReport, random_dictionary, verify_bound

COLUMNS = ["instance", "tightest_ratio", "tightest_step", "violations", "b_bound", "final_norm"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("greedy-check", help="Check the greedy remainder bound")
    add_common_arguments(parser, boosting=False)
    parser.add_argument("--instances", type=int, default=None)
    parser.add_argument("--b", type=float, default=None, help="Weakness parameter in (0, 1]")
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--selector", choices=["exact-max", "b-weak-random"], default=None)
    parser.add_argument("--dim", type=int, default=None)
    parser.add_argument("--size", type=int, default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Write greedy_check.csv with one row per instance.

    Exits with the bound-violation code after writing if any instance fails.
    """
    config = config_from_args(GreedyCheckConfig, args)

    def check(instance: int) -> BoundReport:
        seed = config.seed + instance
        d = random_dictionary(config.dim, config.size, seed)
        return verify_bound(d, config.b, config.nu, config.steps, config.selector, seed, raise_on_violation=False)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            reports = list(pool.map(check, range(config.instances)))
    else:
        reports = [check(i) for i in range(config.instances)]

    frame = pd.DataFrame(
        [
            (i, r.tightest_ratio, r.tightest_step, len(r.violations), float(r.trace.bounds[0]), float(r.trace.norms[-1]))
            for i, r in enumerate(reports)
        ],
        columns=COLUMNS,
    )
    ResultRepository(config.output_dir, config.header()).write_frame("greedy_check.csv", frame)

    failed = [i for i, r in enumerate(reports) if r.violations]
    print(json.dumps({
        "instances": config.instances,
        "violating_instances": len(failed),
        "max_ratio": max((r.tightest_ratio for r in reports), default=0.0),
    }))
    if failed:
        raise BoundViolation(
            f"{len(failed)} of {config.instances} instances exceeded the bound",
            details={"instances": failed[:20]},
        )
    return EXIT_OK
