#!/usr/bin/env python3
"""
Command-line toolkit for perfect matching width of bipartite graphs.

Porosity and tight cuts, width-2 recognition for braces with certificate
decompositions, M-perfect matching width 2, and cyclewidth 2 with directed
tree decompositions for digraphs.

Exit codes: 0 success/true, 1 false/refutation, 2 input error, 3 cap exceeded.
"""

import argparse
import logging
import random
import sys
from typing import List, Optional

from core.config import get_config, set_config
from core.errors import EXIT_INPUT, PMWidthError, describe, error_classifier
from core.logging_config import get_logger, setup_logging
from tools.commands import COMMANDS

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    config = get_config()
    parser = argparse.ArgumentParser(description="Perfect matching width toolkit")
    parser.add_argument("--cap", type=int, default=None, help="Override every oracle cap")
    parser.add_argument("--seed", type=int, default=None, help="Seed for the order in which tight cuts are tried")
    parser.add_argument("--format", dest="output_format", choices=("text", "dot", "structured"), default="text",
                        help="Output format")
    parser.add_argument("--log-level", default=config.log_level, help="Logging level (e.g. DEBUG, INFO)")
    parser.add_argument("--log-dir", default=config.log_dir, help="Directory for rotating log files")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("porosity", help="Matching porosity of a cut")
    p.add_argument("graph")
    p.add_argument("--shore", required=True, help="Comma-separated vertices, e.g. a1,b2,a3")

    for name, text in (("is-brace", "Is the graph a brace"), ("is-covered", "Is the graph matching covered")):
        p = sub.add_parser(name, help=text)
        p.add_argument("graph")

    p = sub.add_parser("extendable", help="k-extendability")
    p.add_argument("graph")
    p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("tightcuts", help="Tight cut decomposition")
    p.add_argument("graph")

    p = sub.add_parser("pmw2", help="Width-2 recognition with certificate")
    p.add_argument("graph")
    p.add_argument("--dot", default=None, help="Also write the decomposition as DOT to this file")

    p = sub.add_parser("mew", help="Matching elimination width (exhaustive, capped)")
    p.add_argument("graph")
    p.add_argument("--colour", choices=("a", "b"), default="a")

    p = sub.add_parser("brute-pmw", help="Perfect matching width (exhaustive, capped)")
    p.add_argument("graph")

    p = sub.add_parser("ladder", help="Emit the bipartite ladder L_n")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("mpmw2", help="M-perfect matching width 2 with decomposition")
    p.add_argument("graph")
    p.add_argument("--matching", default=None)

    p = sub.add_parser("mdirect", help="M-direction of a graph")
    p.add_argument("graph")
    p.add_argument("--matching", default=None)

    p = sub.add_parser("split", help="Split graph of a digraph")
    p.add_argument("digraph")

    p = sub.add_parser("cyclewidth2", help="Cyclewidth 2 decision")
    p.add_argument("digraph")
    p.add_argument("--via", choices=("bipartite", "minors", "both"), default="bipartite")

    p = sub.add_parser("dtd2", help="Directed tree decomposition of width at most 2")
    p.add_argument("digraph")

    p = sub.add_parser("bicontract", help="Bicontract a degree-2 vertex")
    p.add_argument("graph")
    p.add_argument("--vertex", required=True)

    p = sub.add_parser("brute-cw", help="Cyclewidth (exhaustive, capped)")
    p.add_argument("digraph")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(log_level=args.log_level, log_dir=args.log_dir)
    previous = None
    if args.cap is not None:
        previous = set_config(get_config().with_cap(args.cap))
    args.rng = random.Random(args.seed) if args.seed is not None else None

    try:
        result = COMMANDS[args.command](args)
        sys.stdout.write(result.render(args.output_format))
        return result.exit_code
    except PMWidthError as e:
        code = error_classifier.exit_code_for(e)
        logger.log(logging.INFO if code == 1 else logging.WARNING, f"{args.command}: {describe(e)}")
        sys.stderr.write(describe(e) + "\n")
        return code
    except Exception as e:
        logger.error(f"{args.command} failed unexpectedly: {e}", exc_info=True)
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INPUT
    finally:
        if previous is not None:
            set_config(previous)


if __name__ == "__main__":
    sys.exit(main())
