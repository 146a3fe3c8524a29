import argparse
import os

from fvcore.common.file_io import PathManager

from reservelab.evaluation.substitutes import MAX_N_ENV, default_max_universe
from reservelab.model import parse_category
from reservelab.utils.logger import setup_logger

__all__ = [
    "default_argument_parser",
    "merge_args_into_cfg",
    "default_setup",
]


def _comma_list(text):
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _add_common_arguments(parser):
    parser.add_argument("--config-file", default="", metavar="FILE",
                        help="path to config file")
    parser.add_argument("--instance", default=None, metavar="FILE",
                        help="instance JSON file or builtin name (example1, example2, ...)")
    parser.add_argument("--policy", default=None, choices=["hard", "soft", "elevated", "gap"],
                        help="reserve policy of the target category")
    parser.add_argument("--base", default=None, choices=["hard", "soft", "elevated"],
                        help="base policy of a gap policy")
    parser.add_argument("--k", default=None, help="boost of the elevated policy")
    parser.add_argument("--gap", default=None,
                        help="gap bound D: target seats need open cutoff - D or more")
    parser.add_argument("--soft-scope", default=None, choices=["gc", "all"],
                        help="who receives de-reserved seats")
    parser.add_argument("--category", default=None,
                        help="reserve category receiving the policy (default OBC)")
    parser.add_argument("--precedence", default=None, type=_comma_list,
                        help="comma list of seat categories, e.g. open,sc,st,obc,ews")
    parser.add_argument("--output", default=None, metavar="DIR",
                        help="directory for results, witnesses and log.txt")
    parser.add_argument("--format", default=None, choices=["text", "structured"])
    parser.add_argument("--seed", default=None, type=int)
    parser.add_argument("--workers", default=None, type=int,
                        help="worker processes for audits and searches")


def default_argument_parser():
    """
    Create a parser with the subcommands allocate, audit and search.
    Flags override the config file; ``--opts`` overrides both.

    Returns:
        argparse.ArgumentParser:
    """
    parser = argparse.ArgumentParser(description="Vertical reservation allocation and audits")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("allocate", help="allocate the seats of an instance")
    _add_common_arguments(p)

    p = sub.add_parser("audit", help="check an allocation against the axioms")
    _add_common_arguments(p)
    p.add_argument("--check", default=None, type=_comma_list,
                   help="comma list of gap, fairness, waste, substitutes")
    p.add_argument("--assignment", default=None, metavar="FILE",
                   help="audit this allocate output instead of allocating again")
    p.add_argument("--max-n", dest="audit_max_n", default=None, type=int,
                   help="largest universe of the substitutes check")

    p = sub.add_parser("search", help="search a bounded space for counterexamples")
    _add_common_arguments(p)
    p.add_argument("--property", default=None, choices=["gap", "substitutes"])
    p.add_argument("--max-n", dest="search_max_n", default=None, type=int,
                   help="largest roster in the space")
    p.add_argument("--family", default=None, type=_comma_list,
                   help="comma list of policy kinds to search")
    p.add_argument("--samples", default=None, type=int,
                   help="draw this many seeded instances instead of enumerating")
    p.add_argument("--limit", default=None, type=int, help="stop after this many witnesses")
    p.add_argument("--no-shrink", action="store_true", help="keep witnesses as found")
    p.add_argument("--sweep", action="store_true",
                   help="substitutes: sweep every roster once instead of checking each universe")

    for p in sub.choices.values():
        p.add_argument("--opts", default=None, nargs=argparse.REMAINDER,
                       help="Modify config options using the command-line")
    return parser


def merge_args_into_cfg(cfg, args):
    """
    Copy the flags that were given on the command line into `cfg`.
    `cfg` must not be frozen.
    """
    get = lambda name: getattr(args, name, None)  # noqa: E731

    if get("instance") is not None:
        cfg.INSTANCE = args.instance
    if get("output") is not None:
        cfg.OUTPUT_DIR = args.output
    if get("format") is not None:
        cfg.OUTPUT_FORMAT = args.format
    if get("seed") is not None:
        cfg.SEED = args.seed
    if get("policy") is not None:
        cfg.POLICY.KIND = args.policy
    if get("base") is not None:
        cfg.POLICY.BASE = args.base
    if get("soft_scope") is not None:
        cfg.POLICY.SOFT_SCOPE = args.soft_scope
    if get("category") is not None:
        cfg.POLICY.CATEGORY = parse_category(args.category).value
    if get("precedence") is not None:
        cfg.PRECEDENCE = tuple(parse_category(c).value for c in args.precedence)
    if get("audit_max_n") is None and os.environ.get(MAX_N_ENV, "").strip():
        cfg.AUDIT.MAX_N = default_max_universe()
    if get("workers") is not None:
        cfg.AUDIT.NUM_WORKERS = args.workers
        cfg.SEARCH.NUM_WORKERS = args.workers

    if args.command == "search":
        # k and D are grids when searching
        if get("k") is not None:
            cfg.SEARCH.K_GRID = (args.k,)
        if get("gap") is not None:
            cfg.SEARCH.D_GRID = (args.gap,)
        if get("property") is not None:
            cfg.SEARCH.PROPERTY = args.property
        if get("search_max_n") is not None:
            cfg.SEARCH.MAX_N = args.search_max_n
        if get("family") is not None:
            cfg.SEARCH.KINDS = args.family
        elif get("policy") is not None:
            cfg.SEARCH.KINDS = (args.policy,)
        if get("soft_scope") is not None:
            cfg.SEARCH.SOFT_SCOPES = (args.soft_scope,)
        if get("samples") is not None:
            cfg.SEARCH.SAMPLES = args.samples
        if get("limit") is not None:
            cfg.SEARCH.LIMIT = args.limit
        if get("no_shrink"):
            cfg.SEARCH.SHRINK = False
        if get("sweep"):
            cfg.SEARCH.SWEEP = True
    else:
        if get("k") is not None:
            cfg.POLICY.K = args.k
        if get("gap") is not None:
            cfg.POLICY.GAP = args.gap

    if args.command == "audit":
        if get("check") is not None:
            cfg.AUDIT.CHECKS = args.check
        if get("assignment") is not None:
            cfg.AUDIT.ASSIGNMENT = args.assignment
        if get("audit_max_n") is not None:
            cfg.AUDIT.MAX_N = args.audit_max_n
    return cfg


def default_setup(cfg, args):
    """
    Perform some basic common setups at the beginning of a job, including:

    1. Set up the reservelab logger
    2. Log the command line arguments and config
    3. Backup the config to the output directory

    Args:
        cfg (CfgNode): the full config to be used
        args (argparse.NameSpace): the command line arguments to be logged
    """
    output_dir = cfg.OUTPUT_DIR
    if output_dir:
        PathManager.mkdirs(output_dir)

    setup_logger(output_dir or None, name="fvcore")
    logger = setup_logger(output_dir or None)

    logger.info("Command line arguments: " + str(args))
    if getattr(args, "config_file", ""):
        logger.info(
            "Contents of args.config_file={}:\n{}".format(
                args.config_file,
                PathManager.open(args.config_file, "r").read(),
            )
        )

    if not cfg.MUTE_HEADER:
        logger.info("Running with full config:\n{}".format(cfg))
    if output_dir:
        # Note: a run can be repeated with --config-file on this config.yaml
        path = os.path.join(output_dir, "config.yaml")
        with PathManager.open(path, "w") as f:
            f.write(cfg.dump())
        logger.info("Full config saved to {}".format(os.path.abspath(path)))
