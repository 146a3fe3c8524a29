import sys

from reservelab.config import get_cfg
from reservelab.engine import default_argument_parser, default_setup, merge_args_into_cfg
from reservelab.engine.commands import COMMANDS, EXIT_INVALID, EXIT_IO


def setup(args):
    cfg = get_cfg()
    if args.config_file:
        cfg.merge_from_file(args.config_file)
    merge_args_into_cfg(cfg, args)
    if args.opts:
        cfg.merge_from_list(args.opts)
    cfg.freeze()
    default_setup(cfg, args)
    return cfg


def main(args):
    try:
        cfg = setup(args)
    except OSError as e:
        print("I/O error: {}".format(e), file=sys.stderr)
        return EXIT_IO
    except (AssertionError, KeyError, ValueError) as e:
        print("invalid configuration: {}".format(e), file=sys.stderr)
        return EXIT_INVALID
    return COMMANDS[args.command](cfg)


if __name__ == "__main__":
    args = default_argument_parser().parse_args()
    sys.exit(main(args))
