from .allocation import (
    Assignment,
    ChoiceRule,
    StageRecord,
    add_individual,
    allocate,
    choose,
    gap_constrained_choose,
    remove_individual,
)
from .hooks import StageHook, StageLogger
from .defaults import default_argument_parser, default_setup, merge_args_into_cfg

# commands.py imports the evaluation and search packages, which import this
# package; import it as reservelab.engine.commands

__all__ = [k for k in globals().keys() if not k.startswith("_")]
