from .builtin import INSTANCE_REGISTRY, builtin_instance
from .instance_io import (
    assignment_from_dict,
    assignment_to_dict,
    dump_assignment,
    dump_instance,
    dump_json,
    dump_witness,
    instance_from_dict,
    instance_to_dict,
    load_assignment,
    load_instance,
    load_witness,
    witness_from_dict,
    witness_to_dict,
)

__all__ = [k for k in globals().keys() if not k.startswith("_")]
