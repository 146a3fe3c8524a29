from .space import SearchSpace, canonical_form
from .finders import find_gap_violations, find_substitutes_violations, sweep_substitutes_violations
from .shrink import rederive, shrink
from .corpus import INDEX_FILE, instance_hash, read_index, summarize_index, write_witnesses

__all__ = [k for k in globals().keys() if not k.startswith("_")]
