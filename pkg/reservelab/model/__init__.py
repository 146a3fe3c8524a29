from .structures import (
    DEFAULT_PRECEDENCE,
    RESERVE_CATEGORIES,
    Category,
    Individual,
    Instance,
    format_score,
    id_key,
    parse_category,
    parse_score,
)
from .validation import members_of, validate_individual, validate_instance

__all__ = [k for k in globals().keys() if not k.startswith("_")]
