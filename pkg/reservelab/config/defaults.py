from .config import CfgNode as CN

# Rational parameters (POLICY.K, POLICY.GAP, AUDIT.GAP_BOUND, the search grids)
# are parsed with fractions.Fraction(str(value)); write "9.5" or "19/2" for
# non-integers. Defaults of None let a yaml file set them to any scalar type.

_C = CN()
_C.VERSION = 1

# Path to an instance JSON file, or a builtin name ("example1", "example2",
# "example2_arrival", "empty").
_C.INSTANCE = ""
_C.OUTPUT_DIR = ""
# "text" or "structured"
_C.OUTPUT_FORMAT = "text"
_C.SEED = -1
_C.MUTE_HEADER = True

# ----------- Policy ----------- #
_C.POLICY = CN()
# "hard" | "soft" | "elevated" | "gap"; empty keeps the instance file's policy
_C.POLICY.KIND = ""
# base policy of "gap"; empty infers it from K / SOFT_SCOPE
_C.POLICY.BASE = ""
_C.POLICY.K = None
_C.POLICY.GAP = None
# "gc" (general category only) or "all"
_C.POLICY.SOFT_SCOPE = "gc"
# reserve category that receives the soft / elevated / gap treatment
_C.POLICY.CATEGORY = "OBC"

# Empty keeps the instance file's order, or OPEN, SC, ST, OBC, EWS.
_C.PRECEDENCE = ()

# ------------ Audit ------------ #
_C.AUDIT = CN()
_C.AUDIT.CHECKS = ("gap", "fairness", "waste")
# gap bound used when the policy itself carries none; None means 10 marks
_C.AUDIT.GAP_BOUND = None
# largest universe for the exhaustive substitutes check. None means
# $RESERVE_LAB_MAX_N, else 12; the variable also overrides a value set in a
# config file (an explicit --max-n does not yield to it).
_C.AUDIT.MAX_N = None
_C.AUDIT.NUM_WORKERS = 1
# allocate structured output to audit instead of allocating again
_C.AUDIT.ASSIGNMENT = ""

# ------------ Search ------------ #
_C.SEARCH = CN()
# "gap" | "substitutes"
_C.SEARCH.PROPERTY = "gap"
_C.SEARCH.MAX_N = 4
# universes smaller than this are skipped (substitutes: subsets of larger ones are checked anyway)
_C.SEARCH.MIN_N = 1
_C.SEARCH.SCORES = (85, 90, 95, 100)
_C.SEARCH.DISTINCT_SCORES = True
_C.SEARCH.CATEGORIES = ("g", "SC", "OBC")
_C.SEARCH.MIN_CAPACITY = 0
_C.SEARCH.MAX_CAPACITY = 3
_C.SEARCH.MAX_QUOTA = 1
# policy family
_C.SEARCH.KINDS = ("elevated",)
_C.SEARCH.K_GRID = (10,)
_C.SEARCH.D_GRID = (10,)
_C.SEARCH.SOFT_SCOPES = ("gc",)
# 0 enumerates the space exhaustively, > 0 draws that many seeded samples
_C.SEARCH.SAMPLES = 0
_C.SEARCH.SHRINK = True
# substitutes: sweep every roster once per (rule, quotas) instead of checking each universe
_C.SEARCH.SWEEP = False
_C.SEARCH.NUM_WORKERS = 1
# stop after this many witnesses; 0 = no limit
_C.SEARCH.LIMIT = 0
# instance files or builtin names searched before the enumerated space
_C.SEARCH.INCLUDE = ()

# ------------- Test ------------- #
_C.TEST = CN()
# [[task, metric, expected], ...], e.g. [["cutoffs", "OPEN", 100], ["seats", "i5", "OBC"]]
_C.TEST.EXPECTED_RESULTS = []
