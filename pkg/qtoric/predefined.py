from enum import IntEnum


class ExitCode(IntEnum):
    OK = 0
    FAILURE = 1
    PARSE_ERROR = 2
    VALIDATION_FAILED = 3
    NOT_IN_CLASS = 4
    NOT_EFFECTIVE = 5


# fan file keys
KEY_DIM = 'dim'
KEY_RAYS = 'rays'
KEY_MAX_CONES = 'max_cones'

# decompose_effective: exhaustive search is only attempted below this many nodes
EFFECTIVE_SEARCH_LIMIT = 200000

# curves: a constructive tree walk longer than this many walls is abandoned
TREE_WALK_FACTOR = 4

# census
CENSUS_DIM = 2
CENSUS_DEFAULT_MAX_RAYS = 6
CENSUS_BOX = (-1, 0, 1)

# divisor symbol of the expression language
DIVISOR_PREFIX = 'D'
