# traversal / enumeration defaults
DEFAULT_DEPTH = 4
MAX_CARRIER = 64
MAX_CANDIDATES = 10**6

# window used to spot-check laws on the built-in integer setoid
SAMPLE_WINDOW: tuple[int, int] = (-8, 8)

# environment overrides for the limits above
MAX_CARRIER_ENV = "WSETOID_MAX_CARRIER"
MAX_CANDIDATES_ENV = "WSETOID_MAX_CANDIDATES"

# the single name of a node in an equality witness tree
WITNESS_RELATED = "related"

# identifier of the built-in integer setoid
BUILTIN_INT = "int"

# separator between the two elements of a transport key, e.g. "a->b"
TRANSPORT_SEP = "->"

# json keys
KEY_BASE = "base"
KEY_FIBERS = "fibers"
KEY_TRANSPORTS = "transports"
KEY_ELEMENTS = "elements"
KEY_EQ = "eq"
KEY_NAME = "name"
KEY_CHILDREN = "children"
KEY_INDEX = "index"
KEY_KIND = "kind"
KEY_TARGET = "target"
KEY_TABLE = "table"
KEY_EXPR = "expr"
KEY_ARGS = "args"
KEY_VALUE = "value"
KEY_LABEL = "label"

EQ_DISCRETE = "discrete"
EQ_CODISCRETE = "codiscrete"
