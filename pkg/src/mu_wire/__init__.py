"""Self-describing binary trees you can process without deserialising.

The format is a depth-first, left-to-right encoding of algebraic values
with a per-node offset table, so any subtree can be skipped, folded over,
or copied as raw bytes at constant cost per node visited.  A header
carries the datatype's structure for compatibility checking.
"""

from .bench import BenchRow, BenchSpec, gen_full_tree, run_bench, sum_region, write_csv
from .codec import Header, check_compat, decode_desc, decode_header, encode_desc, encode_header
from .cursor import (
    ByteSeen,
    Layer,
    MeaningCursor,
    PairSeen,
    PokeResult,
    ReadStats,
    Region,
    SubtreeSeen,
    TreeCursor,
    UnitSeen,
    attach,
    deserialise,
    fold_region,
    layer,
    out,
    poke,
    read_stats,
    rightmost_via_poke,
    rightmost_via_view,
    view,
)
from .desc import (
    BYTE,
    REC,
    UNIT,
    Byte,
    Ctor,
    Desc,
    Prod,
    Rec,
    Schema,
    Unit,
    format_schema_dsl,
    index_of,
    offset_count,
    parse_schema_dsl,
    shape_of,
    static_size,
    validate_schema,
)
from .errors import (
    BadDescTag,
    BadTag,
    DuplicateName,
    MuWireError,
    OffsetSlotUnfilled,
    ParseError,
    PathOutOfRange,
    SchemaMismatch,
    TooManyConstructors,
    TrailingGarbageInHeader,
    TruncatedBuffer,
    UnknownConstructor,
)
from .value import (
    BINARY_TREE,
    Tree,
    conforms,
    fmap_meaning,
    fold,
    format_tree,
    leaf,
    node,
    parse_tree,
    rightmost_tree,
    sum_tree,
)
from .writer import (
    BuildPlan,
    ByteSink,
    exec_plan,
    map_tree_bytes,
    plan_copy,
    plan_node,
    plan_tree,
    swap_tree,
    write_to_file,
)

__version__ = "0.1.0"
