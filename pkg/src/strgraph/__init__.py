"""strgraph: overlap and string graphs from sequential passes over
disk-resident BWT / GSA / LCP record files."""

from .graph import (
    ContainedReadsError,
    OverlapResult,
    PathError,
    arcs_as_triples,
    assemble_path,
    assemble_path_right,
    build_overlap_graph,
    export_graph,
)
from .index import (
    IndexBundle,
    IngestError,
    ReadSet,
    build_index,
    check_substring_free,
    ingest_reads,
    sentinel_rank_table,
)
from .intervals import (
    Interval,
    LabeledInterval,
    backward_extension,
    forward_extension,
    full_interval,
    is_proper_prefix,
    naive_interval,
    sorted_rotations,
)
from .labeling import complete_extensions, extend_encodings, merge_for_pass
from .reduce import containment_reduces, reduce_overlap_graph, reduction_io_bound
from .seedscan import build_basic_arc_intervals, seed_opening_check
from .seqlist import FileStore, IoCounters, MemoryStore, RecordList, merge

__version__ = "0.1.0"
