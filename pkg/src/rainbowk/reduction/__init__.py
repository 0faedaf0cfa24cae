from .normalize import NormalizeTrace, normalize_cnf
from .pipeline import CapabilityError, CompileResult, StageReport, compile_formula
from .satgadget import (
    SatTrace,
    extract_assignment,
    lift_assignment,
    precoloring_conflict_graph,
    sat_to_extension_instance,
)
from .stages import (
    DropPrecoloringTrace,
    DropRequests2Trace,
    DropRequestsKTrace,
    LiftColorsTrace,
    drop_precoloring,
    drop_requests_2,
    drop_requests_k,
    lift_colors,
)
from .traces import lift_composed, parse_trace, serialize_trace

__all__ = [
    "CapabilityError",
    "CompileResult",
    "DropPrecoloringTrace",
    "DropRequests2Trace",
    "DropRequestsKTrace",
    "LiftColorsTrace",
    "NormalizeTrace",
    "SatTrace",
    "StageReport",
    "compile_formula",
    "drop_precoloring",
    "drop_requests_2",
    "drop_requests_k",
    "extract_assignment",
    "lift_assignment",
    "lift_colors",
    "lift_composed",
    "normalize_cnf",
    "parse_trace",
    "precoloring_conflict_graph",
    "sat_to_extension_instance",
    "serialize_trace",
]
