"""Wreath-product strata census and an exhaustive flop explorer for component graphs."""

from .configuration import (
    Configuration,
    Edge,
    EdgeKind,
    FlopMove,
    Label,
    P,
    Q,
    VertexId,
    apply_flop,
    eligible_flops,
    initial_configuration,
    parse_vertex_id,
    validate_move,
)
from .errors import (
    ConfigurationError,
    IllegalMoveError,
    NoPathError,
    NotFoundError,
    ParameterError,
    SizeError,
    UnsupportedStateError,
    WreathflopError,
)
from .explorer import (
    IDENTITY,
    ISOMORPHISM,
    Arc,
    DeadArc,
    FlopGraph,
    canonical_key,
    explore,
    export,
    shortest_flop_path,
)
from .wreath import (
    CensusReport,
    GroupParams,
    WreathElement,
    census,
    compose,
    elements,
    fixed_codim,
    identity,
    inverse,
    random_element,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "CensusReport",
    "Configuration",
    "ConfigurationError",
    "DeadArc",
    "Edge",
    "EdgeKind",
    "FlopGraph",
    "FlopMove",
    "GroupParams",
    "IDENTITY",
    "ISOMORPHISM",
    "IllegalMoveError",
    "Label",
    "NoPathError",
    "NotFoundError",
    "P",
    "ParameterError",
    "Q",
    "SizeError",
    "UnsupportedStateError",
    "VertexId",
    "WreathElement",
    "WreathflopError",
    "apply_flop",
    "canonical_key",
    "census",
    "compose",
    "elements",
    "eligible_flops",
    "explore",
    "export",
    "fixed_codim",
    "identity",
    "initial_configuration",
    "inverse",
    "parse_vertex_id",
    "random_element",
    "shortest_flop_path",
    "validate_move",
]
