from .nodes import (
    FAILURE,
    SUCCESS,
    BlackBoard,
    LEAF_REGISTRY,
    Node,
    NodeStatus,
    Slot,
    TickContext,
    register_leaf,
    select_time_phase,
    tick,
)
from .params import (
    CONTINUOUS,
    DISCRETE,
    AdaptiveBehaviorTree,
    DomainError,
    ParameterDescriptor,
    ParameterDomain,
    bind_parameters,
    collect_slots,
)
from .player import BHTPlayer, load_delay_table
from .templates import (
    TemplateError,
    format_params,
    format_template,
    load_abt,
    parse_params,
    parse_template,
)

__all__ = [
    "SUCCESS", "FAILURE", "NodeStatus", "BlackBoard", "Node", "Slot",
    "TickContext", "LEAF_REGISTRY", "register_leaf", "select_time_phase",
    "tick",
    "CONTINUOUS", "DISCRETE", "AdaptiveBehaviorTree", "DomainError",
    "ParameterDescriptor", "ParameterDomain", "bind_parameters",
    "collect_slots",
    "BHTPlayer", "load_delay_table",
    "TemplateError", "parse_template", "format_template", "parse_params",
    "format_params", "load_abt",
]
