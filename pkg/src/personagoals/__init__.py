"""Persona goal-model propagation and implicit-vulnerability analysis."""

from .errors import (
    DanglingReferenceError,
    DuplicateNameError,
    InvalidEnumError,
    ModelError,
    OutOfRangeError,
    ParseError,
    RefinementCycleError,
    UnknownEntityError,
    UnknownReferenceError,
)
from .interchange import (
    export_workbook,
    import_workbook,
    load_model,
    save_model,
)
from .model import (
    ArgumentKind,
    ArgumentationElement,
    ContributionLink,
    ContributionStrength,
    Dependency,
    ElementType,
    Endpoint,
    Finding,
    Model,
    Obstacle,
    Persona,
    PersonaCharacteristic,
    Role,
    SatisfactionLevel,
    SystemGoal,
    Task,
    UserGoal,
    Vulnerability,
    build_model,
    validate_referential_integrity,
)
from .obstruction import (
    ImplicitVulnerabilityFinding,
    VulnerabilityCause,
    find_implicit_vulnerabilities,
    is_goal_obstructed,
    is_obstacle_obstructed,
)
from .propagation import (
    EvaluationResult,
    Strategy,
    calculate_goal_contribution,
    contribution_link_score,
    display_score,
    evaluate_all,
    qualitative_label,
    task_contribution_score,
)
from .render import build_user_goal_graph, color_hex, score_to_color

__version__ = "0.1.0"
