"""Argumentation-based reconciliation of clinical guideline recommendations.

The package turns sets of possibly conflicting recommendations (with
interactions, patient state, goals, preferences, and priorities) into
assumption-based argumentation frameworks with preferences, enumerates their
preferred extensions, and ranks the outcomes by the goals they achieve.
"""

from .aba_core import (
    AbaFramework,
    PreferencePreorder,
    RawFramework,
    Rule,
    Sentence,
    SupportTable,
    attack_kinds,
    attacks,
    canonical_attackers,
    compute_supports,
    conclusions,
    defends,
    extension_sort_key,
    is_conflict_free,
    preferred_extensions,
    validate_framework,
)
from .aba_goals import (
    AbapgFramework,
    GoalExtension,
    PriorityPreorder,
    collect_goal_extensions,
    goal_extension,
    goal_order_leq,
    goal_set_leq,
    maximal_goal_extensions,
    top_goal_extensions,
    validate_abapg,
)
from .aba_text import ParsedProgram, parse_aba_text, serialize_abapg, serialize_framework
from .bundle import BUNDLE_SCHEMA, GuidelineBundle, parse_bundle, serialize_bundle
from .errors import (
    AmbiguousActionPreference,
    ArgClinicError,
    ContraryConflict,
    DanglingPreference,
    DsOutOfRange,
    DuplicateName,
    EmptyTracks,
    FlatnessViolation,
    GoalWithoutRule,
    IncompatibleContext,
    IncompatibleGoal,
    IncompatibleState,
    InvalidInteraction,
    OracleSizeExceeded,
    ParseError,
    PreferenceOverUnknownRec,
    PriorityMentionsNonGoal,
    PriorityNotTotal,
    SchemaError,
    SizeLimitExceeded,
    SymbolCollision,
    UnknownLandmark,
    ValidationError,
)
from .mapper import (
    FollowItem,
    FollowPlan,
    MappingReport,
    Solution,
    build_patient_framework,
    resolve,
    symbolize,
)
from .tmr import (
    Context,
    DeonticStrength,
    GoalTerm,
    Interaction,
    Modal,
    Recommendation,
    StateTerm,
    Track,
    contradiction_free,
    validate_context,
    validate_interaction,
    validate_recommendation,
)

__version__ = "0.1.0"

__all__ = [
    "AbaFramework",
    "AbapgFramework",
    "AmbiguousActionPreference",
    "ArgClinicError",
    "BUNDLE_SCHEMA",
    "Context",
    "ContraryConflict",
    "DanglingPreference",
    "DeonticStrength",
    "DsOutOfRange",
    "DuplicateName",
    "EmptyTracks",
    "FlatnessViolation",
    "GoalWithoutRule",
    "IncompatibleContext",
    "IncompatibleGoal",
    "IncompatibleState",
    "InvalidInteraction",
    "FollowItem",
    "FollowPlan",
    "GoalExtension",
    "GoalTerm",
    "GuidelineBundle",
    "Interaction",
    "MappingReport",
    "Modal",
    "OracleSizeExceeded",
    "ParseError",
    "ParsedProgram",
    "PreferenceOverUnknownRec",
    "PreferencePreorder",
    "PriorityMentionsNonGoal",
    "PriorityNotTotal",
    "PriorityPreorder",
    "RawFramework",
    "Recommendation",
    "Rule",
    "SchemaError",
    "Sentence",
    "SizeLimitExceeded",
    "Solution",
    "StateTerm",
    "SupportTable",
    "SymbolCollision",
    "Track",
    "UnknownLandmark",
    "ValidationError",
    "attack_kinds",
    "attacks",
    "build_patient_framework",
    "canonical_attackers",
    "collect_goal_extensions",
    "compute_supports",
    "conclusions",
    "contradiction_free",
    "defends",
    "extension_sort_key",
    "goal_extension",
    "goal_order_leq",
    "goal_set_leq",
    "is_conflict_free",
    "maximal_goal_extensions",
    "parse_aba_text",
    "parse_bundle",
    "preferred_extensions",
    "resolve",
    "serialize_abapg",
    "serialize_bundle",
    "serialize_framework",
    "symbolize",
    "top_goal_extensions",
    "validate_abapg",
    "validate_context",
    "validate_framework",
    "validate_interaction",
    "validate_recommendation",
]
