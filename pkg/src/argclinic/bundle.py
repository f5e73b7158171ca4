"""JSON guideline bundles: schema validation, parsing, canonical output.

A bundle carries recommendations, interactions, and a patient context in one
document.  Parsing validates the document shape against a JSON schema (with
JSON-pointer diagnostics), normalises display terms (whitespace collapsed,
``not`` accepted for ``¬``), and then applies the semantic validators.
Parsed bundles are canonical: recommendations sorted by name, interactions
sorted by endpoints, preference and priority closed.  ``serialize_bundle``
therefore round-trips exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Mapping

import jsonschema

from .errors import DuplicateName, IncompatibleContext, ParseError, SchemaError
from .tmr import (
    Context,
    GoalTerm,
    Interaction,
    Recommendation,
    StateTerm,
    validate_context,
    validate_interaction,
    validate_recommendation,
)

_NAME_PATTERN = r"^[A-Za-z0-9_.-]+$"
_TERM_PATTERN = r"^[A-Za-z0-9_. -]+$"
_GOAL_STRING_PATTERN = r"^(¬|not )?[A-Za-z0-9_. -]+$"

_TERM_RE = re.compile(_TERM_PATTERN)

_TERM = {"type": "string", "pattern": _TERM_PATTERN, "minLength": 1}
_NAME = {"type": "string", "pattern": _NAME_PATTERN, "minLength": 1}

_GOAL_OBJECT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["effect", "property"],
    "properties": {
        "effect": _TERM,
        "property": _TERM,
        "negated": {"type": "boolean"},
    },
}

_GOAL_REF = {
    "oneOf": [
        {"type": "string", "pattern": _GOAL_STRING_PATTERN, "minLength": 1},
        _GOAL_OBJECT,
    ]
}

BUNDLE_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["recommendations"],
    "properties": {
        "metadata": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "name": {"type": "string"},
                "version": {"type": "string"},
            },
        },
        "recommendations": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "action", "deontic_strength", "tracks"],
                "properties": {
                    "name": _NAME,
                    "action": _TERM,
                    "deontic_strength": {
                        "oneOf": [{"type": "string"}, {"type": "number"}]
                    },
                    "tracks": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": [
                                "property",
                                "effect",
                                "initial_value",
                                "contribution",
                            ],
                            "properties": {
                                "property": _TERM,
                                "effect": _TERM,
                                "initial_value": {
                                    "oneOf": [_TERM, {"type": "null"}]
                                },
                                "contribution": {"enum": ["+", "-", "0"]},
                            },
                        },
                    },
                },
            },
        },
        "interactions": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["first", "second", "modal"],
                "properties": {
                    "first": _NAME,
                    "second": _NAME,
                    "modal": {"enum": ["certain", "uncertain"]},
                },
            },
        },
        "context": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "patient_state": {
                    "type": "array",
                    "items": {
                        "oneOf": [
                            _TERM,
                            {
                                "type": "object",
                                "additionalProperties": False,
                                "required": ["property"],
                                "properties": {
                                    "property": _TERM,
                                    "value": _TERM,
                                },
                            },
                        ]
                    },
                },
                "goals": {"type": "array", "items": _GOAL_REF},
                "action_preference": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": _TERM,
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
                "goal_priority": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": _GOAL_REF,
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(BUNDLE_SCHEMA)


@dataclass(frozen=True)
class GuidelineBundle:
    recommendations: tuple[Recommendation, ...]
    interactions: tuple[Interaction, ...]
    context: Context
    metadata: Mapping[str, str] = field(default_factory=dict)


def _normalize(term: str) -> str:
    return " ".join(term.split())


def _parse_goal_ref(raw: Any, pointer: str) -> GoalTerm:
    if isinstance(raw, Mapping):
        return GoalTerm(
            effect=_normalize(raw["effect"]),
            property=_normalize(raw["property"]),
            negated=bool(raw.get("negated", False)),
        )
    text = raw
    negated = False
    if text.startswith("¬"):
        negated = True
        text = text[1:]
    elif text.startswith("not "):
        negated = True
        text = text[4:]
    words = _normalize(text).split(" ")
    if len(words) < 2:
        raise SchemaError(
            f"goal {raw!r} needs an effect and a property "
            "(e.g. 'Decrease Blood Pressure')",
            pointer,
        )
    return GoalTerm(effect=words[0], property=" ".join(words[1:]), negated=negated)


def _parse_state_term(raw: Any) -> StateTerm:
    if isinstance(raw, Mapping):
        value = raw.get("value")
        return StateTerm(
            property=_normalize(raw["property"]),
            value=_normalize(value) if value is not None else None,
        )
    return StateTerm(property=_normalize(raw))


def parse_bundle(source: str | bytes | Mapping) -> GuidelineBundle:
    """Read and validate a guideline bundle from JSON text or a mapping."""
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    else:
        data = source

    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(data))
    if error is not None:
        pointer = "/" + "/".join(str(p) for p in error.absolute_path)
        raise SchemaError(error.message, pointer) from None

    recommendations = []
    seen_names = set()
    for index, item in enumerate(data["recommendations"]):
        name = item["name"]
        if name in seen_names:
            raise DuplicateName(
                f"recommendation name {name!r} appears twice",
                f"/recommendations/{index}/name",
            )
        seen_names.add(name)
        recommendations.append(
            validate_recommendation(
                {
                    "name": name,
                    "action": _normalize(item["action"]),
                    "deontic_strength": item["deontic_strength"],
                    "tracks": [
                        {
                            "property": _normalize(t["property"]),
                            "effect": _normalize(t["effect"]),
                            "initial_value": (
                                _normalize(t["initial_value"])
                                if t["initial_value"] is not None
                                else None
                            ),
                            "contribution": t["contribution"],
                        }
                        for t in item["tracks"]
                    ],
                }
            )
        )
    recommendations.sort(key=lambda r: r.name)

    interactions = [
        validate_interaction(item["first"], item["second"], item["modal"], seen_names)
        for item in data.get("interactions", ())
    ]
    interactions.sort(key=lambda i: (i.first, i.second, i.modal.value))

    raw_context = data.get("context", {})
    patient_state = [
        _parse_state_term(term) for term in raw_context.get("patient_state", ())
    ]
    goals = [
        _parse_goal_ref(term, f"/context/goals/{i}")
        for i, term in enumerate(raw_context.get("goals", ()))
    ]
    action_preference = [
        (_normalize(low), _normalize(high))
        for low, high in raw_context.get("action_preference", ())
    ]
    goal_priority = [
        (
            _parse_goal_ref(low, f"/context/goal_priority/{i}/0"),
            _parse_goal_ref(high, f"/context/goal_priority/{i}/1"),
        )
        for i, (low, high) in enumerate(raw_context.get("goal_priority", ()))
    ]
    try:
        context = validate_context(
            recommendations,
            patient_state=patient_state,
            goals=goals,
            action_preference=action_preference,
            goal_priority=goal_priority,
        )
    except IncompatibleContext as exc:
        # Same error, located: bundle callers get a JSON pointer to chase.
        raise type(exc)(f"{exc} (at /context)") from None

    metadata = dict(data.get("metadata", {}))
    return GuidelineBundle(
        recommendations=tuple(recommendations),
        interactions=tuple(interactions),
        context=context,
        metadata=metadata,
    )


def _strength_json(rec: Recommendation):
    landmark = rec.strength.landmark
    if landmark is not None:
        return landmark
    return float(rec.strength.value)


def _goal_json(term: GoalTerm) -> dict:
    payload: dict[str, Any] = {"effect": term.effect, "property": term.property}
    if term.negated:
        payload["negated"] = True
    return payload


def serialize_bundle(bundle: GuidelineBundle) -> str:
    """Canonical JSON for a bundle; parse_bundle inverts it exactly."""
    payload: dict[str, Any] = {}
    if bundle.metadata:
        payload["metadata"] = dict(bundle.metadata)
    payload["recommendations"] = [
        {
            "name": rec.name,
            "action": rec.action,
            "deontic_strength": _strength_json(rec),
            "tracks": [
                {
                    "property": t.property,
                    "effect": t.effect,
                    "initial_value": t.initial_value,
                    "contribution": t.contribution,
                }
                for t in rec.tracks
            ],
        }
        for rec in bundle.recommendations
    ]
    if bundle.interactions:
        payload["interactions"] = [
            {"first": i.first, "second": i.second, "modal": i.modal.value}
            for i in bundle.interactions
        ]
    context = bundle.context
    context_payload: dict[str, Any] = {}
    if context.patient_state:
        context_payload["patient_state"] = [
            {"property": term.property, "value": term.value}
            if term.value is not None
            else {"property": term.property}
            for term in sorted(context.patient_state)
        ]
    if context.goals:
        context_payload["goals"] = [
            _goal_json(term) for term in sorted(context.goals)
        ]
    preference = sorted(
        (low, high) for low, high in context.action_preference if low != high
    )
    if preference:
        context_payload["action_preference"] = [list(p) for p in preference]
    priority = sorted(
        ((low, high) for low, high in context.goal_priority if low != high),
    )
    if priority:
        context_payload["goal_priority"] = [
            [_goal_json(low), _goal_json(high)] for low, high in priority
        ]
    if context_payload:
        payload["context"] = context_payload
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
