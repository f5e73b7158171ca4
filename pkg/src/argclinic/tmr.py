"""Clinical guideline recommendations, interactions, and patient contexts.

A recommendation couples an action with a deontic strength in [-1, 1]
(positive recommends doing the action, negative recommends avoiding it) and
with causation tracks describing which property each action affects, how,
from which initial value, and whether that effect is welcome.  Interactions
mark pairs of recommendations that cannot be followed together, either
certainly or only possibly.  A context carries the patient's state, the care
goals, and the stated preferences and priorities.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, TypeVar

from .errors import (
    AmbiguousActionPreference,
    DsOutOfRange,
    EmptyTracks,
    IncompatibleGoal,
    IncompatibleState,
    InvalidInteraction,
    PreferenceOverUnknownRec,
    PriorityNotTotal,
    UnknownLandmark,
    ValidationError,
)

LANDMARK_VALUES: Mapping[str, Fraction] = {
    "must": Fraction(1),
    "should": Fraction(1, 2),
    "may": Fraction(0),
    "should_not": Fraction(-1, 2),
    "must_not": Fraction(-1),
}

_VALUE_LANDMARKS = {v: k for k, v in LANDMARK_VALUES.items()}

MAX_DENOMINATOR = 1000

CONTRIBUTIONS = ("+", "-", "0")


@dataclass(frozen=True, order=True)
class DeonticStrength:
    """How strongly an action is (dis)recommended, as an exact rational."""

    value: Fraction

    def __post_init__(self):
        if not Fraction(-1) <= self.value <= Fraction(1):
            raise DsOutOfRange(f"deontic strength {self.value} outside [-1, 1]")

    @classmethod
    def from_landmark(cls, name: str) -> "DeonticStrength":
        key = name.strip().lower().replace(" ", "_")
        if key not in LANDMARK_VALUES:
            known = ", ".join(sorted(LANDMARK_VALUES))
            raise UnknownLandmark(f"unknown landmark {name!r} (expected one of {known})")
        return cls(LANDMARK_VALUES[key])

    @classmethod
    def from_number(cls, value: float | int | Fraction) -> "DeonticStrength":
        exact = Fraction(value).limit_denominator(MAX_DENOMINATOR)
        return cls(exact)

    @classmethod
    def parse(cls, raw) -> "DeonticStrength":
        if isinstance(raw, DeonticStrength):
            return raw
        if isinstance(raw, str):
            return cls.from_landmark(raw)
        if isinstance(raw, (int, float, Fraction)) and not isinstance(raw, bool):
            return cls.from_number(raw)
        raise UnknownLandmark(f"cannot read a deontic strength from {raw!r}")

    @property
    def landmark(self) -> str | None:
        return _VALUE_LANDMARKS.get(self.value)

    @property
    def positive(self) -> bool:
        """True when the action is recommended (zero counts as positive)."""
        return self.value >= 0


@dataclass(frozen=True, order=True)
class Track:
    """One causation track: the action's effect on one property."""

    property: str
    effect: str
    initial_value: str | None
    contribution: str

    def __post_init__(self):
        if self.contribution not in CONTRIBUTIONS:
            raise ValidationError(
                f"contribution must be one of {CONTRIBUTIONS}, got {self.contribution!r}"
            )


@dataclass(frozen=True)
class Recommendation:
    name: str
    action: str
    strength: DeonticStrength
    tracks: tuple[Track, ...]


def validate_recommendation(raw: Mapping) -> Recommendation:
    """Build a recommendation from a mapping with the bundle field names."""
    name = raw["name"]
    action = raw["action"]
    strength = DeonticStrength.parse(raw["deontic_strength"])
    tracks = tuple(
        Track(
            property=t["property"],
            effect=t["effect"],
            initial_value=t.get("initial_value"),
            contribution=t["contribution"],
        )
        for t in raw.get("tracks", ())
    )
    if not tracks:
        raise EmptyTracks(f"recommendation {name!r} has no causation tracks")
    return Recommendation(name=name, action=action, strength=strength, tracks=tracks)


class Modal(enum.Enum):
    CERTAIN = "certain"
    UNCERTAIN = "uncertain"


@dataclass(frozen=True)
class Interaction:
    """Two recommendations that cannot (certainly or possibly) be followed together."""

    first: str
    second: str
    modal: Modal


def validate_interaction(
    first: str, second: str, modal: Modal | str, known_names: Iterable[str]
) -> Interaction:
    names = set(known_names)
    if first == second:
        raise InvalidInteraction(f"recommendation {first!r} cannot interact with itself")
    for endpoint in (first, second):
        if endpoint not in names:
            raise InvalidInteraction(
                f"interaction endpoint {endpoint!r} names no known recommendation"
            )
    if isinstance(modal, str):
        try:
            modal = Modal(modal)
        except ValueError:
            raise InvalidInteraction(
                f"interaction modality must be 'certain' or 'uncertain', got {modal!r}"
            ) from None
    return Interaction(first=first, second=second, modal=modal)


def contradiction_free(names: Iterable[str], interactions: Iterable[Interaction]) -> bool:
    """True iff no interaction has both endpoints inside ``names``."""
    chosen = set(names)
    return not any(
        i.first in chosen and i.second in chosen for i in interactions
    )


@dataclass(frozen=True, order=True)
class StateTerm:
    """A patient-state observation: a property, optionally with its value."""

    property: str
    value: str | None = None

    def display(self) -> str:
        if self.value is None:
            return self.property
        return f"{self.value} {self.property}"


@dataclass(frozen=True, order=True)
class GoalTerm:
    """A care goal: bring about (or prevent) an effect on a property."""

    effect: str
    property: str
    negated: bool = False

    def display(self) -> str:
        base = f"{self.effect} {self.property}"
        return f"¬{base}" if self.negated else base


@dataclass(frozen=True)
class Context:
    """A validated patient context.

    ``action_preference`` holds the reflexive-transitive closure of the
    stated preference, as pairs of recommendation names (low, high).
    ``goal_priority`` holds the closed total priority over the goal terms.
    """

    patient_state: frozenset[StateTerm] = frozenset()
    goals: frozenset[GoalTerm] = frozenset()
    action_preference: frozenset[tuple[str, str]] = frozenset()
    goal_priority: frozenset[tuple[GoalTerm, GoalTerm]] = frozenset()


_T = TypeVar("_T")


def _close_pairs(
    pairs: set[tuple[_T, _T]], carrier: Sequence[_T]
) -> frozenset[tuple[_T, _T]]:
    closed = set(pairs)
    closed.update((x, x) for x in carrier)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c, d in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    return frozenset(closed)


def _resolve_preference_name(
    name: str, recommendations: Sequence[Recommendation]
) -> tuple[str, ...]:
    by_name = {r.name for r in recommendations}
    if name in by_name:
        return (name,)
    carriers = [r for r in recommendations if r.action == name]
    if not carriers:
        raise PreferenceOverUnknownRec(
            f"preference mentions {name!r}, which is neither a recommendation "
            "name nor a recommended action"
        )
    signs = {r.strength.positive for r in carriers}
    if len(signs) > 1:
        raise AmbiguousActionPreference(
            f"action {name!r} is recommended both positively and negatively; "
            "name the recommendation instead"
        )
    return tuple(r.name for r in carriers)


def validate_context(
    recommendations: Sequence[Recommendation],
    patient_state: Iterable[StateTerm] = (),
    goals: Iterable[GoalTerm] = (),
    action_preference: Iterable[tuple[str, str]] = (),
    goal_priority: Iterable[tuple[GoalTerm, GoalTerm]] = (),
) -> Context:
    """Check a context against the recommendations it will be applied to.

    State terms must match a track (by property, and by initial value when
    one is given); goal terms must match a track's (effect, property) pair;
    preferences may name recommendations or their actions; the goal priority
    must close into a total preorder over the declared goals.
    """
    track_properties = set()
    track_values = set()
    track_effects = set()
    for rec in recommendations:
        for t in rec.tracks:
            track_properties.add(t.property)
            track_effects.add((t.effect, t.property))
            if t.initial_value is not None:
                track_values.add((t.initial_value, t.property))

    states = frozenset(patient_state)
    for term in sorted(states):
        if term.value is None:
            if term.property not in track_properties:
                raise IncompatibleState(
                    f"no recommendation tracks the property {term.property!r}"
                )
        elif (term.value, term.property) not in track_values:
            raise IncompatibleState(
                f"no recommendation tracks {term.property!r} "
                f"with initial value {term.value!r}"
            )

    goal_terms = frozenset(goals)
    for term in sorted(goal_terms):
        if (term.effect, term.property) not in track_effects:
            raise IncompatibleGoal(
                f"no recommendation tracks the effect {term.effect!r} "
                f"on {term.property!r}"
            )

    preference_pairs: set[tuple[str, str]] = set()
    for low, high in action_preference:
        for low_name in _resolve_preference_name(low, recommendations):
            for high_name in _resolve_preference_name(high, recommendations):
                preference_pairs.add((low_name, high_name))
    rec_names = sorted({r.name for r in recommendations})
    closed_preference = _close_pairs(preference_pairs, rec_names)

    priority_pairs: set[tuple[GoalTerm, GoalTerm]] = set()
    for low, high in goal_priority:
        for term in (low, high):
            if term not in goal_terms:
                raise IncompatibleGoal(
                    f"goal priority mentions {term.display()!r}, "
                    "which is not a declared goal"
                )
        priority_pairs.add((low, high))
    ordered_goals = sorted(goal_terms)
    closed_priority = _close_pairs(priority_pairs, ordered_goals)
    for a in ordered_goals:
        for b in ordered_goals:
            if (a, b) not in closed_priority and (b, a) not in closed_priority:
                raise PriorityNotTotal(
                    f"goals {a.display()!r} and {b.display()!r} are incomparable"
                )

    return Context(
        patient_state=states,
        goals=goal_terms,
        action_preference=closed_preference,
        goal_priority=closed_priority,
    )
