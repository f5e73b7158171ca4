"""Translate recommendations plus a patient context into a goal framework.

Recommendation names become assumptions; so does a token for every uncertain
interaction, while certain interactions become facts.  Positively
recommended actions and their tracked effects are derived by rules, and so
are the avoidance sentence and prevented effects of negatively recommended
actions.  Each interaction produces contradiction rules that derive the
contrary of one endpoint from the other: the positively recommended
endpoint argues unconditionally against the negative one, and the negative
endpoint argues back only where one of its unwelcome effects is grounded in
the patient's state.  Patient preferences become the assumption preorder,
care goals and their priority become the goal layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .aba_core import (
    RawFramework,
    Sentence,
    fresh_symbol,
    preferred_extensions,
    validate_framework,
)
from .aba_goals import (
    AbapgFramework,
    GoalExtension,
    collect_goal_extensions,
    maximal_goal_extensions,
    validate_abapg,
)
from .errors import SymbolCollision
from .tmr import Context, GoalTerm, Interaction, Modal, Recommendation, validate_context


def symbolize(text: str) -> str:
    """Collapse a display term into a sentence symbol (spaces become '_')."""
    return "_".join(text.split())


_RULE_FAMILIES = (
    "action_rules_positive",
    "action_rules_negative",
    "effect_rules_positive",
    "effect_rules_negative",
    "state_facts",
    "interaction_facts",
    "contradiction_rules_positive",
    "contradiction_rules_negative",
    "contradiction_rules_symmetric",
)


@dataclass(frozen=True)
class MappingReport:
    """What the translation produced, for explanation and debugging."""

    rule_counts: Mapping[str, int]
    assumptions: tuple[str, ...]
    symbol_table: Mapping[tuple[str, str], str]
    warnings: tuple[str, ...] = ()
    symmetric_interactions: tuple[tuple[str, str], ...] = ()
    dropped_goals: tuple[str, ...] = ()


class _SymbolTable:
    """Interns (kind, display term) pairs, refusing symbol collisions."""

    def __init__(self):
        self.entries: dict[tuple[str, str], str] = {}
        self._owners: dict[str, tuple[str, str]] = {}

    def intern(self, kind: str, display: str, symbol: str) -> str:
        key = (kind, display)
        existing = self.entries.get(key)
        if existing is not None:
            return existing
        owner = self._owners.get(symbol)
        if owner is not None and owner != key:
            raise SymbolCollision(
                f"{kind} {display!r} and {owner[0]} {owner[1]!r} "
                f"both map to the sentence {symbol!r}"
            )
        self.entries[key] = symbol
        self._owners[symbol] = key
        return symbol

    def symbols(self) -> set[str]:
        return set(self._owners)


def _state_symbol(table: _SymbolTable, value: str | None, prop: str) -> str:
    if value is None:
        return table.intern("state", prop, symbolize(prop))
    display = f"{value} {prop}"
    return table.intern("state", display, symbolize(display))


def build_patient_framework(
    recommendations: Sequence[Recommendation],
    interactions: Sequence[Interaction],
    context: Context,
) -> tuple[AbapgFramework, MappingReport]:
    """Map guideline recommendations and a patient context to a framework.

    Context compatibility is re-checked here, so state or goal terms that
    match no causation track are rejected rather than silently producing an
    unreachable sentence.
    """
    context = validate_context(
        recommendations,
        patient_state=context.patient_state,
        goals=context.goals,
        action_preference=context.action_preference,
        goal_priority=context.goal_priority,
    )
    by_name = {r.name: r for r in recommendations}
    table = _SymbolTable()
    families: dict[str, set[tuple[str, tuple[str, ...]]]] = {
        name: set() for name in _RULE_FAMILIES
    }
    warnings: list[str] = []
    symmetric: list[tuple[str, str]] = []

    rec_symbols: dict[str, str] = {}
    for rec in sorted(recommendations, key=lambda r: r.name):
        rec_symbols[rec.name] = table.intern("recommendation", rec.name, rec.name)

    # Action and effect rules, per recommendation sign.
    for rec in sorted(recommendations, key=lambda r: r.name):
        action_symbol = table.intern("action", rec.action, symbolize(rec.action))
        if rec.strength.positive:
            families["action_rules_positive"].add(
                (action_symbol, (rec_symbols[rec.name],))
            )
            for track in rec.tracks:
                effect_display = f"{track.effect} {track.property}"
                effect_symbol = table.intern(
                    "effect", effect_display, symbolize(effect_display)
                )
                families["effect_rules_positive"].add(
                    (effect_symbol, (action_symbol,))
                )
        else:
            avoided = table.intern(
                "avoided_action", rec.action, "¬" + symbolize(rec.action)
            )
            families["action_rules_negative"].add(
                (avoided, (rec_symbols[rec.name],))
            )
            for track in rec.tracks:
                effect_display = f"{track.effect} {track.property}"
                prevented = table.intern(
                    "prevented_effect", effect_display, "¬" + symbolize(effect_display)
                )
                families["effect_rules_negative"].add((prevented, (avoided,)))

    # Patient state facts.
    for term in sorted(context.patient_state):
        families["state_facts"].add(
            (_state_symbol(table, term.value, term.property), ())
        )

    # Interaction tokens and contradiction rules.
    token_assumptions: list[str] = []
    ordered_interactions = sorted(
        interactions, key=lambda i: (i.first, i.second, i.modal.value)
    )
    for inter in ordered_interactions:
        token_display = f"{inter.first} / {inter.second}"
        token = table.intern(
            "interaction", token_display, f"int_{inter.first}_{inter.second}"
        )
        if inter.modal is Modal.CERTAIN:
            families["interaction_facts"].add((token, ()))
        else:
            token_assumptions.append(token)

        first = by_name[inter.first]
        second = by_name[inter.second]
        if first.strength.positive == second.strength.positive:
            # Both endpoints share a sign, so neither side is the "negative"
            # one; argue both ways unconditionally and flag it.
            families["contradiction_rules_symmetric"].add(
                (_contrary_placeholder(second.name), (rec_symbols[first.name], token))
            )
            families["contradiction_rules_symmetric"].add(
                (_contrary_placeholder(first.name), (rec_symbols[second.name], token))
            )
            symmetric.append((inter.first, inter.second))
            continue
        positive, negative = (
            (first, second) if first.strength.positive else (second, first)
        )
        families["contradiction_rules_positive"].add(
            (_contrary_placeholder(negative.name), (rec_symbols[positive.name], token))
        )
        for track in negative.tracks:
            if track.contribution != "-":
                continue
            condition = _state_symbol(table, track.initial_value, track.property)
            families["contradiction_rules_negative"].add(
                (
                    _contrary_placeholder(positive.name),
                    (rec_symbols[negative.name], token, condition),
                )
            )

    assumptions = tuple(sorted(rec_symbols.values())) + tuple(sorted(token_assumptions))

    # Fix contrary symbols: fresh per assumption, then substitute into the
    # placeholder heads used while collecting contradiction rules.
    taken = table.symbols()
    contraries: dict[str, str] = {}
    for asm in sorted(assumptions):
        symbol = fresh_symbol(f"contrary_of_{asm}", taken)
        taken.add(symbol)
        contraries[asm] = table.intern("contrary", asm, symbol)

    rules: list[tuple[str, tuple[str, ...]]] = []
    for family in _RULE_FAMILIES:
        resolved = set()
        for head, body in families[family]:
            resolved.add((_resolve_placeholder(head, contraries), body))
        families[family] = resolved
        rules.extend(sorted(resolved))

    raw = RawFramework.of(
        rules=rules,
        assumptions=assumptions,
        contraries=sorted(contraries.items()),
        preferences=sorted(context.action_preference),
    )
    base = validate_framework(raw)

    # Goals: keep those some rule can conclude; a goal no rule derives can
    # never enter any goal extension, so dropping it is harmless, but warn.
    heads = {rule.head.symbol for rule in base.rules}
    goal_symbols: dict[GoalTerm, str] = {}
    dropped: list[str] = []
    for term in sorted(context.goals):
        effect_display = f"{term.effect} {term.property}"
        if term.negated:
            symbol = table.intern(
                "prevented_effect", effect_display, "¬" + symbolize(effect_display)
            )
        else:
            symbol = table.intern("effect", effect_display, symbolize(effect_display))
        if symbol in heads:
            goal_symbols[term] = symbol
        else:
            dropped.append(term.display())
            warnings.append(
                f"goal {term.display()!r} cannot be concluded by any rule; dropped"
            )
    priority_pairs = [
        (goal_symbols[a], goal_symbols[b])
        for a, b in sorted(context.goal_priority)
        if a in goal_symbols and b in goal_symbols
    ]
    framework = validate_abapg(base, sorted(goal_symbols.values()), priority_pairs)

    report = MappingReport(
        rule_counts={name: len(families[name]) for name in _RULE_FAMILIES},
        assumptions=assumptions,
        symbol_table=dict(sorted(table.entries.items())),
        warnings=tuple(warnings),
        symmetric_interactions=tuple(symmetric),
        dropped_goals=tuple(dropped),
    )
    return framework, report


_PLACEHOLDER_PREFIX = "\x00contrary:"


def _contrary_placeholder(rec_name: str) -> str:
    return _PLACEHOLDER_PREFIX + rec_name


def _resolve_placeholder(head: str, contraries: Mapping[str, str]) -> str:
    if head.startswith(_PLACEHOLDER_PREFIX):
        return contraries[head[len(_PLACEHOLDER_PREFIX):]]
    return head


@dataclass(frozen=True)
class FollowItem:
    """One action to take (or avoid) under a recommended plan."""

    recommendation: str
    action: str
    avoid: bool

    def display(self) -> str:
        if self.avoid:
            return f"{self.recommendation} (avoid {self.action})"
        return f"{self.recommendation} ({self.action})"


@dataclass(frozen=True)
class FollowPlan:
    """The actionable content of one source of a top goal extension."""

    source: tuple[str, ...]
    items: tuple[FollowItem, ...]


@dataclass(frozen=True)
class Solution:
    """Everything ``resolve`` computed for one patient case."""

    framework: AbapgFramework
    report: MappingReport
    preferred: tuple[frozenset[Sentence], ...]
    preferred_recommendations: tuple[tuple[str, ...], ...]
    goal_extensions: tuple[GoalExtension, ...]
    top_goal_extensions: tuple[GoalExtension, ...]
    follow: tuple[FollowPlan, ...]


def resolve(
    recommendations: Sequence[Recommendation],
    interactions: Sequence[Interaction],
    context: Context,
    size_cap: int | None = None,
) -> Solution:
    """Map, enumerate preferred extensions, rank goals, and plan actions."""
    framework, report = build_patient_framework(
        recommendations, interactions, context
    )
    preferred = preferred_extensions(framework.base, size_cap=size_cap)
    rec_names = {r.name for r in recommendations}
    preferred_recs = tuple(
        tuple(sorted(s.symbol for s in ext if s.symbol in rec_names))
        for ext in preferred
    )
    grouped = collect_goal_extensions(framework, preferred)
    top = maximal_goal_extensions(grouped, framework.priority)

    by_name = {r.name: r for r in recommendations}
    plans = []
    for goal_ext in top:
        for source in goal_ext.sources:
            chosen = sorted(s.symbol for s in source if s.symbol in rec_names)
            items = tuple(
                FollowItem(
                    recommendation=name,
                    action=by_name[name].action,
                    avoid=not by_name[name].strength.positive,
                )
                for name in chosen
            )
            plans.append(FollowPlan(source=tuple(chosen), items=items))

    return Solution(
        framework=framework,
        report=report,
        preferred=preferred,
        preferred_recommendations=preferred_recs,
        goal_extensions=grouped,
        top_goal_extensions=top,
        follow=tuple(plans),
    )
