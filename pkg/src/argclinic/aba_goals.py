"""Goal-directed layer on top of the core frameworks.

A goal framework adds a finite set of goal sentences, each derivable by at
least one rule, and a total priority preorder over the goals.  Preferred
extensions are ranked by which goals they achieve: one achieved-goal set is
at least as good as another when the other adds nothing, or adds some goal
that outranks everything it gives up in exchange.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .aba_core import (
    AbaFramework,
    Sentence,
    conclusions,
    extension_sort_key,
    preferred_extensions,
    transitive_closure,
)
from .errors import GoalWithoutRule, PriorityMentionsNonGoal, PriorityNotTotal


def _sentence(value: str | Sentence) -> Sentence:
    return value if isinstance(value, Sentence) else Sentence(value)


@dataclass(frozen=True)
class PriorityPreorder:
    """A total reflexive-transitive relation over the goal sentences."""

    carrier: frozenset[Sentence]
    pairs: frozenset[tuple[Sentence, Sentence]]

    @classmethod
    def over(
        cls,
        carrier: Iterable[str | Sentence],
        pairs: Iterable[tuple[str | Sentence, str | Sentence]] = (),
    ) -> "PriorityPreorder":
        members = frozenset(_sentence(c) for c in carrier)
        raw = [(_sentence(a), _sentence(b)) for a, b in pairs]
        for a, b in raw:
            for s in (a, b):
                if s not in members:
                    raise PriorityMentionsNonGoal(
                        f"priority mentions {s.symbol!r}, which is not a declared goal"
                    )
        closed = transitive_closure(raw, members)
        for a in members:
            for b in members:
                if (a, b) not in closed and (b, a) not in closed:
                    raise PriorityNotTotal(
                        f"goals {a.symbol!r} and {b.symbol!r} are incomparable"
                    )
        return cls(members, closed)

    def leq(self, a: Sentence, b: Sentence) -> bool:
        return a == b or (a, b) in self.pairs

    def strictly_less(self, a: Sentence, b: Sentence) -> bool:
        return self.leq(a, b) and not self.leq(b, a)


@dataclass(frozen=True)
class AbapgFramework:
    """A core framework together with goals and their priority."""

    base: AbaFramework
    goals: frozenset[Sentence]
    priority: PriorityPreorder


def validate_abapg(
    base: AbaFramework,
    goals: Iterable[str | Sentence],
    priority_pairs: Iterable[tuple[str | Sentence, str | Sentence]] = (),
) -> AbapgFramework:
    """Attach goals and a priority to a validated framework.

    Every goal must head at least one rule; the priority pairs must close
    into a total preorder over the goals (missing comparisons are reported,
    never invented).
    """
    goal_set = frozenset(_sentence(g) for g in goals)
    heads = {rule.head for rule in base.rules}
    for goal in sorted(goal_set):
        if goal not in heads:
            raise GoalWithoutRule(
                f"goal {goal.symbol!r} has no rule deriving it"
            )
    priority = PriorityPreorder.over(goal_set, priority_pairs)
    return AbapgFramework(base=base, goals=goal_set, priority=priority)


@dataclass(frozen=True)
class GoalExtension:
    """An achieved-goal set with the preferred extensions that realise it."""

    achieved: frozenset[Sentence]
    sources: tuple[frozenset[Sentence], ...]


def goal_extension(
    framework: AbapgFramework, extension: Iterable[Sentence]
) -> GoalExtension:
    """The goals concluded by one (presumed preferred) extension."""
    members = framework.base.check_assumption_set(extension)
    achieved = conclusions(framework.base, members) & framework.goals
    return GoalExtension(achieved=achieved, sources=(members,))


def goal_set_leq(
    first: frozenset[Sentence],
    second: frozenset[Sentence],
    priority: PriorityPreorder,
) -> bool:
    """Achieved-set comparison: ``first`` is at most as good as ``second``.

    Equal sets compare as equivalent.  Otherwise ``second`` must add some
    goal, and one added goal must outrank (under the priority) every goal
    present only in ``first``.
    """
    if first == second:
        return True
    gained = second - first
    if not gained:
        return False
    lost = first - second
    return any(
        all(priority.leq(chi, theta) for chi in lost) for theta in gained
    )


def goal_order_leq(
    first: GoalExtension, second: GoalExtension, priority: PriorityPreorder
) -> bool:
    return goal_set_leq(first.achieved, second.achieved, priority)


def collect_goal_extensions(
    framework: AbapgFramework,
    extensions: Sequence[frozenset[Sentence]],
) -> tuple[GoalExtension, ...]:
    """Group preferred extensions by the goal set they achieve."""
    by_achieved: dict[frozenset[Sentence], list[frozenset[Sentence]]] = {}
    for ext in extensions:
        achieved = conclusions(framework.base, ext) & framework.goals
        by_achieved.setdefault(achieved, []).append(ext)
    grouped = [
        GoalExtension(
            achieved=achieved,
            sources=tuple(sorted(sources, key=extension_sort_key)),
        )
        for achieved, sources in by_achieved.items()
    ]
    return tuple(sorted(grouped, key=lambda g: extension_sort_key(g.achieved)))


def maximal_goal_extensions(
    goal_extensions: Sequence[GoalExtension],
    priority: PriorityPreorder,
) -> tuple[GoalExtension, ...]:
    """The goal extensions no other one strictly dominates.

    Maximality is decided by pairwise checks of the strict part of the
    ordering; the ordering itself need not be transitive on arbitrary
    families, so no sorting shortcut is taken.
    """
    top = [
        g
        for g in goal_extensions
        if not any(
            goal_order_leq(g, other, priority)
            and not goal_order_leq(other, g, priority)
            for other in goal_extensions
        )
    ]
    return tuple(sorted(top, key=lambda g: extension_sort_key(g.achieved)))


def top_goal_extensions(
    framework: AbapgFramework, size_cap: int | None = None
) -> tuple[GoalExtension, ...]:
    """Goal extensions of the preferred extensions, best ones only."""
    extensions = preferred_extensions(framework.base, size_cap=size_cap)
    grouped = collect_goal_extensions(framework, extensions)
    return maximal_goal_extensions(grouped, framework.priority)
