"""Flat assumption-based argumentation with preferences.

A framework holds a set of inference rules over atomic sentences, a set of
assumptions, a total contrary map on the assumptions, and a preorder over
the assumptions expressing preference.  Attacks between assumption sets come
in two flavours: a normal attack derives the contrary of a member of the
target from assumptions none of which are strictly less preferred than that
member, and a reverse attack fires when such a derivation is blocked by the
preference and flips direction instead.

All public operations are pure functions of immutable values.  Support
computation and the per-assumption attack tables are memoised per framework.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ContraryConflict,
    DanglingPreference,
    FlatnessViolation,
    SizeLimitExceeded,
    ValidationError,
)

DEFAULT_SIZE_CAP = 24
SIZE_CAP_ENV = "ARGCLINIC_MAX_ASSUMPTIONS"


@dataclass(frozen=True, order=True)
class Sentence:
    """An atomic sentence, identified by its symbol."""

    symbol: str

    def __post_init__(self):
        if not self.symbol:
            raise ValueError("sentence symbol must be nonempty")

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class Rule:
    """An inference rule: derive ``head`` once every body sentence holds.

    An empty body makes the head a fact.
    """

    head: Sentence
    body: frozenset[Sentence]

    @classmethod
    def of(cls, head: str | Sentence, body: Iterable[str | Sentence] = ()) -> "Rule":
        return cls(_sentence(head), frozenset(_sentence(b) for b in body))

    def sort_key(self) -> tuple:
        return (self.head.symbol, tuple(sorted(s.symbol for s in self.body)))

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head} <-"
        return f"{self.head} <- " + ", ".join(sorted(s.symbol for s in self.body))


def _sentence(value: str | Sentence) -> Sentence:
    return value if isinstance(value, Sentence) else Sentence(value)


def transitive_closure(
    pairs: Iterable[tuple[Sentence, Sentence]],
    carrier: Iterable[Sentence],
) -> frozenset[tuple[Sentence, Sentence]]:
    """Reflexive-transitive closure of ``pairs`` over ``carrier``."""
    items = sorted(set(carrier))
    closed: set[tuple[Sentence, Sentence]] = {(x, x) for x in items}
    closed.update(pairs)
    # Warshall pass; the carriers involved stay small.
    for k in items:
        for i in items:
            if (i, k) not in closed:
                continue
            for j in items:
                if (k, j) in closed:
                    closed.add((i, j))
    return frozenset(closed)


@dataclass(frozen=True)
class PreferencePreorder:
    """A reflexive-transitive relation ``leq`` over a carrier of sentences."""

    carrier: frozenset[Sentence]
    pairs: frozenset[tuple[Sentence, Sentence]]

    @classmethod
    def over(
        cls,
        carrier: Iterable[str | Sentence],
        pairs: Iterable[tuple[str | Sentence, str | Sentence]] = (),
    ) -> "PreferencePreorder":
        members = frozenset(_sentence(c) for c in carrier)
        raw = [(_sentence(a), _sentence(b)) for a, b in pairs]
        for a, b in raw:
            for s in (a, b):
                if s not in members:
                    raise DanglingPreference(
                        f"preference mentions {s.symbol!r}, which is not an assumption"
                    )
        return cls(members, transitive_closure(raw, members))

    def leq(self, a: Sentence, b: Sentence) -> bool:
        return a == b or (a, b) in self.pairs

    def strictly_less(self, a: Sentence, b: Sentence) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    @cached_property
    def strict_pairs(self) -> frozenset[tuple[Sentence, Sentence]]:
        return frozenset(
            (a, b) for a, b in self.pairs if (b, a) not in self.pairs and a != b
        )


@dataclass(frozen=True)
class RawFramework:
    """Unvalidated framework input, as produced by parsers or built by hand."""

    rules: tuple[tuple[str, tuple[str, ...]], ...] = ()
    assumptions: tuple[str, ...] = ()
    contraries: tuple[tuple[str, str], ...] = ()
    preferences: tuple[tuple[str, str], ...] = ()

    @classmethod
    def of(
        cls,
        rules: Iterable[tuple[str, Iterable[str]]] = (),
        assumptions: Iterable[str] = (),
        contraries: Iterable[tuple[str, str]] = (),
        preferences: Iterable[tuple[str, str]] = (),
    ) -> "RawFramework":
        return cls(
            tuple((h, tuple(b)) for h, b in rules),
            tuple(assumptions),
            tuple(contraries),
            tuple(preferences),
        )


@dataclass(frozen=True)
class AbaFramework:
    """A validated flat framework with preferences.

    ``contrary_items`` is kept as a sorted tuple so frameworks hash and
    compare deterministically; use :meth:`contrary` for lookups.
    """

    rules: frozenset[Rule]
    assumptions: frozenset[Sentence]
    contrary_items: tuple[tuple[Sentence, Sentence], ...]
    preference: PreferencePreorder

    @cached_property
    def contrary_map(self) -> Mapping[Sentence, Sentence]:
        return dict(self.contrary_items)

    def contrary(self, assumption: Sentence) -> Sentence:
        return self.contrary_map[assumption]

    @cached_property
    def language(self) -> frozenset[Sentence]:
        sentences: set[Sentence] = set(self.assumptions)
        sentences.update(c for _, c in self.contrary_items)
        for rule in self.rules:
            sentences.add(rule.head)
            sentences.update(rule.body)
        return frozenset(sentences)

    @cached_property
    def assumption_order(self) -> tuple[Sentence, ...]:
        return tuple(sorted(self.assumptions))

    def check_assumption_set(self, A: Iterable[Sentence]) -> frozenset[Sentence]:
        members = frozenset(A)
        stray = members - self.assumptions
        if stray:
            names = ", ".join(sorted(s.symbol for s in stray))
            raise ValueError(f"not assumptions of this framework: {names}")
        return members


def fresh_symbol(base: str, taken: set[str]) -> str:
    symbol = base
    while symbol in taken:
        symbol += "_"
    return symbol


def validate_framework(raw: RawFramework) -> AbaFramework:
    """Check a raw framework and complete it into an :class:`AbaFramework`.

    Flatness is enforced (no assumption heads a rule); missing contraries are
    filled in with fresh ``contrary_of_*`` sentences; the preference pairs are
    closed reflexively and transitively over the assumptions.
    """
    for symbol in raw.assumptions:
        if not symbol:
            raise ValidationError("assumption symbols must be nonempty")
    assumptions = frozenset(Sentence(s) for s in raw.assumptions)
    if not assumptions:
        raise ValidationError("a framework needs at least one assumption")

    rules = frozenset(Rule.of(head, body) for head, body in raw.rules)
    for rule in rules:
        if rule.head in assumptions:
            raise FlatnessViolation(
                f"assumption {rule.head.symbol!r} appears as a rule head"
            )

    contrary: dict[Sentence, Sentence] = {}
    for asm_symbol, contrary_symbol in raw.contraries:
        asm = Sentence(asm_symbol)
        target = Sentence(contrary_symbol)
        if asm not in assumptions:
            raise ContraryConflict(
                f"contrary declared for {asm_symbol!r}, which is not an assumption"
            )
        if target in assumptions:
            raise ContraryConflict(
                f"contrary of {asm_symbol!r} is {contrary_symbol!r}, "
                "which is itself an assumption"
            )
        if asm in contrary and contrary[asm] != target:
            raise ContraryConflict(
                f"conflicting contraries for {asm_symbol!r}: "
                f"{contrary[asm].symbol!r} and {contrary_symbol!r}"
            )
        contrary[asm] = target

    taken = {s.symbol for s in assumptions}
    taken.update(c for _, c in raw.contraries)
    for head, body in raw.rules:
        taken.add(head)
        taken.update(body)
    for asm in sorted(assumptions - contrary.keys()):
        symbol = fresh_symbol(f"contrary_of_{asm.symbol}", taken)
        taken.add(symbol)
        contrary[asm] = Sentence(symbol)

    preference = PreferencePreorder.over(assumptions, raw.preferences)
    return AbaFramework(
        rules=rules,
        assumptions=assumptions,
        contrary_items=tuple(sorted(contrary.items())),
        preference=preference,
    )


@dataclass(frozen=True)
class SupportTable:
    """All argument supports per sentence.

    Supports are stored as bitmasks over ``order`` (the sorted assumptions).
    Every support of every deduction tree is kept, not only the
    inclusion-minimal ones: reverse attacks can hinge on a non-minimal
    support, so dropping them would change the semantics.
    """

    order: tuple[Sentence, ...]
    mask_families: Mapping[Sentence, frozenset[int]]

    @cached_property
    def position(self) -> Mapping[Sentence, int]:
        return {s: i for i, s in enumerate(self.order)}

    def to_mask(self, members: Iterable[Sentence]) -> int:
        mask = 0
        for s in members:
            mask |= 1 << self.position[s]
        return mask

    def from_mask(self, mask: int) -> frozenset[Sentence]:
        return frozenset(
            s for i, s in enumerate(self.order) if mask >> i & 1
        )

    def supports_of(self, sentence: Sentence) -> frozenset[frozenset[Sentence]]:
        masks = self.mask_families.get(sentence, frozenset())
        return frozenset(self.from_mask(m) for m in masks)

    def sentences(self) -> Iterator[Sentence]:
        return iter(self.mask_families)


@lru_cache(maxsize=256)
def compute_supports(framework: AbaFramework) -> SupportTable:
    """Compute every assumption set that supports each derivable sentence.

    Least fixpoint: an assumption supports itself, a fact has the empty
    support, and a rule contributes every pointwise union of supports of its
    body sentences.  Terminates because each family is a set of subsets of a
    finite assumption set.
    """
    order = framework.assumption_order
    position = {s: i for i, s in enumerate(order)}
    families: dict[Sentence, set[int]] = {
        a: {1 << position[a]} for a in order
    }
    rules = sorted(framework.rules, key=Rule.sort_key)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.body:
                pools = []
                missing = False
                for b in sorted(rule.body):
                    family = families.get(b)
                    if not family:
                        missing = True
                        break
                    pools.append(sorted(family))
                if missing:
                    continue
                new_masks = set()
                for combo in product(*pools):
                    mask = 0
                    for m in combo:
                        mask |= m
                    new_masks.add(mask)
            else:
                new_masks = {0}
            target = families.setdefault(rule.head, set())
            if not new_masks <= target:
                target.update(new_masks)
                changed = True
    return SupportTable(
        order=order,
        mask_families={s: frozenset(m) for s, m in families.items()},
    )


def conclusions(framework: AbaFramework, A: Iterable[Sentence]) -> frozenset[Sentence]:
    """Every sentence some subset of ``A`` supports (facts included)."""
    members = framework.check_assumption_set(A)
    table = compute_supports(framework)
    mask = table.to_mask(members)
    return frozenset(
        s
        for s, masks in table.mask_families.items()
        if any(m & ~mask == 0 for m in masks)
    )


@dataclass(frozen=True)
class _AttackTables:
    """Per-assumption support masks, split by the preference condition.

    For assumption ``b`` with index ``i``: ``normal[i]`` holds the supports
    of contrary(b) with no member strictly below b (these yield normal
    attacks on sets containing b), and ``reverse[i]`` holds the supports
    with at least one member strictly below b (these trigger reverse
    attacks against sets that include them).
    """

    table: SupportTable
    normal: tuple[tuple[int, ...], ...]
    reverse: tuple[tuple[int, ...], ...]

    def attacks(self, attacker: int, target: int) -> bool:
        rest = target
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            for s in self.normal[i]:
                if s & ~attacker == 0:
                    return True
            rest ^= low
        rest = attacker
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            for s in self.reverse[i]:
                if s & ~target == 0:
                    return True
            rest ^= low
        return False

    def attack_kinds(self, attacker: int, target: int) -> frozenset[str]:
        kinds = set()
        rest = target
        while rest and "normal" not in kinds:
            low = rest & -rest
            i = low.bit_length() - 1
            if any(s & ~attacker == 0 for s in self.normal[i]):
                kinds.add("normal")
            rest ^= low
        rest = attacker
        while rest and "reverse" not in kinds:
            low = rest & -rest
            i = low.bit_length() - 1
            if any(s & ~target == 0 for s in self.reverse[i]):
                kinds.add("reverse")
            rest ^= low
        return frozenset(kinds)

    def canonical_attacker_masks(self, target: int) -> frozenset[int]:
        found: set[int] = set()
        rest = target
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            found.update(self.normal[i])
            rest ^= low
        for i in range(len(self.reverse)):
            if any(s & ~target == 0 for s in self.reverse[i]):
                found.add(1 << i)
        return frozenset(found)


@lru_cache(maxsize=256)
def _attack_tables(framework: AbaFramework) -> _AttackTables:
    table = compute_supports(framework)
    order = table.order
    prefer = framework.preference
    below = []
    for b in order:
        mask = 0
        for i, a in enumerate(order):
            if prefer.strictly_less(a, b):
                mask |= 1 << i
        below.append(mask)
    normal: list[tuple[int, ...]] = []
    reverse: list[tuple[int, ...]] = []
    for i, b in enumerate(order):
        masks = sorted(table.mask_families.get(framework.contrary(b), ()))
        normal.append(tuple(m for m in masks if m & below[i] == 0))
        reverse.append(tuple(m for m in masks if m & below[i] != 0))
    return _AttackTables(table=table, normal=tuple(normal), reverse=tuple(reverse))


def attacks(
    framework: AbaFramework,
    attacker: Iterable[Sentence],
    target: Iterable[Sentence],
) -> bool:
    """Preference-aware attack between assumption sets.

    True iff some support of the contrary of a target member lies inside the
    attacker with no supporting assumption strictly below that member
    (normal), or some support of the contrary of an attacker member lies
    inside the target with a supporting assumption strictly below that
    member (reverse).
    """
    tables = _attack_tables(framework)
    a = tables.table.to_mask(framework.check_assumption_set(attacker))
    t = tables.table.to_mask(framework.check_assumption_set(target))
    return tables.attacks(a, t)


def attack_kinds(
    framework: AbaFramework,
    attacker: Iterable[Sentence],
    target: Iterable[Sentence],
) -> frozenset[str]:
    """Subset of {"normal", "reverse"} describing how ``attacker`` attacks."""
    tables = _attack_tables(framework)
    a = tables.table.to_mask(framework.check_assumption_set(attacker))
    t = tables.table.to_mask(framework.check_assumption_set(target))
    return tables.attack_kinds(a, t)


def extension_sort_key(extension: Iterable[Sentence]) -> tuple[str, ...]:
    return tuple(sorted(s.symbol for s in extension))


def canonical_attackers(
    framework: AbaFramework, target: Iterable[Sentence]
) -> tuple[frozenset[Sentence], ...]:
    """A small complete family of attackers of ``target``.

    Every attacker of the target contains one of these as a subset, and each
    of these does attack the target.  Normal attacks are covered by the
    pref-compatible supports of members' contraries, reverse attacks by the
    singleton whose contrary the target supports with a strictly smaller
    member.  Defence checks only need to counter these.
    """
    tables = _attack_tables(framework)
    t = tables.table.to_mask(framework.check_assumption_set(target))
    masks = tables.canonical_attacker_masks(t)
    sets = [tables.table.from_mask(m) for m in masks]
    return tuple(sorted(sets, key=extension_sort_key))


def is_conflict_free(framework: AbaFramework, A: Iterable[Sentence]) -> bool:
    """True iff ``A`` does not attack itself."""
    tables = _attack_tables(framework)
    m = tables.table.to_mask(framework.check_assumption_set(A))
    return not tables.attacks(m, m)


def defends(
    framework: AbaFramework,
    defender: Iterable[Sentence],
    target: Iterable[Sentence],
) -> bool:
    """True iff ``defender`` attacks every set attacking ``target``.

    Quantifying over all attackers reduces to attacking every canonical
    attacker: attacks are monotone in the attacking set, and each attacker
    contains a canonical one.
    """
    tables = _attack_tables(framework)
    d = tables.table.to_mask(framework.check_assumption_set(defender))
    t = tables.table.to_mask(framework.check_assumption_set(target))
    return all(
        tables.attacks(d, c) for c in tables.canonical_attacker_masks(t)
    )


def _effective_cap(size_cap: int | None) -> int:
    if size_cap is not None:
        return size_cap
    env = os.environ.get(SIZE_CAP_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_SIZE_CAP


def preferred_extensions(
    framework: AbaFramework, size_cap: int | None = None
) -> tuple[frozenset[Sentence], ...]:
    """All maximal admissible assumption sets, deterministically ordered.

    Enumerates candidate sets by decreasing cardinality, skipping subsets of
    extensions already found and supersets of known conflicting pairs.  The
    empty set is admissible, so the result is never empty.  Raises
    :class:`SizeLimitExceeded` when the assumption count exceeds the cap
    (``size_cap`` argument, else the ARGCLINIC_MAX_ASSUMPTIONS environment
    variable, else 24).
    """
    cap = _effective_cap(size_cap)
    n = len(framework.assumptions)
    if n > cap:
        raise SizeLimitExceeded(
            f"{n} assumptions exceed the enumeration cap of {cap}"
        )
    tables = _attack_tables(framework)

    usable = [
        i for i in range(n) if not tables.attacks(1 << i, 1 << i)
    ]
    conflict_pairs = []
    for i, j in combinations(usable, 2):
        pair = (1 << i) | (1 << j)
        if tables.attacks(pair, pair):
            conflict_pairs.append(pair)

    found: list[int] = []
    for k in range(len(usable), -1, -1):
        for combo in combinations(usable, k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if any(pair & mask == pair for pair in conflict_pairs):
                continue
            if any(mask | ext == ext for ext in found):
                continue
            if tables.attacks(mask, mask):
                continue
            attackers = tables.canonical_attacker_masks(mask)
            if all(tables.attacks(mask, c) for c in attackers):
                found.append(mask)
        if found and k == len(usable):
            # the full candidate set is admissible; no other set is maximal
            break

    extensions = [tables.table.from_mask(m) for m in found]
    return tuple(sorted(extensions, key=extension_sort_key))
