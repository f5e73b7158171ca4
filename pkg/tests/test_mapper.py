"""Translation of recommendations plus context into goal frameworks."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argclinic import (
    Context,
    DeonticStrength,
    GoalTerm,
    Interaction,
    Modal,
    Recommendation,
    Sentence,
    StateTerm,
    SymbolCollision,
    Track,
    attacks,
    build_patient_framework,
    preferred_extensions,
    resolve,
    symbolize,
)
from argclinic.generators import random_tmr_instance

seeds = st.integers(min_value=0, max_value=10**6)


def rec(name, action, ds, tracks):
    return Recommendation(
        name=name,
        action=action,
        strength=DeonticStrength.parse(ds),
        tracks=tuple(Track(*t) for t in tracks),
    )


def rules_as_tuples(framework):
    return sorted(
        (r.head.symbol, tuple(sorted(s.symbol for s in r.body)))
        for r in framework.base.rules
    )


def test_symbolize_collapses_whitespace():
    assert symbolize("High  Intensity Exercise") == "High_Intensity_Exercise"
    assert symbolize(" Adm. NSAID ") == "Adm._NSAID"


# ---------------------------------------------------------------------------
# the drug clash case, rule by rule


def test_drug_clash_maps_to_eight_rules(aspirin_pref_bundle):
    b = aspirin_pref_bundle
    framework, report = build_patient_framework(
        b.recommendations, b.interactions, b.context
    )
    assert rules_as_tuples(framework) == [
        ("Adm._NSAID", ("r1",)),
        ("Decrease_Blood_Coagulation", ("Adm._NSAID",)),
        ("Gastrointestinal_Bleeding", ()),
        ("contrary_of_r1", ("Gastrointestinal_Bleeding", "int_r1_r2", "r2")),
        ("contrary_of_r2", ("int_r1_r2", "r1")),
        ("int_r1_r2", ()),
        ("¬Adm._Aspirin", ("r2",)),
        ("¬Increase_Gastrointestinal_Bleeding", ("¬Adm._Aspirin",)),
    ]
    assert report.assumptions == ("r1", "r2")
    base = framework.base
    assert {a.symbol: base.contrary(a).symbol for a in base.assumptions} == {
        "r1": "contrary_of_r1",
        "r2": "contrary_of_r2",
    }
    # the patient chose aspirin avoidance over the NSAID course
    assert base.preference.strictly_less(Sentence("r2"), Sentence("r1"))
    expected = {name: 1 for name in report.rule_counts}
    expected["contradiction_rules_symmetric"] = 0
    assert dict(report.rule_counts) == expected
    assert report.warnings == ()
    assert report.symmetric_interactions == ()


def test_certain_interactions_become_facts(aspirin_pref_bundle):
    b = aspirin_pref_bundle
    framework, _ = build_patient_framework(
        b.recommendations, b.interactions, b.context
    )
    token = Sentence("int_r1_r2")
    assert token not in framework.base.assumptions
    fact_bodies = [r for r in framework.base.rules if r.head == token]
    assert len(fact_bodies) == 1 and fact_bodies[0].body == frozenset()


# ---------------------------------------------------------------------------
# the exercise case, family by family


def test_exercise_case_rule_family_sizes(patient_a_bundle):
    b = patient_a_bundle
    _, report = build_patient_framework(
        b.recommendations, b.interactions, b.context
    )
    assert dict(report.rule_counts) == {
        "action_rules_positive": 2,
        "action_rules_negative": 2,
        "effect_rules_positive": 7,
        "effect_rules_negative": 2,
        "state_facts": 2,
        "interaction_facts": 3,
        "contradiction_rules_positive": 3,
        "contradiction_rules_negative": 3,
        "contradiction_rules_symmetric": 0,
    }
    assert report.assumptions == ("r2", "r3", "r4", "r8")
    assert report.warnings == ()


def test_every_track_of_a_positive_rec_gets_an_effect_rule(patient_a_bundle):
    b = patient_a_bundle
    framework, _ = build_patient_framework(
        b.recommendations, b.interactions, b.context
    )
    heads = {r.head.symbol for r in framework.base.rules}
    # r2 alone tracks four properties, including the unwelcome ones
    for effect in (
        "Decrease_Pain",
        "Decrease_Fatigue",
        "Decrease_Fitness",
        "Increase_Lymphedema",
    ):
        assert effect in heads


# ---------------------------------------------------------------------------
# small synthetic cases


PAIR = [
    rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
    rec("r2", "rest", "must_not", [("Pain", "Increase", "High", "-")]),
]


def ctx(**kwargs):
    return Context(**kwargs)


def test_uncertain_interaction_tokens_are_assumptions():
    interactions = [Interaction("r1", "r2", Modal.UNCERTAIN)]
    context = ctx(patient_state=frozenset({StateTerm("Pain", "High")}))
    framework, report = build_patient_framework(PAIR, interactions, context)
    token = Sentence("int_r1_r2")
    assert token in framework.base.assumptions
    assert report.assumptions == ("r1", "r2", "int_r1_r2")
    # tokens sit after the recommendation names but are ordinary assumptions
    assert framework.base.contrary(token).symbol == "contrary_of_int_r1_r2"


def test_interaction_tokens_are_never_attacked():
    interactions = [Interaction("r1", "r2", Modal.UNCERTAIN)]
    context = ctx(patient_state=frozenset({StateTerm("Pain", "High")}))
    framework, _ = build_patient_framework(PAIR, interactions, context)
    token = Sentence("int_r1_r2")
    everyone = framework.base.assumptions
    assert not attacks(framework.base, everyone, {token})
    # consequently the token joins at least one preferred extension
    assert any(
        token in ext for ext in preferred_extensions(framework.base)
    )


def test_negative_condition_rules_need_a_minus_track():
    harmless = [
        rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "rest", "must_not", [("Pain", "Increase", None, "0")]),
    ]
    interactions = [Interaction("r1", "r2", Modal.CERTAIN)]
    framework, report = build_patient_framework(harmless, interactions, ctx())
    assert report.rule_counts["contradiction_rules_positive"] == 1
    assert report.rule_counts["contradiction_rules_negative"] == 0
    # with no counter-argument, the positive side wins outright
    assert preferred_extensions(framework.base) == (
        frozenset({Sentence("r1")}),
    )


def test_condition_rules_use_bare_properties_when_value_is_unknown():
    pair = [
        rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "rest", "must_not", [("Pain", "Increase", None, "-")]),
    ]
    interactions = [Interaction("r1", "r2", Modal.CERTAIN)]
    framework, _ = build_patient_framework(pair, interactions, ctx())
    body_sets = [
        sorted(s.symbol for s in r.body)
        for r in framework.base.rules
        if r.head.symbol == "contrary_of_r1"
    ]
    assert body_sets == [["Pain", "int_r1_r2", "r2"]]


def test_same_sign_interactions_argue_both_ways():
    allies = [
        rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "swim", "must", [("Pain", "Decrease", None, "+")]),
    ]
    interactions = [Interaction("r1", "r2", Modal.CERTAIN)]
    framework, report = build_patient_framework(allies, interactions, ctx())
    assert report.symmetric_interactions == (("r1", "r2"),)
    assert report.rule_counts["contradiction_rules_symmetric"] == 2
    assert report.rule_counts["contradiction_rules_positive"] == 0
    assert report.rule_counts["contradiction_rules_negative"] == 0
    exts = preferred_extensions(framework.base)
    assert sorted(sorted(s.symbol for s in e) for e in exts) == [["r1"], ["r2"]]


def test_underivable_goals_are_dropped_with_a_warning():
    context = ctx(
        goals=frozenset(
            {GoalTerm(effect="Increase", property="Pain", negated=True)}
        )
    )
    # r2 is the only rec tracking Increase Pain, and it is positive, so the
    # prevented form has no deriving rule.
    pair = [
        rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "rest", "should", [("Pain", "Increase", None, "-")]),
    ]
    framework, report = build_patient_framework(pair, [], context)
    assert report.dropped_goals == ("¬Increase Pain",)
    assert report.warnings == (
        "goal '¬Increase Pain' cannot be concluded by any rule; dropped",
    )
    assert framework.goals == frozenset()


def test_rec_names_may_not_collide_with_action_symbols():
    clashing = [
        rec("walk", "run", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "walk", "should", [("Pain", "Decrease", None, "+")]),
    ]
    with pytest.raises(SymbolCollision, match="'walk'"):
        build_patient_framework(clashing, [], ctx())


def test_shared_actions_share_one_action_rule_head():
    sharing = [
        rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "walk", "must", [("Stiffness", "Decrease", None, "+")]),
    ]
    framework, report = build_patient_framework(sharing, [], ctx())
    assert report.rule_counts["action_rules_positive"] == 2
    walk_rules = [
        r for r in framework.base.rules if r.head.symbol == "walk"
    ]
    assert len(walk_rules) == 2


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_generated_instances_always_map_to_flat_frameworks(seed):
    rng = random.Random(seed)
    recommendations, interactions, context = random_tmr_instance(rng)
    framework, report = build_patient_framework(
        recommendations, interactions, context
    )
    heads = {r.head for r in framework.base.rules}
    assert not (heads & framework.base.assumptions)
    assert set(report.assumptions) == {
        s.symbol for s in framework.base.assumptions
    }


# ---------------------------------------------------------------------------
# resolve


def test_resolve_plans_follow_the_top_extension(patient_a_bundle):
    b = patient_a_bundle
    solution = resolve(b.recommendations, b.interactions, b.context)
    assert solution.preferred_recommendations == (("r3", "r8"), ("r4", "r8"))
    assert len(solution.goal_extensions) == 2
    assert len(solution.top_goal_extensions) == 1
    assert len(solution.follow) == 1
    plan = solution.follow[0]
    assert plan.source == ("r3", "r8")
    assert [item.display() for item in plan.items] == [
        "r3 (Low Pace Exercise)",
        "r8 (avoid High Intensity Exercise)",
    ]


def test_resolve_with_a_single_recommendation():
    only = [rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")])]
    solution = resolve(only, [], ctx())
    assert solution.preferred_recommendations == (("r1",),)
    assert solution.follow == (
        type(solution.follow[0])(
            source=("r1",), items=solution.follow[0].items
        ),
    )
    assert [i.display() for i in solution.follow[0].items] == ["r1 (walk)"]


def test_no_interactions_means_one_plan_with_every_rec():
    trio = [
        rec("r1", "walk", "should", [("Pain", "Decrease", None, "+")]),
        rec("r2", "swim", "must", [("Stamina", "Increase", None, "+")]),
        rec("r3", "rest", "must_not", [("Pain", "Increase", None, "-")]),
    ]
    solution = resolve(trio, [], ctx())
    assert solution.preferred_recommendations == (("r1", "r2", "r3"),)
    plan = solution.follow[0]
    assert [i.display() for i in plan.items] == [
        "r1 (walk)",
        "r2 (swim)",
        "r3 (avoid rest)",
    ]
