import random
from itertools import product

import pytest

from causekit.errors import PreconditionViolated
from causekit.generators import GeneratorSpec, all_boolean_sems, generate
from causekit.model import maximal_paths
from causekit.sem_bridge import (
    LABEL_INTERVENTION,
    LABEL_PLAIN,
    StructuralEquationModel,
    bridge_check,
    but_for_causes,
    butfor_to_cause_set,
    default_path_states,
    effect_from_json,
    evaluate_default,
    intervened_valuation,
    is_but_for_cause,
    sem_from_json,
    sem_to_json,
    unroll_to_ts,
)
from causekit.ts_causality import validate_layered


def chain_sem():
    # X1 = true, X2 = X1
    return StructuralEquationModel(("X1", "X2"), ((True,), (False, True)))


def test_evaluate_default():
    assert evaluate_default(chain_sem()) == (True, True)
    neg = StructuralEquationModel(("X1", "X2"), ((True,), (True, False)))
    assert evaluate_default(neg) == (True, False)
    allfalse = StructuralEquationModel(("X1", "X2"), ((False,), (False, False)))
    assert evaluate_default(allfalse) == (False, False)


def test_unroll_structure():
    one = StructuralEquationModel(("X1",), ((True,),))
    ts = unroll_to_ts(one)
    assert len(ts.states) == 3
    assert ts.successors("v") == ("v0", "v1")
    assert ts.label("v1") == LABEL_PLAIN  # default child
    assert ts.label("v0") == LABEL_INTERVENTION

    two = unroll_to_ts(chain_sem())
    assert len(two.states) == 7
    depth = validate_layered(two)
    assert max(depth.values()) == 2
    assert all(len(p) == 3 for p in maximal_paths(two))
    default = default_path_states(chain_sem())
    assert default == ("v", "v1", "v11")
    assert two.trace(default) == (LABEL_PLAIN, LABEL_PLAIN, LABEL_PLAIN)


def test_intervention_branch_unique():
    sem = chain_sem()
    ts = unroll_to_ts(sem)
    for state in ts.states:
        kids = ts.successors(state)
        if kids:
            labels = sorted(ts.label(k) for k in kids)
            assert labels == [LABEL_PLAIN, LABEL_INTERVENTION] or labels == [
                LABEL_INTERVENTION,
                LABEL_PLAIN,
            ]


def test_but_for_examples():
    sem = StructuralEquationModel(("X1",), ((True,),))
    effect = {(True,)}
    assert is_but_for_cause(sem, effect, {"X1"})
    assert not is_but_for_cause(sem, effect, set())
    with pytest.raises(PreconditionViolated):
        is_but_for_cause(sem, {(False,)}, {"X1"})


def test_but_for_minimality():
    sem = chain_sem()
    effect = {(True, True)}
    assert is_but_for_cause(sem, effect, {"X1"})
    assert is_but_for_cause(sem, effect, {"X2"})
    assert not is_but_for_cause(sem, effect, {"X1", "X2"})  # not minimal
    assert but_for_causes(sem, effect) == [("X1",), ("X2",)]


def test_cause_set_reading():
    sem = chain_sem()
    assert butfor_to_cause_set(sem, {"X1"}) == frozenset({"v1"})
    assert butfor_to_cause_set(sem, {"X2"}) == frozenset({"v11", "v00"})


def test_bridge_tiny_overlapping_effect():
    # the default leaf is both in the effect and in the induced cause set
    sem = StructuralEquationModel(("X1",), ((True,),))
    verdict = bridge_check(sem, {(True,)}, {"X1"})
    assert verdict.is_cause
    assert verdict.min_distance == 1
    with pytest.raises(PreconditionViolated):
        bridge_check(sem, {(True,)}, set())


def test_bridge_exhaustive_small():
    for n in (1, 2):
        for sem in all_boolean_sems(n):
            default = evaluate_default(sem)
            others = [
                v for v in product((False, True), repeat=n) if v != default
            ]
            for keep in range(len(others) + 1):
                effect = frozenset([default] + others[:keep])
                for xs in but_for_causes(sem, effect):
                    verdict = bridge_check(sem, effect, xs)
                    assert verdict.is_cause, (sem, sorted(effect), xs)


def test_minimality_by_subset_enumeration_random():
    rng = random.Random(12)
    for seed in range(60):
        sem = generate(GeneratorSpec("boolean-sem", seed=seed, variables=4))
        default = evaluate_default(sem)
        space = list(product((False, True), repeat=sem.n))
        effect = frozenset(
            [default] + [v for v in space if v != default and rng.random() < 0.4]
        )
        for xs in but_for_causes(sem, effect):
            for r in range(1, len(xs)):
                from itertools import combinations

                for sub in combinations(xs, r):
                    assert not is_but_for_cause(sem, effect, sub) or set(
                        sub
                    ) == set(xs)


def test_sem_json_roundtrip_and_effect_forms():
    sem = chain_sem()
    assert sem_from_json(sem_to_json(sem)) == sem
    lastk = effect_from_json(sem, {"last": 1, "values": [[True]]})
    assert lastk == frozenset({(False, True), (True, True)})
    listed = effect_from_json(sem, [[True, True]])
    assert listed == frozenset({(True, True)})
