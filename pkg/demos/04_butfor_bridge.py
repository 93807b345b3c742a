"""But-for causes in a Boolean structural equation model, and how they map
onto Hamming counterfactual causes on the model's unrolled valuation tree.

Model: X1 = true, X2 = X1, X3 = X1 and X2.  Effect: the all-true outcome.
"""

from itertools import product

from causekit.sem_bridge import (
    StructuralEquationModel,
    bridge_check,
    but_for_causes,
    butfor_to_cause_set,
    evaluate_default,
    unroll_to_ts,
)

sem = StructuralEquationModel(
    variables=("X1", "X2", "X3"),
    tables=(
        (True,),
        (False, True),              # X2 = X1
        (False, False, False, True),  # X3 = X1 and X2
    ),
)
effect = frozenset({(True, True, True)})

print("default valuation:", evaluate_default(sem))
print("unrolled tree size:", len(unroll_to_ts(sem).states), "states")
print()

causes = but_for_causes(sem, effect)
print("but-for causes:", [tuple(x) for x in causes])
for xs in causes:
    verdict = bridge_check(sem, effect, xs)
    print(f"X={xs}: cause states {sorted(butfor_to_cause_set(sem, xs))}"
          f" -> Hamming cause check: {verdict.is_cause}"
          f" (min distance {verdict.min_distance})")

print()
print("Each but-for cause marks the default steps of its variables in the")
print("tree; avoiding those states forces interventions exactly there, and")
print("the closest intervention path leaves the effect, so the Hamming")
print("check confirms every but-for cause.")
print()
print("All outcomes for reference:")
for v in product((False, True), repeat=3):
    print(" ", v, "effect" if v in effect else "")
