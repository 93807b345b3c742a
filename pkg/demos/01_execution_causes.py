"""Counterfactual causes on one execution, under four distances.

A branching system: from the root you either take the left exit (label b)
or the right exit (label b, the suspected cause).  The right branch runs
into an effect state; on the left, one sub-branch stays clear and one hits
the effect as well.  The executed run took the right branch.
"""

from causekit.distances import format_distance
from causekit.fixtures import branching_ts
from causekit.model import MaximalFinitePath
from causekit.ts_causality import CauseQuery, check_cause

ts, pi, cause, effect = branching_ts()

print("execution:", " -> ".join(pi), "| trace:", "".join(ts.trace(pi)))
print("cause candidate:", sorted(cause), "| effect states:", sorted(effect))
print()

for metric in ("pref", "pref-ap", "hamm", "ghamm", "lev"):
    query = CauseQuery(
        ts=ts,
        pi=MaximalFinitePath(pi),
        cause=cause,
        effect=effect,
        phi="reach",
        metric=metric,
    )
    verdict = check_cause(query)
    print(f"{metric:8s} cause={str(verdict.is_cause):5s} "
          f"min distance={format_distance(verdict.min_distance)}")
    for w in verdict.witnesses:
        tag = "reaches effect" if w.satisfies_phi else "avoids effect"
        print(f"         closest avoider: {' -> '.join(w.path)} ({tag})")

print()
print("Under the prefix distance the verdict is negative: the closest")
print("avoiders split at the root and one of them still reaches the effect.")
print("Under the Hamming-style distances the left branch reproduces the")
print("trace exactly, so every closest avoider misses the effect.")
