"""Explanations: where a losing strategy must change, and minimal repairs.

The small cyclic game: Reach owns v1 (self-loop or straight to the target)
and v2 (to v1 or to the target).  The losing strategy loops at v1 forever.
"""

from causekit.distances import d_hamm_s, dstar
from causekit.fixtures import loop_game
from causekit.game_causality import (
    extract_explanation,
    is_explanation,
    is_minimal_explanation,
    min_dstar_winning_strategy_acyclic,
    min_winning_distance,
)

game, sigma = loop_game()
print("sigma:", sigma.choice, "(loops at v1, never reaches the target)")
print()

explanation = extract_explanation(game, sigma)
print("extracted explanation:", sorted(explanation.vertex_set),
      "witness:", explanation.witness.choice)

for ex in ({"v1", "v2"}, {"v1"}):
    ok, tau = is_explanation(game, sigma, ex)
    line = f"E={sorted(ex)!s:14s} explanation={ok}"
    if ok:
        line += (f"  witness={tau.choice}"
                 f"  hamm-s={d_hamm_s(game, sigma, tau)}"
                 f"  dstar={dstar(game, tau, sigma)}")
    print(line)

print()
print("minimum winning distance:",
      "hamm-s =", min_winning_distance(game, sigma, "hamm-s"),
      "| dstar =", min_winning_distance(game, sigma, "dstar"))
for ex in ({"v1", "v2"}, {"v1"}):
    for metric in ("hamm-s", "dstar"):
        print(f"E={sorted(ex)!s:14s} {metric}-minimal:",
              is_minimal_explanation(game, sigma, ex, metric))

tau, value = min_dstar_winning_strategy_acyclic(game, sigma)
print()
print("closest winning repair (sigma's restriction is acyclic up to its trap):",
      tau.choice, "at dstar distance", value)
print()
print("Changing both vertices wins but overshoots: flipping v1 alone")
print("already wins, so only E={v1} is a minimal explanation.")
