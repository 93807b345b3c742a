"""Small worked-example models shipped as JSON fixtures.

branching_ts: a system that forks at the root into an exit that leads to the
effect (the bold run takes it) and an exit whose sub-branches reproduce the
same trace or hit the effect by another route.  tree_game: a binary-tree
arena where Reach wins by committing to the outer sub-trees but the given
strategy steers one branch into a trap.  loop_game: a two-choice arena with
a self-loop, used for explanations and minimal repairs.  Non-target sinks
carry self-loops so that plays are total.
"""

import json
from importlib import resources

from .model import model_from_json, path_from_json, strategy_from_json


def fixture_text(name):
    return resources.files("causekit").joinpath("fixtures", name).read_text()


def fixture_json(name):
    return json.loads(fixture_text(name))


def branching_ts():
    """Returns (ts, executed run, cause set, effect set)."""
    ts = model_from_json(fixture_json("branching_ts.json"))
    pi = path_from_json(fixture_json("branching_ts_run.json"))
    return ts, pi, frozenset({"s2"}), frozenset({"s6", "s8"})


def tree_game():
    """Returns (game, sigma) for the binary-tree arena."""
    game = model_from_json(fixture_json("tree_game.json"))
    sigma = strategy_from_json(fixture_json("tree_game_sigma.json"))
    return game, sigma


def loop_game():
    """Returns (game, sigma) for the self-loop arena."""
    game = model_from_json(fixture_json("loop_game.json"))
    sigma = strategy_from_json(fixture_json("loop_game_sigma.json"))
    return game, sigma
