"""Labeled transition systems, reachability games, paths, plays and strategies.

Models are immutable after validation; every query in this module is a pure
function of its inputs and safe to share across threads.
"""

import json
from dataclasses import dataclass, field

from .errors import InvalidModel, NotAPath, NotMaximal, PreconditionViolated, as_budget

REACH = "reach"
SAFE = "safe"
EFFECT = "effect"

PLAYERS = (REACH, SAFE)


def opponent(player):
    return SAFE if player == REACH else REACH


@dataclass(frozen=True)
class TransitionSystem:
    """Finite labeled transition system with a single initial state.

    A state with no outgoing transition is terminal.  Maximal paths are the
    paths that are infinite or end in a terminal state.
    """

    states: tuple
    initial: str
    transitions: frozenset
    labeling: dict
    alphabet: tuple
    _succ: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ = {s: [] for s in self.states}
        for src, dst in sorted(self.transitions):
            succ[src].append(dst)
        object.__setattr__(self, "_succ", {s: tuple(t) for s, t in succ.items()})

    def successors(self, state):
        return self._succ[state]

    def is_terminal(self, state):
        return not self._succ[state]

    def label(self, state):
        return self.labeling[state]

    def trace(self, sequence):
        return tuple(self.labeling[s] for s in sequence)

    @property
    def terminal_states(self):
        return tuple(s for s in self.states if self.is_terminal(s))


@dataclass(frozen=True)
class ReachabilityGame:
    """Two-player reachability game.

    Vertices are partitioned into Reach-owned, Safe-owned and effect (target)
    vertices.  Effect vertices are terminal; every other vertex has at least
    one outgoing edge, so plays are infinite or end in an effect vertex.
    """

    reach_owned: frozenset
    safe_owned: frozenset
    effect: frozenset
    initial: str
    edges: frozenset
    _succ: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ = {v: [] for v in self.vertices}
        for src, dst in sorted(self.edges):
            succ[src].append(dst)
        object.__setattr__(self, "_succ", {v: tuple(t) for v, t in succ.items()})

    @property
    def vertices(self):
        return tuple(sorted(self.reach_owned | self.safe_owned | self.effect))

    def owner(self, vertex):
        if vertex in self.reach_owned:
            return REACH
        if vertex in self.safe_owned:
            return SAFE
        if vertex in self.effect:
            return EFFECT
        raise KeyError(vertex)

    def owned_by(self, player):
        return self.reach_owned if player == REACH else self.safe_owned

    def successors(self, vertex):
        return self._succ[vertex]

    def is_terminal(self, vertex):
        return not self._succ[vertex]

    def adjacency(self):
        return dict(self._succ)


@dataclass(frozen=True)
class MDStrategy:
    """Memoryless deterministic strategy: one fixed edge per owned vertex."""

    player: str
    choice: dict

    def __post_init__(self):
        object.__setattr__(self, "choice", dict(self.choice))

    def __hash__(self):
        return hash((self.player, tuple(sorted(self.choice.items()))))


@dataclass(frozen=True)
class MaximalFinitePath:
    """A finite path from the initial state ending in a terminal state."""

    sequence: tuple

    def __len__(self):
        return len(self.sequence)


@dataclass(frozen=True)
class Play:
    """A play: finite (ending in effect, empty cycle) or a stem+cycle lasso."""

    stem: tuple
    cycle: tuple = ()

    @property
    def is_finite(self):
        return not self.cycle

    def visited(self):
        return tuple(self.stem) + tuple(self.cycle)

    def steps(self):
        """Edges along the stem plus one full cycle unrolling.

        Counting over this finite unrolling is exhaustive for per-vertex
        notions: further unrollings repeat the same (vertex, edge) pairs.
        """
        seq = list(self.stem) + list(self.cycle)
        steps = [(seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
        if self.cycle:
            steps.append((seq[-1], self.cycle[0]))
        return steps


# ---------------------------------------------------------------------------
# validation


def validate_model(model):
    """Check every structural invariant; raise InvalidModel on the first hit."""
    if isinstance(model, TransitionSystem):
        _validate_ts(model)
    elif isinstance(model, ReachabilityGame):
        _validate_game(model)
    else:
        raise InvalidModel(f"not a model: {type(model).__name__}")


def _validate_ts(ts):
    states = set(ts.states)
    if not states:
        raise InvalidModel("transition system has no states")
    if ts.initial not in states:
        raise InvalidModel(f"initial state {ts.initial!r} is not a state")
    for src, dst in sorted(ts.transitions):
        if src not in states or dst not in states:
            raise InvalidModel(f"transition ({src!r}, {dst!r}) leaves the state set")
    alphabet = set(ts.alphabet)
    for s in ts.states:
        if s not in ts.labeling:
            raise InvalidModel(f"state {s!r} has no label")
        if ts.labeling[s] not in alphabet:
            raise InvalidModel(
                f"state {s!r} carries label {ts.labeling[s]!r} outside the alphabet"
            )


def _validate_game(game):
    reach, safe, eff = game.reach_owned, game.safe_owned, game.effect
    if reach & safe or reach & eff or safe & eff:
        overlap = (reach & safe) | (reach & eff) | (safe & eff)
        raise InvalidModel(f"vertex partition overlaps at {sorted(overlap)}")
    vertices = reach | safe | eff
    if not vertices:
        raise InvalidModel("game has no vertices")
    if game.initial not in vertices:
        raise InvalidModel(f"initial vertex {game.initial!r} is not a vertex")
    if game.initial in eff:
        raise InvalidModel("initial vertex lies in the effect set")
    for src, dst in sorted(game.edges):
        if src not in vertices or dst not in vertices:
            raise InvalidModel(f"edge ({src!r}, {dst!r}) leaves the vertex set")
    for v in sorted(eff):
        if game.successors(v):
            raise InvalidModel(f"effect vertex {v!r} has an outgoing edge")
    for v in sorted(reach | safe):
        if not game.successors(v):
            raise InvalidModel(f"non-effect vertex {v!r} is a dead end")


def validate_strategy(game, strategy):
    """Check that a strategy is total on its player's vertices and on-edge."""
    if strategy.player not in PLAYERS:
        raise InvalidModel(f"unknown player {strategy.player!r}")
    owned = game.owned_by(strategy.player)
    for v in sorted(owned):
        if v not in strategy.choice:
            raise InvalidModel(f"strategy undefined at owned vertex {v!r}")
        if strategy.choice[v] not in game.successors(v):
            raise InvalidModel(
                f"strategy choice {strategy.choice[v]!r} is not a successor of {v!r}"
            )
    for v in sorted(strategy.choice):
        if v not in owned:
            raise InvalidModel(f"strategy defined at non-owned vertex {v!r}")


# ---------------------------------------------------------------------------
# game restriction and strategy-induced graphs


def restrict_game(game, strategy):
    """The game under a strategy: drop edges not chosen at owned vertices."""
    validate_strategy(game, strategy)
    owned = game.owned_by(strategy.player)
    kept = frozenset(
        (src, dst)
        for src, dst in game.edges
        if src not in owned or strategy.choice[src] == dst
    )
    return ReachabilityGame(
        reach_owned=game.reach_owned,
        safe_owned=game.safe_owned,
        effect=game.effect,
        initial=game.initial,
        edges=kept,
    )


def strategy_adjacency(game, strategy):
    """Adjacency of the game under the strategy, without rebuilding the game."""
    owned = game.owned_by(strategy.player)
    return {
        v: ((strategy.choice[v],) if v in owned else game.successors(v))
        for v in game.vertices
    }


# ---------------------------------------------------------------------------
# graph primitives (shared by transition systems and games)


def reachable_set(adjacency, start):
    """Vertices reachable from start, start included."""
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def maximal_avoiding_set(adjacency, avoid):
    """States admitting a maximal path that never visits `avoid`.

    Greatest fixpoint: a state qualifies iff it is outside `avoid` and is
    either terminal or has a qualifying successor.  Maximal paths are the
    finite ones ending in a terminal state together with the infinite ones.
    """
    good = {s for s in adjacency if s not in avoid}
    changed = True
    while changed:
        changed = False
        for s in list(good):
            if adjacency[s] and not any(u in good for u in adjacency[s]):
                good.discard(s)
                changed = True
    return good


def exists_maximal_path_avoiding(ts, from_state, avoid):
    """True iff some maximal path from `from_state` never visits `avoid`."""
    if from_state not in set(ts.states):
        raise PreconditionViolated(f"{from_state!r} is not a state")
    return from_state in maximal_avoiding_set(ts._succ, set(avoid))


def exists_path_reaching_avoiding(ts, from_state, target, avoid):
    """True iff some path from `from_state` reaches `target` within states
    outside `avoid` (the target state itself included)."""
    if from_state not in set(ts.states):
        raise PreconditionViolated(f"{from_state!r} is not a state")
    avoid = set(avoid)
    target = set(target)
    if from_state in avoid:
        return False
    seen = {from_state}
    stack = [from_state]
    while stack:
        v = stack.pop()
        if v in target:
            return True
        for u in ts.successors(v):
            if u not in avoid and u not in seen:
                seen.add(u)
                stack.append(u)
    return False


# ---------------------------------------------------------------------------
# paths and plays


def validate_maximal_path(ts, sequence):
    """Validate a state sequence as a maximal finite path of the system."""
    sequence = tuple(sequence)
    if not sequence:
        raise NotAPath("empty sequence")
    states = set(ts.states)
    for s in sequence:
        if s not in states:
            raise NotAPath(f"{s!r} is not a state")
    if sequence[0] != ts.initial:
        raise NotAPath(
            f"path starts at {sequence[0]!r}, not the initial state {ts.initial!r}"
        )
    for a, b in zip(sequence, sequence[1:]):
        if (a, b) not in ts.transitions:
            raise NotAPath(f"({a!r}, {b!r}) is not a transition")
    if not ts.is_terminal(sequence[-1]):
        raise NotMaximal(f"path ends at non-terminal state {sequence[-1]!r}")
    return MaximalFinitePath(sequence)


def maximal_paths(ts, max_len=None, budget=None):
    """All maximal finite paths from the initial state, lexicographically.

    On acyclic systems this enumeration is exhaustive.  On cyclic systems a
    `max_len` cap (number of states per path) must be supplied and the result
    only covers maximal paths up to that length; infinite maximal paths are
    never produced.
    """
    budget = as_budget(budget)
    acyclic = is_acyclic(ts._succ)
    if not acyclic and max_len is None:
        raise PreconditionViolated(
            "cyclic system: maximal-path enumeration needs a max_len cap"
        )
    out = []
    path = [ts.initial]

    def walk(state):
        budget.charge()
        if ts.is_terminal(state):
            out.append(tuple(path))
            return
        if max_len is not None and len(path) >= max_len:
            return
        for nxt in ts.successors(state):
            path.append(nxt)
            walk(nxt)
            path.pop()

    walk(ts.initial)
    return out


def is_acyclic(adjacency):
    """True iff the directed graph has no cycle (self-loops included)."""
    color = {v: 0 for v in adjacency}
    for root in sorted(adjacency):
        if color[root]:
            continue
        stack = [(root, iter(adjacency[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if color[u] == 1:
                    return False
                if color[u] == 0:
                    color[u] = 1
                    stack.append((u, iter(adjacency[u])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return True


def trap_vertices(adjacency):
    """Vertices whose only outgoing edge is a self-loop.

    A play entering such a vertex stays there forever, so for acyclicity
    purposes these vertices behave like terminal sinks.
    """
    return {v for v, succ in adjacency.items() if tuple(succ) == (v,)}


def is_effectively_acyclic(adjacency):
    """Acyclic once self-loops at trap vertices are disregarded.

    This is the acyclicity notion used for games: play-totality forces a
    self-loop wherever a drawing would show a non-target sink, and those
    loops are the only cycles an "acyclic" game may contain.
    """
    traps = trap_vertices(adjacency)
    stripped = {
        v: tuple(u for u in succ if not (u == v and v in traps))
        for v, succ in adjacency.items()
    }
    return is_acyclic(stripped)


def validate_play(game, play):
    """Check a play against the game: adjacency, initiality, termination."""
    stem, cycle = tuple(play.stem), tuple(play.cycle)
    if not stem:
        raise NotAPath("empty play")
    if stem[0] != game.initial:
        raise NotAPath(f"play starts at {stem[0]!r}, not {game.initial!r}")
    seq = stem + cycle
    for a, b in zip(seq, seq[1:]):
        if (a, b) not in game.edges:
            raise NotAPath(f"({a!r}, {b!r}) is not an edge")
    if cycle:
        if (seq[-1], cycle[0]) not in game.edges:
            raise NotAPath(f"cycle does not close: ({seq[-1]!r}, {cycle[0]!r})")
    else:
        if stem[-1] not in game.effect:
            raise NotMaximal(f"finite play ends outside the effect set: {stem[-1]!r}")
    return play


# ---------------------------------------------------------------------------
# file formats


def model_to_json(model):
    if isinstance(model, TransitionSystem):
        return {
            "kind": "ts",
            "alphabet": list(model.alphabet),
            "states": [
                {"id": s, "label": model.labeling[s]} for s in sorted(model.states)
            ],
            "initial": model.initial,
            "transitions": [list(t) for t in sorted(model.transitions)],
        }
    if isinstance(model, ReachabilityGame):
        return {
            "kind": "game",
            "vertices": [
                {"id": v, "owner": model.owner(v)} for v in model.vertices
            ],
            "initial": model.initial,
            "edges": [list(e) for e in sorted(model.edges)],
        }
    raise InvalidModel(f"not a model: {type(model).__name__}")


def model_from_json(data):
    kind = data.get("kind")
    if kind == "ts":
        states = tuple(sorted(s["id"] for s in data["states"]))
        labeling = {s["id"]: s["label"] for s in data["states"]}
        ts = TransitionSystem(
            states=states,
            initial=data["initial"],
            transitions=frozenset((a, b) for a, b in data["transitions"]),
            labeling=labeling,
            alphabet=tuple(sorted(data["alphabet"])),
        )
        validate_model(ts)
        return ts
    if kind == "game":
        owners = {v["id"]: v["owner"] for v in data["vertices"]}
        for vid, owner in owners.items():
            if owner not in (REACH, SAFE, EFFECT):
                raise InvalidModel(f"vertex {vid!r} has unknown owner {owner!r}")
        game = ReachabilityGame(
            reach_owned=frozenset(v for v, o in owners.items() if o == REACH),
            safe_owned=frozenset(v for v, o in owners.items() if o == SAFE),
            effect=frozenset(v for v, o in owners.items() if o == EFFECT),
            initial=data["initial"],
            edges=frozenset((a, b) for a, b in data["edges"]),
        )
        validate_model(game)
        return game
    raise InvalidModel(f"unknown model kind {kind!r}")


def strategy_to_json(strategy):
    return {
        "player": strategy.player,
        "choices": {v: strategy.choice[v] for v in sorted(strategy.choice)},
    }


def strategy_from_json(data):
    return MDStrategy(player=data["player"], choice=dict(data["choices"]))


def path_from_json(data):
    if isinstance(data, dict):
        data = data["path"]
    return tuple(data)


def dumps_canonical(obj):
    """Deterministic JSON rendering: sorted keys, two-space indent."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def load_strategy(path):
    with open(path, "r", encoding="utf-8") as fh:
        return strategy_from_json(json.load(fh))


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return path_from_json(json.load(fh))
