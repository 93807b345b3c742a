"""Reachability-game solving, counterfactual causes for losing strategies,
and strategy-repair explanations.

The polynomial pieces (attractor solving, safety regions, the Hausdorff-prefix
cause check) are complemented by exact, budget-guarded searches for the
problems the distance functions make NP- or coNP-hard.
"""

from dataclasses import dataclass
from itertools import combinations, product

from .errors import (
    EmptyChoice,
    NoWinningStrategy,
    NotAcyclic,
    PreconditionViolated,
    as_budget,
)
from .model import (
    REACH,
    SAFE,
    MDStrategy,
    is_effectively_acyclic,
    maximal_avoiding_set,
    reachable_set,
    strategy_adjacency,
    validate_strategy,
)
from . import distances
from .distances import dyadic

METRIC_PREF_H = "pref-h"
METRIC_HAMM_S = "hamm-s"
METRIC_DSTAR = "dstar"

GAME_METRICS = (METRIC_PREF_H, METRIC_HAMM_S, METRIC_DSTAR)


@dataclass(frozen=True)
class WinningAnalysis:
    reach_region: frozenset
    safe_region: frozenset
    reach_strategy: MDStrategy
    safe_strategy: MDStrategy


@dataclass(frozen=True)
class GameCauseQuery:
    game: object
    player: str
    sigma: MDStrategy
    cause: frozenset
    metric: str
    witnesses: int = 3


@dataclass(frozen=True)
class StrategyWitness:
    strategy: MDStrategy
    distance: object
    winning: bool


@dataclass(frozen=True)
class GameCauseVerdict:
    is_cause: bool
    min_distance: object
    condition1: bool
    condition2: bool
    witnesses: tuple = ()


@dataclass(frozen=True)
class Explanation:
    vertex_set: frozenset
    witness: MDStrategy


# ---------------------------------------------------------------------------
# solving


def solve(game):
    """Attractor solving: winning regions and MD strategies for both players.

    Deterministic: vertices are processed in sorted order and Reach picks the
    smallest attractor successor, so repeated runs extract the same
    strategies.
    """
    attr = set(game.effect)
    reach_choice = {}
    while True:
        added = []
        for v in sorted(game.reach_owned - attr):
            targets = [u for u in game.successors(v) if u in attr]
            if targets:
                added.append((v, targets[0]))
        for v in sorted(game.safe_owned - attr):
            succ = game.successors(v)
            if succ and all(u in attr for u in succ):
                added.append((v, None))
        if not added:
            break
        for v, t in added:
            attr.add(v)
            if t is not None:
                reach_choice[v] = t
    for v in sorted(game.reach_owned - set(reach_choice)):
        reach_choice[v] = game.successors(v)[0]
    safe_choice = {}
    for v in sorted(game.safe_owned):
        outside = [u for u in game.successors(v) if u not in attr]
        safe_choice[v] = outside[0] if outside else game.successors(v)[0]
    vertices = set(game.vertices)
    return WinningAnalysis(
        reach_region=frozenset(attr),
        safe_region=frozenset(vertices - attr),
        reach_strategy=MDStrategy(REACH, reach_choice),
        safe_strategy=MDStrategy(SAFE, safe_choice),
    )


def attractor_ranks(game):
    """Steps within which Reach can force the effect set, per vertex."""
    rank = {v: 0 for v in game.effect}
    changed = True
    while changed:
        changed = False
        for v in sorted((game.reach_owned | game.safe_owned) - set(rank)):
            ranks = [rank.get(u) for u in game.successors(v)]
            if v in game.reach_owned:
                known = [r for r in ranks if r is not None]
                if known:
                    rank[v] = 1 + min(known)
                    changed = True
            else:
                if all(r is not None for r in ranks):
                    rank[v] = 1 + max(ranks)
                    changed = True
    return rank


def avoid_region(game, player, cause):
    """Vertices from which the player can guarantee never visiting `cause`,
    with the region-preserving edge sets at the player's vertices."""
    for c in sorted(cause):
        if c in game.effect:
            raise PreconditionViolated(f"cause vertex {c!r} lies in the effect set")
    owned = game.owned_by(player)
    region = {v for v in game.vertices if v not in cause}
    changed = True
    while changed:
        changed = False
        for v in sorted(region):
            if v in game.effect:
                continue
            succ = game.successors(v)
            if v in owned:
                ok = any(u in region for u in succ)
            else:
                ok = all(u in region for u in succ)
            if not ok:
                region.discard(v)
                changed = True
    allowed = {
        v: tuple(u for u in game.successors(v) if u in region)
        for v in sorted(owned & region)
    }
    return frozenset(region), allowed


def _solve_for(game, player, allowed):
    """Solve the game for `player` when its vertices may only use the given
    edge subsets.  Returns (wins_from_initial, total choice dict).

    Vertices missing from `allowed` keep their full edge set.  Dead ends the
    restriction creates count against Reach: a stuck play never reaches the
    effect set.
    """

    def edges(v):
        return allowed.get(v, game.successors(v))

    reach_edges = edges if player == REACH else game.successors
    safe_edges = edges if player == SAFE else game.successors

    attr = set(game.effect)
    reach_choice = {}
    while True:
        added = []
        for v in sorted(game.reach_owned - attr):
            targets = [u for u in reach_edges(v) if u in attr]
            if targets:
                added.append((v, targets[0]))
        for v in sorted(game.safe_owned - attr):
            succ = safe_edges(v)
            if succ and all(u in attr for u in succ):
                added.append((v, None))
        if not added:
            break
        for v, t in added:
            attr.add(v)
            if t is not None:
                reach_choice[v] = t
    if player == REACH:
        wins = game.initial in attr
        for v in sorted(game.reach_owned):
            if v not in reach_choice:
                opts = reach_edges(v)
                reach_choice[v] = opts[0] if opts else game.successors(v)[0]
        return wins, reach_choice
    wins = game.initial not in attr
    safe_choice = {}
    for v in sorted(game.safe_owned):
        opts = safe_edges(v)
        outside = [u for u in opts if u not in attr]
        safe_choice[v] = outside[0] if outside else (opts[0] if opts else game.successors(v)[0])
    return wins, safe_choice


# ---------------------------------------------------------------------------
# strategy predicates


def strategy_is_winning(game, strategy):
    adj = strategy_adjacency(game, strategy)
    if strategy.player == REACH:
        return game.initial not in maximal_avoiding_set(adj, game.effect)
    return not (game.effect & reachable_set(adj, game.initial))


def strategy_avoids(game, strategy, cause):
    adj = strategy_adjacency(game, strategy)
    return not (set(cause) & reachable_set(adj, game.initial))


def losing_play_reaches_cause(game, sigma, cause):
    """Condition 1: some sigma-play visits the cause set and loses.

    Losing means reaching the effect set for Safe, and avoiding it forever
    for Reach (a reachable cycle or trap past the cause visit).
    """
    adj = strategy_adjacency(game, sigma)
    seen = reachable_set(adj, game.initial)
    hits = sorted(set(cause) & seen)
    if not hits:
        return False
    if sigma.player == SAFE:
        return any(game.effect & reachable_set(adj, c) for c in hits)
    dodging = maximal_avoiding_set(adj, game.effect)
    return any(c in dodging for c in hits)


def enumerate_strategies(game, player, budget=None):
    """All MD strategies for the player, in lexicographic encoding order."""
    budget = as_budget(budget)
    owned = sorted(game.owned_by(player))
    option_lists = [game.successors(v) for v in owned]
    for picks in product(*option_lists):
        budget.charge()
        yield MDStrategy(player, dict(zip(owned, picks)))


def _sigma_matched(game, strategy, sigma):
    """Reset choices at vertices the strategy never reaches to sigma's.

    Harmless for winning and cause-avoidance (the reachable part is
    untouched) and never increases any play-based distance to sigma.
    """
    adj = strategy_adjacency(game, strategy)
    seen = reachable_set(adj, game.initial)
    choice = {
        v: (strategy.choice[v] if v in seen else sigma.choice[v])
        for v in strategy.choice
    }
    return MDStrategy(strategy.player, choice)


# ---------------------------------------------------------------------------
# cause checking


def validate_game_query(query):
    if query.metric not in GAME_METRICS:
        raise PreconditionViolated(f"unknown strategy metric {query.metric!r}")
    if query.player not in (REACH, SAFE):
        raise PreconditionViolated(f"unknown player {query.player!r}")
    if query.sigma.player != query.player:
        raise PreconditionViolated("the strategy belongs to the other player")
    validate_strategy(query.game, query.sigma)
    vertices = set(query.game.vertices)
    for c in sorted(query.cause):
        if c not in vertices:
            raise PreconditionViolated(f"{c!r} is not a vertex")
        if c in query.game.effect:
            raise PreconditionViolated(f"cause vertex {c!r} lies in the effect set")


def check_cause_game(query, budget=None):
    """Decide whether the cause set explains the strategy's loss.

    Conditions: a losing sigma-play through the cause exists, the player can
    avoid the cause at all, and every cause-avoiding strategy at minimal
    distance to sigma is winning.
    """
    validate_game_query(query)
    budget = as_budget(budget)
    game, sigma, cause = query.game, query.sigma, query.cause
    if query.metric == METRIC_HAMM_S:
        _require_effectively_acyclic(game)
    c1 = losing_play_reaches_cause(game, sigma, cause)
    region, allowed = avoid_region(game, query.player, cause)
    c2 = game.initial in region
    if not (c1 and c2):
        return GameCauseVerdict(False, distances.INF, c1, c2)
    if query.metric == METRIC_PREF_H:
        return _check_pref_h(query, region, budget)
    if query.metric == METRIC_HAMM_S:
        return _check_hamm_s(query, region, budget)
    return _check_dstar(query, region, allowed, budget)


def _pinned_region(game, player, cause, pins):
    """Safety region for avoiding `cause` when some owned vertices are forced
    to fixed choices."""
    owned = game.owned_by(player)
    region = {v for v in game.vertices if v not in cause}
    changed = True
    while changed:
        changed = False
        for v in sorted(region):
            if v in game.effect:
                continue
            succ = game.successors(v)
            if v in owned:
                ok = pins[v] in region if v in pins else any(u in region for u in succ)
            else:
                ok = all(u in region for u in succ)
            if not ok:
                region.discard(v)
                changed = True
    return region


def _check_pref_h(query, region, budget):
    """Hausdorff-prefix cause check.

    The distance-minimal cause-avoiding strategies are exactly those that
    copy sigma on every owned vertex within the deepest pin radius that still
    leaves the cause avoidable.  They all win iff the opponent cannot defeat
    the player even when also steering the player's remaining freedom inside
    the region-preserving edges.
    """
    game, sigma, cause, player = query.game, query.sigma, query.cause, query.player
    owned = game.owned_by(player)

    depth = {game.initial: 0}
    frontier = [game.initial]
    adj_sigma = strategy_adjacency(game, sigma)
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj_sigma[v]:
                if u not in depth:
                    depth[u] = depth[v] + 1
                    nxt.append(u)
        frontier = sorted(nxt)

    def pins_at(n):
        return {
            v: sigma.choice[v]
            for v in sorted(owned)
            if v in depth and depth[v] <= n - 1
        }

    n_star = 0
    pin_region = region
    limit = len(game.vertices) + 2
    for n in range(1, limit + 1):
        budget.charge()
        candidate = _pinned_region(game, player, cause, pins_at(n))
        if game.initial in candidate:
            n_star = n
            pin_region = candidate
        else:
            break
    else:
        raise AssertionError("pinning every reachable vertex must block avoidance")

    pins = pins_at(n_star)
    min_d = dyadic(n_star + 1)

    allowed = {}
    for v in sorted(owned & pin_region):
        if v in pins:
            allowed[v] = (pins[v],)
        else:
            allowed[v] = tuple(u for u in game.successors(v) if u in pin_region)
    arena = {}
    for v in sorted(pin_region):
        if v in owned:
            arena[v] = allowed[v]
        else:
            arena[v] = game.successors(v)

    if player == REACH:
        dodge = maximal_avoiding_set(arena, game.effect)
        defeated = game.initial in dodge
    else:
        defeated = bool(set(game.effect) & reachable_set(arena, game.initial))

    witnesses = []
    if defeated:
        bad_choices = _defeat_choices(game, player, arena, owned)
        tau = _assemble_strategy(game, sigma, owned, pins, allowed, bad_choices)
        witnesses.append(
            StrategyWitness(tau, distances.d_pref_hausdorff(game, sigma, tau), False)
        )
    else:
        tau = _assemble_strategy(game, sigma, owned, pins, allowed, {})
        witnesses.append(
            StrategyWitness(tau, distances.d_pref_hausdorff(game, sigma, tau), True)
        )
    return GameCauseVerdict(
        not defeated, min_d, True, True, tuple(witnesses[: query.witnesses])
    )


def _defeat_choices(game, player, arena, owned):
    """MD choices (within the arena) realizing one defeating play."""
    if player == REACH:
        dodge = maximal_avoiding_set(arena, game.effect)
        sub = {v: tuple(u for u in arena[v] if u in dodge) for v in dodge}
        choices = {}
        v = game.initial
        while v not in choices and sub[v]:
            choices[v] = sub[v][0]
            v = sub[v][0]
        return {v: u for v, u in choices.items() if v in owned}
    parent = {game.initial: None}
    queue = [game.initial]
    target = None
    while queue and target is None:
        nxt = []
        for v in queue:
            if v in game.effect:
                target = v
                break
            for u in arena[v]:
                if u not in parent:
                    parent[u] = v
                    nxt.append(u)
        queue = sorted(nxt)
    choices = {}
    v = target
    while v is not None and parent[v] is not None:
        choices[parent[v]] = v
        v = parent[v]
    return {v: u for v, u in choices.items() if v in owned}


def _assemble_strategy(game, sigma, owned, pins, allowed, overrides):
    choice = {}
    for v in sorted(owned):
        if v in overrides:
            choice[v] = overrides[v]
        elif v in pins:
            choice[v] = pins[v]
        elif v in allowed:
            opts = allowed[v]
            choice[v] = sigma.choice[v] if sigma.choice[v] in opts else opts[0]
        else:
            choice[v] = sigma.choice[v]
    return MDStrategy(sigma.player, choice)


def _require_effectively_acyclic(game):
    if not is_effectively_acyclic(game.adjacency()):
        raise NotAcyclic(
            "this check needs an acyclic game (self-loop traps aside)"
        )


def _tree_shaped(game):
    """Tree arenas (modulo trap self-loops): one way in per reachable vertex."""
    adj = game.adjacency()
    traps = {v for v, succ in adj.items() if tuple(succ) == (v,)}
    preds = {}
    seen = reachable_set(adj, game.initial)
    for v in sorted(seen):
        for u in adj[v]:
            if u == v and v in traps:
                continue
            preds[u] = preds.get(u, 0) + 1
    return all(preds.get(v, 0) <= 1 for v in seen if v != game.initial)


def tree_min_changes(game, sigma, cause):
    """Minimum number of choice changes that avoid `cause`, on tree arenas.

    Subtree vertex sets are disjoint on a tree, so costs add across opponent
    branches; on general DAGs this sum may double-count shared descendants,
    which is why the exact subset search is used there.
    """
    owned = game.owned_by(sigma.player)
    adj = game.adjacency()
    traps = {v for v, succ in adj.items() if tuple(succ) == (v,)}
    memo = {}

    def cost(v):
        if v in memo:
            return memo[v]
        if v in cause:
            memo[v] = distances.INF
            return memo[v]
        if v in game.effect or v in traps:
            memo[v] = 0
            return memo[v]
        succ = adj[v]
        if v in owned:
            keep = cost(sigma.choice[v])
            change = min(
                (1 + cost(u) for u in succ if u != sigma.choice[v]),
                default=distances.INF,
            )
            memo[v] = min(keep, change)
        else:
            memo[v] = sum(cost(u) for u in succ)
        return memo[v]

    return cost(game.initial)


def _min_change_sets(game, sigma, cause, budget, start_size=0):
    """All minimum-size change sets S such that freeing exactly the vertices
    in S (sigma elsewhere) leaves the cause avoidable."""
    owned = game.owned_by(sigma.player)
    candidates = sorted(v for v in owned if len(game.successors(v)) >= 2)

    def feasible(free):
        pins = {v: sigma.choice[v] for v in owned if v not in free}
        return game.initial in _pinned_region(game, sigma.player, cause, pins)

    for k in range(start_size, len(candidates) + 1):
        hits = []
        for combo in combinations(candidates, k):
            budget.charge()
            if feasible(set(combo)):
                hits.append(combo)
        if hits:
            return k, hits
    return None, []


def _check_hamm_s(query, region, budget):
    """Hamming strategy-distance cause check on (effectively) acyclic games:
    find the minimum number of changed choices that avoids the cause, then
    verify every avoiding strategy with exactly that many changes wins."""
    game, sigma, cause = query.game, query.sigma, query.cause
    start = 0
    if _tree_shaped(game):
        k_tree = tree_min_changes(game, sigma, cause)
        if k_tree is not distances.INF:
            start = int(k_tree)
    k_star, sets = _min_change_sets(game, sigma, cause, budget, start_size=start)
    if k_star is None:
        return GameCauseVerdict(False, distances.INF, True, False)
    owned = game.owned_by(query.player)
    loser = None
    winner = None
    for combo in sets:
        alt_lists = [
            [u for u in game.successors(v) if u != sigma.choice[v]] for v in combo
        ]
        for picks in product(*alt_lists):
            budget.charge()
            choice = dict(sigma.choice)
            choice.update(dict(zip(combo, picks)))
            tau = MDStrategy(query.player, choice)
            if not strategy_avoids(game, tau, cause):
                continue
            if strategy_is_winning(game, tau):
                if winner is None:
                    winner = tau
            elif loser is None:
                loser = tau
        if loser is not None:
            break
    witnesses = []
    if loser is not None:
        witnesses.append(StrategyWitness(loser, k_star, False))
    if winner is not None:
        witnesses.append(StrategyWitness(winner, k_star, True))
    return GameCauseVerdict(
        loser is None, k_star, True, True, tuple(witnesses[: query.witnesses])
    )


def _avoiding_candidates(game, sigma, region, allowed, budget):
    """Sigma-matched cause-avoiding strategies, deduplicated.

    Region-preserving choices inside the avoid region, sigma off it, and
    sigma again at owned vertices the strategy never reaches; every
    cause-avoiding strategy is represented this way up to off-path choices
    that can only increase play-based distances.
    """
    owned = game.owned_by(sigma.player)
    inside = sorted(set(allowed))
    seen = set()
    for picks in product(*[allowed[v] for v in inside]):
        budget.charge()
        choice = dict(sigma.choice)
        choice.update(dict(zip(inside, picks)))
        tau = _sigma_matched(game, MDStrategy(sigma.player, choice), sigma)
        key = tuple(sorted(tau.choice.items()))
        if key not in seen:
            seen.add(key)
            yield tau


def _check_dstar(query, region, allowed, budget):
    """Exact search for the Hausdorff-inspired vertex-counting distance: no
    polynomial algorithm is claimed for it, so candidates are enumerated and
    measured exactly."""
    game, sigma = query.game, query.sigma
    scored = []
    for tau in _avoiding_candidates(game, sigma, region, allowed, budget):
        d = distances.dstar(game, tau, sigma, budget)
        scored.append((d, tuple(sorted(tau.choice.items())), tau))
    scored.sort(key=lambda item: item[:2])
    k_star = scored[0][0]
    loser = None
    winner = None
    for d, _key, tau in scored:
        if d != k_star:
            break
        if strategy_is_winning(game, tau):
            if winner is None:
                winner = tau
        elif loser is None:
            loser = tau
    witnesses = []
    if loser is not None:
        witnesses.append(StrategyWitness(loser, k_star, False))
    if winner is not None:
        witnesses.append(StrategyWitness(winner, k_star, True))
    return GameCauseVerdict(
        loser is None, k_star, True, True, tuple(witnesses[: query.witnesses])
    )


def brute_force_check_cause(query, budget=None, distance_fn=None):
    """Definitional oracle: enumerate every MD strategy of the player, keep
    the cause-avoiding ones, and apply the three cause conditions literally.

    `distance_fn(game, tau, sigma)` may inject an independent distance
    implementation; the packaged distances are used otherwise.
    """
    validate_game_query(query)
    budget = as_budget(budget)
    game, sigma = query.game, query.sigma
    if distance_fn is None:
        distance_fn = {
            METRIC_PREF_H: distances.d_pref_hausdorff,
            METRIC_HAMM_S: distances.d_hamm_s,
            METRIC_DSTAR: distances.dstar,
        }[query.metric]
    c1 = losing_play_reaches_cause(game, sigma, query.cause)
    scored = []
    for tau in enumerate_strategies(game, query.player, budget):
        if strategy_avoids(game, tau, query.cause):
            scored.append((distance_fn(game, tau, sigma), tau))
    c2 = bool(scored)
    if not (c1 and c2):
        return GameCauseVerdict(False, distances.INF, c1, c2)
    min_d = min(d for d, _ in scored)
    minimal = [tau for d, tau in scored if d == min_d]
    flags = [strategy_is_winning(game, tau) for tau in minimal]
    is_cause = all(flags)
    order = sorted(
        range(len(minimal)),
        key=lambda i: (flags[i], sorted(minimal[i].choice.items())),
    )
    witnesses = tuple(
        StrategyWitness(minimal[i], min_d, flags[i])
        for i in order[: query.witnesses]
    )
    return GameCauseVerdict(is_cause, min_d, c1, c2, witnesses)


# ---------------------------------------------------------------------------
# explanations


def extract_explanation(game, sigma, cause=frozenset()):
    """Compute an explanation from a cause: solve the game restricted to the
    player's cause-avoiding region and diff the winning strategy against
    sigma.

    Solving plainly with the cause vertices deleted could hand back a
    strategy that loses once the opponent steers through the deleted part;
    restricting to the avoid region keeps the opponent inside it, so the
    witness wins in the full game.  On actual causes the two coincide.
    """
    validate_strategy(game, sigma)
    player = sigma.player
    region, allowed = avoid_region(game, player, frozenset(cause))
    if game.initial not in region:
        raise NoWinningStrategy(
            "the player cannot even avoid the cause set from the initial vertex"
        )
    wins, choices = _solve_for(game, player, allowed)
    if not wins:
        raise NoWinningStrategy("the player loses the cause-free subgame")
    owned = game.owned_by(player)
    choice = {v: choices.get(v, sigma.choice[v]) for v in sorted(owned)}
    tau = _sigma_matched(game, MDStrategy(player, choice), sigma)
    diff = frozenset(v for v in sorted(owned) if tau.choice[v] != sigma.choice[v])
    return Explanation(vertex_set=diff, witness=tau)


def is_explanation(game, sigma, vertex_set):
    """Decide whether changing sigma exactly on the given vertices can win.

    Returns (verdict, winning witness strategy or None)."""
    validate_strategy(game, sigma)
    player = sigma.player
    owned = game.owned_by(player)
    vertex_set = frozenset(vertex_set)
    for v in sorted(vertex_set):
        if v not in owned:
            raise PreconditionViolated(f"{v!r} is not owned by {player}")
        if len(game.successors(v)) < 2:
            raise EmptyChoice(f"{v!r} has no edge other than sigma's choice")
    allowed = {}
    for v in sorted(owned):
        if v in vertex_set:
            allowed[v] = tuple(u for u in game.successors(v) if u != sigma.choice[v])
        else:
            allowed[v] = (sigma.choice[v],)
    wins, choices = _solve_for(game, player, allowed)
    if not wins:
        return False, None
    choice = {v: choices[v] for v in sorted(owned)}
    for v in sorted(vertex_set):
        if choice[v] == sigma.choice[v]:
            choice[v] = allowed[v][0]
    return True, MDStrategy(player, choice)


def min_winning_distance(game, sigma, metric, threshold=None, budget=None):
    """Exact minimum distance from sigma to a winning strategy.

    With a threshold, answers the decision problem "is there a winning
    strategy within distance k" instead (stopping early).
    """
    validate_strategy(game, sigma)
    budget = as_budget(budget)
    value, _tau = _min_winning(game, sigma, metric, threshold, budget)
    if threshold is not None:
        return value <= threshold
    return value


def _min_winning(game, sigma, metric, threshold, budget):
    player = sigma.player
    owned = game.owned_by(player)
    if metric == METRIC_HAMM_S:
        candidates = sorted(v for v in owned if len(game.successors(v)) >= 2)
        top = len(candidates) if threshold is None else min(threshold, len(candidates))
        for k in range(0, top + 1):
            for combo in combinations(candidates, k):
                budget.charge()
                free = set(combo)
                allowed = {
                    v: (game.successors(v) if v in free else (sigma.choice[v],))
                    for v in owned
                }
                wins, choices = _solve_for(game, player, allowed)
                if wins:
                    tau = MDStrategy(player, {v: choices[v] for v in sorted(owned)})
                    return k, _sigma_matched(game, tau, sigma)
        if threshold is not None:
            return threshold + 1, None
        raise NoWinningStrategy(f"player {player} has no winning strategy")
    if metric == METRIC_DSTAR:
        best = None
        best_tau = None
        seen = set()
        for tau in enumerate_strategies(game, player, budget):
            tau = _sigma_matched(game, tau, sigma)
            key = tuple(sorted(tau.choice.items()))
            if key in seen:
                continue
            seen.add(key)
            if not strategy_is_winning(game, tau):
                continue
            d = distances.dstar(game, tau, sigma, budget)
            if best is None or (d, key) < best:
                best = (d, key)
                best_tau = tau
                if threshold is not None and d <= threshold:
                    return d, tau
        if best is None:
            if threshold is not None:
                return threshold + 1, None
            raise NoWinningStrategy(f"player {player} has no winning strategy")
        return best[0], best_tau
    raise PreconditionViolated(f"unsupported metric {metric!r} for this search")


def is_minimal_explanation(game, sigma, vertex_set, metric, budget=None):
    """A minimal explanation attains the least possible winning distance.

    For the Hamming strategy distance every E-distinct strategy sits at
    distance exactly |E|, so minimality is a cardinality comparison; for the
    vertex-counting distance the E-distinct winning strategies are measured
    exactly.
    """
    budget = as_budget(budget)
    vertex_set = frozenset(vertex_set)
    ok, _tau = is_explanation(game, sigma, vertex_set)
    if not ok:
        return False
    if metric == METRIC_HAMM_S:
        return len(vertex_set) == min_winning_distance(
            game, sigma, METRIC_HAMM_S, budget=budget
        )
    if metric == METRIC_DSTAR:
        overall = min_winning_distance(game, sigma, METRIC_DSTAR, budget=budget)
        best = None
        owned = game.owned_by(sigma.player)
        alt_lists = [
            [u for u in game.successors(v) if u != sigma.choice[v]]
            for v in sorted(vertex_set)
        ]
        for picks in product(*alt_lists):
            budget.charge()
            choice = dict(sigma.choice)
            choice.update(dict(zip(sorted(vertex_set), picks)))
            tau = MDStrategy(sigma.player, choice)
            if not strategy_is_winning(game, tau):
                continue
            d = distances.dstar(game, tau, sigma, budget)
            if best is None or d < best:
                best = d
        return best == overall
    raise PreconditionViolated(f"unsupported metric {metric!r} for minimality")


# ---------------------------------------------------------------------------
# acyclic d* repair


def min_dstar_winning_strategy_acyclic(game, sigma, budget=None):
    """Winning Reach strategy minimizing the vertex-counting distance to a
    losing sigma whose restriction graph is acyclic.

    A weighted min-max shortest-path sweep (deviating edges cost 1) proposes
    a strategy; its exact distance is certified against the exact search and
    the exact optimum is returned whenever the fast path misses it.
    """
    validate_strategy(game, sigma)
    if sigma.player != REACH:
        raise PreconditionViolated("the acyclic repair is defined for Reach")
    budget = as_budget(budget)
    if not is_effectively_acyclic(strategy_adjacency(game, sigma)):
        raise NotAcyclic("the game restricted to sigma is not acyclic")
    analysis = solve(game)
    if game.initial not in analysis.reach_region:
        raise NoWinningStrategy("Reach does not win this game")

    ranks = attractor_ranks(game)
    INF = distances.INF
    val = {v: (0 if v in game.effect else INF) for v in game.vertices}
    for _ in range(len(game.vertices) * (len(game.reach_owned) + 2)):
        changed = False
        for v in game.vertices:
            if v in game.effect:
                continue
            succ = game.successors(v)
            if v in game.reach_owned:
                new = min(
                    (0 if u == sigma.choice[v] else 1) + val[u] for u in succ
                )
            elif v in game.safe_owned:
                new = max(val[u] for u in succ)
            else:
                continue
            if new != val[v]:
                val[v] = new
                changed = True
        if not changed:
            break

    choice = {}
    for v in sorted(game.reach_owned):
        options = []
        for u in game.successors(v):
            cost = (0 if u == sigma.choice[v] else 1) + val[u]
            options.append((cost, ranks.get(u, float("inf")), u))
        options.sort()
        choice[v] = options[0][2]
    tau_fast = _sigma_matched(game, MDStrategy(REACH, choice), sigma)

    exact, tau_exact = _min_winning(game, sigma, METRIC_DSTAR, None, budget)
    if strategy_is_winning(game, tau_fast):
        fast = distances.dstar(game, tau_fast, sigma, budget)
        if fast == exact:
            return tau_fast, exact
    return tau_exact, exact
