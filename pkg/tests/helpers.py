"""Independent oracles and seeded instance builders shared by the tests.

The oracles here deliberately avoid the library's algorithmic shortcuts:
Levenshtein by plain recursion, the Hausdorff strategy distance by explicit
play-prefix enumeration, and the play-distance supremum by chains over
disagreement subsets.
"""

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from causekit.model import (
    MaximalFinitePath,
    maximal_paths,
    reachable_set,
    strategy_adjacency,
)
from causekit.ts_causality import CauseQuery, METRIC_HAMM, PHI_REACH, PHI_SAFE


def naive_lev(u, v):
    """Reference Levenshtein value by suffix recursion."""
    u, v = tuple(u), tuple(v)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(u):
            return len(v) - j
        if j == len(v):
            return len(u) - i
        sub = go(i + 1, j + 1) + (0 if u[i] == v[j] else 1)
        return min(sub, go(i + 1, j) + 1, go(i, j + 1) + 1)

    return go(0, 0)


def prefix_sets(game, strategy, max_vertices):
    """All play prefixes of the strategy with up to max_vertices vertices,
    grouped by vertex count."""
    adj = strategy_adjacency(game, strategy)
    by_len = [set(), {(game.initial,)}]
    level = {(game.initial,)}
    for _ in range(2, max_vertices + 1):
        nxt = set()
        for p in level:
            for u in adj[p[-1]]:
                nxt.add(p + (u,))
        by_len.append(nxt)
        level = nxt
    return by_len


def hausdorff_oracle(game, sigma, tau):
    """Definitional Hausdorff prefix distance: 2^-(k-1) for the least vertex
    count k at which the two prefix sets differ, 0 if they never do within
    |V|+1 vertices (play sets of memoryless strategies coincide beyond)."""
    bound = len(game.vertices) + 1
    ps = prefix_sets(game, sigma, bound)
    pt = prefix_sets(game, tau, bound)
    for k in range(1, bound + 1):
        if ps[k] != pt[k]:
            return Fraction(1, 2 ** (k - 1))
    return Fraction(0)


def dstrat_oracle(game, tau, sigma):
    """Max number of distinct disagreement vertices on one tau-play, by
    dynamic programming over visiting orders (a chain of reachability hops)."""
    adj = strategy_adjacency(game, tau)
    owned = game.owned_by(sigma.player)
    diff = sorted(
        v for v in owned if tau.choice[v] != sigma.choice[v]
    )
    if not diff:
        return 0
    start_reach = reachable_set(adj, game.initial)
    after = {v: reachable_set(adj, adj[v][0]) for v in diff}
    n = len(diff)
    best = 0
    frontier = {
        (1 << i, i) for i, v in enumerate(diff) if v in start_reach
    }
    seen = set(frontier)
    while frontier:
        nxt = set()
        for mask, last in frontier:
            best = max(best, bin(mask).count("1"))
            for j in range(n):
                if mask & (1 << j):
                    continue
                if diff[j] in after[diff[last]]:
                    key = (mask | (1 << j), j)
                    if key not in seen:
                        seen.add(key)
                        nxt.add(key)
        frontier = nxt
    return best


def dstar_oracle(game, tau, sigma):
    return max(dstrat_oracle(game, tau, sigma), dstrat_oracle(game, sigma, tau))


# ---------------------------------------------------------------------------
# query builders


def build_ts_query(ts, rng, metric, phi, witnesses=3):
    """A valid cause query over the system, or None if the dice give none."""
    paths = maximal_paths(ts)
    if not paths:
        return None
    pi = rng.choice(sorted(paths))
    terminals = sorted(s for s in ts.states if ts.is_terminal(s))
    end = pi[-1]
    if phi == PHI_REACH:
        if metric == METRIC_HAMM:
            effect = frozenset(t for t in terminals if ts.label(t) == ts.label(end))
        else:
            extra = [t for t in terminals if t != end and rng.random() < 0.4]
            effect = frozenset([end] + extra)
    else:
        if metric == METRIC_HAMM:
            effect = frozenset(
                t for t in terminals if ts.label(t) != ts.label(end)
            )
        else:
            pool = [t for t in terminals if t != end]
            if not pool:
                return None
            effect = frozenset(t for t in pool if rng.random() < 0.5)
        if not effect or any(s in effect for s in pi):
            return None
    candidates = [s for s in pi if s not in effect]
    if not candidates:
        return None
    cause = frozenset(
        rng.sample(candidates, rng.randint(1, min(2, len(candidates))))
    )
    return CauseQuery(
        ts=ts,
        pi=MaximalFinitePath(pi),
        cause=cause,
        effect=effect,
        phi=phi,
        metric=metric,
        witnesses=witnesses,
    )


def strategy_space_size(game, player):
    size = 1
    for v in game.owned_by(player):
        size *= len(game.successors(v))
    return size


def random_words(rng, alphabet, max_len, equal_length=False):
    n = rng.randint(0, max_len)
    m = n if equal_length else rng.randint(0, max_len)
    u = tuple(rng.choice(alphabet) for _ in range(n))
    v = tuple(rng.choice(alphabet) for _ in range(m))
    return u, v
