"""Distance functions on traces, paths and memoryless strategies.

Finite values are exact: naturals for the counting distances, Fractions for
the 2^-n prefix family.  math.inf stands for an infinite distance; identical
arguments always yield 0 (2^-inf is read as 0 for the prefix family).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import LengthMismatch, PreconditionViolated, as_budget
from .model import strategy_adjacency

INF = math.inf

EPSILON = None  # the edit alphabet's fresh padding symbol


@dataclass(frozen=True)
class EditSequence:
    """Witness for a Levenshtein distance: a word over the edit alphabet.

    Each symbol is a pair (left, right) over labels extended with EPSILON,
    never (EPSILON, EPSILON).  Projecting out the EPSILONs componentwise
    recovers the two compared words.
    """

    symbols: tuple

    def __post_init__(self):
        for left, right in self.symbols:
            if left is EPSILON and right is EPSILON:
                raise PreconditionViolated("edit symbol (eps, eps) is not allowed")

    def weight(self):
        return sum(1 for left, right in self.symbols if left != right)

    def left_word(self):
        return tuple(left for left, _ in self.symbols if left is not EPSILON)

    def right_word(self):
        return tuple(right for _, right in self.symbols if right is not EPSILON)

    def is_edit_sequence_for(self, u, v):
        return self.left_word() == tuple(u) and self.right_word() == tuple(v)


def _sequence(x):
    return tuple(x.sequence) if hasattr(x, "sequence") else tuple(x)


def _common_prefix_length(u, v):
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


def dyadic(n):
    return Fraction(1, 2 ** n)


def d_pref_ap(u, v):
    """Prefix distance on traces: 2^-n for the longest common prefix n."""
    u, v = tuple(u), tuple(v)
    if u == v:
        return Fraction(0)
    return dyadic(_common_prefix_length(u, v))


def d_pref(p, q):
    """Prefix distance on paths, comparing state sequences instead of traces."""
    p, q = _sequence(p), _sequence(q)
    if p == q:
        return Fraction(0)
    return dyadic(_common_prefix_length(p, q))


def d_hamm(u, v):
    """Number of positions at which two equal-length words differ."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise LengthMismatch(f"word lengths differ: {len(u)} vs {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def d_hamm_weighted(u, v, label_metric):
    """Hamming distance graded by a similarity metric on labels."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise LengthMismatch(f"word lengths differ: {len(u)} vs {len(v)}")
    total = Fraction(0)
    for a, b in zip(u, v):
        total += Fraction(label_metric(a, b))
    return total


def d_ghamm(u, v):
    """Hamming distance of the shorter word against the longer word's prefix,
    plus the length difference."""
    u, v = tuple(u), tuple(v)
    if len(u) > len(v):
        u, v = v, u
    return d_hamm(u, v[: len(u)]) + (len(v) - len(u))


def d_lev(u, v):
    """Levenshtein distance with a minimum-weight edit sequence as witness.

    Ties are broken deterministically: keep/substitute, then delete from the
    first word, then insert from the second.
    """
    u, v = tuple(u), tuple(v)
    n, m = len(u), len(v)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i
    for j in range(1, m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            sub = dist[i - 1][j - 1] + (0 if u[i - 1] == v[j - 1] else 1)
            dist[i][j] = min(sub, dist[i - 1][j] + 1, dist[i][j - 1] + 1)
    ops = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            sub = dist[i - 1][j - 1] + (0 if u[i - 1] == v[j - 1] else 1)
            if dist[i][j] == sub:
                ops.append((u[i - 1], v[j - 1]))
                i, j = i - 1, j - 1
                continue
        if i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            ops.append((u[i - 1], EPSILON))
            i -= 1
            continue
        ops.append((EPSILON, v[j - 1]))
        j -= 1
    witness = EditSequence(tuple(reversed(ops)))
    return dist[n][m], witness


# ---------------------------------------------------------------------------
# strategy distances


def _require_same_player(sigma, tau):
    if sigma.player != tau.player:
        raise PreconditionViolated(
            f"strategies are for different players: {sigma.player} vs {tau.player}"
        )


def disagreement_vertices(game, sigma, tau):
    _require_same_player(sigma, tau)
    owned = game.owned_by(sigma.player)
    return frozenset(v for v in owned if sigma.choice[v] != tau.choice[v])


def d_hamm_s(game, sigma, tau):
    """Number of owned vertices where two strategies choose differently."""
    return len(disagreement_vertices(game, sigma, tau))


def d_pref_hausdorff(game, sigma, tau):
    """Hausdorff lifting of the path prefix distance to strategies.

    Equals 2^-(j+1) where j is the least edge-distance from the initial
    vertex, inside the graph of edges both strategies allow, to an owned
    vertex where the strategies disagree; 0 when no disagreement is
    reachable there (the play sets then coincide).
    """
    _require_same_player(sigma, tau)
    diff = disagreement_vertices(game, sigma, tau)
    if not diff:
        return Fraction(0)
    owned = game.owned_by(sigma.player)
    common = {}
    for v in game.vertices:
        if v in owned:
            common[v] = (sigma.choice[v],) if v not in diff else ()
        else:
            common[v] = game.successors(v)
    depth = {game.initial: 0}
    frontier = [game.initial]
    while frontier:
        nxt = []
        for v in frontier:
            if v in diff:
                return dyadic(depth[v] + 1)
            for u in common[v]:
                if u not in depth:
                    depth[u] = depth[v] + 1
                    nxt.append(u)
        frontier = sorted(nxt)
    return Fraction(0)


def play_dist(game, play, strategy):
    """Distinct owned vertices on the play where its move contradicts the
    strategy.  Lassos are evaluated over the stem plus one cycle unrolling."""
    owned = game.owned_by(strategy.player)
    hit = set()
    for v, w in play.steps():
        if v in owned and strategy.choice[v] != w:
            hit.add(v)
    return len(hit)


def dstrat(game, tau, sigma, budget=None):
    """Supremum of play_dist(rho, sigma) over all tau-plays.

    Exhaustive walk of the (vertex, counted-set) graph; the counted set only
    grows along edges, so the reachable values are exactly the achievable
    play distances.  Worst case exponential; guarded by the budget.
    """
    _require_same_player(sigma, tau)
    budget = as_budget(budget)
    adj = strategy_adjacency(game, tau)
    owned = game.owned_by(sigma.player)
    start = (game.initial, frozenset())
    seen = {start}
    stack = [start]
    best = 0
    while stack:
        v, counted = stack.pop()
        budget.charge()
        if len(counted) > best:
            best = len(counted)
        for u in adj[v]:
            nxt = counted
            if v in owned and sigma.choice[v] != u:
                nxt = counted | {v}
            state = (u, nxt)
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return best


def dstar(game, tau, sigma, budget=None):
    """Max of the two directed play-distance suprema between two strategies."""
    budget = as_budget(budget)
    return max(dstrat(game, tau, sigma, budget), dstrat(game, sigma, tau, budget))


# ---------------------------------------------------------------------------
# rendering


def format_distance(d):
    """Canonical text form: "inf", an integer, or "p/q"."""
    if d == INF:
        return "inf"
    if isinstance(d, Fraction):
        if d.denominator == 1:
            return str(d.numerator)
        return f"{d.numerator}/{d.denominator}"
    return str(int(d)) if float(d).is_integer() else repr(d)


def parse_distance(text):
    if text == "inf":
        return INF
    if "/" in text:
        return Fraction(text)
    return int(text)
