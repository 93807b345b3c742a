"""Counterfactual cause checking for executions of transition systems.

A state set C is a cause for an effect property (reaching E, or staying clear
of E) on a given execution when every C-avoiding maximal path closest to the
execution under the chosen distance fails the property.  Each distance gets a
polynomial checker plus a shared brute-force oracle that applies the
definition literally on enumerable systems.
"""

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotLayered, PreconditionViolated
from .model import (
    MaximalFinitePath,
    exists_maximal_path_avoiding,
    exists_path_reaching_avoiding,
    maximal_avoiding_set,
    maximal_paths,
    validate_maximal_path,
)
from . import distances
from .distances import INF, dyadic

PHI_REACH = "reach"  # eventually reach E
PHI_SAFE = "safe"  # never visit E

METRIC_PREF = "pref"
METRIC_PREF_AP = "pref-ap"
METRIC_HAMM = "hamm"
METRIC_GHAMM = "ghamm"
METRIC_LEV = "lev"

TS_METRICS = (METRIC_PREF, METRIC_PREF_AP, METRIC_HAMM, METRIC_GHAMM, METRIC_LEV)


@dataclass(frozen=True)
class CauseQuery:
    ts: object
    pi: MaximalFinitePath
    cause: frozenset
    effect: frozenset
    phi: str
    metric: str
    label_metric: object = None
    witnesses: int = 3


@dataclass(frozen=True)
class Witness:
    path: tuple
    distance: object
    satisfies_phi: bool


@dataclass(frozen=True)
class CauseVerdict:
    is_cause: bool
    min_distance: object
    witnesses: tuple = ()
    condition1: bool = True


@dataclass(frozen=True)
class WeightedGraph:
    """Non-negatively weighted digraph used by the shortest-path checkers."""

    nodes: tuple
    start: object
    edges: dict  # node -> tuple of (target, weight, tag)
    goals: dict  # name -> frozenset of nodes
    start_weight: int = 0


def path_satisfies_phi(ts, sequence, effect, phi):
    visits = any(s in effect for s in sequence)
    return visits if phi == PHI_REACH else not visits


def validate_query(query, allow_overlap=False):
    ts = query.ts
    states = set(ts.states)
    for s in sorted(query.cause | query.effect):
        if s not in states:
            raise PreconditionViolated(f"{s!r} is not a state")
    for e in sorted(query.effect):
        if not ts.is_terminal(e):
            raise PreconditionViolated(f"effect state {e!r} is not terminal")
    if not allow_overlap and query.cause & query.effect:
        raise PreconditionViolated(
            f"cause and effect overlap at {sorted(query.cause & query.effect)}"
        )
    if query.phi not in (PHI_REACH, PHI_SAFE):
        raise PreconditionViolated(f"unknown effect property {query.phi!r}")
    if query.metric not in TS_METRICS:
        raise PreconditionViolated(f"unknown metric {query.metric!r}")
    pi = validate_maximal_path(ts, query.pi.sequence)
    if not any(s in query.cause for s in pi.sequence):
        raise PreconditionViolated("the given execution does not visit the cause set")
    if not path_satisfies_phi(ts, pi.sequence, query.effect, query.phi):
        raise PreconditionViolated(
            "the given execution does not satisfy the effect property"
        )
    return pi


def check_cause(query, allow_overlap=False):
    """Dispatch to the metric-specific polynomial checker."""
    if query.metric in (METRIC_PREF, METRIC_PREF_AP):
        return check_cause_pref_ap(query, allow_overlap=allow_overlap)
    if query.metric == METRIC_HAMM:
        return check_cause_hamm_layered(query, allow_overlap=allow_overlap)
    if query.metric == METRIC_GHAMM:
        return check_cause_ghamm(query, allow_overlap=allow_overlap)
    if query.metric == METRIC_LEV:
        return check_cause_lev(query, allow_overlap=allow_overlap)
    raise PreconditionViolated(f"unknown metric {query.metric!r}")


# ---------------------------------------------------------------------------
# prefix distances


def check_cause_pref_ap(query, allow_overlap=False):
    """Layered fixpoint checker for the prefix distances.

    Builds, position by position, the set of states reachable through
    C-avoiding prefixes matching the execution (by label, or by state for the
    path-based variant), each restricted to states from which a C-avoiding
    maximal path still exists.  The last non-empty layer pins the minimal
    distance; the verdict asks whether every C-avoiding continuation from it
    fails the effect property.
    """
    pi = validate_query(query, allow_overlap)
    ts, cause, effect, phi = query.ts, query.cause, query.effect, query.phi
    by_states = query.metric == METRIC_PREF
    seq = pi.sequence
    n_last = len(seq) - 1

    def symbol(state):
        return state if by_states else ts.label(state)

    target_symbols = [symbol(s) for s in seq]
    can_avoid = maximal_avoiding_set(ts._succ, cause)

    layers = []
    parents = []
    first = {ts.initial} if ts.initial in can_avoid else set()
    layers.append(first)
    parents.append({ts.initial: None} if first else {})
    for j in range(1, len(seq)):
        layer = {}
        for s in sorted(layers[j - 1]):
            for t in ts.successors(s):
                if t in can_avoid and symbol(t) == target_symbols[j]:
                    if t not in layer:
                        layer[t] = s
        layers.append(set(layer))
        parents.append(layer)

    if not layers[0]:
        return CauseVerdict(False, INF, (), condition1=False)

    i_max = max(j for j, layer in enumerate(layers) if layer)

    exact_terminals = (
        sorted(t for t in layers[n_last] if ts.is_terminal(t))
        if i_max == n_last
        else []
    )
    if exact_terminals:
        min_d = Fraction(0)
        if phi == PHI_REACH:
            bad = [t for t in exact_terminals if t in effect]
        else:
            bad = [t for t in exact_terminals if t not in effect]
        is_cause = not bad
        witness_paths = []
        for t in exact_terminals[: query.witnesses]:
            witness_paths.append(_reconstruct_prefix(parents, n_last, t))
        wits = _finish_witnesses(query, witness_paths, min_d)
        return CauseVerdict(is_cause, min_d, wits)

    min_d = dyadic(i_max + 1)
    frontier = sorted(layers[i_max])
    offenders = []
    for t in frontier:
        if phi == PHI_REACH:
            if exists_path_reaching_avoiding(ts, t, effect, cause):
                offenders.append(t)
        else:
            if exists_maximal_path_avoiding(ts, t, cause | effect):
                offenders.append(t)
    is_cause = not offenders

    witness_paths = []
    for t in frontier[: query.witnesses]:
        prefix = _reconstruct_prefix(parents, i_max, t)
        cont = _finite_avoiding_continuation(
            ts, t, cause, effect, phi, prefer_phi=(t in offenders)
        )
        if cont is not None:
            witness_paths.append(prefix[:-1] + cont)
    wits = _finish_witnesses(query, witness_paths, min_d)
    return CauseVerdict(is_cause, min_d, wits)


def _reconstruct_prefix(parents, j, t):
    out = [t]
    while j > 0:
        t = parents[j][t]
        out.append(t)
        j -= 1
    return tuple(reversed(out))


def _finite_avoiding_continuation(ts, start, cause, effect, phi, prefer_phi):
    """A finite maximal C-avoiding path from `start`, preferring one that
    satisfies the effect property when asked.  None if only infinite
    continuations exist."""
    if prefer_phi and phi == PHI_REACH:
        path = _bfs_path(ts, start, effect, cause)
        if path is not None:
            return path
    if prefer_phi and phi == PHI_SAFE:
        goals = {s for s in ts.states if ts.is_terminal(s) and s not in effect}
        path = _bfs_path(ts, start, goals, cause | effect)
        if path is not None:
            return path
    goals = {s for s in ts.states if ts.is_terminal(s)}
    return _bfs_path(ts, start, goals, cause)


def _bfs_path(ts, start, targets, avoid):
    if start in avoid:
        return None
    parent = {start: None}
    queue = [start]
    while queue:
        nxt = []
        for v in queue:
            if v in targets:
                out = []
                while v is not None:
                    out.append(v)
                    v = parent[v]
                return tuple(reversed(out))
            for u in ts.successors(v):
                if u not in avoid and u not in parent:
                    parent[u] = v
                    nxt.append(u)
        queue = sorted(nxt)
    return None


def _finish_witnesses(query, paths, distance):
    ts, effect, phi = query.ts, query.effect, query.phi
    out = []
    seen = set()
    for p in paths:
        if p and p not in seen:
            seen.add(p)
            out.append(Witness(p, distance, path_satisfies_phi(ts, p, effect, phi)))
    out.sort(key=lambda w: (not w.satisfies_phi, w.path))
    return tuple(out[: query.witnesses])


# ---------------------------------------------------------------------------
# layered Hamming


def validate_layered(ts):
    """Depth of every reachable state; NotLayered if depths are ambiguous or
    maximal paths have different lengths."""
    depth = {ts.initial: 0}
    frontier = [ts.initial]
    while frontier:
        nxt = []
        for s in frontier:
            for t in ts.successors(s):
                if t in depth:
                    if depth[t] != depth[s] + 1:
                        raise NotLayered(
                            f"state {t!r} is reachable at depths {depth[t]} "
                            f"and {depth[s] + 1}"
                        )
                else:
                    depth[t] = depth[s] + 1
                    nxt.append(t)
        frontier = sorted(nxt)
    last = max(depth.values())
    for s, d in sorted(depth.items()):
        if ts.is_terminal(s) and d != last:
            raise NotLayered(
                f"terminal state {s!r} sits at depth {d}, not the last layer {last}"
            )
    return depth


def check_cause_hamm_layered(query, allow_overlap=False):
    """Shortest-path checker for the plain Hamming distance on layered
    systems: per-layer 0/1 state weights turn Hamming distance into
    accumulated path weight."""
    pi = validate_query(query, allow_overlap)
    ts, cause, effect, phi = query.ts, query.cause, query.effect, query.phi
    depth = validate_layered(ts)
    seq = pi.sequence
    metric = query.label_metric or (lambda a, b: 0 if a == b else 1)

    def node_weight(state):
        return Fraction(metric(ts.label(state), ts.label(seq[depth[state]])))

    graph = _state_graph(ts, cause, depth, node_weight, effect)
    return _shortest_path_verdict(query, graph, project=_project_state_route)


def _state_graph(ts, cause, depth, node_weight, effect):
    reachable = sorted(depth)
    nodes = tuple(s for s in reachable if s not in cause)
    node_set = set(nodes)
    edges = {}
    for s in nodes:
        out = []
        for t in ts.successors(s):
            if t in node_set:
                out.append((t, node_weight(t), "step"))
        edges[s] = tuple(out)
    terminals = {s for s in nodes if ts.is_terminal(s)}
    goals = {
        "effect": frozenset(terminals & effect),
        "other": frozenset(terminals - effect),
    }
    start = ts.initial if ts.initial in node_set else None
    start_weight = node_weight(ts.initial) if start else 0
    return WeightedGraph(nodes, start, edges, goals, start_weight)


# ---------------------------------------------------------------------------
# generalized Hamming


def build_ghamm_graph(ts, pi_sequence, cause=frozenset()):
    """Copy construction for the generalized Hamming distance.

    One copy of the C-free state space per execution position; mismatching
    labels cost 1 per position, early termination jumps to the last copy at
    the cost of the length difference, and overshoot steps inside the last
    copy cost 1 each.
    """
    seq = tuple(pi_sequence)
    n = len(seq)
    alive = [s for s in ts.states if s not in cause]
    alive_set = set(alive)

    def mismatch(state, copy):
        return 0 if ts.label(state) == ts.label(seq[copy - 1]) else 1

    nodes = []
    edges = {}
    for i in range(1, n + 1):
        for s in alive:
            node = (s, i)
            nodes.append(node)
            out = []
            if i < n:
                for t in ts.successors(s):
                    if t in alive_set:
                        out.append(((t, i + 1), mismatch(t, i + 1), "step"))
                if ts.is_terminal(s):
                    out.append(((s, n), n - i, "jump"))
            else:
                for t in ts.successors(s):
                    if t in alive_set:
                        out.append(((t, n), 1, "step"))
            edges[node] = tuple(out)
    terminals = {(s, n) for s in alive if ts.is_terminal(s)}
    start = (ts.initial, 1) if ts.initial in alive_set else None
    start_weight = mismatch(ts.initial, 1) if start else 0
    return WeightedGraph(tuple(nodes), start, edges, {"terminal": frozenset(terminals)}, start_weight)


def check_cause_ghamm(query, allow_overlap=False):
    validate_query(query, allow_overlap)
    graph = build_ghamm_graph(query.ts, query.pi.sequence, query.cause)
    graph = _split_goals(graph, query.effect)
    return _shortest_path_verdict(query, graph, project=_project_copy_route)


def _split_goals(graph, effect):
    terminals = graph.goals["terminal"]
    goals = {
        "effect": frozenset(node for node in terminals if node[0] in effect),
        "other": frozenset(node for node in terminals if node[0] not in effect),
    }
    return WeightedGraph(graph.nodes, graph.start, graph.edges, goals, graph.start_weight)


def _project_copy_route(route):
    """Collapse a copy-graph route to the underlying state path."""
    start, edges = route
    states = [start[0]]
    for target, _weight, tag in edges:
        if tag == "step":
            states.append(target[0])
    return tuple(states)


def _project_state_route(route):
    start, edges = route
    return (start,) + tuple(target for target, _weight, _tag in edges)


# ---------------------------------------------------------------------------
# Levenshtein


def build_lev_product(ts, pi_sequence, cause=frozenset()):
    """Product of the system with the execution's positions, edit-labeled.

    Advancing both sides costs 0 on a label match and 1 otherwise; staying in
    a copy inserts into the comparison path's trace; skipping a position
    deletes from the execution's trace.
    """
    seq = tuple(pi_sequence)
    n = len(seq)
    alive = [s for s in ts.states if s not in cause]
    alive_set = set(alive)
    nodes = []
    edges = {}
    for i in range(1, n + 1):
        for s in alive:
            node = (s, i)
            nodes.append(node)
            out = []
            for t in ts.successors(s):
                if t not in alive_set:
                    continue
                if i < n:
                    w = 0 if ts.label(seq[i]) == ts.label(t) else 1
                    out.append(((t, i + 1), w, "step"))
                out.append(((t, i), 1, "step"))
            if i < n:
                out.append(((s, i + 1), 1, "skip"))
            edges[node] = tuple(out)
    terminals = {(s, n) for s in alive if ts.is_terminal(s)}
    start = (ts.initial, 1) if ts.initial in alive_set else None
    return WeightedGraph(tuple(nodes), start, edges, {"terminal": frozenset(terminals)}, 0)


def check_cause_lev(query, allow_overlap=False):
    validate_query(query, allow_overlap)
    graph = build_lev_product(query.ts, query.pi.sequence, query.cause)
    graph = _split_goals(graph, query.effect)
    return _shortest_path_verdict(query, graph, project=_project_copy_route)


# ---------------------------------------------------------------------------
# shared shortest-path verdict logic


def dijkstra(graph):
    """Deterministic Dijkstra from the graph's start node.

    Returns (dist, parent); parent maps a node to the (node, edge) pair that
    finalized it.  Ties resolve by node order in the heap.
    """
    dist = {}
    parent = {}
    if graph.start is None:
        return dist, parent
    heap = [(graph.start_weight, graph.start, None)]
    while heap:
        d, node, via = heapq.heappop(heap)
        if node in dist:
            continue
        dist[node] = d
        parent[node] = via
        for edge in graph.edges.get(node, ()):
            target, weight, _tag = edge
            if target not in dist:
                heapq.heappush(heap, (d + weight, target, (node, edge)))
    return dist, parent


def _route_to(parent, node):
    """Route as (start_node, [edge, ...]) following the dijkstra parents."""
    edges = []
    cur = node
    while parent[cur] is not None:
        prev, edge = parent[cur]
        edges.append(edge)
        cur = prev
    edges.reverse()
    return cur, edges


def _shortest_path_verdict(query, graph, project):
    ts, effect, phi = query.ts, query.effect, query.phi
    dist, parent = dijkstra(graph)
    effect_goals = graph.goals["effect"]
    other_goals = graph.goals["other"]

    def best(goals):
        reached = [(dist[g], g) for g in sorted(goals) if g in dist]
        return min(reached) if reached else (INF, None)

    zeta, zeta_node = best(effect_goals)
    xi_other, xi_node = best(other_goals)
    min_d = min(zeta, xi_other)

    if min_d == INF:
        condition1 = exists_maximal_path_avoiding(ts, ts.initial, query.cause)
        if not condition1:
            return CauseVerdict(False, INF, (), condition1=False)
        # Only infinite comparison paths remain; they never reach the
        # (terminal) effect states, so they satisfy the safety property.
        return CauseVerdict(phi == PHI_REACH, INF, ())

    if phi == PHI_REACH:
        is_cause = xi_other < zeta
    else:
        is_cause = zeta < xi_other

    witness_paths = []
    for value, node in ((xi_other, xi_node), (zeta, zeta_node)):
        if node is not None and value == min_d:
            witness_paths.append(project(_route_to(parent, node)))
    wits = _finish_witnesses(query, witness_paths, min_d)
    return CauseVerdict(is_cause, min_d, wits)


# ---------------------------------------------------------------------------
# definitional oracle


def metric_distance(query, rho_sequence):
    """Distance between the query's execution and a comparison path."""
    ts, pi = query.ts, query.pi.sequence
    rho = tuple(rho_sequence)
    if query.metric == METRIC_PREF:
        return distances.d_pref(pi, rho)
    if query.metric == METRIC_PREF_AP:
        return distances.d_pref_ap(ts.trace(pi), ts.trace(rho))
    if query.metric == METRIC_HAMM:
        if query.label_metric is not None:
            return distances.d_hamm_weighted(
                ts.trace(pi), ts.trace(rho), query.label_metric
            )
        return distances.d_hamm(ts.trace(pi), ts.trace(rho))
    if query.metric == METRIC_GHAMM:
        return distances.d_ghamm(ts.trace(pi), ts.trace(rho))
    if query.metric == METRIC_LEV:
        return distances.d_lev(ts.trace(pi), ts.trace(rho))[0]
    raise PreconditionViolated(f"unknown metric {query.metric!r}")


def brute_force_check(query, max_len=None, budget=None, allow_overlap=False):
    """Apply the cause definition literally by enumerating maximal paths.

    Exact on acyclic systems.  On cyclic systems a `max_len` cap must be
    supplied and the oracle only sees finite maximal paths up to that length,
    so its verdict is sound only relative to that enumeration window.
    """
    validate_query(query, allow_overlap)
    ts = query.ts
    paths = maximal_paths(ts, max_len=max_len, budget=budget)
    avoiders = [p for p in paths if not any(s in query.cause for s in p)]
    if not avoiders:
        return CauseVerdict(False, INF, (), condition1=False)
    scored = [(metric_distance(query, p), p) for p in avoiders]
    min_d = min(d for d, _ in scored)
    minimal = [p for d, p in scored if d == min_d]
    statuses = {
        p: path_satisfies_phi(ts, p, query.effect, query.phi) for p in minimal
    }
    is_cause = not any(statuses.values())
    ordered = sorted(minimal, key=lambda p: (statuses[p] == is_cause, p))
    wits = tuple(
        Witness(p, min_d, statuses[p]) for p in ordered[: query.witnesses]
    )
    return CauseVerdict(is_cause, min_d, wits)
