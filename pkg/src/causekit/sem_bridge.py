"""Boolean structural equation models, their tree unrolling, but-for causes,
and the correspondence with Hamming-distance counterfactual causes.

Each variable is governed by a truth table over the lower-indexed variables.
Unrolling yields a full binary tree whose states are partial valuations: the
default child extends a node by the equation's value, the intervention child
by the flip, and intervention-entered states carry a distinguishing label.
"""

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, PreconditionViolated
from .model import TransitionSystem, validate_maximal_path
from .ts_causality import (
    METRIC_HAMM,
    PHI_REACH,
    CauseQuery,
    check_cause_hamm_layered,
)

LABEL_PLAIN = ""
LABEL_INTERVENTION = "intervention"

MAX_UNROLL_VARIABLES = 16


@dataclass(frozen=True)
class StructuralEquationModel:
    """Boolean SEM: tables[i] lists f_i over all prefixes of X_1..X_i-1.

    tables[i] has 2**i entries, indexed by reading the prefix bits as a
    binary number with the first variable as the most significant bit.
    """

    variables: tuple
    tables: tuple

    def __post_init__(self):
        if not self.variables:
            raise PreconditionViolated("a SEM needs at least one variable")
        if len(self.tables) != len(self.variables):
            raise PreconditionViolated("one truth table per variable required")
        for i, table in enumerate(self.tables):
            if len(table) != 2 ** i:
                raise PreconditionViolated(
                    f"table for {self.variables[i]!r} must have {2 ** i} entries"
                )

    @property
    def n(self):
        return len(self.variables)

    def equation(self, index, prefix):
        """Value of f_index for the given prefix of variable values."""
        pos = 0
        for bit in prefix:
            pos = (pos << 1) | int(bit)
        return bool(self.tables[index][pos])

    def index_of(self, variable):
        try:
            return self.variables.index(variable)
        except ValueError:
            raise PreconditionViolated(f"unknown variable {variable!r}") from None


def evaluate_default(sem):
    """Evaluate all equations without interventions."""
    values = []
    for i in range(sem.n):
        values.append(sem.equation(i, values))
    return tuple(values)


def intervened_valuation(sem, intervened):
    """Mixed evaluation: equations everywhere except the intervened variables,
    which take the flip of their equation value (the only Boolean option)."""
    indices = {sem.index_of(x) for x in intervened}
    values = []
    for i in range(sem.n):
        v = sem.equation(i, values)
        values.append((not v) if i in indices else v)
    return tuple(values)


def is_but_for_cause(sem, effect, variables):
    """Minimal variable set whose forced flips steer the outcome out of the
    effect set.  Minimality is checked by exhausting proper subsets."""
    effect = frozenset(tuple(v) for v in effect)
    if evaluate_default(sem) not in effect:
        raise PreconditionViolated("the default valuation does not exhibit the effect")
    xs = tuple(sorted(variables, key=sem.index_of))
    if intervened_valuation(sem, xs) in effect:
        return False
    for r in range(len(xs)):
        for subset in _subsets(xs, r):
            if intervened_valuation(sem, subset) not in effect:
                return False
    return True


def _subsets(items, size):
    from itertools import combinations

    return combinations(items, size)


def but_for_causes(sem, effect):
    """All but-for causes of the effect, as sorted variable tuples."""
    out = []
    for r in range(1, sem.n + 1):
        for xs in _subsets(sem.variables, r):
            if intervened_valuation(sem, xs) not in frozenset(
                tuple(v) for v in effect
            ):
                if is_but_for_cause(sem, effect, xs):
                    out.append(xs)
    return out


# ---------------------------------------------------------------------------
# tree unrolling


def state_id(bits):
    return "v" + "".join("1" if b else "0" for b in bits)


def unroll_to_ts(sem):
    """Unroll a SEM into its intervention-labeled valuation tree."""
    if sem.n > MAX_UNROLL_VARIABLES:
        raise BudgetExceeded(
            f"unrolling {sem.n} variables needs {2 ** (sem.n + 1) - 1} states"
        )
    states = []
    labeling = {}
    transitions = set()
    for level in range(sem.n + 1):
        for bits in product((False, True), repeat=level):
            sid = state_id(bits)
            states.append(sid)
            if level == 0:
                labeling[sid] = LABEL_PLAIN
            else:
                default = sem.equation(level - 1, bits[:-1])
                labeling[sid] = (
                    LABEL_PLAIN if bits[-1] == default else LABEL_INTERVENTION
                )
            if level < sem.n:
                transitions.add((sid, state_id(bits + (False,))))
                transitions.add((sid, state_id(bits + (True,))))
    return TransitionSystem(
        states=tuple(sorted(states)),
        initial=state_id(()),
        transitions=frozenset(transitions),
        labeling=labeling,
        alphabet=(LABEL_PLAIN, LABEL_INTERVENTION),
    )


def default_path_states(sem):
    values = evaluate_default(sem)
    return tuple(state_id(values[:i]) for i in range(sem.n + 1))


def effect_leaves(sem, effect):
    return frozenset(state_id(tuple(v)) for v in effect)


def butfor_to_cause_set(sem, variables):
    """States entered by a default step for one of the given variables."""
    indices = sorted(sem.index_of(x) for x in variables)
    cause = set()
    for i in indices:
        for bits in product((False, True), repeat=i):
            default = sem.equation(i, bits)
            cause.add(state_id(bits + (default,)))
    return frozenset(cause)


def bridge_check(sem, effect, variables, witnesses=3):
    """Hamming cause check for the default execution against the cause states
    induced by a variable set.

    The induced cause set may include effect leaves (a default step for the
    last variable ends in a leaf), so the usual cause/effect disjointness is
    deliberately not enforced here; avoiding the cause set excludes those
    leaves from the comparison paths either way.
    """
    effect = frozenset(tuple(v) for v in effect)
    for v in effect:
        if len(v) != sem.n:
            raise PreconditionViolated("effect valuations must be total")
    if not variables:
        raise PreconditionViolated("an empty variable set induces no cause states")
    ts = unroll_to_ts(sem)
    pi = validate_maximal_path(ts, default_path_states(sem))
    query = CauseQuery(
        ts=ts,
        pi=pi,
        cause=butfor_to_cause_set(sem, variables),
        effect=effect_leaves(sem, effect),
        phi=PHI_REACH,
        metric=METRIC_HAMM,
        witnesses=witnesses,
    )
    return check_cause_hamm_layered(query, allow_overlap=True)


# ---------------------------------------------------------------------------
# file format


def sem_to_json(sem):
    return {
        "kind": "sem",
        "variables": list(sem.variables),
        "tables": [[bool(x) for x in t] for t in sem.tables],
    }


def sem_from_json(data):
    if data.get("kind") != "sem":
        raise PreconditionViolated(f"not a SEM document: kind={data.get('kind')!r}")
    return StructuralEquationModel(
        variables=tuple(data["variables"]),
        tables=tuple(tuple(bool(x) for x in t) for t in data["tables"]),
    )


def effect_from_json(sem, data):
    """Effect sets arrive as explicit valuation lists or as a predicate on the
    last k variables ({"last": k, "values": [...]}), expanded extensionally."""
    if isinstance(data, dict):
        k = int(data["last"])
        if not 1 <= k <= sem.n:
            raise PreconditionViolated(f"predicate arity {k} out of range")
        accepted = {tuple(bool(b) for b in v) for v in data["values"]}
        for v in accepted:
            if len(v) != k:
                raise PreconditionViolated("predicate rows must have length k")
        return frozenset(
            full
            for full in product((False, True), repeat=sem.n)
            if full[-k:] in accepted
        )
    out = set()
    for v in data:
        v = tuple(bool(b) for b in v)
        if len(v) != sem.n:
            raise PreconditionViolated("effect valuations must be total")
        out.add(v)
    return frozenset(out)
