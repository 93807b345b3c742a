"""Command-line interface: machine-readable verdict documents, stable bytes.

Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or model error,
3 budget exhausted.  Documents serialize with sorted keys so a fixed seed and
budget reproduce identical bytes.
"""

import argparse
import json
import sys

from . import distances, game_causality, generators, sem_bridge, ts_causality
from .errors import Budget, BudgetExceeded, CausekitError, NoWinningStrategy
from .model import (
    MaximalFinitePath,
    dumps_canonical,
    load_model,
    load_path,
    load_strategy,
    model_to_json,
    strategy_to_json,
    validate_model,
)

WORD_METRICS = ("pref-ap", "hamm", "ghamm", "lev")
PATH_METRICS = ("pref",)
STRATEGY_METRICS = ("pref-h", "hamm-s", "dstar")
STRATEGY_DISTANCES = STRATEGY_METRICS + ("dstrat",)


def _split(text):
    return frozenset(x for x in (text or "").split(",") if x)


def _word(text):
    return tuple((text or "").split(",")) if text else ()


def _edit_json(seq):
    return [[a, b] for a, b in seq.symbols]


def _ts_witnesses(verdict):
    return [
        {
            "path": list(w.path),
            "distance": distances.format_distance(w.distance),
            "satisfiesPhi": w.satisfies_phi,
        }
        for w in verdict.witnesses
    ]


def _game_witnesses(verdict):
    return [
        {
            "strategy": strategy_to_json(w.strategy),
            "distance": distances.format_distance(w.distance),
            "winning": w.winning,
        }
        for w in verdict.witnesses
    ]


def _diag(budget):
    return {"budgetLimit": budget.limit, "budgetUsed": budget.used}


def _emit(args, doc):
    sys.stdout.write(dumps_canonical(doc))
    if getattr(args, "pretty", False):
        width = max((len(k) for k in doc), default=0)
        for key in sorted(doc):
            sys.stdout.write(f"{key.ljust(width)}  {json.dumps(doc[key], sort_keys=True)}\n")


def _add_common(parser):
    parser.add_argument("--budget", type=int, default=Budget.DEFAULT_LIMIT)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--witnesses", type=int, default=3)
    parser.add_argument("--pretty", action="store_true")


# ---------------------------------------------------------------------------
# commands


def cmd_ts_cause(args, oracle=False):
    ts = load_model(args.model)
    pi = MaximalFinitePath(load_path(args.path))
    query = ts_causality.CauseQuery(
        ts=ts,
        pi=pi,
        cause=_split(args.cause),
        effect=_split(args.effect),
        phi=args.phi,
        metric=args.metric,
        witnesses=args.witnesses,
    )
    budget = Budget(args.budget)
    if oracle:
        verdict = ts_causality.brute_force_check(
            query, max_len=args.max_len, budget=budget
        )
    else:
        verdict = ts_causality.check_cause(query)
    doc = {
        "command": "oracle ts-cause" if oracle else "ts-cause",
        "inputs": {
            "model": args.model,
            "path": list(pi.sequence),
            "cause": sorted(query.cause),
            "effect": sorted(query.effect),
            "phi": args.phi,
            "metric": args.metric,
        },
        "verdict": verdict.is_cause,
        "minDistance": distances.format_distance(verdict.min_distance),
        "condition1": verdict.condition1,
        "witnesses": _ts_witnesses(verdict),
        "diagnostics": _diag(budget),
    }
    return doc, 0 if verdict.is_cause else 1


def cmd_game_cause(args, oracle=False):
    game = load_model(args.model)
    sigma = load_strategy(args.strategy)
    query = game_causality.GameCauseQuery(
        game=game,
        player=args.player,
        sigma=sigma,
        cause=_split(args.cause),
        metric=args.metric,
        witnesses=args.witnesses,
    )
    budget = Budget(args.budget)
    if oracle:
        verdict = game_causality.brute_force_check_cause(query, budget=budget)
    else:
        verdict = game_causality.check_cause_game(query, budget=budget)
    doc = {
        "command": "oracle game-cause" if oracle else "game-cause",
        "inputs": {
            "model": args.model,
            "player": args.player,
            "cause": sorted(query.cause),
            "metric": args.metric,
        },
        "verdict": verdict.is_cause,
        "minDistance": distances.format_distance(verdict.min_distance),
        "condition1": verdict.condition1,
        "condition2": verdict.condition2,
        "witnesses": _game_witnesses(verdict),
        "diagnostics": _diag(budget),
    }
    return doc, 0 if verdict.is_cause else 1


def cmd_solve(args):
    game = load_model(args.model)
    analysis = game_causality.solve(game)
    winner = "reach" if game.initial in analysis.reach_region else "safe"
    doc = {
        "command": "solve",
        "inputs": {"model": args.model},
        "verdict": winner,
        "reachRegion": sorted(analysis.reach_region),
        "safeRegion": sorted(analysis.safe_region),
        "reachStrategy": strategy_to_json(analysis.reach_strategy),
        "safeStrategy": strategy_to_json(analysis.safe_strategy),
    }
    return doc, 0


def cmd_explain(args):
    game = load_model(args.model)
    sigma = load_strategy(args.strategy)
    budget = Budget(args.budget)
    inputs = {"model": args.model, "player": sigma.player}
    if args.check is not None:
        ok, tau = game_causality.is_explanation(game, sigma, _split(args.check))
        doc = {
            "command": "explain check",
            "inputs": {**inputs, "set": sorted(_split(args.check))},
            "verdict": ok,
            "witness": strategy_to_json(tau) if tau else None,
            "diagnostics": _diag(budget),
        }
        return doc, 0 if ok else 1
    if args.check_minimal is not None:
        ok = game_causality.is_minimal_explanation(
            game, sigma, _split(args.check_minimal), args.metric, budget=budget
        )
        doc = {
            "command": "explain check-minimal",
            "inputs": {
                **inputs,
                "set": sorted(_split(args.check_minimal)),
                "metric": args.metric,
            },
            "verdict": ok,
            "diagnostics": _diag(budget),
        }
        return doc, 0 if ok else 1
    try:
        explanation = game_causality.extract_explanation(
            game, sigma, _split(args.cause)
        )
    except NoWinningStrategy as exc:
        doc = {
            "command": "explain",
            "inputs": {**inputs, "cause": sorted(_split(args.cause))},
            "verdict": False,
            "reason": str(exc),
            "diagnostics": _diag(budget),
        }
        return doc, 1
    doc = {
        "command": "explain",
        "inputs": {**inputs, "cause": sorted(_split(args.cause))},
        "verdict": True,
        "explanation": sorted(explanation.vertex_set),
        "witness": strategy_to_json(explanation.witness),
        "diagnostics": _diag(budget),
    }
    return doc, 0


def cmd_distance(args):
    budget = Budget(args.budget)
    metric = args.metric
    doc = {"command": "distance", "inputs": {"metric": metric}}
    if metric in WORD_METRICS:
        u, v = _word(args.u), _word(args.v)
        doc["inputs"]["u"] = list(u)
        doc["inputs"]["v"] = list(v)
        if metric == "pref-ap":
            value = distances.d_pref_ap(u, v)
        elif metric == "hamm":
            value = distances.d_hamm(u, v)
        elif metric == "ghamm":
            value = distances.d_ghamm(u, v)
        else:
            value, witness = distances.d_lev(u, v)
            doc["editSequence"] = _edit_json(witness)
    elif metric in PATH_METRICS:
        load_model(args.model)
        p, q = load_path(args.p), load_path(args.q)
        doc["inputs"]["p"], doc["inputs"]["q"] = list(p), list(q)
        value = distances.d_pref(p, q)
    elif metric in STRATEGY_DISTANCES:
        game = load_model(args.model)
        sigma = load_strategy(args.sigma)
        tau = load_strategy(args.tau)
        doc["inputs"]["model"] = args.model
        if metric == "pref-h":
            value = distances.d_pref_hausdorff(game, sigma, tau)
        elif metric == "hamm-s":
            value = distances.d_hamm_s(game, sigma, tau)
        elif metric == "dstrat":
            value = distances.dstrat(game, tau, sigma, budget)
        else:
            value = distances.dstar(game, sigma, tau, budget)
    else:
        raise CausekitError(f"unknown metric {metric!r}")
    doc["verdict"] = distances.format_distance(value)
    doc["diagnostics"] = _diag(budget)
    return doc, 0


def cmd_sem(args):
    sem = sem_bridge.sem_from_json(_load_json(args.model))
    effect = sem_bridge.effect_from_json(sem, json.loads(args.effect))
    variables = sorted(_split(args.vars))
    inputs = {
        "model": args.model,
        "vars": variables,
        "effect": sorted(list(v) for v in effect),
    }
    if args.action == "butfor":
        ok = sem_bridge.is_but_for_cause(sem, effect, variables)
        doc = {"command": "sem butfor", "inputs": inputs, "verdict": ok}
        return doc, 0 if ok else 1
    butfor = sem_bridge.is_but_for_cause(sem, effect, variables)
    verdict = sem_bridge.bridge_check(sem, effect, variables, witnesses=args.witnesses)
    doc = {
        "command": "sem bridge",
        "inputs": inputs,
        "butFor": butfor,
        "causeStates": sorted(sem_bridge.butfor_to_cause_set(sem, variables)),
        "verdict": verdict.is_cause,
        "minDistance": distances.format_distance(verdict.min_distance),
        "witnesses": _ts_witnesses(verdict),
    }
    return doc, 0 if verdict.is_cause else 1


def cmd_gen(args):
    spec = generators.GeneratorSpec(
        family=args.family,
        seed=args.seed,
        states=args.states,
        layers=args.layers,
        width=args.width,
        alphabet=args.alphabet,
        variables=args.vars,
    )
    instance = generate_json(spec)
    text = dumps_canonical(instance)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        doc = {
            "command": "gen",
            "inputs": {"family": args.family, "seed": args.seed},
            "out": args.out,
            "verdict": True,
        }
        return doc, 0
    sys.stdout.write(text)
    return None, 0


def generate_json(spec):
    instance = generators.generate(spec)
    if isinstance(instance, sem_bridge.StructuralEquationModel):
        return sem_bridge.sem_to_json(instance)
    validate_model(instance)
    return model_to_json(instance)


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# argument wiring


def build_parser():
    parser = argparse.ArgumentParser(
        prog="causekit",
        description="Distance-based counterfactual causality for transition "
        "systems and reachability games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ts-cause", help="check a cause on an execution")
    p.add_argument("--model", required=True)
    p.add_argument("--path", required=True)
    p.add_argument("--cause", required=True)
    p.add_argument("--effect", required=True)
    p.add_argument("--phi", choices=("reach", "safe"), required=True)
    p.add_argument(
        "--metric", choices=PATH_METRICS + WORD_METRICS, required=True
    )
    _add_common(p)

    p = sub.add_parser("game-cause", help="check a cause for a losing strategy")
    p.add_argument("--model", required=True)
    p.add_argument("--player", choices=("reach", "safe"), required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--cause", required=True)
    p.add_argument("--metric", choices=STRATEGY_METRICS, required=True)
    _add_common(p)

    p = sub.add_parser("solve", help="winning regions and strategies")
    p.add_argument("--model", required=True)
    _add_common(p)

    p = sub.add_parser("explain", help="extract or check strategy explanations")
    p.add_argument("--model", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--cause", default="")
    p.add_argument("--check", default=None)
    p.add_argument("--check-minimal", dest="check_minimal", default=None)
    p.add_argument("--metric", choices=("hamm-s", "dstar"), default="hamm-s")
    _add_common(p)

    p = sub.add_parser("distance", help="evaluate one distance function")
    p.add_argument("metric", choices=WORD_METRICS + PATH_METRICS + STRATEGY_DISTANCES)
    p.add_argument("--u", default="")
    p.add_argument("--v", default="")
    p.add_argument("--model", default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--q", default=None)
    p.add_argument("--sigma", default=None)
    p.add_argument("--tau", default=None)
    _add_common(p)

    p = sub.add_parser("sem", help="but-for causes and the Hamming bridge")
    p.add_argument("action", choices=("butfor", "bridge"))
    p.add_argument("--model", required=True)
    p.add_argument("--effect", required=True, help="JSON valuation list or predicate")
    p.add_argument("--vars", required=True)
    _add_common(p)

    p = sub.add_parser("oracle", help="brute-force definitional checks")
    orc = p.add_subparsers(dest="oracle_command", required=True)
    o = orc.add_parser("ts-cause")
    o.add_argument("--model", required=True)
    o.add_argument("--path", required=True)
    o.add_argument("--cause", required=True)
    o.add_argument("--effect", required=True)
    o.add_argument("--phi", choices=("reach", "safe"), required=True)
    o.add_argument("--metric", choices=PATH_METRICS + WORD_METRICS, required=True)
    o.add_argument("--max-len", dest="max_len", type=int, default=None)
    _add_common(o)
    o = orc.add_parser("game-cause")
    o.add_argument("--model", required=True)
    o.add_argument("--player", choices=("reach", "safe"), required=True)
    o.add_argument("--strategy", required=True)
    o.add_argument("--cause", required=True)
    o.add_argument("--metric", choices=STRATEGY_METRICS, required=True)
    _add_common(o)

    p = sub.add_parser("gen", help="seeded random instance generators")
    p.add_argument("--family", choices=generators.FAMILIES, required=True)
    p.add_argument("--states", type=int, default=8)
    p.add_argument("--layers", type=int, default=4)
    p.add_argument("--width", type=int, default=3)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--out", default=None)
    _add_common(p)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ts-cause":
            doc, code = cmd_ts_cause(args)
        elif args.command == "game-cause":
            doc, code = cmd_game_cause(args)
        elif args.command == "solve":
            doc, code = cmd_solve(args)
        elif args.command == "explain":
            doc, code = cmd_explain(args)
        elif args.command == "distance":
            doc, code = cmd_distance(args)
        elif args.command == "sem":
            doc, code = cmd_sem(args)
        elif args.command == "oracle":
            if args.oracle_command == "ts-cause":
                doc, code = cmd_ts_cause(args, oracle=True)
            else:
                doc, code = cmd_game_cause(args, oracle=True)
        elif args.command == "gen":
            doc, code = cmd_gen(args)
        else:
            parser.error(f"unknown command {args.command!r}")
    except BudgetExceeded as exc:
        sys.stderr.write(f"causekit: {exc}\n")
        return 3
    except (CausekitError, OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"causekit: {exc}\n")
        return 2
    if doc is not None:
        _emit(args, doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
