"""Demand-driven evaluation via the magic sets transformation.

Materialization computes the whole minimal model before answering; for a
single query most of that work can be irrelevant.  The transformation
here adorns predicates with bound/free patterns starting from the query,
threads bindings left-to-right through rule bodies, and guards every
rule with a magic predicate that enumerates only the demanded bindings.
Base facts are renamed out of the way so that every original predicate
is defined by rules and can be adorned uniformly.

The transformed program is ordinary positive Datalog and is evaluated by
the same semi-naive engine; answers are identical to materialization
(differentially tested), only the amount of derived data changes.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import Atom, ConjunctiveQuery, Const, Rule, Var
from .engine import FactStore, EvalStats, evaluate_fixpoint

_BASE_SUFFIX = "__base"
_GOAL = "q__goal"


def _adorned(pred: str, pattern: str) -> str:
    return f"{pred}@{pattern}"


def _magic(pred: str, pattern: str) -> str:
    return f"m@{pred}@{pattern}"


def _bound_args(a: Atom, pattern: str) -> tuple:
    return tuple(t for t, b in zip(a.args, pattern) if b == "b")


def magic_transform(program: Sequence[Rule], goal_pred: str, goal_arity: int) -> tuple[list[Rule], str]:
    """Adorn `program` for a goal with all-free answer positions.

    Returns the transformed rules plus the adorned goal predicate; the
    caller must seed the 0-ary goal magic fact.
    """
    by_head: dict[str, list[Rule]] = {}
    for r in program:
        by_head.setdefault(r.head.pred, []).append(r)
    idb = set(by_head)

    out: list[Rule] = []
    seen: set[tuple[str, str]] = set()
    goal_pattern = "f" * goal_arity
    queue: list[tuple[str, str]] = [(goal_pred, goal_pattern)]

    while queue:
        pred, pattern = queue.pop()
        if (pred, pattern) in seen:
            continue
        seen.add((pred, pattern))
        for rule in by_head.get(pred, ()):
            bound = {t.name for t, b in zip(rule.head.args, pattern) if b == "b" and isinstance(t, Var)}
            new_body: list[Atom] = [Atom(_magic(pred, pattern), _bound_args(rule.head, pattern))]
            for batom in rule.body:
                if batom.pred in idb:
                    beta = "".join(
                        "b" if isinstance(t, Const) or t.name in bound else "f" for t in batom.args
                    )
                    out.append(Rule(Atom(_magic(batom.pred, beta), _bound_args(batom, beta)), tuple(new_body)))
                    queue.append((batom.pred, beta))
                    new_body.append(Atom(_adorned(batom.pred, beta), batom.args))
                else:
                    new_body.append(batom)
                bound |= {t.name for t in batom.args if isinstance(t, Var)}
            out.append(Rule(Atom(_adorned(pred, pattern), rule.head.args), tuple(new_body)))

    return out, _adorned(goal_pred, goal_pattern)


def answer_with_demand(
    facts: Iterable[Atom],
    catalogue_rules: Sequence[Rule],
    q: ConjunctiveQuery,
    threads: int = 1,
) -> tuple[list[tuple[str, ...]], EvalStats]:
    """Answer a query over un-saturated facts, deriving only demanded data."""
    fact_list = list(facts)
    fact_preds = {f.pred for f in fact_list}

    bridges = []
    for pred in sorted(fact_preds):
        arity = len(next(f for f in fact_list if f.pred == pred).args)
        args = tuple(Var(f"X{i}") for i in range(arity))
        bridges.append(Rule(Atom(pred, args), (Atom(pred + _BASE_SUFFIX, args),)))

    goal_rule = Rule(Atom(_GOAL, tuple(q.answer_vars)), q.body)
    program = [*catalogue_rules, *bridges, goal_rule]
    transformed, goal = magic_transform(program, _GOAL, len(q.answer_vars))

    store = FactStore()
    for f in fact_list:
        t = tuple(store.intern(a.value.iri) for a in f.args)  # type: ignore[union-attr]
        store.add_tuples(f.pred + _BASE_SUFFIX, [t])
    store.add_tuples(_magic(_GOAL, "f" * len(q.answer_vars)), [()])

    stats = evaluate_fixpoint(store, transformed, threads=threads)
    answers = {tuple(store.symbol(s) for s in t) for t in store.relation(goal)}
    return sorted(answers), stats
