"""Bottom-up Datalog evaluation.

The store keeps one relation per predicate as a set of tuples over
interned symbol ids, with hash indexes built lazily for whatever bound
column patterns the joins ask for.  The fixpoint is computed semi-naive:
each round joins every rule against the previous round's delta in each
body position, so nothing is rederived from scratch.  A deliberately
dumb naive evaluator (string-level, index-free) exists purely as a
differential-testing twin.

Rule bodies within a round may be evaluated by a small thread pool;
rounds are barriers and the merge into the store is single-writer, so
the result is identical for any thread count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ArityMismatch, UnknownPredicate, UnsafeQuery
from .model import (
    Atom,
    ConjunctiveQuery,
    Const,
    KNOWN_ARITY,
    Rule,
    Var,
)
from .rules import RuleCatalogue


class FactStore:
    """Per-predicate indexed relations over interned symbols."""

    def __init__(self):
        self._sym_ids: dict[str, int] = {}
        self._symbols: list[str] = []
        self.relations: dict[str, set[tuple[int, ...]]] = {}
        self._arity: dict[str, int] = {}
        self._indexes: dict[tuple[str, tuple[int, ...]], dict[tuple[int, ...], list[tuple[int, ...]]]] = {}
        self.generation = 0

    # -- symbols ---------------------------------------------------------

    def intern(self, symbol: str) -> int:
        sid = self._sym_ids.get(symbol)
        if sid is None:
            sid = len(self._symbols)
            self._sym_ids[symbol] = sid
            self._symbols.append(symbol)
        return sid

    def symbol(self, sid: int) -> str:
        return self._symbols[sid]

    # -- facts -----------------------------------------------------------

    def _check_arity(self, pred: str, arity: int):
        expected = self._arity.get(pred, KNOWN_ARITY.get(pred))
        if expected is None:
            self._arity[pred] = arity
        elif expected != arity:
            raise ArityMismatch(f"{pred} expects {expected} argument(s), got {arity}")

    def add_tuples(self, pred: str, tuples: Iterable[tuple[int, ...]]) -> int:
        rel = self.relations.setdefault(pred, set())
        added = 0
        indexes = [
            (key_pos, index) for (p, key_pos), index in self._indexes.items() if p == pred
        ]
        for t in tuples:
            self._check_arity(pred, len(t))
            if t not in rel:
                rel.add(t)
                added += 1
                for key_pos, index in indexes:
                    index.setdefault(tuple(t[i] for i in key_pos), []).append(t)
        if added:
            self.generation += 1
        return added

    def assert_facts(self, facts: Iterable[Atom]) -> int:
        """Insert ground atoms; duplicates are ignored.  Returns the number
        of new tuples."""
        added = 0
        for f in facts:
            if not f.is_ground():
                raise ValueError(f"fact is not ground: {f}")
            t = tuple(self.intern(a.value.iri) for a in f.args)  # type: ignore[union-attr]
            added += self.add_tuples(f.pred, [t])
        return added

    def relation(self, pred: str) -> set[tuple[int, ...]]:
        return self.relations.get(pred, set())

    def index(self, pred: str, key_pos: tuple[int, ...]):
        got = self._indexes.get((pred, key_pos))
        if got is None:
            got = {}
            for t in self.relations.get(pred, ()):
                got.setdefault(tuple(t[i] for i in key_pos), []).append(t)
            self._indexes[(pred, key_pos)] = got
        return got

    def size(self) -> int:
        return sum(len(r) for r in self.relations.values())

    def canonical_dump(self) -> str:
        """Sorted fact lines; byte-identical for equal models."""
        lines = []
        for pred in sorted(self.relations):
            rows = sorted(tuple(self.symbol(s) for s in t) for t in self.relations[pred])
            for row in rows:
                args = ", ".join(f'"{s}"' for s in row)
                lines.append(f"{pred}({args}).")
        return "\n".join(lines) + ("\n" if lines else "")

    def string_facts(self) -> set[tuple[str, tuple[str, ...]]]:
        """The model as string-level atoms, for oracle comparisons."""
        return {
            (pred, tuple(self.symbol(s) for s in t))
            for pred, rel in self.relations.items()
            for t in rel
        }


@dataclass
class EvalStats:
    rounds: int = 0
    facts_derived: dict[str, int] = field(default_factory=dict)
    wall_ms: float = 0.0

    def total_derived(self) -> int:
        return sum(self.facts_derived.values())

    def summary(self) -> str:
        return f"rounds={self.rounds} derived={self.total_derived()} wall_ms={self.wall_ms:.1f}"


# ==============================================================================
# Rule compilation
# ==============================================================================
#
# A rule is compiled once per evaluation into, for each body order, a list
# of steps.  Step 0 scans its relation (the delta during fixpoint rounds);
# later steps probe an index keyed on the positions whose values are
# already known.  Slots hold variable bindings positionally.


@dataclass(frozen=True)
class _Step:
    pred: str
    arity: int
    # positions holding constants: (position, symbol id)
    const_checks: tuple[tuple[int, int], ...]
    # positions bound by earlier atoms: (position, slot)
    bound: tuple[tuple[int, int], ...]
    # first occurrences introduced here: (position, slot); repeated new
    # variables within the atom appear once here plus in `same`
    out: tuple[tuple[int, int], ...]
    same: tuple[tuple[int, int], ...]  # (position, position-of-first-occurrence)


@dataclass(frozen=True)
class _Plan:
    steps: tuple[_Step, ...]
    head_pred: str
    # head argument sources: ('c', symbol id) or ('s', slot)
    head_src: tuple[tuple[str, int], ...]
    nslots: int


def _order_body(body: Sequence[Atom], first: int, store: FactStore) -> list[int]:
    """Delta atom first, then greedily most-bound / smallest relation."""
    remaining = [i for i in range(len(body)) if i != first]
    order = [first]
    bound_vars = {t.name for t in body[first].args if isinstance(t, Var)}
    while remaining:
        def badness(i: int):
            a = body[i]
            unbound = sum(1 for t in a.args if isinstance(t, Var) and t.name not in bound_vars)
            return (unbound, len(store.relation(a.pred)), a.pred, i)

        nxt = min(remaining, key=badness)
        remaining.remove(nxt)
        order.append(nxt)
        bound_vars |= {t.name for t in body[nxt].args if isinstance(t, Var)}
    return order


def _compile(head: Atom | None, body: Sequence[Atom], order: Sequence[int], store: FactStore) -> _Plan:
    slots: dict[str, int] = {}
    steps = []
    for idx in order:
        a = body[idx]
        const_checks, bound, out, same = [], [], [], []
        first_pos: dict[str, int] = {}
        seen_before = set(slots)  # bound by earlier atoms, not this one
        for pos, t in enumerate(a.args):
            if isinstance(t, Const):
                const_checks.append((pos, store.intern(t.value.iri)))
            elif t.name in seen_before:
                bound.append((pos, slots[t.name]))
            elif t.name in first_pos:
                same.append((pos, first_pos[t.name]))
            else:
                first_pos[t.name] = pos
                slot = slots.setdefault(t.name, len(slots))
                out.append((pos, slot))
        steps.append(
            _Step(a.pred, len(a.args), tuple(const_checks), tuple(bound), tuple(out), tuple(same))
        )
    if head is None:
        head_pred, head_src = "", ()
    else:
        head_pred = head.pred
        src = []
        for t in head.args:
            if isinstance(t, Const):
                src.append(("c", store.intern(t.value.iri)))
            else:
                src.append(("s", slots[t.name]))
        head_src = tuple(src)
    return _Plan(tuple(steps), head_pred, head_src, len(slots))


def _execute(plan: _Plan, store: FactStore, seed: Iterable[tuple[int, ...]], out: set):
    """Run a compiled plan; step 0 scans `seed`, later steps probe indexes."""
    steps = plan.steps
    nsteps = len(steps)
    head_src = plan.head_src
    binding = [0] * plan.nslots

    # Pre-resolve probe indexes; key order is (consts..., bounds...) by position.
    probes = []
    for step in steps[1:]:
        key_pos = tuple(sorted([p for p, _ in step.const_checks] + [p for p, _ in step.bound]))
        probes.append((step, key_pos, store.index(step.pred, key_pos)))

    def fill(step: _Step, t: tuple[int, ...]) -> bool:
        for pos, sym in step.const_checks:
            if t[pos] != sym:
                return False
        for pos, slot in step.bound:
            if t[pos] != binding[slot]:
                return False
        for pos, first in step.same:
            if t[pos] != t[first]:
                return False
        for pos, slot in step.out:
            binding[slot] = t[pos]
        return True

    def probe_key(step: _Step, key_pos: tuple[int, ...]) -> tuple[int, ...]:
        vals = {}
        for pos, sym in step.const_checks:
            vals[pos] = sym
        for pos, slot in step.bound:
            vals[pos] = binding[slot]
        return tuple(vals[p] for p in key_pos)

    def emit():
        out.add(tuple(sym if kind == "c" else binding[sym] for kind, sym in head_src))

    def rec(i: int):
        if i == nsteps:
            emit()
            return
        step, key_pos, index = probes[i - 1]
        for t in index.get(probe_key(step, key_pos), ()):
            if fill(step, t):
                rec(i + 1)

    step0 = steps[0]
    if nsteps == 1:
        for t in seed:
            if fill(step0, t):
                emit()
    else:
        for t in seed:
            if fill(step0, t):
                rec(1)


# ==============================================================================
# Fixpoint
# ==============================================================================


def _rule_tasks(rules: Sequence[Rule]):
    for rule in rules:
        if not rule.body:
            continue
        for pos in range(len(rule.body)):
            yield rule, pos


def evaluate_fixpoint(store: FactStore, catalogue: RuleCatalogue | Sequence[Rule], threads: int = 1) -> EvalStats:
    """Extend the store to the minimal model of its facts plus the rules.

    The result is independent of rule order, join order and thread count;
    termination is guaranteed because the Herbrand base is finite.
    """
    rules = catalogue.rules if isinstance(catalogue, RuleCatalogue) else tuple(catalogue)
    t0 = time.perf_counter()
    stats = EvalStats()

    for rule in rules:
        if not rule.body:
            store.assert_facts([rule.head])

    delta: dict[str, set[tuple[int, ...]]] = {p: set(r) for p, r in store.relations.items() if r}
    plan_cache: dict[tuple[int, int], _Plan] = {}

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while True:
            stats.rounds += 1
            # Plans are compiled and indexes built serially; the parallel
            # part below only reads the store.
            tasks = []
            for rule, pos in _rule_tasks(rules):
                seed = delta.get(rule.body[pos].pred)
                if not seed:
                    continue
                key = (id(rule), pos)
                plan = plan_cache.get(key)
                if plan is None:
                    order = _order_body(rule.body, pos, store)
                    plan = _compile(rule.head, rule.body, order, store)
                    plan_cache[key] = plan
                for step in plan.steps[1:]:
                    key_pos = tuple(
                        sorted([p for p, _ in step.const_checks] + [p for p, _ in step.bound])
                    )
                    store.index(step.pred, key_pos)
                tasks.append((plan, seed))

            def run(task):
                plan, seed = task
                derived: set[tuple[int, ...]] = set()
                _execute(plan, store, seed, derived)
                return plan.head_pred, derived

            if pool is not None:
                results = list(pool.map(run, tasks))
            else:
                results = [run(t) for t in tasks]

            # Barrier: merge new facts single-writer, then swap the delta.
            new: dict[str, set[tuple[int, ...]]] = {}
            for pred, derived in results:
                if derived:
                    new.setdefault(pred, set()).update(derived)
            delta = {}
            for pred, tuples in new.items():
                rel = store.relations.get(pred, set())
                fresh = tuples - rel
                if fresh:
                    store.add_tuples(pred, fresh)
                    delta[pred] = fresh
                    stats.facts_derived[pred] = stats.facts_derived.get(pred, 0) + len(fresh)
            if not delta:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    return stats


# ==============================================================================
# Naive evaluation (differential-testing twin)
# ==============================================================================


def naive_evaluate(
    facts: Iterable[Atom], rules: RuleCatalogue | Sequence[Rule]
) -> set[tuple[str, tuple[str, ...]]]:
    """Minimal model by naive iteration over string-level atoms.

    Re-evaluates every rule against the whole model each round; no
    deltas, no indexes, no interning.  Only suitable for small inputs.
    """
    rule_list = rules.rules if isinstance(rules, RuleCatalogue) else list(rules)
    model: set[tuple[str, tuple[str, ...]]] = set()
    for f in facts:
        model.add((f.pred, tuple(a.value.iri for a in f.args)))  # type: ignore[union-attr]
    for r in rule_list:
        if not r.body:
            model.add((r.head.pred, tuple(a.value.iri for a in r.head.args)))  # type: ignore[union-attr]

    def matches(a: Atom, env: dict[str, str]):
        for pred, args in model:
            if pred != a.pred or len(args) != len(a.args):
                continue
            new_env = dict(env)
            ok = True
            for t, v in zip(a.args, args):
                if isinstance(t, Const):
                    if t.value.iri != v:
                        ok = False
                        break
                elif t.name in new_env:
                    if new_env[t.name] != v:
                        ok = False
                        break
                else:
                    new_env[t.name] = v
            if ok:
                yield new_env

    changed = True
    while changed:
        changed = False
        for r in rule_list:
            if not r.body:
                continue
            envs = [{}]
            for a in r.body:
                envs = [e2 for e in envs for e2 in matches(a, e)]
                if not envs:
                    break
            for env in envs:
                head = (
                    r.head.pred,
                    tuple(
                        t.value.iri if isinstance(t, Const) else env[t.name] for t in r.head.args
                    ),
                )
                if head not in model:
                    model.add(head)
                    changed = True
    return model


# ==============================================================================
# Conjunctive queries over a computed model
# ==============================================================================


def answer_conjunctive_query(store: FactStore, q: ConjunctiveQuery) -> list[tuple[str, ...]]:
    """Distinct answer bindings, sorted lexicographically by IRI."""
    for a in q.body:
        if a.pred not in KNOWN_ARITY and a.pred not in store.relations:
            raise UnknownPredicate(a.pred)
        # Constants never seen by the store cannot match anything.
        for t in a.args:
            if isinstance(t, Const) and t.value.iri not in store._sym_ids:
                return []

    # Greedy start: smallest relation first.
    first = min(range(len(q.body)), key=lambda i: (len(store.relation(q.body[i].pred)), i))
    order = _order_body(q.body, first, store)
    head = Atom("q", tuple(q.answer_vars))
    try:
        plan = _compile(head, q.body, order, store)
    except KeyError as exc:  # head var absent from body
        raise UnsafeQuery(str(exc))
    out: set[tuple[int, ...]] = set()
    _execute(plan, store, store.relation(q.body[order[0]].pred), out)
    answers = {tuple(store.symbol(s) for s in t) for t in out}
    return sorted(answers)
