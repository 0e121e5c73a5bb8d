import random

from gens import random_ontology, random_query
from helpers import EXAMPLE_SPECIES_ZOO, SPECIES
from metaql import (
    FactStore,
    answer_conjunctive_query,
    answer_with_demand,
    builtin_rules,
    evaluate_fixpoint,
    parse_query,
    to_conjunctive_query,
    translate_ontology,
)

PFX = f"PREFIX : <{SPECIES}>\n"


def _facts(text):
    from metaql import normalize_ontology, parse_ontology

    return translate_ontology(normalize_ontology(parse_ontology(text))).facts


def test_demand_answers_match_materialization_on_zoo_query():
    facts = _facts(EXAMPLE_SPECIES_ZOO)
    q = to_conjunctive_query(
        parse_query(
            PFX + "SELECT ?z WHERE { ?y a :EndangeredSpecies . ?z a ?y . ?z :Lives_in :CPZ }"
        )
    )
    demanded, _ = answer_with_demand(facts, builtin_rules().rules, q)
    assert demanded == [(SPECIES + "Harry",)]


def test_demand_differential_on_random_instances():
    rng = random.Random(314)
    for _ in range(60):
        o = random_ontology(rng)
        facts = translate_ontology(o).facts
        store = FactStore()
        store.assert_facts(facts)
        evaluate_fixpoint(store, builtin_rules())
        for _ in range(2):
            q = random_query(rng, o)
            materialized = answer_conjunctive_query(store, q)
            demanded, _ = answer_with_demand(facts, builtin_rules().rules, q)
            assert materialized == demanded


def test_demand_derives_less_than_full_materialization():
    # A pure schema probe should not drag instance saturation through the
    # fixpoint; at a few hundred facts the pruning clearly outweighs the
    # adorned bookkeeping.
    from metaql.synthetic import UNI, university_ontology

    facts = _facts(university_ontology(3))
    store = FactStore()
    store.assert_facts(facts)
    full = evaluate_fixpoint(store, builtin_rules())

    q = to_conjunctive_query(
        parse_query(f"PREFIX uni: <{UNI}>\nSELECT ?c WHERE {{ ?c rdfs:subClassOf uni:Person }}")
    )
    answers, demand_stats = answer_with_demand(facts, builtin_rules().rules, q)
    assert answers == answer_conjunctive_query(store, q)
    assert len(answers) >= 10
    assert demand_stats.total_derived() < full.total_derived() / 2
