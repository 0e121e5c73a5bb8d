#!/usr/bin/env python3
"""Run the benchmark harness end to end at a moderate scale.

Generates a university ontology, writes the standard and simple
meta-query suites to disk, runs every (ontology, query) pair in a fresh
subprocess under a wall-clock timeout, and prints the resulting CSV.
Memory limits are left to the invoking environment (ulimit, cgroups).
"""

import tempfile
from pathlib import Path

from metaql.cli import main
from metaql.synthetic import simple_meta_queries, standard_queries, university_ontology

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    ontology = tmp / "university.ofn"
    ontology.write_text(university_ontology(departments=6), encoding="utf-8")
    print(f"== generated {ontology.name} ({len(ontology.read_text().splitlines())} lines)")

    queries = standard_queries()[:6] + simple_meta_queries()[:2]
    names = []
    for name, text in queries:
        (tmp / f"{name}.rq").write_text(text, encoding="utf-8")
        names.append(f"{name}.rq")

    config = tmp / "bench.cfg"
    config.write_text(
        "# desk-scale run: fresh subprocess per query, wall-clock timeout\n"
        f"ontologies = {ontology.name}\n"
        f"queries = {', '.join(names)}\n"
        "timeout_s = 30\n"
        "repeat = 2\n"
        "output_csv = results.csv\n",
        encoding="utf-8",
    )
    print("== bench config")
    print("\n".join("   " + line for line in config.read_text().splitlines()))

    code = main(["bench", str(config)])
    assert code == 0

    print("\n== results.csv (per-run rows plus one #median row per pair)")
    print((tmp / "results.csv").read_text())
