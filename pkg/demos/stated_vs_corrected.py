"""Where a stated form of a result fails and the strengthened form holds.

Runs the maximal-δ-J check and the subring check on a small corpus and
replays one counterexample of each from scratch.
Run with ``python3 demos/stated_vs_corrected.py``.
"""

import json

from deltaj.facts import replay
from deltaj.harness import CorpusConfig, generate_corpus, run_check

corpus = generate_corpus(CorpusConfig(zn_max=12, product_max=8, polys=False, idealization_max=8))
print(f"corpus: {len(corpus.specs)} rings")

for cid in ("CHK-06", "CHK-13"):
    rep = run_check(cid, corpus)
    print(f"\n{cid} {rep.title}: {rep.outcome}")
    for f in rep.forms:
        tag = "required" if f.required else "reported"
        print(f"  {f.name:<24} {tag:<9} tested={f.tested:<5} counterexamples={f.counterexample_count}")
    bad = next((f for f in rep.forms if f.counterexamples), None)
    if bad:
        rec = bad.counterexamples[0]
        print(f"  first {bad.name} counterexample (replays: {replay(rec)}):")
        print("  " + json.dumps(rec["instance"], ensure_ascii=False))
