import json

import pytest

from deltaj import make_ring
from deltaj.classify import is_delta_J_ideal
from deltaj.expansion import delta0
from deltaj.facts import replay
from deltaj.harness import (
    Corpus,
    CorpusConfig,
    axiom_suite,
    corpus_specs,
    generate_corpus,
    reports_to_json,
    run_all,
    run_check,
)
from deltaj.ideals import all_ideals, ideal_from_names, jacobson_radical


def only(*specs, **kw):
    return Corpus(CorpusConfig(**kw), list(specs))


def test_zn_only_corpus_size():
    assert len(generate_corpus(CorpusConfig.only_zn(12)).specs) == 11


def test_small_products_present():
    cfg = CorpusConfig(zn=False, product_max=8, polys=False, idealizations=False, quotients=False)
    specs = corpus_specs(cfg)
    assert {"Z2xZ2", "Z2xZ3", "Z2xZ4"} <= set(specs)
    assert all(make_ring(s).order <= 8 for s in specs)


def test_corpus_is_deterministic_and_duplicate_free():
    a, b = corpus_specs(CorpusConfig()), corpus_specs(CorpusConfig())
    assert a == b and len(a) == len(set(a))


def test_axiom_suite_small(small_corpus):
    suite = axiom_suite(small_corpus)
    assert suite.passed
    assert suite.counts["ring"] == len(small_corpus.specs)
    assert suite.counts["module"] > 0 and suite.counts["homomorphism"] > 0


def test_chk01_on_small_zn():
    rep = run_check("CHK-01", generate_corpus(CorpusConfig.only_zn(12, ("delta0", "delta1"))))
    assert rep.outcome == "pass" and rep.counterexamples() == []
    assert rep.instances_tested > 0


def test_chk03_on_z4():
    R = make_ring("Z4")
    assert jacobson_radical(R) == ideal_from_names(R, ["2"])
    for gens in ([], ["2"]):
        assert is_delta_J_ideal(ideal_from_names(R, gens), delta0(R))
    rep = run_check("CHK-03", only("Z4", expansions=("delta0",)))
    assert rep.outcome == "pass" and rep.instances_tested > 0


def test_chk14_on_small_corpus(small_corpus):
    rep = run_check("chk-14", small_corpus)
    assert rep.outcome == "pass"


@pytest.mark.parametrize("cid", ["CHK-01", "CHK-14"])
def test_hypothesis_accounting(cid, small_corpus):
    rep = run_check(cid, small_corpus)
    total = sum(len(ctx.lat.proper) * len(ctx.expansions) for ctx in small_corpus.contexts())
    assert rep.instances_tested + rep.hypothesis_filtered == total


def test_vacuous_check_is_reported():
    rep = run_check("CHK-17", only("Z6", "Z2xZ2"))
    assert rep.outcome == "vacuous" and rep.passed and rep.instances_tested == 0
    assert run_check("CHK-05", only("Z12")).form("literal").vacuous


def test_stated_forms_have_replayable_counterexamples(small_corpus):
    r6 = run_check("CHK-06", small_corpus)
    assert r6.passed
    stated = r6.form("corrected")
    assert not stated.required and stated.counterexample_count > 0
    r13 = run_check("CHK-13", small_corpus)
    assert r13.passed
    in_r = r13.form("subring-in-R")
    assert not in_r.required and in_r.counterexample_count > 0
    for rec in stated.counterexamples + in_r.counterexamples:
        assert replay(rec)


def test_tampered_counterexample_does_not_replay(small_corpus):
    rec = run_check("CHK-06", small_corpus).form("literal").counterexamples[0]
    bad = json.loads(json.dumps(rec))
    for f in bad["facts"]:
        f["value"] = not f["value"] if isinstance(f.get("value"), bool) else f.get("value")
    assert not replay(bad)


def test_reports_are_deterministic():
    corpus = generate_corpus(CorpusConfig.only_zn(16))
    a = reports_to_json(run_all(corpus))
    b = reports_to_json(run_all(generate_corpus(CorpusConfig.only_zn(16))))
    assert a == b
    assert "runtime" not in a and "runtime" in reports_to_json(run_all(corpus, ["CHK-01"]), timings=True)


def test_unknown_check_id():
    with pytest.raises(KeyError):
        run_check("CHK-99", only("Z4"))


def test_every_check_runs_on_a_mixed_corpus(small_corpus):
    reports = run_all(small_corpus)
    assert [r.check for r in reports] == [f"CHK-{k:02d}" for k in range(1, 18)]
    assert all(r.passed for r in reports)
    assert all(len(all_ideals(R)) >= 2 for R in small_corpus.rings())
