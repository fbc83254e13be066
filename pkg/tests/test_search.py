import pytest
from hypothesis import given, strategies as st

from deltaj import make_ring
from deltaj.classify import ideal_profile
from deltaj.expansion import ExpansionError, delta1
from deltaj.facts import replay
from deltaj.ideals import all_ideals
from deltaj.search import TemplateError, parse_template, search_counterexample

MIXED = ["Z6", "Z8", "Z12", "Z2xZ2", "Z2xZ4", "Z2[x]/(x^2)", "Z2(+)Z2", "Z4(+)Z2"]


def test_example_templates(corpus, small_corpus):
    assert search_counterexample("delta_J_ideal(δ₁) ∧ ring not quasi-local", "Z2xZ4") == []
    assert search_counterexample("proper ∧ ¬superfluous ∧ delta_J_ideal(δ₀)", corpus) == []
    assert search_counterexample("prime ∧ ¬maximal ∧ ring field", small_corpus) == []


def test_syntax_variants_agree():
    base = search_counterexample("proper ∧ ¬prime ∧ J_ideal", MIXED)
    assert base
    for t in ("proper & !prime & J_ideal", "proper and not prime and J-ideal", "proper, ¬prime, j_ideal"):
        assert search_counterexample(t, MIXED) == base


def test_hits_match_profiles():
    hits = search_counterexample("J_ideal ∧ ¬prime", MIXED)
    want = []
    for spec in MIXED:
        R = make_ring(spec)
        for J in all_ideals(R):
            p = ideal_profile(J).flags
            if p["J_ideal"] and not p["prime"]:
                want.append((spec, list(J.members)))
    assert [(h["ring_spec"], h["ideal"]["members"]) for h in hits] == want


def test_shared_expansion_variable():
    hits = search_counterexample("delta_J_ideal(δ) ∧ ¬J_ideal", ["Z12"])
    assert hits and all(h["expansion"] is not None for h in hits)
    # every such hit has δ(I) = R, since δ-J-ideals with proper expansion lie in J(R)
    assert search_counterexample("delta_J_ideal(δ) ∧ ¬J_ideal ∧ delta_proper(δ)", MIXED) == []
    R = make_ring("Z12")
    fixed = search_counterexample("delta_J_ideal(delta1) ∧ ¬J_ideal", ["Z12"])
    for h in fixed:
        J = next(K for K in all_ideals(R) if list(K.members) == h["ideal"]["members"])
        assert ideal_profile(J, [delta1(R)]).delta_flags["delta1"]["delta_J_ideal"]


@pytest.mark.parametrize("bad", ["", "proper ∧", "bogus_flag", "¬", "proper ∧∧ prime", "ring proper", "prime(δ)"])
def test_malformed_templates(bad):
    with pytest.raises(TemplateError):
        search_counterexample(bad, ["Z4"])


@pytest.mark.parametrize("bad", ["delta_J_ideal(delta7)", "delta_J_ideal(plus:(q))"])
def test_unknown_selectors_raise(bad):
    with pytest.raises(ExpansionError):
        search_counterexample(bad, ["Z4"])


def test_parse_template_literals():
    lits = parse_template("¬prime ∧ ring local ∧ delta_J_ideal(δ₁)")
    assert [(l.name, l.negated, l.kind) for l in lits] == [
        ("prime", True, "ideal"), ("quasi_local", False, "ring"), ("delta_J_ideal", False, "delta")]


TEMPLATES = ["proper ∧ ¬prime", "J_ideal ∧ ¬n_ideal", "delta_J_ideal ∧ ¬quasi_J_ideal",
             "primary ∧ ¬prime ∧ ring reduced", "delta_primary(δ₁) ∧ ¬delta_J_ideal(δ₁)", "zero ∧ ¬J_ideal"]


@given(st.sampled_from(TEMPLATES), st.lists(st.sampled_from(MIXED), min_size=1, max_size=3, unique=True))
def test_replay_soundness(template, specs):
    for hit in search_counterexample(template, specs):
        assert replay(hit)
        assert hit["template"] == " ∧ ".join(l.text() for l in parse_template(template))
