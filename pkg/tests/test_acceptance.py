"""One test per acceptance criterion; each records a PASS/FAIL line for the summary."""

import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import oracles
from conftest import ACCEPTANCE
from deltaj import make_ring
from deltaj.classify import is_delta_J_ideal, is_quasi_J_ideal
from deltaj.constructions import idealization_parts, localize, make_multiplicative_set
from deltaj.expansion import delta0
from deltaj.facts import replay
from deltaj.harness import axiom_suite, run_all
from deltaj.ideals import all_ideals, ideal_from_names, ideal_quotient, jacobson_radical, radical

pytestmark = pytest.mark.slow


@contextmanager
def criterion(n: int, title: str):
    ACCEPTANCE[n] = f"CRITERION {n} {title}: FAIL"
    start = time.perf_counter()
    yield
    ACCEPTANCE[n] = f"CRITERION {n} {title}: PASS ({time.perf_counter() - start:.1f} s)"


def test_criterion_1_axiom_suite(corpus):
    with criterion(1, "axiom suite on every corpus ring under 60 s"):
        start = time.perf_counter()
        suite = axiom_suite(corpus)
        elapsed = time.perf_counter() - start
        assert suite.passed, suite.failures[:5]
        assert suite.counts["ring"] == len(corpus.specs)
        assert {"ideal", "module", "expansion", "homomorphism"} <= set(suite.counts)
        assert elapsed < 60


def test_criterion_2_lattice_oracle(corpus):
    with criterion(2, "all_ideals equals subset filtering for every ring of order <= 16"):
        checked = 0
        for R in corpus.rings():
            if R.order <= 16:
                assert {frozenset(J.members) for J in all_ideals(R)} == oracles.subset_ideals(R), R.spec
                checked += 1
        assert checked > 0


def test_criterion_3_jacobson(corpus):
    with criterion(3, "Jacobson radical via maximal ideals equals the unit characterisation"):
        for R in corpus.rings():
            assert frozenset(jacobson_radical(R).members) == oracles.jacobson_by_units(R), R.spec


ZERO_CE = ["CHK-01", "CHK-02", "CHK-03", "CHK-04", "CHK-08", "CHK-09", "CHK-10", "CHK-12", "CHK-14", "CHK-17"]
ZERO_CE_FORMS = {"CHK-13": ["quotient-down", "quotient-up-jacobson", "quotient-up-delta-J"]}
CORRECTED = ["CHK-05", "CHK-06", "CHK-07", "CHK-11", "CHK-13", "CHK-15", "CHK-16"]


def test_criterion_4_theorem_suite(corpus):
    with criterion(4, "theorem suite: required forms pass, stated-form counterexamples reported, under 10 min"):
        start = time.perf_counter()
        reports = {r.check: r for r in run_all(corpus)}
        elapsed = time.perf_counter() - start
        assert len(reports) == 17
        for cid in ZERO_CE:
            r = reports[cid]
            assert all(f.counterexample_count == 0 for f in r.forms), cid
            assert r.outcome == "pass", cid
        for cid, names in ZERO_CE_FORMS.items():
            for name in names:
                f = reports[cid].form(name)
                assert f.counterexample_count == 0 and not f.vacuous, (cid, name)
        for cid in CORRECTED:
            r = reports[cid]
            assert r.passed, cid
            for f in r.forms:
                for rec in f.counterexamples:
                    assert replay(rec), (cid, f.name)
        assert reports["CHK-06"].form("corrected").counterexample_count > 0
        assert reports["CHK-13"].form("subring-in-R").counterexample_count > 0
        assert elapsed < 600


def test_criterion_5_implication_chain(corpus):
    with criterion(5, "n-ideal => J-ideal => quasi-J-ideal and J-ideal => delta-J-ideal for every delta"):
        for ctx in corpus.contexts():
            lat, o = ctx.lat, ctx.oracle
            nil, jac = o.nil, o.jacobson
            for i in lat.proper:
                m = lat.masks[i]
                n_id = o.holds(i, nil, m)
                j_id = o.holds(i, jac, m)
                q_id = o.holds(i, jac, lat.masks[int(lat.radical_table[i])])
                assert (not n_id or j_id) and (not j_id or q_id), (ctx.ring.spec, i)
                if j_id:
                    for d in ctx.expansions:
                        assert ctx.dj(d)[i], (ctx.ring.spec, i, d.label)


def test_criterion_6_spot_checks():
    with criterion(6, "known-value spot checks"):
        Z12 = make_ring("Z12")
        assert jacobson_radical(Z12) == ideal_from_names(Z12, ["6"])
        assert oracles.jacobson_by_units(Z12) == frozenset({0, 6})
        Z8 = make_ring("Z8")
        assert radical(ideal_from_names(Z8, ["4"])) == ideal_from_names(Z8, ["2"])
        assert oracles.radical(Z8, {0, 4}) == frozenset({0, 2, 4, 6})
        four = ideal_from_names(Z12, ["4"])
        assert ideal_quotient(four, ideal_from_names(Z12, ["2"])) == ideal_from_names(Z12, ["2"])
        assert oracles.colon_element(Z12, {0, 4, 8}, 2) == frozenset(range(0, 12, 2))
        Z6 = make_ring("Z6")
        v = is_delta_J_ideal(ideal_from_names(Z6, ["2"]), delta0(Z6))
        assert not v.holds and tuple(Z6.name(x) for x in v.witness) == ("2", "3")
        v = is_quasi_J_ideal(four)
        assert not v.holds and tuple(Z12.name(x) for x in v.witness) == ("4", "3")
        S = make_multiplicative_set(Z6, [Z6.element("1"), Z6.element("3")])
        assert localize(Z6, S).ring.order == 2
        RM = make_ring("Z2(+)Z2")
        R, M = idealization_parts(RM)
        assert {RM.name(a) for a in jacobson_radical(RM).members} == {"(0,0)", "(0,1)"}
        assert M.order == 2


def test_criterion_7_determinism():
    with criterion(7, "two verify --all runs give byte-identical reports"):
        cmd = [sys.executable, "-m", "deltaj.cli", "verify", "--all", "--format", "json"]
        a = subprocess.run(cmd, capture_output=True, check=False)
        b = subprocess.run(cmd, capture_output=True, check=False)
        assert a.returncode == 0, a.stderr.decode()
        assert a.stdout and a.stdout == b.stdout
