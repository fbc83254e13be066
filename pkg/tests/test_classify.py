import pytest
from hypothesis import given, strategies as st

import oracles
from deltaj import make_ring
from deltaj.classify import (
    LatticeOracle,
    ideal_profile,
    implication_witness,
    is_delta_J_ideal,
    is_delta_n_ideal,
    is_delta_primary,
    is_J_ideal,
    is_n_ideal,
    is_prime,
    is_quasi_J_ideal,
)
from deltaj.expansion import delta0, delta1, plus_ideal
from deltaj.ideals import IdealError, all_ideals, ideal_from_names, jacobson_radical, radical

SMALL = ["Z4", "Z6", "Z8", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2[x]/(x^2)", "Z3[x]/(x^2+1)",
         "Z2(+)Z2", "Z4(+)Z2", "Z2(+)free:2", "Z12/(4)"]


def I(R, *gens):
    return ideal_from_names(R, gens)


def names(R, pair):
    return tuple(R.name(x) for x in pair)


def test_delta_J_examples():
    R = make_ring("Z6")
    v = is_delta_J_ideal(I(R, "2"), delta0(R))
    assert not v and names(R, v.witness) == ("2", "3")
    F = make_ring("Z3[x]/(x^2+1)")
    zero = I(F)
    for d in (delta0(F), delta1(F), plus_ideal(F, zero)):
        assert is_delta_J_ideal(zero, d)
    R = make_ring("Z12")
    v = is_delta_J_ideal(I(R, "4"), delta1(R))
    assert not v and names(R, v.witness) == ("4", "3")


def test_delta_primary_examples():
    R = make_ring("Z12")
    assert is_delta_primary(I(R, "4"), delta1(R))
    assert is_delta_primary(I(R, "3"), delta0(R))
    Z6 = make_ring("Z6")
    v = is_delta_primary(I(Z6), delta0(Z6))
    assert not v and names(Z6, v.witness) == ("2", "3")


def test_unit_ideal_is_rejected():
    R = make_ring("Z6")
    with pytest.raises(IdealError):
        is_delta_J_ideal(I(R, "1"), delta0(R))
    with pytest.raises(IdealError):
        is_delta_primary(I(R, "1"), delta0(R))


def test_profile_examples():
    R = make_ring("Z4")
    p = ideal_profile(I(R, "2"))
    assert p.flags["n_ideal"] and p.flags["J_ideal"] and p.flags["quasi_J_ideal"]
    Z12 = make_ring("Z12")
    p = ideal_profile(I(Z12, "6"))
    assert not p.flags["J_ideal"]
    # (2,3) violates too; the reported pair is the one with least (ab, a, b)
    assert oracles.implication_pairs(Z12, {0, 6}, {0, 6}, {0, 6}).count((2, 3)) == 1
    assert names(Z12, p.witnesses["J_ideal"]) == ("3", "4")
    p = ideal_profile(I(Z12, "1"), [delta0(Z12), delta1(Z12)])
    assert not any(p.flags.values())
    assert not any(v for fl in p.delta_flags.values() for v in fl.values())
    assert p.witnesses == {}


def test_profile_record_is_flat():
    R = make_ring("Z12")
    rec = ideal_profile(I(R, "4"), [delta1(R)]).to_record()
    assert rec["quasi_J_ideal"] is False
    assert rec["delta_J_ideal[delta1]"] is False
    assert rec["witnesses"]["quasi_J_ideal"] == [4, 3]


@pytest.mark.parametrize("spec", SMALL)
def test_false_flags_carry_valid_witnesses(spec):
    R = make_ring(spec)
    jac = set(jacobson_radical(R).members)
    nil = set(radical(I(R)).members)
    deltas = [delta0(R), delta1(R)] + [plus_ideal(R, K) for K in all_ideals(R)]
    for J in all_ideals(R):
        if not J.is_proper:
            continue
        p = ideal_profile(J, deltas)
        mem = set(J.members)
        rad = set(radical(J).members)
        for flag, excl, tgt in (("prime", mem, mem), ("primary", mem, rad), ("n_ideal", nil, mem),
                                ("J_ideal", jac, mem), ("quasi_J_ideal", jac, rad)):
            if not p.flags[flag]:
                a, b = p.witnesses[flag]
                assert R.mul(a, b) in mem and a not in excl and b not in tgt
        for d in deltas:
            dI = set(d(J).members)
            for flag, excl in (("delta_primary", mem), ("delta_n_ideal", nil), ("delta_J_ideal", jac)):
                if not p.delta_flags[d.label][flag]:
                    a, b = p.witnesses[f"{flag}[{d.label}]"]
                    assert R.mul(a, b) in mem and a not in excl and b not in dI
        if not p.flags["superfluous"]:
            K = set(p.witnesses["superfluous"])
            assert K != set(R.elements()) and {R.add(x, y) for x in mem for y in K} == set(R.elements())
        if not p.flags["maximal"]:
            K = set(p.witnesses["maximal"])
            assert mem < K < set(R.elements())


@pytest.mark.parametrize("spec", SMALL)
def test_delta_J_matches_pair_scan_oracle(spec):
    R = make_ring(spec)
    jac = set(oracles.jacobson_by_units(R))
    for J in all_ideals(R):
        if not J.is_proper:
            continue
        mem = set(J.members)
        for d in (delta0(R), delta1(R), plus_ideal(R, all_ideals(R)[1])):
            target = set(d(J).members)
            pairs = oracles.implication_pairs(R, mem, jac, target)
            v = is_delta_J_ideal(J, d)
            assert v.holds == (not pairs)
            if pairs:
                assert v.witness == min(pairs, key=lambda p: (R.mul(*p), p[0], p[1]))


@pytest.mark.parametrize("spec", SMALL)
def test_implication_chain(spec):
    R = make_ring(spec)
    lat = all_ideals(R)
    deltas = [delta0(R), delta1(R)] + [plus_ideal(R, K) for K in lat]
    for J in lat:
        if not J.is_proper:
            continue
        n, j, q = is_n_ideal(J).holds, is_J_ideal(J).holds, is_quasi_J_ideal(J).holds
        assert (not n or j) and (not j or q)
        for d in deltas:
            assert not j or is_delta_J_ideal(J, d).holds
            assert not is_delta_n_ideal(J, d).holds or is_delta_J_ideal(J, d).holds
        assert is_prime(J).holds <= is_delta_primary(J, delta0(R)).holds


@pytest.mark.parametrize("spec", SMALL)
def test_lattice_oracle_agrees_with_scan(spec):
    R = make_ring(spec)
    lat = all_ideals(R)
    o = LatticeOracle.of(R)
    for d in (delta0(R), delta1(R), plus_ideal(R, lat[1])):
        vec = o.dj_vector(d)
        for i, J in enumerate(lat):
            if J.is_proper:
                assert vec[i] == is_delta_J_ideal(J, d).holds
                assert o.dj_witness(i, int(d.table[i])) == is_delta_J_ideal(J, d).witness
            else:
                assert not vec[i]


@given(st.sampled_from(SMALL), st.data())
def test_pointwise_larger_expansion_keeps_delta_J(spec, data):
    R = make_ring(spec)
    lat = list(all_ideals(R))
    M = data.draw(st.sampled_from(lat))
    N = data.draw(st.sampled_from(lat))
    small, big = plus_ideal(R, M & N), plus_ideal(R, M + N)
    for J in lat:
        if J.is_proper and is_delta_J_ideal(J, small):
            assert is_delta_J_ideal(J, big)


def test_implication_witness_prefers_annihilating_pairs():
    R = make_ring("Z12")
    w = implication_witness(R, I(R, "6").mask, I(R, "6").mask, I(R, "6").mask)
    assert R.mul(*w) == R.zero
