import numpy as np
import pytest
from hypothesis import given, strategies as st

from deltaj import make_ring
from deltaj.constructions import embed_ideal, idealization_parts, make_multiplicative_set
from deltaj.expansion import (
    ExpansionError,
    compose,
    delta0,
    delta1,
    from_table,
    induce_idealization,
    induce_localization,
    induce_quotient,
    is_idempotent_at,
    is_intersection_preserving,
    make_expansion,
    plus_ideal,
    pointwise_leq,
    resolve_expansion,
)
from deltaj.ideals import all_ideals, ideal_from_names, ideal_sum, radical
from deltaj.ring import quotient_ring

RINGS = ["Z4", "Z8", "Z12", "Z2xZ4", "Z3xZ3", "Z2[x]/(x^2)", "Z2(+)Z2", "Z4(+)Z2", "Z2(+)free:2", "Z12/(4)"]


def I(R, *gens):
    return ideal_from_names(R, gens)


def test_delta0_is_identity_table():
    R = make_ring("Z12")
    assert delta0(R).table.tolist() == list(range(6))


def test_delta1_and_plus_examples():
    R = make_ring("Z12")
    d1 = make_expansion(R, "delta1")
    assert d1(I(R, "4")) == I(R, "2") and d1(I(R)) == I(R, "6")
    dp = make_expansion(R, "plus", I(R, "2"))
    assert dp(I(R, "3")) == I(R, "1") and dp(I(R, "4")) == I(R, "2")


def test_invalid_tables_rejected():
    R = make_ring("Z8")
    with pytest.raises(ExpansionError, match="extensive"):
        from_table(R, [0, 0, 0, 3])
    with pytest.raises(ExpansionError, match="monotone"):
        from_table(R, {I(R): I(R, "2"), I(R, "4"): I(R, "4")})
    with pytest.raises(ExpansionError):
        from_table(R, [0, 1])


def test_compose_examples():
    R = make_ring("Z12")
    g = plus_ideal(R, I(R, "4"))
    assert compose(delta0(R), g) == g
    assert compose(g, delta0(R)) == g
    assert compose(g, g) == g


@pytest.mark.parametrize("spec", RINGS)
def test_radical_is_idempotent_and_intersection_preserving(spec):
    R = make_ring(spec)
    d1 = delta1(R)
    assert compose(d1, d1) == d1
    assert is_intersection_preserving(d1).holds
    assert is_intersection_preserving(delta0(R)).holds
    for J in all_ideals(R):
        assert is_idempotent_at(d1, J) and is_idempotent_at(delta0(R), J)


def test_plus_not_intersection_preserving_on_nondistributive_lattice():
    R = make_ring("Z2(+)(Z2xZ2)")
    Mp = I(R, "(0,(1,1))")
    v = is_intersection_preserving(plus_ideal(R, Mp))
    assert not v.holds
    a, b = v.witness
    assert {frozenset(a.names()), frozenset(b.names())} == {
        frozenset({"(0,(0,0))", "(0,(1,0))"}),
        frozenset({"(0,(0,0))", "(0,(0,1))"}),
    }
    d = plus_ideal(R, Mp)
    assert d(a & b) == Mp
    assert d(a) & d(b) == I(R, "(0,(1,0))", "(0,(0,1))")


def test_explicit_table_not_idempotent():
    R = make_ring("Z8")
    d = from_table(R, {I(R): I(R, "4"), I(R, "4"): I(R, "2")})
    assert not is_idempotent_at(d, I(R))
    assert is_idempotent_at(d, I(R, "2"))


@given(st.sampled_from(RINGS), st.data())
def test_compose_associative_and_bounded(spec, data):
    R = make_ring(spec)
    lat = all_ideals(R)
    pick = st.sampled_from(list(lat))
    exps = [plus_ideal(R, data.draw(pick)) for _ in range(3)] + [delta1(R)]
    a, b, c = (data.draw(st.sampled_from(exps)) for _ in range(3))
    assert compose(compose(a, b), c).table.tolist() == compose(a, compose(b, c)).table.tolist()
    top = plus_ideal(R, lat[lat.top_index])
    assert pointwise_leq(delta0(R), a) and pointwise_leq(a, top)


def test_induce_quotient_examples():
    R = make_ring("Z12")
    J6 = I(R, "6")
    dq = induce_quotient(delta1(R), J6)
    Q = dq.ring
    assert Q.order == 6
    two = ideal_from_names(Q, ["2"])
    assert dq(two) == two
    d0q = induce_quotient(delta0(R), I(R, "4"))
    assert d0q.table.tolist() == list(range(len(d0q.lattice)))
    dq = induce_quotient(plus_ideal(R, I(R, "2")), I(R, "4"))
    Q4 = dq.ring
    assert dq(ideal_from_names(Q4, [])) == ideal_from_names(Q4, ["2"])


def test_induce_quotient_matches_definition():
    for spec in RINGS:
        R = make_ring(spec)
        lat = all_ideals(R)
        for J in lat:
            if not J.is_proper:
                continue
            for d in (delta1(R), plus_ideal(R, lat[1])):
                dq = induce_quotient(d, J)
                Q = dq.ring
                _, pi = quotient_ring(R, J)
                for K in lat:
                    if J <= K:
                        img = ideal_from_names(Q, [Q.name(pi.map[a]) for a in K.members])
                        want = ideal_from_names(Q, [Q.name(pi.map[a]) for a in d(K).members])
                        assert dq(img) == want


def test_induce_localization_examples():
    R = make_ring("Z12")
    S = make_multiplicative_set(R, [R.element("1"), R.element("4")])
    ds = induce_localization(delta1(R), S)
    L = ds.ring
    assert L.order == 3
    assert ds.table.tolist() == list(range(len(all_ideals(L))))
    d6 = induce_localization(plus_ideal(R, I(R, "6")), S)
    assert d6(ideal_from_names(L, [])).is_zero
    d0 = induce_localization(delta0(R), S)
    assert d0.table.tolist() == list(range(len(all_ideals(L))))


def test_induce_localization_detects_ill_defined():
    # In Z6 with S = {1,3}, (0) and (2) both extend to 0, but δ sends them
    # to (0) and R, whose extensions differ.
    R = make_ring("Z6")
    S = make_multiplicative_set(R, [R.element("1"), R.element("3")])
    d = from_table(R, {I(R, "2"): I(R, "1")})
    with pytest.raises(ExpansionError, match="ill-defined"):
        induce_localization(d, S)


def test_induce_idealization_examples():
    RM = make_ring("Z4(+)Z4")
    R, M = idealization_parts(RM)
    two = ideal_from_names(R, ["2"])
    H = embed_ideal(RM, two, [0, 2])  # module elements of Z4 are indexed by value
    assert len(H.members) == 4
    dp = induce_idealization(delta0(R), RM)
    assert dp(H) == embed_ideal(RM, two, range(M.order))
    d1p = induce_idealization(delta1(R), RM)
    zero = embed_ideal(RM, ideal_from_names(R, []), [0])
    assert d1p(zero) == embed_ideal(RM, two, range(M.order))
    small = make_ring("Z2(+)Z2")
    R2, M2 = idealization_parts(small)
    OM = embed_ideal(small, ideal_from_names(R2, []), range(M2.order))
    assert induce_idealization(delta0(R2), small)(OM) == OM


def test_idealization_totalization_is_recorded():
    RM = make_ring("Z2(+)free:2")
    d = induce_idealization(delta0(idealization_parts(RM)[0]), RM)
    assert d.notes == ()
    RM = make_ring("Z4(+)Z4")
    d = induce_idealization(delta0(idealization_parts(RM)[0]), RM)
    assert d.notes  # (0,2)+(2,1)-type ideals are not of the form I(+)N


def test_resolve_expansion():
    R = make_ring("Z12")
    assert resolve_expansion(R, "δ₁") == delta1(R)
    assert resolve_expansion(R, "plusM:(3)") == plus_ideal(R, I(R, "3"))
    assert resolve_expansion(R, "plus:4") == plus_ideal(R, I(R, "4"))
    assert resolve_expansion(R, "delta1∘plus:(4)") == compose(delta1(R), plus_ideal(R, I(R, "4")))
    with pytest.raises(ExpansionError):
        resolve_expansion(R, "delta7")
    with pytest.raises(ExpansionError):
        resolve_expansion(R, "plus:(q)")


@given(st.sampled_from(RINGS), st.data())
def test_plus_is_sum(spec, data):
    R = make_ring(spec)
    lat = all_ideals(R)
    M = data.draw(st.sampled_from(list(lat)))
    K = data.draw(st.sampled_from(list(lat)))
    assert plus_ideal(R, M)(K) == ideal_sum(K, M)
    assert delta1(R)(K) == radical(K)
    assert np.array_equal(delta0(R).table, np.arange(len(lat)))
