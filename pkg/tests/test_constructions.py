from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles
from deltaj import make_ring, verify_ring_axioms
from deltaj.constructions import (
    HomError,
    embed_ideal,
    hom_ideal_transfer,
    idealization_parts,
    idealize,
    identity_hom,
    is_delta_gamma_hom,
    kernel,
    localization_kernel,
    localize,
    make_hom,
    make_module,
    make_multiplicative_set,
    multiplicative_closure,
    split_idealization_ideal,
    submodules_between,
    subring,
    unital_subrings,
    verify_module_axioms,
)
from deltaj.expansion import delta0, delta1
from deltaj.ideals import all_ideals, ideal_from_names, is_ideal_mask, jacobson_radical
from deltaj.ring import RingError, members_of, units


def I(R, *gens):
    return ideal_from_names(R, gens)


def mod4():
    R, T = make_ring("Z12"), make_ring("Z4")
    return make_hom(R, T, lambda r: r % 4)


def test_reduction_hom_and_kernel():
    f = mod4()
    assert kernel(f) == I(f.source, "4")
    assert identity_hom(f.source).check_axioms()


def test_no_unital_hom_from_z4_to_z6():
    R, T = make_ring("Z4"), make_ring("Z6")
    for table in product(range(6), repeat=4):
        with pytest.raises(HomError):
            make_hom(R, T, table)


def test_hom_transfer_examples():
    f = mod4()
    R, T = f.source, f.target
    assert hom_ideal_transfer(f, "preimage", I(T, "2")) == I(R, "2")
    assert hom_ideal_transfer(f, "preimage", I(T, "1")) == I(R, "1")
    assert hom_ideal_transfer(f, "image", I(R, "6")) == I(T, "2")
    with pytest.raises(ValueError):
        hom_ideal_transfer(f, "sideways", I(R, "6"))


def test_image_requires_surjective():
    S = make_ring("Z2xZ2")
    mask = unital_subrings(S)[0]
    D, inc = subring(S, mask)
    with pytest.raises(HomError):
        hom_ideal_transfer(inc, "image", ideal_from_names(D, []))


def test_delta_gamma_examples():
    f = mod4()
    R, T = f.source, f.target
    assert is_delta_gamma_hom(f, delta1(R), delta1(T))
    assert is_delta_gamma_hom(f, delta0(R), delta0(T))
    v = is_delta_gamma_hom(f, delta0(R), delta1(T))
    assert not v and v.witness == I(T)
    assert delta0(R)(hom_ideal_transfer(f, "preimage", I(T))) == I(R, "4")
    assert hom_ideal_transfer(f, "preimage", delta1(T)(I(T))) == I(R, "2")


def test_multiplicative_sets():
    R = make_ring("Z12")
    with pytest.raises(RingError):
        make_multiplicative_set(R, [R.element("4")])
    with pytest.raises(RingError):
        make_multiplicative_set(R, [R.one, R.element("2")])
    with pytest.raises(RingError):
        make_multiplicative_set(R, [R.one, R.zero])
    S = multiplicative_closure(R, [R.element("5")])
    assert S.names() == ["1", "5"]


def test_localize_examples():
    R = make_ring("Z6")
    S = make_multiplicative_set(R, [R.element("1"), R.element("3")])
    assert localization_kernel(R, S) == I(R, "2")
    L, pi, frac = localize(R, S)
    assert L.order == 2
    assert frac(R.element("3"), R.element("3")) == L.one
    Z12 = make_ring("Z12")
    S = make_multiplicative_set(Z12, [Z12.element("1"), Z12.element("4")])
    assert localization_kernel(Z12, S) == I(Z12, "3")
    L, pi, _ = localize(Z12, S)
    assert L.order == 3
    assert jacobson_radical(L).is_zero
    assert all(pi(x) == L.zero for x in jacobson_radical(Z12).members)


@pytest.mark.parametrize("spec", ["Z12", "Z2xZ4", "Z4(+)Z2", "Z3[x]/(x^2)"])
def test_localizing_at_units_changes_nothing(spec):
    R = make_ring(spec)
    L, pi, _ = localize(R, make_multiplicative_set(R, units(R)))
    assert L.order == R.order and pi.is_injective


@given(st.sampled_from(["Z12", "Z2xZ6", "Z4xZ4", "Z2(+)free:2", "Z8"]), st.data())
def test_localization_inverts_s(spec, data):
    R = make_ring(spec)
    gens = data.draw(st.lists(st.sampled_from(list(R.elements())), max_size=2))
    try:
        S = multiplicative_closure(R, gens)
    except RingError:
        return  # generated set reaches 0
    L, pi, frac = localize(R, S)
    assert verify_ring_axioms(L)
    for s in S:
        assert L.is_unit(pi(s))
        assert frac(s, s) == L.one
    K = {r for r in R.elements() if any(R.mul(r, s) == R.zero for s in S)}
    assert set(localization_kernel(R, S).members) == K


def test_module_examples():
    Z4, Z2 = make_ring("Z4"), make_ring("Z2")
    M = make_module(Z4, "free:1")
    assert M.order == 4 and M.act(2, 3) == 2
    F = make_module(Z2, "free:2")
    assert F.order == 4 and verify_module_axioms(F)
    C = make_module(Z4, "quot:(2)")
    assert C.order == 2
    assert all(C.act(Z4.element("2"), m) == C.zero for m in C.elements())
    with pytest.raises(RingError):
        make_module(Z4, "free:3")


def test_submodules_between_examples():
    Z4 = make_ring("Z4")
    M = make_module(Z4, "free:1")
    low = M.ideal_times_module(I(Z4, "2"))
    assert list(members_of(low)) == [0, 2]
    assert [list(members_of(n)) for n in submodules_between(M, low)] == [[0, 2], [0, 1, 2, 3]]
    assert len(submodules_between(M)) == 3
    F = make_module(make_ring("Z2"), "free:2")
    assert len(submodules_between(F, [F.zero])) == 5


def test_idealization_examples():
    Z2 = make_ring("Z2")
    RM, embed = idealize(Z2, make_module(Z2, "free:1"))
    assert RM.order == 4 and verify_ring_axioms(RM)
    assert {RM.name(a) for a in jacobson_radical(RM).members} == {"(0,0)", "(0,1)"}
    assert len(all_ideals(RM)) == 3  # local with a unique nonzero proper ideal
    assert embed(ideal_from_names(Z2, []), [0]).is_zero
    R4 = make_ring("Z4(+)Z4")
    Z4, M = idealization_parts(R4)
    H = embed_ideal(R4, I(Z4, "2"), [0, 2])
    assert len(H.members) == 4 and is_ideal_mask(R4, H.mask)
    with pytest.raises(RingError):
        embed_ideal(R4, I(Z4, "2"), [0])  # IM = {0,2} is not inside N


@pytest.mark.parametrize("spec", ["Z2(+)Z2", "Z4(+)Z2", "Z2(+)free:2", "Z3(+)Z3", "Z4(+)Z4"])
def test_idealization_ideals_split_or_not(spec):
    RM = make_ring(spec)
    R, M = idealization_parts(RM)
    lat = all_ideals(RM)
    assert {frozenset(J.members) for J in lat} == oracles.subset_ideals(RM)
    for J in lat:
        proj, fibre, split = split_idealization_ideal(RM, J)
        if split:
            assert embed_ideal(RM, ideal_from_names(R, [R.name(a) for a in members_of(proj)]), fibre) == J


def test_unital_subrings():
    S = make_ring("Z2xZ2")
    subs = [sorted(S.name(a) for a in members_of(m)) for m in unital_subrings(S)]
    assert subs == [["(0,0)", "(1,1)"], ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]]
    D, inc = subring(S, unital_subrings(S)[0])
    assert D.order == 2 and inc.check_axioms()
    assert [list(members_of(m)) for m in unital_subrings(make_ring("Z12"))] == [list(range(12))]
