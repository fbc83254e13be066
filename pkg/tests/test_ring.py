import pytest
from hypothesis import given, strategies as st

import oracles
from deltaj import make_ring, quotient_ring, units, verify_ring_axioms
from deltaj.ideals import ideal_from_names
from deltaj.ring import FiniteRing, RingError, RingHom, zn


def test_zn_basics():
    R = make_ring("Z6")
    assert R.order == 6 and R.zero == 0 and R.one == 1
    assert R.name(R.add(4, 5)) == "3"


def test_field_of_order_four_has_all_nonzero_inverses():
    R = make_ring("Z2[x]/(x^2+x+1)")
    assert R.order == 4
    nonzero = [a for a in R.elements() if a != R.zero]
    assert all(any(R.mul(a, b) == R.one for b in R.elements()) for a in nonzero)
    assert units(R) == set(nonzero)


def test_product_idempotent_count():
    R = make_ring("Z2xZ3")
    assert R.order == 6
    assert len([e for e in R.elements() if R.mul(e, e) == e]) == 4
    assert len(R.idempotents()) == 4


def test_axioms_pass_on_examples():
    assert verify_ring_axioms(make_ring("Z8"))
    assert verify_ring_axioms(make_ring("Z4(+)Z4"))
    assert make_ring("Z4(+)Z4").order == 16


def test_axioms_fail_with_witness_on_noncommutative_table():
    n = 2
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[0, 1], [0, 1]]  # 0*1 = 1 but 1*0 = 0
    R = FiniteRing(add, mul, 0, 1, "bad")
    rep = verify_ring_axioms(R)
    assert not rep
    assert rep.axiom == "multiplicative commutativity"
    a, b = rep.witness
    assert R.mul_table[a, b] != R.mul_table[b, a]


def test_zero_ring_rejected():
    R = FiniteRing([[0]], [[0]], 0, 0, "zero")
    assert verify_ring_axioms(R).axiom == "nonzero identity"


def test_units_examples():
    assert {make_ring("Z12").name(u) for u in units(make_ring("Z12"))} == {"1", "5", "7", "11"}
    R = make_ring("Z2xZ2")
    assert {R.name(u) for u in units(R)} == {"(1,1)"}
    F = make_ring("Z3[x]/(x^2+1)")
    assert units(F) == set(F.elements()) - {F.zero}


@given(st.integers(2, 40))
def test_zn_units_match_gcd(n):
    R = zn(n)
    assert {int(R.name(u)) for u in units(R)} == oracles.zn_units(n)


def test_quotient_examples():
    R = make_ring("Z12")
    Q, pi = quotient_ring(R, ideal_from_names(R, ["4"]))
    assert Q.order == 4
    assert len({pi.map[u] for u in (1, 5, 7, 11)}) == 2
    assert units(Q) == {pi.map[u] for u in (1, 5, 7, 11)}
    Z6 = make_ring("Z6")
    Q3, _ = quotient_ring(Z6, ideal_from_names(Z6, ["3"]))
    assert Q3.order == 3  # (3) = {0,3}, so 3 cosets


def test_quotient_by_zero_is_a_copy():
    R = make_ring("Z2xZ4")
    Q, pi = quotient_ring(R, ideal_from_names(R, []))
    assert Q.order == R.order and pi.is_injective and pi.is_surjective
    assert pi.check_axioms()


@pytest.mark.parametrize("spec,gens", [("Z12", ["4"]), ("Z2xZ4", ["(0,2)"]), ("Z2[x]/(x^2)", ["x"]), ("Z4(+)Z2", ["(2,0)"])])
def test_projection_properties(spec, gens):
    R = make_ring(spec)
    J = ideal_from_names(R, gens)
    Q, pi = quotient_ring(R, J)
    assert pi.check_axioms() and pi.is_surjective
    assert {a for a in R.elements() if pi.map[a] == Q.zero} == set(J.members)


def test_make_ring_is_referentially_transparent():
    for spec in ("Z12", "Z2xZ4", "Z3[x]/(x^2+1)", "Z4(+)Z2", "Z12/(4)"):
        a, b = make_ring(spec), make_ring(spec)
        assert a.add_table.tobytes() == b.add_table.tobytes()
        assert a.mul_table.tobytes() == b.mul_table.tobytes()


def test_spec_grammar_examples():
    assert make_ring("Z2xZ4").order == 8
    assert make_ring("Z2×Z4").order == 8
    assert make_ring("Z12/(4)").order == 4
    assert make_ring("Z3[x]/(x^2+1)").order == 9


@pytest.mark.parametrize("bad", ["", "Q7", "Z1", "Z0", "Z4[x]/(x^2)", "Z2[x]/(2x^2+1)", "Z2[x]/(x^4+x+1)", "Z6x", "Z6)"])
def test_bad_specs_raise(bad):
    with pytest.raises(RingError):
        make_ring(bad)


def test_order_cap(monkeypatch):
    monkeypatch.setenv("DELTAJ_ORDER_CAP", "10")
    with pytest.raises(RingError):
        make_ring("Z11")
    monkeypatch.delenv("DELTAJ_ORDER_CAP")
    assert make_ring("Z11").order == 11


@given(st.integers(2, 12), st.integers(2, 12))
def test_products_satisfy_axioms(a, b):
    R = make_ring(f"Z{a}xZ{b}")
    assert R.order == a * b
    assert verify_ring_axioms(R)
    assert R.one in units(R) and R.zero not in units(R)


@given(st.sampled_from([2, 3]), st.lists(st.integers(0, 2), min_size=2, max_size=3))
def test_poly_quotients_satisfy_axioms(p, lower):
    coeffs = [c % p for c in lower] + [1]
    terms = []
    for k, c in reversed(list(enumerate(coeffs))):
        if c:
            terms.append(("" if c == 1 and k else str(c)) + ("x" if k else "") + (f"^{k}" if k > 1 else ""))
    R = make_ring(f"Z{p}[x]/({'+'.join(terms)})")
    assert R.order == p ** (len(coeffs) - 1)
    assert verify_ring_axioms(R)


def test_hom_axiom_failure_is_reported():
    R, S = make_ring("Z4"), make_ring("Z2")
    f = RingHom(R, S, (0, 1, 1, 1))
    assert not f.check_axioms()
