"""Localization, quotients and idealization on small examples.

Run with ``python3 demos/constructions_tour.py``.
"""

from deltaj import make_ring, quotient_ring
from deltaj.constructions import (
    idealization_parts,
    is_delta_gamma_hom,
    localize,
    make_hom,
    make_multiplicative_set,
)
from deltaj.expansion import delta0, delta1, induce_localization
from deltaj.ideals import all_ideals, ideal_from_names, jacobson_radical

Z12 = make_ring("Z12")
S = make_multiplicative_set(Z12, [Z12.element("1"), Z12.element("4")])
L, pi, frac = localize(Z12, S)
print(f"S^-1 Z12 at S={{1,4}}: order {L.order}, J = {jacobson_radical(L).label()}")
d = induce_localization(delta1(Z12), S)
print("induced radical expansion on S^-1 Z12:", [d(I).label() for I in all_ideals(L)])

Q, _ = quotient_ring(Z12, ideal_from_names(Z12, ["4"]))
print(f"Z12/(4): order {Q.order}, ideals {[I.label() for I in all_ideals(Q)]}")

Z4 = make_ring("Z4")
f = make_hom(Z12, Z4, lambda r: r % 4)
v = is_delta_gamma_hom(f, delta0(Z12), delta1(Z4))
print(f"r -> r mod 4 is a (δ0, δ1)-homomorphism: {v.holds}; witness ideal {v.witness.label()}")

RM = make_ring("Z2(+)Z2")
R, M = idealization_parts(RM)
print(f"{RM.spec}: J = {sorted(RM.name(a) for a in jacobson_radical(RM).members)}")
