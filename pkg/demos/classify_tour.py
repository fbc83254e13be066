"""Walk through the ideal classes on a few small rings.

Run with ``python3 demos/classify_tour.py``.
"""

from deltaj import make_ring
from deltaj.classify import ideal_profile
from deltaj.expansion import delta0, delta1, plus_ideal
from deltaj.ideals import all_ideals, ideal_from_names, jacobson_radical


def show(spec: str, extra_plus: str | None = None) -> None:
    R = make_ring(spec)
    deltas = [delta0(R), delta1(R)]
    if extra_plus:
        deltas.append(plus_ideal(R, ideal_from_names(R, [extra_plus])))
    print(f"{spec}: order {R.order}, J(R) = {jacobson_radical(R).label()}")
    for I in all_ideals(R):
        if not I.is_proper:
            continue
        p = ideal_profile(I, deltas)
        dj = [d.label for d in deltas if p.delta_flags[d.label]["delta_J_ideal"]]
        line = f"  {I.label():<10} J-ideal={p.flags['J_ideal']!s:<5} quasi-J={p.flags['quasi_J_ideal']!s:<5}"
        print(line + f" δ-J for: {', '.join(dj) or '-'}")
        w = p.witnesses.get("J_ideal")
        if w:
            a, b = w
            print(f"      not J: {R.name(a)}*{R.name(b)} = {R.name(R.mul(a, b))} lies in I")
    print()


if __name__ == "__main__":
    show("Z6", "3")
    show("Z12", "2")
    show("Z2(+)Z2")
