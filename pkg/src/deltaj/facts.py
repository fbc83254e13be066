"""Primitive facts about concrete rings, ideals and expansions.

A counterexample is recorded together with the facts that make it one
("(4) is a δ-J-ideal", "δ((4)) = (2)", ...).  Each fact is a JSON-safe dict
that :func:`evaluate` re-decides from scratch: the ring is rebuilt from its
spec, ideals from their member lists, expansions from their tables, and the
classes are decided by the exhaustive pair scans in :mod:`deltaj.classify`.
"""

from __future__ import annotations

from deltaj.classify import implication_witness, is_delta_J_ideal, is_delta_primary, is_J_ideal, is_prime
from deltaj.constructions import RingHom, is_delta_gamma_hom
from deltaj.expansion import ExpansionFn, from_table, is_intersection_preserving, pointwise_leq
from deltaj.ideals import (
    Ideal,
    IdealError,
    all_ideals,
    ideal_generated,
    ideal_product,
    ideal_quotient,
    is_ideal_mask,
    is_superfluous,
    j_radical_of_ideal,
    jacobson_radical_by_units,
    z_set,
)
from deltaj.parse import make_ring
from deltaj.ring import FiniteRing, mask_of, members_of


# builders ------------------------------------------------------------------

def ideal_arg(I: Ideal | int) -> list[int]:
    return list(members_of(I)) if isinstance(I, int) else list(I.members)


def exp_arg(delta: ExpansionFn) -> dict:
    return {"label": delta.label, "table": [int(t) for t in delta.table]}


def fact(pred: str, ring: FiniteRing, value: bool = True, **args) -> dict:
    out = {"pred": pred, "ring": ring.spec}
    for k, v in args.items():
        if isinstance(v, ExpansionFn):
            v = exp_arg(v)
        elif isinstance(v, Ideal):
            v = ideal_arg(v)
        out[k] = v
    out["value"] = bool(value)
    return out


# evaluation -----------------------------------------------------------------

def _ideal(R: FiniteRing, members) -> Ideal:
    m = mask_of(members)
    if not is_ideal_mask(R, m):
        raise IdealError(f"{members} is not an ideal of {R.spec}")
    return Ideal(R, m)


def _exp(R: FiniteRing, rec) -> ExpansionFn:
    return from_table(R, rec["table"], rec.get("label", "table"))


def _dj(R, a):
    I = _ideal(R, a["ideal"])
    return I.is_proper and is_delta_J_ideal(I, _exp(R, a["expansion"])).holds


def _colon_form(R, a):
    """Every ideal K with aK ⊆ I for some a ∉ J(R) lies in δ(I)."""
    I = _ideal(R, a["ideal"])
    d = _exp(R, a["expansion"])(I)
    jm = jacobson_radical_by_units(R).mask
    for x in R.elements():
        if jm >> x & 1:
            continue
        for K in all_ideals(R):
            if all(I.mask >> R.mul(x, k) & 1 for k in K.members) and not K <= d:
                return False
    return True


def _product_form(R, a):
    """KL ⊆ I ⇒ K ⊆ J(R) or L ⊆ δ(I), over all pairs of ideals."""
    I = _ideal(R, a["ideal"])
    d = _exp(R, a["expansion"])(I)
    J = jacobson_radical_by_units(R)
    lat = all_ideals(R)
    for K in lat:
        if K <= J:
            continue
        for L in lat:
            if ideal_product(K, L) <= I and not L <= d:
                return False
    return True


def _hom(a) -> RingHom:
    f = RingHom(make_ring(a["source"]), make_ring(a["target"]), tuple(a["map"]))
    if not f.check_axioms():
        raise IdealError("recorded map is not a ring homomorphism")
    return f


def _jac_equals(R, a):
    return jacobson_radical_by_units(R).mask == mask_of(a["ideal"])


def _superfluous(R, a):
    I = _ideal(R, a["ideal"])
    return I.is_proper and is_superfluous(I)


def _maximal(R, a):
    I = _ideal(R, a["ideal"])
    if not I.is_proper:
        return False
    return not any(I < K and K.is_proper for K in all_ideals(R))


def _z_disjoint(R, a):
    S = set(a["set"])
    return not (S & z_set(_ideal(R, a["ideal"])))


def _implication(R, a):
    """The general scan: ab ∈ I and a ∉ A ⇒ b ∈ B."""
    return implication_witness(R, mask_of(a["ideal"]), mask_of(a["excluded"]), mask_of(a["target"])) is None


# element sets for the colon hypotheses, as functions of (R, δ(I), J(R))
X_SETS = {
    "in_delta": lambda R, d, j: [x for x in R.elements() if d >> x & 1],
    "outside_delta": lambda R, d, j: [x for x in R.elements() if not d >> x & 1],
    "in_delta_or_jac": lambda R, d, j: [x for x in R.elements() if (d | j) >> x & 1],
    "outside_delta_and_jac": lambda R, d, j: [x for x in R.elements() if not (d | j) >> x & 1],
    "outside_jac": lambda R, d, j: [x for x in R.elements() if not j >> x & 1],
}


def colon_condition(R: FiniteRing, I: Ideal, delta: ExpansionFn, x: int, nonfull: bool) -> bool:
    """(δ(I) : x) ⊆ δ((I : x)), and δ((I : x)) ≠ R when ``nonfull``."""
    rhs = delta(ideal_quotient(I, x))
    if nonfull and not rhs.is_proper:
        return False
    return ideal_quotient(delta(I), x) <= rhs


def _colon_hyp(R, a):
    I = _ideal(R, a["ideal"])
    d = _exp(R, a["expansion"])
    if "x" in a:
        xs = [a["x"]]
    else:
        xs = X_SETS[a["x_set"]](R, d(I).mask, jacobson_radical_by_units(R).mask)
    return all(colon_condition(R, I, d, x, a["nonfull"]) for x in xs)


def _colon_hyp_all(R, a):
    d = _exp(R, a["expansion"])
    sub = dict(a)
    for I in all_ideals(R):
        if I.is_proper:
            sub["ideal"] = I.members
            if not _colon_hyp(R, sub):
                return False
    return True


def _colon_dj_all(R, a):
    """(I : x) is a δ-J-ideal for every x in the chosen set."""
    I = _ideal(R, a["ideal"])
    d = _exp(R, a["expansion"])
    xs = X_SETS[a["x_set"]](R, d(I).mask, jacobson_radical_by_units(R).mask)
    for x in xs:
        C = ideal_quotient(I, x)
        if not C.is_proper or not is_delta_J_ideal(C, d).holds:
            return False
    return True


def _all_dj(R, a):
    d = _exp(R, a["expansion"])
    for I in all_ideals(R):
        if not I.is_proper:
            continue
        if a.get("principal") and not any(ideal_generated(R, [g]) == I for g in I.members):
            continue
        if not is_delta_J_ideal(I, d).holds:
            return False
    return True


def _maximal_dj(R, a):
    I = _ideal(R, a["ideal"])
    d = _exp(R, a["expansion"])
    if not I.is_proper or not is_delta_J_ideal(I, d).holds:
        return False
    return not any(I < K and K.is_proper and is_delta_J_ideal(K, d).holds for K in all_ideals(R))


def _expansion_proper(R, a):
    """δ(I) ≠ R for every proper I."""
    d = _exp(R, a["expansion"])
    return all(d(I).is_proper for I in all_ideals(R) if I.is_proper)


def _preimage_is(R, a):
    f = _hom(a)
    J = mask_of(a["ideal"])
    return mask_of(x for x in f.source.elements() if J >> f.map[x] & 1) == mask_of(a["preimage"])


def _jacobson_image(R, a):
    """J(target) equals the image of J(source) under a surjective map."""
    f = _hom(a)
    jt = jacobson_radical_by_units(f.target).mask
    js = jacobson_radical_by_units(f.source).mask
    return jt == mask_of(f.map[x] for x in members_of(js))


def _flag(R, a):
    """A named classification flag of an ideal, by the slow per-ideal scans."""
    from deltaj.classify import ideal_profile

    I = _ideal(R, a["ideal"])
    name = a["flag"]
    if name == "zero":
        return I.is_zero
    d = _exp(R, a["expansion"]) if "expansion" in a else None
    if name == "delta_proper":
        return d(I).is_proper
    prof = ideal_profile(I, [d] if d else [])
    if d is not None and name in prof.delta_flags.get(d.label, {}):
        return prof.delta_flags[d.label][name]
    return prof.flags[name]


def _ring_flag(R, a):
    name = a["flag"]
    maximal = [I for I in all_ideals(R) if _maximal(R, {"ideal": I.members})]
    if name == "quasi_local":
        return len(maximal) == 1
    if name == "field":
        return all(I.is_zero or not I.is_proper for I in all_ideals(R))
    if name == "reduced":
        return all(any(R.power(x, k) != R.zero for k in range(1, R.order + 1)) for x in R.elements() if x != R.zero)
    raise ValueError(f"unknown ring flag {name!r}")


PREDICATES = {
    "dj": _dj,
    "j_ideal": lambda R, a: is_J_ideal(_ideal(R, a["ideal"])).holds,
    "prime": lambda R, a: is_prime(_ideal(R, a["ideal"])).holds,
    "delta_primary": lambda R, a: is_delta_primary(_ideal(R, a["ideal"]), _exp(R, a["expansion"])).holds,
    "superfluous": _superfluous,
    "maximal": _maximal,
    "proper": lambda R, a: _ideal(R, a["ideal"]).is_proper,
    "quasi_local": lambda R, a: sum(1 for I in all_ideals(R) if _maximal(R, {"ideal": I.members})) == 1,
    "subset": lambda R, a: _ideal(R, a["a"]) <= _ideal(R, a["b"]),
    "equal": lambda R, a: _ideal(R, a["a"]) == _ideal(R, a["b"]),
    "is_ideal": lambda R, a: is_ideal_mask(R, mask_of(a["ideal"])),
    "maps": lambda R, a: _exp(R, a["expansion"])(_ideal(R, a["ideal"])).mask == mask_of(a["image"]),
    "jacobson": _jac_equals,
    "colon": lambda R, a: ideal_quotient(_ideal(R, a["ideal"]), a["x"]).mask == mask_of(a["result"]),
    "product": lambda R, a: ideal_product(_ideal(R, a["a"]), _ideal(R, a["b"])).mask == mask_of(a["result"]),
    "intersection_preserving": lambda R, a: is_intersection_preserving(_exp(R, a["expansion"])).holds,
    "pointwise_leq": lambda R, a: pointwise_leq(_exp(R, a["delta"]), _exp(R, a["gamma"])),
    "idempotent_at": lambda R, a: _exp(R, a["expansion"])(_exp(R, a["expansion"])(_ideal(R, a["ideal"])))
    == _exp(R, a["expansion"])(_ideal(R, a["ideal"])),
    "delta_gamma_hom": lambda R, a: is_delta_gamma_hom(
        _hom(a), _exp(make_ring(a["source"]), a["delta"]), _exp(make_ring(a["target"]), a["gamma"])
    ).holds,
    "maps_under": lambda R, a: mask_of(_hom(a).map[x] for x in a["ideal"]) == mask_of(a["image"]),
    "z_disjoint": _z_disjoint,
    "colon_form": _colon_form,
    "product_form": _product_form,
    "implication": _implication,
    "j_of_ideal": lambda R, a: j_radical_of_ideal(_ideal(R, a["ideal"])).mask == mask_of(a["result"]),
    "colon_hypothesis": _colon_hyp,
    "colon_hypothesis_all": _colon_hyp_all,
    "colon_dj_all": _colon_dj_all,
    "all_dj": _all_dj,
    "maximal_dj": _maximal_dj,
    "expansion_proper": _expansion_proper,
    "preimage_is": _preimage_is,
    "jacobson_image": _jacobson_image,
    "flag": _flag,
    "ring_flag": _ring_flag,
}


def evaluate(f: dict) -> bool:
    """Re-decide one fact from scratch."""
    try:
        pred = PREDICATES[f["pred"]]
    except KeyError:
        raise ValueError(f"unknown fact predicate {f.get('pred')!r}") from None
    return bool(pred(make_ring(f["ring"]), f))


def failing_facts(facts: list[dict]) -> list[dict]:
    """Facts whose recorded value does not re-verify."""
    return [f for f in facts if evaluate(f) != f["value"]]


def replay(record: dict) -> bool:
    """True iff every fact of a counterexample or search record re-verifies."""
    return not failing_facts(record["facts"])
