"""The named checks CHK-01 .. CHK-17.

Each check enumerates instances over a corpus, filters them by the
statement's hypotheses and tests the conclusion with the lattice-wide
oracle of :class:`~deltaj.harness.RingContext`.  Every counterexample is
recorded with the primitive facts that make it one, and those facts are
re-decided from scratch (:mod:`deltaj.facts`) before the record is kept.

Where a statement can be read more than one way, or its proof leans on a
hypothesis it does not state, the check runs several *forms*.  Only the
forms marked ``required`` decide the check's outcome; the others are
reported alongside.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from typing import Callable

import numpy as np

from deltaj.constructions import (
    embed_ideal,
    identity_hom,
    idealization_parts,
    make_multiplicative_set,
    multiplicative_closure,
    preimage_table,
    submodules_between,
    subring,
    unital_subrings,
)
from deltaj.expansion import (
    ExpansionError,
    ExpansionFn,
    compose,
    induce_idealization,
    induce_localization,
    localization_maps,
    quotient_maps,
)
from deltaj.facts import fact, failing_facts
from deltaj.harness import CheckReport, Corpus, FormResult, RingContext, context_for
from deltaj.ideals import _sum_mask, all_ideals
from deltaj.ring import FiniteRing, mask_of, members_of, quotient_ring


class Tally:
    """Counts for one form plus its (capped) list of confirmed counterexamples."""

    def __init__(self, check: str, name: str, required: bool, description: str, cap: int):
        self.check = check
        self.form = FormResult(name, required, description)
        self.cap = cap

    def tested(self, k: int = 1) -> None:
        self.form.tested += int(k)

    def filtered(self, k: int = 1) -> None:
        self.form.filtered += int(k)

    def fail(self, build: Callable[[], tuple[dict, list[dict]]]) -> None:
        """Record a counterexample; ``build`` returns (instance, facts)."""
        self.form.counterexample_count += 1
        if len(self.form.counterexamples) >= self.cap:
            return
        instance, facts = build()
        bad = failing_facts(facts)
        if bad:
            raise AssertionError(f"{self.check} {self.form.name}: recorded facts do not re-verify: {bad}")
        witness = instance.pop("witness", None)
        self.form.counterexamples.append(
            {"check": self.check, "form": self.form.name, "instance": instance, "witness": witness, "facts": facts}
        )


def _ideal_rec(lat, i: int) -> dict:
    I = lat[int(i)]
    return {"label": I.label(), "members": list(I.members)}


def instance(ctx: RingContext, expansions: dict | None = None, **ideals) -> dict:
    lat = ctx.lat
    out = {"ring_spec": ctx.ring.spec, "ideals": {k: _ideal_rec(lat, v) for k, v in ideals.items()}}
    if expansions:
        out["expansions"] = {k: v.label for k, v in expansions.items()}
    return out


def dj_fact(ctx: RingContext, i: int, delta: ExpansionFn, value: bool) -> dict:
    return fact("dj", ctx.ring, value, ideal=ctx.lat[int(i)], expansion=delta)


def maps_fact(ctx: RingContext, delta: ExpansionFn, i: int) -> dict:
    lat = ctx.lat
    return fact("maps", ctx.ring, True, expansion=delta, ideal=lat[int(i)], image=lat[int(delta.table[i])])


def subset_fact(ctx: RingContext, i: int, j: int) -> dict:
    return fact("subset", ctx.ring, bool(ctx.leq[i, j]), a=ctx.lat[int(i)], b=ctx.lat[int(j)])


def jac_fact(ctx: RingContext) -> dict:
    return fact("jacobson", ctx.ring, True, ideal=ctx.lat[ctx.jac])


def dj_pair(ctx: RingContext, i: int, t: int):
    """Witness pair for a failing δ-J test, as element names."""
    w = ctx.oracle.dj_witness(int(i), int(t))
    return None if w is None else [ctx.ring.name(w[0]), ctx.ring.name(w[1])]


@dataclass(frozen=True)
class Check:
    id: str
    title: str
    run_fn: Callable[[Corpus], CheckReport]

    def run(self, corpus: Corpus) -> CheckReport:
        return self.run_fn(corpus)


def _report(check: str, title: str, tallies: list[Tally], notes=()) -> CheckReport:
    return CheckReport(check, title, [t.form for t in tallies], list(notes))


def _cap(corpus: Corpus) -> int:
    return corpus.config.max_witnesses


# CHK-01 ---------------------------------------------------------------------

def _colon_form(ctx: RingContext, i: int, t: int) -> bool:
    """Every ideal K with aK ⊆ I for some a ∉ J(R) is inside I_t."""
    cols = np.unique(ctx.colon[i, ctx.nonjac_elements])
    under = ctx.leq[:, cols].any(axis=1)
    return not (under & ~ctx.leq[:, t]).any()


def _product_form(ctx: RingContext, i: int, t: int) -> bool:
    """KL ⊆ I ⇒ K ⊆ J(R) or L ⊆ I_t."""
    inside = ctx.leq[ctx.lat.product_table, i]
    bad = inside & ~ctx.leq[:, ctx.jac][:, None] & ~ctx.leq[:, t][None, :]
    return not bad.any()


def chk01(corpus: Corpus) -> CheckReport:
    cid = "CHK-01"
    t = Tally(cid, "equivalence", True,
              "δ-J-ideal ⟺ (aK ⊆ I, a ∉ J(R) ⇒ K ⊆ δ(I)) ⟺ (KL ⊆ I ⇒ K ⊆ J(R) or L ⊆ δ(I)), per instance", _cap(corpus))
    for ctx in corpus.contexts():
        memo: dict[tuple[int, int], tuple[bool, bool, bool]] = {}
        for d in ctx.expansions:
            for i in ctx.lat.proper:
                tgt = int(d.table[i])
                key = (i, tgt)
                if key not in memo:
                    memo[key] = (bool(ctx.dj_matrix[i, tgt]), _colon_form(ctx, i, tgt), _product_form(ctx, i, tgt))
                f1, f2, f3 = memo[key]
                t.tested()
                if not f1 == f2 == f3:
                    def build(ctx=ctx, i=i, d=d, f=(f1, f2, f3)):
                        facts = [
                            dj_fact(ctx, i, d, f[0]),
                            fact("colon_form", ctx.ring, f[1], ideal=ctx.lat[i], expansion=d),
                            fact("product_form", ctx.ring, f[2], ideal=ctx.lat[i], expansion=d),
                        ]
                        return instance(ctx, {"delta": d}, I=i), facts
                    t.fail(build)
    return _report(cid, "three characterisations of δ-J-ideals agree", [t])


# CHK-02 ---------------------------------------------------------------------

def chk02(corpus: Corpus) -> CheckReport:
    cid = "CHK-02"
    t = Tally(cid, "equivalence", True,
              "for δ(I) ≠ R: δ-J-ideal ⟺ I ⊆ J(R) and (ab ∈ I ⇒ a ∈ J(I) or b ∈ δ(I))", _cap(corpus))
    for ctx in corpus.contexts():
        masks = ctx.lat.masks
        for d in ctx.expansions:
            for i in ctx.lat.proper:
                tgt = int(d.table[i])
                if tgt == ctx.top:
                    t.filtered()
                    continue
                t.tested()
                f1 = bool(ctx.dj_matrix[i, tgt])
                ji = int(ctx.j_of_ideal[i])
                inner = ctx.oracle.holds(i, masks[ji], masks[tgt])
                f2 = bool(ctx.leq[i, ctx.jac]) and inner
                if f1 != f2:
                    def build(ctx=ctx, i=i, d=d, f1=f1, ji=ji, inner=inner, tgt=tgt):
                        lat = ctx.lat
                        facts = [
                            dj_fact(ctx, i, d, f1),
                            maps_fact(ctx, d, i),
                            jac_fact(ctx),
                            subset_fact(ctx, i, ctx.jac),
                            fact("j_of_ideal", ctx.ring, True, ideal=lat[i], result=lat[ji]),
                            fact("implication", ctx.ring, inner, ideal=lat[i], excluded=lat[ji], target=lat[tgt]),
                        ]
                        return instance(ctx, {"delta": d}, I=i, J_of_I=ji), facts
                    t.fail(build)
    notes = ["J(I) is read as the intersection of the maximal ideals containing I"]
    return _report(cid, "δ-J-ideals are the ideals inside J(R) satisfying the J(I) condition", [t], notes)


# CHK-03 ---------------------------------------------------------------------

def chk03(corpus: Corpus) -> CheckReport:
    cid = "CHK-03"
    t = Tally(cid, "equivalence", True,
              "when δ(I) ≠ R for all proper I: quasi-local ⟺ all proper principal ideals are δ-J ⟺ all proper ideals are δ-J", _cap(corpus))
    for ctx in corpus.contexts():
        proper = ctx.lat.proper
        principal = [i for i in ctx.principal if i != ctx.top]
        q = len(ctx.lat.maximal) == 1
        for d in ctx.expansions:
            if (d.table[proper] == ctx.top).any():
                t.filtered()
                continue
            t.tested()
            dj = ctx.dj(d)
            p2 = bool(dj[principal].all())
            p3 = bool(dj[proper].all())
            if not q == p2 == p3:
                def build(ctx=ctx, d=d, q=q, p2=p2, p3=p3):
                    facts = [
                        fact("expansion_proper", ctx.ring, True, expansion=d),
                        fact("quasi_local", ctx.ring, q),
                        fact("all_dj", ctx.ring, p2, expansion=d, principal=True),
                        fact("all_dj", ctx.ring, p3, expansion=d, principal=False),
                    ]
                    return instance(ctx, {"delta": d}), facts
                t.fail(build)
    return _report(cid, "rings in which every proper ideal is δ-J", [t])


# CHK-04 ---------------------------------------------------------------------

def chk04(corpus: Corpus) -> CheckReport:
    cid = "CHK-04"
    t1 = Tally(cid, "delta-primary", True, "I δ-primary, δ(I) ≠ R: δ-J-ideal ⟺ I ⊆ J(R)", _cap(corpus))
    t2 = Tally(cid, "maximal", True, "I maximal, δ(I) ≠ R: δ-J-ideal ⟺ I = J(R)", _cap(corpus))
    for ctx in corpus.contexts():
        masks = ctx.lat.masks
        for d in ctx.expansions:
            dj = ctx.dj(d)
            for i in ctx.lat.proper:
                tgt = int(d.table[i])
                prim = ctx.oracle.delta_primary(i, tgt)
                if tgt == ctx.top or not prim:
                    t1.filtered()
                else:
                    t1.tested()
                    inside = bool(ctx.leq[i, ctx.jac])
                    if bool(dj[i]) != inside:
                        def build(ctx=ctx, i=i, d=d):
                            facts = [
                                fact("delta_primary", ctx.ring, True, ideal=ctx.lat[i], expansion=d),
                                maps_fact(ctx, d, i),
                                dj_fact(ctx, i, d, bool(dj[i])),
                                jac_fact(ctx),
                                subset_fact(ctx, i, ctx.jac),
                            ]
                            return instance(ctx, {"delta": d}, I=i), facts
                        t1.fail(build)
            for i in ctx.lat.maximal:
                tgt = int(d.table[i])
                if tgt == ctx.top:
                    t2.filtered()
                    continue
                t2.tested()
                if bool(dj[i]) != (i == ctx.jac):
                    def build(ctx=ctx, i=i, d=d):
                        facts = [
                            fact("maximal", ctx.ring, True, ideal=ctx.lat[i]),
                            maps_fact(ctx, d, i),
                            dj_fact(ctx, i, d, bool(dj[i])),
                            jac_fact(ctx),
                            fact("equal", ctx.ring, i == ctx.jac, a=ctx.lat[i], b=ctx.lat[ctx.jac]),
                        ]
                        return instance(ctx, {"delta": d}, I=i), facts
                    t2.fail(build)
    return _report(cid, "δ-primary and maximal ideals that are δ-J", [t1, t2])


# colon hypotheses (CHK-05 .. CHK-07) -------------------------------------------

def _x_set(ctx: RingContext, tgt: int, which: str) -> np.ndarray:
    inside = ctx.member_bools[tgt]
    jac = ctx.member_bools[ctx.jac]
    return {
        "in_delta": inside,
        "outside_delta": ~inside,
        "in_delta_or_jac": inside | jac,
        "outside_delta_and_jac": ~(inside | jac),
        "outside_jac": ~jac,
    }[which]


def _colon_conditions(ctx: RingContext, d: ExpansionFn, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Per element x: (δ(I):x) ⊆ δ((I:x)), and δ((I:x)) ≠ R."""
    c = ctx.colon[i]
    dc = d.table[c]
    contain = ctx.leq[ctx.colon[int(d.table[i])], dc]
    return contain, dc != ctx.top


def _colon_hyp(ctx: RingContext, d: ExpansionFn, i: int, which: str, nonfull: bool) -> bool:
    contain, nf = _colon_conditions(ctx, d, i)
    ok = contain & nf if nonfull else contain
    X = _x_set(ctx, int(d.table[i]), which)
    return bool(ok[X].all())


# CHK-05 ---------------------------------------------------------------------

COLON_READINGS = {
    # name: (x-set, description)
    "literal": ("in_delta", "hypothesis over x ∉ R∖δ(I) as printed (i.e. x ∈ δ(I))"),
    "corrected": ("outside_delta", "hypothesis over x ∈ R∖δ(I), as the proof uses it"),
}


def chk05(corpus: Corpus) -> CheckReport:
    cid = "CHK-05"
    readings = [r for r in ("literal", "corrected") if r in corpus.config.colon_readings or r == "corrected"]
    tallies = {
        r: Tally(cid, r, r == "corrected",
                 f"I δ-J and (δ(I):x) ⊆ δ((I:x)) ≠ R for all x in the set ⇒ every such (I:x) is δ-J; {COLON_READINGS[r][1]}",
                 _cap(corpus))
        for r in readings
    }
    tp = Tally(cid, "pointwise", True,
               "I δ-J and (δ(I):x) ⊆ δ((I:x)) ≠ R at one x ⇒ (I:x) is δ-J", _cap(corpus))
    for ctx in corpus.contexts():
        for d in ctx.expansions:
            dj = ctx.dj(d)
            for i in ctx.lat.proper:
                contain, nf = _colon_conditions(ctx, d, i)
                cond = contain & nf
                c = ctx.colon[i]
                cdj = dj[c]
                if not dj[i]:
                    for r in readings:
                        tallies[r].filtered()
                    tp.filtered(ctx.ring.order)
                    continue
                tgt = int(d.table[i])
                for r in readings:
                    which = COLON_READINGS[r][0]
                    X = _x_set(ctx, tgt, which)
                    tl = tallies[r]
                    if not cond[X].all():
                        tl.filtered()
                        continue
                    tl.tested()
                    if not cdj[X].all():
                        def build(ctx=ctx, d=d, i=i, which=which, X=X):
                            x = int(np.flatnonzero(X & ~cdj)[0])
                            facts = [
                                dj_fact(ctx, i, d, True),
                                fact("colon_hypothesis", ctx.ring, True, ideal=ctx.lat[i], expansion=d,
                                     x_set=which, nonfull=True),
                                fact("colon", ctx.ring, True, ideal=ctx.lat[i], x=x, result=ctx.lat[int(c[x])]),
                                dj_fact(ctx, int(c[x]), d, False),
                            ]
                            inst = instance(ctx, {"delta": d}, I=i, colon=int(c[x]))
                            inst["x"] = ctx.ring.name(x)
                            return inst, facts
                        tl.fail(build)
                n_ok = int(cond.sum())
                tp.filtered(ctx.ring.order - n_ok)
                tp.tested(n_ok)
                for x in np.flatnonzero(cond & ~cdj):
                    x = int(x)

                    def build(ctx=ctx, d=d, i=i, x=x):
                        facts = [
                            dj_fact(ctx, i, d, True),
                            fact("colon_hypothesis", ctx.ring, True, ideal=ctx.lat[i], expansion=d, x=x, nonfull=True),
                            fact("colon", ctx.ring, True, ideal=ctx.lat[i], x=x, result=ctx.lat[int(c[x])]),
                            dj_fact(ctx, int(c[x]), d, False),
                        ]
                        inst = instance(ctx, {"delta": d}, I=i, colon=int(c[x]))
                        inst["x"] = ctx.ring.name(x)
                        return inst, facts
                    tp.fail(build)
    notes = ["the printed quantifier 'x ∉ R∖δ(I)' makes the hypothesis unsatisfiable (x = 0 gives (δ(I):0) = R), "
             "so the literal form is always vacuous"]
    return _report(cid, "colon ideals of δ-J-ideals", [tallies[r] for r in readings] + [tp], notes)


# CHK-06 ---------------------------------------------------------------------

MAXIMAL_READINGS = {
    # name: (x-set, require δ((I:x)) ≠ R, description)
    "literal": ("in_delta_or_jac", False, "x ∉ R∖(δ(I)∪J(R)) as printed"),
    "corrected": ("outside_delta_and_jac", False, "x ∈ R∖(δ(I)∪J(R))"),
    "strengthened": ("outside_jac", True, "x ∈ R∖J(R), with δ((I:x)) ≠ R as the colon step needs"),
}


def _maximal_readings(corpus: Corpus) -> list[str]:
    return [r for r in MAXIMAL_READINGS if r in corpus.config.colon_readings or r != "literal"]


def _maximal_dj(ctx: RingContext, dj: np.ndarray) -> np.ndarray:
    """Maximal elements of the set of δ-J-ideals under inclusion."""
    idx = np.flatnonzero(dj)
    out = np.zeros(ctx.n, dtype=bool)
    for i in idx:
        above = ctx.leq[i, idx]
        out[i] = above.sum() == 1  # only itself
    return out


REQUIRED_MAXIMAL_FORM = "strengthened"


def chk06(corpus: Corpus) -> CheckReport:
    cid = "CHK-06"
    readings = _maximal_readings(corpus)
    tallies = {
        r: Tally(cid, r, r == REQUIRED_MAXIMAL_FORM,
                 f"I a maximal δ-J-ideal with (δ(I):x) ⊆ δ((I:x)) for {MAXIMAL_READINGS[r][2]} ⇒ I is a J-ideal",
                 _cap(corpus))
        for r in readings
    }
    for ctx in corpus.contexts():
        for d in ctx.expansions:
            dj = ctx.dj(d)
            mx = _maximal_dj(ctx, dj)
            for i in ctx.lat.proper:
                if not mx[i]:
                    for r in readings:
                        tallies[r].filtered()
                    continue
                jideal = bool(ctx.j_ideal[i])
                for r in readings:
                    which, nonfull, _ = MAXIMAL_READINGS[r]
                    tl = tallies[r]
                    if not _colon_hyp(ctx, d, i, which, nonfull):
                        tl.filtered()
                        continue
                    tl.tested()
                    if not jideal:
                        def build(ctx=ctx, d=d, i=i, which=which, nonfull=nonfull):
                            facts = [
                                fact("maximal_dj", ctx.ring, True, ideal=ctx.lat[i], expansion=d),
                                fact("colon_hypothesis", ctx.ring, True, ideal=ctx.lat[i], expansion=d,
                                     x_set=which, nonfull=nonfull),
                                fact("j_ideal", ctx.ring, False, ideal=ctx.lat[i]),
                            ]
                            inst = instance(ctx, {"delta": d}, I=i)
                            inst["witness"] = dj_pair(ctx, i, i)
                            return inst, facts
                        tl.fail(build)
    return _report(cid, "maximal δ-J-ideals are J-ideals", [tallies[r] for r in readings])


# CHK-07 ---------------------------------------------------------------------

def chk07(corpus: Corpus) -> CheckReport:
    cid = "CHK-07"
    readings = _maximal_readings(corpus)
    tallies = {
        r: Tally(cid, r, r == REQUIRED_MAXIMAL_FORM,
                 f"δ(I) ≠ R and (δ(I):x) ⊆ δ((I:x)) for all proper I and {MAXIMAL_READINGS[r][2]} ⇒ "
                 "(J(R) is a J-ideal ⟺ J(R) is δ-J ⟺ J(R) is prime)",
                 _cap(corpus))
        for r in readings
    }
    for ctx in corpus.contexts():
        J = ctx.jac
        for d in ctx.expansions:
            proper = ctx.lat.proper
            if (d.table[proper] == ctx.top).any():
                for r in readings:
                    tallies[r].filtered()
                continue
            a = bool(ctx.j_ideal[J])
            b = bool(ctx.dj_matrix[J, d.table[J]])
            c = bool(ctx.prime[J])
            for r in readings:
                which, nonfull, _ = MAXIMAL_READINGS[r]
                tl = tallies[r]
                if not all(_colon_hyp(ctx, d, i, which, nonfull) for i in proper):
                    tl.filtered()
                    continue
                tl.tested()
                if not a == b == c:
                    def build(ctx=ctx, d=d, which=which, nonfull=nonfull):
                        lat = ctx.lat
                        facts = [
                            fact("expansion_proper", ctx.ring, True, expansion=d),
                            fact("colon_hypothesis_all", ctx.ring, True, expansion=d, x_set=which, nonfull=nonfull),
                            jac_fact(ctx),
                            fact("j_ideal", ctx.ring, a, ideal=lat[J]),
                            dj_fact(ctx, J, d, b),
                            fact("prime", ctx.ring, c, ideal=lat[J]),
                        ]
                        return instance(ctx, {"delta": d}, J=J), facts
                    tl.fail(build)
    return _report(cid, "J(R) as a J-ideal, a δ-J-ideal and a prime ideal", [tallies[r] for r in readings])


# CHK-08 ---------------------------------------------------------------------

def chk08(corpus: Corpus) -> CheckReport:
    cid = "CHK-08"
    cap = _cap(corpus)
    t1 = Tally(cid, "colon", True, "δ(δ(I)) = δ(I), I δ-J, a ∉ J(R) ⇒ δ((I:a)) = δ(I)", cap)
    t2 = Tally(cid, "image", True, "δ(δ(I)) = δ(I) ≠ R ⇒ (δ(I) J-ideal ⟺ δ(I) δ-J)", cap)
    t3 = Tally(cid, "cancel", True,
               "I, J δ-J with δ idempotent at both, IK = JK for some K ⊄ J(R) ⇒ δ(I) = δ(J)", cap)
    t4 = Tally(cid, "product", True,
               "I and IK δ-J, δ idempotent at IK, K ⊄ J(R) ⇒ δ(IK) = δ(I)", cap)
    for ctx in corpus.contexts():
        lat = ctx.lat
        prod = lat.product_table
        notj = ~ctx.leq[:, ctx.jac]
        proper = np.array(lat.proper)
        nonjac = ctx.nonjac_elements
        n = ctx.n
        for d in ctx.expansions:
            T = d.table
            idem = T[T] == T
            dj = ctx.dj(d)
            # (1) per (I, a)
            for i in lat.proper:
                k = len(nonjac)
                if not (idem[i] and dj[i]):
                    t1.filtered(k)
                    continue
                t1.tested(k)
                cols = ctx.colon[i, nonjac]
                bad = T[cols] != T[i]
                for a in nonjac[bad]:
                    a = int(a)

                    def build(ctx=ctx, d=d, i=i, a=a):
                        c = int(ctx.colon[i, a])
                        facts = [
                            fact("idempotent_at", ctx.ring, True, expansion=d, ideal=lat[i]),
                            dj_fact(ctx, i, d, True),
                            jac_fact(ctx),
                            fact("colon", ctx.ring, True, ideal=lat[i], x=a, result=lat[c]),
                            maps_fact(ctx, d, c),
                            maps_fact(ctx, d, i),
                        ]
                        inst = instance(ctx, {"delta": d}, I=i, colon=c)
                        inst["a"] = ctx.ring.name(a)
                        return inst, facts
                    t1.fail(build)
            # (2)
            for i in lat.proper:
                tgt = int(T[i])
                if not idem[i] or tgt == ctx.top:
                    t2.filtered()
                    continue
                t2.tested()
                a, b = bool(ctx.j_ideal[tgt]), bool(dj[tgt])
                if a != b:
                    def build(ctx=ctx, d=d, i=i, tgt=tgt, a=a, b=b):
                        facts = [
                            maps_fact(ctx, d, i),
                            fact("idempotent_at", ctx.ring, True, expansion=d, ideal=lat[i]),
                            fact("j_ideal", ctx.ring, a, ideal=lat[tgt]),
                            dj_fact(ctx, tgt, d, b),
                        ]
                        return instance(ctx, {"delta": d}, I=i, delta_I=tgt), facts
                    t2.fail(build)
            # (3) unordered pairs I < J of proper ideals, any K
            good = proper[(idem & dj)[proper]]
            p = len(proper)
            total = p * (p - 1) // 2 * n
            if len(good) >= 2:
                P = prod[good]  # rows: ideals in `good`, columns: K
                eq = (P[:, None, :] == P[None, :, :]) & notj[None, None, :]
                iu = np.triu_indices(len(good), 1)
                hits = eq[iu]  # pairs × K
                tested = int(hits.sum())
                t3.tested(tested)
                t3.filtered(total - tested)
                diff = T[good][iu[0]] != T[good][iu[1]]
                for pi in np.flatnonzero(diff & hits.any(axis=1)):
                    i, j = int(good[iu[0][pi]]), int(good[iu[1][pi]])
                    for K in np.flatnonzero(hits[pi]):
                        K = int(K)

                        def build(ctx=ctx, d=d, i=i, j=j, K=K):
                            facts = [
                                dj_fact(ctx, i, d, True),
                                dj_fact(ctx, j, d, True),
                                fact("idempotent_at", ctx.ring, True, expansion=d, ideal=lat[i]),
                                fact("idempotent_at", ctx.ring, True, expansion=d, ideal=lat[j]),
                                fact("product", ctx.ring, True, a=lat[i], b=lat[K], result=lat[int(prod[i, K])]),
                                fact("product", ctx.ring, True, a=lat[j], b=lat[K], result=lat[int(prod[j, K])]),
                                jac_fact(ctx),
                                subset_fact(ctx, K, ctx.jac),
                                maps_fact(ctx, d, i),
                                maps_fact(ctx, d, j),
                            ]
                            return instance(ctx, {"delta": d}, I=i, J=j, K=K), facts
                        t3.fail(build)
            else:
                t3.filtered(total)
            # (4) pairs (I, K), I proper
            for i in lat.proper:
                ik = prod[i]
                ok = dj[i] & dj[ik] & idem[ik] & notj & (ik != ctx.top)
                k = int(ok.sum())
                t4.tested(k)
                t4.filtered(n - k)
                for K in np.flatnonzero(ok & (T[ik] != T[i])):
                    K = int(K)

                    def build(ctx=ctx, d=d, i=i, K=K):
                        p_ = int(prod[i, K])
                        facts = [
                            dj_fact(ctx, i, d, True),
                            dj_fact(ctx, p_, d, True),
                            fact("product", ctx.ring, True, a=lat[i], b=lat[K], result=lat[p_]),
                            fact("idempotent_at", ctx.ring, True, expansion=d, ideal=lat[p_]),
                            jac_fact(ctx),
                            subset_fact(ctx, K, ctx.jac),
                            maps_fact(ctx, d, i),
                            maps_fact(ctx, d, p_),
                        ]
                        return instance(ctx, {"delta": d}, I=i, K=K, IK=p_), facts
                    t4.fail(build)
    return _report(cid, "δ-J-ideals under an idempotent expansion", [t1, t2, t3, t4])


# CHK-09 ---------------------------------------------------------------------

def chk09(corpus: Corpus) -> CheckReport:
    cid = "CHK-09"
    cap = _cap(corpus)
    t1 = Tally(cid, "image-J-ideal", True, "δ(I) a J-ideal ⇒ I is δ-J", cap)
    t1b = Tally(cid, "radical-converse", True, "I δ₁-J ⇒ √I is a J-ideal", cap)
    t2 = Tally(cid, "pointwise-order", True, "δ ≤ γ pointwise and I δ-J ⇒ I γ-J", cap)
    t3 = Tally(cid, "composition", True, "γ(I) δ-J ⇒ I is (δ∘γ)-J", cap)
    for ctx in corpus.contexts():
        lat = ctx.lat
        proper = np.array(lat.proper)
        exps = ctx.expansions
        djs = [ctx.dj(d) for d in exps]
        rad = lat.radical_table
        for d, dj in zip(exps, djs):
            T = d.table
            # (1)
            img_j = ctx.j_ideal[T[proper]] & (T[proper] != ctx.top)
            t1.tested(int(img_j.sum()))
            t1.filtered(int((~img_j).sum()))
            for i in proper[img_j & ~dj[proper]]:
                i = int(i)

                def build(ctx=ctx, d=d, i=i):
                    facts = [maps_fact(ctx, d, i), fact("j_ideal", ctx.ring, True, ideal=lat[int(d.table[i])]),
                             dj_fact(ctx, i, d, False)]
                    return instance(ctx, {"delta": d}, I=i), facts
                t1.fail(build)
        # (1) converse for the radical expansion
        d1 = next((d for d in exps if d.kind == "delta1"), None)
        if d1 is not None:
            dj1 = ctx.dj(d1)
            sel = dj1[proper]
            t1b.tested(int(sel.sum()))
            t1b.filtered(int((~sel).sum()))
            for i in proper[sel & ~ctx.j_ideal[rad[proper]]]:
                i = int(i)

                def build(ctx=ctx, d1=d1, i=i):
                    facts = [dj_fact(ctx, i, d1, True), maps_fact(ctx, d1, i),
                             fact("j_ideal", ctx.ring, False, ideal=lat[int(rad[i])])]
                    return instance(ctx, {"delta": d1}, I=i), facts
                t1b.fail(build)
        # (2) and (3) over ordered pairs of registered expansions
        for (d, djd), (g, djg) in itertools.product(list(zip(exps, djs)), repeat=2):
            np_ = len(proper)
            leq_all = bool(lat.leq[d.table, g.table].all())
            if not leq_all:
                t2.filtered(np_)
            else:
                sel = djd[proper]
                t2.tested(int(sel.sum()))
                t2.filtered(int((~sel).sum()))
                for i in proper[sel & ~djg[proper]]:
                    i = int(i)

                    def build(ctx=ctx, d=d, g=g, i=i):
                        facts = [fact("pointwise_leq", ctx.ring, True, delta=d, gamma=g),
                                 dj_fact(ctx, i, d, True), dj_fact(ctx, i, g, False)]
                        return instance(ctx, {"delta": d, "gamma": g}, I=i), facts
                    t2.fail(build)
            # (3): γ(I) proper and δ-J ⇒ I is δ∘γ-J
            gi = g.table[proper]
            hyp = (gi != ctx.top) & ctx.dj_matrix[gi, d.table[gi]]
            t3.tested(int(hyp.sum()))
            t3.filtered(int((~hyp).sum()))
            concl = ctx.dj_matrix[proper, d.table[g.table[proper]]]
            for i in proper[hyp & ~concl]:
                i = int(i)

                def build(ctx=ctx, d=d, g=g, i=i):
                    dg = compose(d, g)
                    gi_ = int(g.table[i])
                    facts = [maps_fact(ctx, g, i), dj_fact(ctx, gi_, d, True), dj_fact(ctx, i, dg, False)]
                    return instance(ctx, {"delta": d, "gamma": g}, I=i), facts
                t3.fail(build)
    return _report(cid, "comparing and composing expansions", [t1, t1b, t2, t3])


# CHK-10 ---------------------------------------------------------------------

def chk10(corpus: Corpus) -> CheckReport:
    cid = "CHK-10"
    t = Tally(cid, "chain", True, "J ⊆ K ⊆ I proper, I δ-J, δ(J) = δ(I) ⇒ K is δ-J", _cap(corpus))
    for ctx in corpus.contexts():
        lat = ctx.lat
        proper = np.array(lat.proper)
        leq = ctx.leq
        for d in ctx.expansions:
            T = d.table
            dj = ctx.dj(d)
            for i in proper:
                for j in proper[leq[proper, i]]:
                    ks = proper[leq[j, proper] & leq[proper, i]]
                    if not (dj[i] and T[j] == T[i]):
                        t.filtered(len(ks))
                        continue
                    t.tested(len(ks))
                    for k in ks[~dj[ks]]:
                        i_, j_, k_ = int(i), int(j), int(k)

                        def build(ctx=ctx, d=d, i=i_, j=j_, k=k_):
                            facts = [dj_fact(ctx, i, d, True), maps_fact(ctx, d, i), maps_fact(ctx, d, j),
                                     subset_fact(ctx, j, k), subset_fact(ctx, k, i), dj_fact(ctx, k, d, False)]
                            return instance(ctx, {"delta": d}, I=i, J=j, K=k), facts
                        t.fail(build)
    return _report(cid, "ideals between a δ-J-ideal and one with the same expansion", [t])


# CHK-11 ---------------------------------------------------------------------

def chk11(corpus: Corpus) -> CheckReport:
    cid = "CHK-11"
    cap = _cap(corpus)
    kmax = corpus.config.family_max
    t1 = Tally(cid, "intersection", True, "δ intersection-preserving, I_1..I_k δ-J ⇒ ⋂ I_i is δ-J", cap)
    t2s = Tally(cid, "converse-stated", False,
                "δ intersection-preserving, δ(I_i) pairwise incomparable primes, ⋂ I_i δ-J ⇒ every I_i is δ-J", cap)
    t2 = Tally(cid, "converse-choice", True,
               "as the stated converse, restricted to families where every ∏_{i≠k} I_i ⊄ δ(I_k) "
               "(the element chosen in the argument exists)", cap)
    for ctx in corpus.contexts():
        lat = ctx.lat
        proper = list(lat.proper)
        p = len(proper)
        meet = lat.meet_table
        prod = lat.product_table
        leq = ctx.leq
        fam_total = sum(comb(p, k) for k in range(2, kmax + 1))
        for d in ctx.expansions:
            T = d.table
            if not ctx.intersection_preserving(d):
                t1.filtered(fam_total)
                t2s.filtered(fam_total)
                t2.filtered(fam_total)
                continue
            dj = ctx.dj(d)
            # (1)
            good = [i for i in proper if dj[i]]
            tested = sum(comb(len(good), k) for k in range(2, kmax + 1))
            t1.tested(tested)
            t1.filtered(fam_total - tested)
            for k in range(2, kmax + 1):
                for fam in itertools.combinations(good, k):
                    m = fam[0]
                    for x in fam[1:]:
                        m = int(meet[m, x])
                    if not dj[m]:
                        def build(ctx=ctx, d=d, fam=fam, m=m):
                            facts = [fact("intersection_preserving", ctx.ring, True, expansion=d)]
                            facts += [dj_fact(ctx, x, d, True) for x in fam]
                            facts.append(dj_fact(ctx, m, d, False))
                            ideals = {f"I{n + 1}": x for n, x in enumerate(fam)}
                            return instance(ctx, {"delta": d}, meet=m, **ideals), facts
                        t1.fail(build)
            # (2)
            cands = [i for i in proper if ctx.prime[T[i]]]
            hits_s = hits_c = 0
            for k in range(2, kmax + 1):
                for fam in itertools.combinations(cands, k):
                    imgs = [int(T[x]) for x in fam]
                    if any(leq[a, b] or leq[b, a] for a, b in itertools.combinations(imgs, 2)):
                        continue
                    m = fam[0]
                    for x in fam[1:]:
                        m = int(meet[m, x])
                    if not dj[m]:
                        continue
                    hits_s += 1
                    concl = all(dj[x] for x in fam)
                    choice = []
                    for pos, x in enumerate(fam):
                        others = [y for q, y in enumerate(fam) if q != pos]
                        pr = others[0]
                        for y in others[1:]:
                            pr = int(prod[pr, y])
                        choice.append((pr, not leq[pr, T[x]]))
                    has_choice = all(ok for _, ok in choice)
                    hits_c += has_choice

                    def build(ctx=ctx, d=d, fam=fam, m=m, choice=choice, strengthened=False):
                        facts = [fact("intersection_preserving", ctx.ring, True, expansion=d)]
                        for x in fam:
                            facts.append(maps_fact(ctx, d, x))
                            facts.append(fact("prime", ctx.ring, True, ideal=lat[int(T[x])]))
                        for a, b in itertools.combinations(fam, 2):
                            facts.append(subset_fact(ctx, int(T[a]), int(T[b])))
                            facts.append(subset_fact(ctx, int(T[b]), int(T[a])))
                        facts.append(dj_fact(ctx, m, d, True))
                        if strengthened:
                            for x, (pr, _) in zip(fam, choice):
                                facts.append(subset_fact(ctx, pr, int(T[x])))
                        facts += [dj_fact(ctx, x, d, bool(dj[x])) for x in fam]
                        ideals = {f"I{n + 1}": x for n, x in enumerate(fam)}
                        return instance(ctx, {"delta": d}, meet=m, **ideals), facts
                    if not concl:
                        t2s.fail(build)
                        if has_choice:
                            t2.fail(lambda build=build: build(strengthened=True))
            t2s.tested(hits_s)
            t2s.filtered(fam_total - hits_s)
            t2.tested(hits_c)
            t2.filtered(fam_total - hits_c)
    notes = [
        f"families of 2 to {kmax} distinct proper ideals",
        "in a finite ring incomparable primes are distinct maximal ideals, and then the idempotent e of one "
        "local factor gives e(1-e) = 0 with e ∉ J(R) and 1-e outside the other image, so the intersection "
        "is never δ-J and the converse is vacuous",
    ]
    return _report(cid, "intersections of δ-J-ideals", [t1, t2s, t2], notes)


# CHK-12 ---------------------------------------------------------------------

def _homs(ctx: RingContext, subring_max: int):
    """(label, hom, is_mono, is_epi, image-index table or None) out of / into the ring."""
    R = ctx.ring
    lat = ctx.lat
    yield "identity", identity_hom(R), True, True
    for i in lat.proper:
        if i == lat.zero_index:
            continue
        Q, pi = quotient_ring(R, lat[i])
        yield f"projection to {Q.spec}", pi, False, True
    if R.order <= subring_max:
        for m in unital_subrings(R):
            if m == (1 << R.order) - 1:
                continue
            S, inc = subring(R, m)
            yield f"inclusion of {S.spec}", inc, True, False


def _image_table(f) -> np.ndarray:
    """Target lattice index of f(I) for each source ideal I (f surjective)."""
    sl, tl = all_ideals(f.source), all_ideals(f.target)
    return np.array([tl.index[mask_of(f.map[a] for a in members_of(m))] for m in sl.masks], dtype=np.int32)


def _hom_args(f) -> dict:
    return {"source": f.source.spec, "target": f.target.spec, "map": list(f.map)}


def chk12(corpus: Corpus) -> CheckReport:
    cid = "CHK-12"
    cap = _cap(corpus)
    t1 = Tally(cid, "monomorphism", True, "f injective δγ-homomorphism, J γ-J in the target ⇒ f⁻¹(J) δ-J", cap)
    t2 = Tally(cid, "epimorphism", True, "f surjective δγ-homomorphism, ker f ⊆ I, I δ-J ⇒ f(I) γ-J", cap)
    kinds = corpus.config.expansions
    for sctx in corpus.contexts():
        for label, f, mono, epi in _homs(sctx, corpus.config.subring_max):
            if f.source is sctx.ring:
                src, tgt = sctx, context_for(f.target, kinds)
            else:
                src, tgt = context_for(f.source, kinds), sctx
            pre = preimage_table(f)
            img = _image_table(f) if epi else None
            ker = src.lat.index[mask_of(a for a in f.source.elements() if f.map[a] == f.target.zero)]
            t_proper = np.array(tgt.lat.proper)
            s_proper = np.array(src.lat.proper)
            above_ker = s_proper[src.leq[ker, s_proper]]
            for d in src.expansions:
                djs = src.dj(d)
                for g in tgt.expansions:
                    is_dg = bool((d.table[pre] == pre[g.table]).all())
                    djt = tgt.dj(g)
                    if mono:
                        if not is_dg:
                            t1.filtered(len(t_proper))
                        else:
                            sel = djt[t_proper]
                            t1.tested(int(sel.sum()))
                            t1.filtered(int((~sel).sum()))
                            for J in t_proper[sel & ~djs[pre[t_proper]]]:
                                J = int(J)

                                def build(f=f, d=d, g=g, J=J, src=src, tgt=tgt):
                                    p = int(pre[J])
                                    facts = [
                                        fact("delta_gamma_hom", f.source, True, delta=d, gamma=g, **_hom_args(f)),
                                        dj_fact(tgt, J, g, True),
                                        fact("preimage_is", f.source, True, ideal=tgt.lat[J],
                                             preimage=list(src.lat[p].members), **_hom_args(f)),
                                        dj_fact(src, p, d, False),
                                    ]
                                    inst = {"hom": label, "source": instance(src, {"delta": d}, preimage=p),
                                            "target": instance(tgt, {"gamma": g}, J=J)}
                                    return inst, facts
                                t1.fail(build)
                    if epi:
                        if not is_dg:
                            t2.filtered(len(above_ker))
                        else:
                            sel = djs[above_ker]
                            t2.tested(int(sel.sum()))
                            t2.filtered(int((~sel).sum()))
                            for I in above_ker[sel]:
                                I = int(I)
                                fi = int(img[I])
                                if fi != tgt.top and djt[fi]:
                                    continue

                                def build(f=f, d=d, g=g, I=I, fi=fi, src=src, tgt=tgt):
                                    facts = [
                                        fact("delta_gamma_hom", f.source, True, delta=d, gamma=g, **_hom_args(f)),
                                        dj_fact(src, I, d, True),
                                        fact("maps_under", f.source, True, ideal=src.lat[I],
                                             image=list(tgt.lat[fi].members), **_hom_args(f)),
                                        dj_fact(tgt, fi, g, False),
                                    ]
                                    inst = {"hom": label, "source": instance(src, {"delta": d}, I=I),
                                            "target": instance(tgt, {"gamma": g}, image=fi)}
                                    return inst, facts
                                t2.fail(build)
    notes = ["homomorphisms: identities, projections onto quotients by nonzero proper ideals, "
             f"and inclusions of proper unital subrings of rings of order ≤ {corpus.config.subring_max}"]
    return _report(cid, "δ-J-ideals along δγ-homomorphisms", [t1, t2], notes)


# CHK-13 ---------------------------------------------------------------------

def _pullback_table(S_ctx: RingContext, R_ctx: RingContext, inc, gamma: ExpansionFn) -> np.ndarray:
    """δ_S(K) = S ∩ γ(RK) for each ideal K of S."""
    R = R_ctx.ring
    pre = preimage_table(inc)
    out = []
    for m in S_ctx.lat.masks:
        acc = 1 << R.zero
        for g_ in (inc.map[a] for a in members_of(m)):
            acc = _sum_mask(R, acc, mask_of(R._mul[g_]))
        out.append(int(pre[gamma.table[R_ctx.lat.index[acc]]]))
    return np.array(out, dtype=np.int32)


def chk13(corpus: Corpus) -> CheckReport:
    cid = "CHK-13"
    cap = _cap(corpus)
    t1 = Tally(cid, "quotient-down", True, "J ⊆ I proper, I δ-J ⇒ I/J is δ_q-J in R/J", cap)
    t2 = Tally(cid, "quotient-up-jacobson", True, "I/J δ_q-J and J ⊆ J(R) ⇒ I δ-J", cap)
    t3 = Tally(cid, "quotient-up-delta-J", True, "I/J δ_q-J, J δ-J with δ(J) ≠ R ⇒ I δ-J", cap)
    t4s = Tally(cid, "subring-in-S", True,
                "S a unital subring, I δ-J in R, the inclusion a δ_Sδ-homomorphism ⇒ S∩I is δ_S-J in S", cap)
    t4r = Tally(cid, "subring-in-R", False,
                "S a unital subring, I δ-J in R, S∩I an ideal of R ⇒ S∩I is δ-J in R", cap)
    kinds = corpus.config.expansions
    for ctx in corpus.contexts():
        R = ctx.ring
        lat = ctx.lat
        proper = np.array(lat.proper)
        for jp in lat.proper:
            Q, pre, img = quotient_maps(R, lat[jp])
            qctx = context_for(Q, ())
            above = proper[ctx.leq[jp, proper]]
            qi = img[above]
            for d in ctx.expansions:
                dj = ctx.dj(d)
                dq = img[d.table[pre]]
                qdj = qctx.dj_matrix[qi, dq[qi]] & (qi != qctx.top)
                rdj = dj[above]

                def build_q(i, value_q, value_r, extra, d=d, jp=jp, Q=Q, dq=dq, img=img):
                    dqf = ExpansionFn(Q, dq, "quotient", f"{d.label}/q")
                    facts = [dj_fact(qctx, int(img[i]), dqf, value_q), dj_fact(ctx, i, d, value_r),
                             subset_fact(ctx, jp, i)] + extra
                    inst = instance(ctx, {"delta": d}, I=i, J=jp)
                    inst["quotient"] = instance(qctx, {"delta_q": dqf}, I_mod_J=int(img[i]))
                    return inst, facts

                # (1)
                t1.tested(int(rdj.sum()))
                t1.filtered(int((~rdj).sum()))
                for i in above[rdj & ~qdj]:
                    t1.fail(lambda i=int(i): build_q(i, False, True, []))
                # (2)
                in_j = bool(ctx.leq[jp, ctx.jac])
                sel = qdj if in_j else np.zeros_like(qdj)
                t2.tested(int(sel.sum()))
                t2.filtered(int((~sel).sum()))
                for i in above[sel & ~rdj]:
                    t2.fail(lambda i=int(i): build_q(i, True, False, [jac_fact(ctx), subset_fact(ctx, jp, ctx.jac)]))
                # (3)
                jdj = bool(dj[jp]) and int(d.table[jp]) != ctx.top
                sel = qdj if jdj else np.zeros_like(qdj)
                t3.tested(int(sel.sum()))
                t3.filtered(int((~sel).sum()))
                for i in above[sel & ~rdj]:
                    t3.fail(lambda i=int(i): build_q(i, True, False, [dj_fact(ctx, jp, d, True), maps_fact(ctx, d, jp)]))
        # (4)
        if R.order > corpus.config.subring_max:
            continue
        for m in unital_subrings(R):
            if m == (1 << R.order) - 1:
                continue
            S, inc = subring(R, m)
            sctx = context_for(S, kinds)
            pre = preimage_table(inc)
            for g in ctx.expansions:
                djr = ctx.dj(g)
                cands: dict[bytes, ExpansionFn] = {}
                for e in sctx.expansions:
                    cands.setdefault(e.table.tobytes(), e)
                pb = _pullback_table(sctx, ctx, inc, g)
                if pb.tobytes() not in cands:
                    cands[pb.tobytes()] = ExpansionFn(S, pb, "pullback", f"{g.label}|S")
                dsel = djr[proper]
                for e in cands.values():
                    is_dg = bool((e.table[pre] == pre[g.table]).all())
                    if not is_dg:
                        t4s.filtered(len(proper))
                        continue
                    t4s.tested(int(dsel.sum()))
                    t4s.filtered(int((~dsel).sum()))
                    djs = sctx.dj(e)
                    for i in proper[dsel]:
                        si = int(pre[i])
                        if djs[si]:
                            continue

                        def build(e=e, g=g, i=int(i), si=si, inc=inc, sctx=sctx):
                            facts = [
                                fact("delta_gamma_hom", S, True, delta=e, gamma=g, **_hom_args(inc)),
                                dj_fact(ctx, i, g, True),
                                fact("preimage_is", S, True, ideal=lat[i], preimage=list(sctx.lat[si].members),
                                     **_hom_args(inc)),
                                dj_fact(sctx, si, e, False),
                            ]
                            inst = {"subring": S.spec, "ring": instance(ctx, {"delta": g}, I=i),
                                    "in_subring": instance(sctx, {"delta_S": e}, S_meet_I=si)}
                            return inst, facts
                        t4s.fail(build)
                # "in R": S ∩ I read as an ideal of R
                for i in proper:
                    meet_mask = lat.masks[i] & m
                    r_idx = lat.index.get(meet_mask)
                    if not djr[i] or r_idx is None:
                        t4r.filtered()
                        continue
                    t4r.tested()
                    if not djr[r_idx]:
                        def build(g=g, i=int(i), r_idx=r_idx, S=S):
                            facts = [dj_fact(ctx, i, g, True),
                                     fact("is_ideal", ctx.ring, True, ideal=list(members_of(meet_mask))),
                                     dj_fact(ctx, r_idx, g, False)]
                            inst = instance(ctx, {"delta": g}, I=i, S_meet_I=r_idx)
                            inst["subring"] = S.spec
                            return inst, facts
                        t4r.fail(build)
    notes = [
        "δ_q(K/J) = δ(K)/J on R/J",
        "subrings: proper unital subrings of rings of order ≤ "
        f"{corpus.config.subring_max}; δ_S ranges over the subring's registered expansions and "
        "the pullback K ↦ S ∩ δ(RK), kept only when the inclusion is a δ_Sδ-homomorphism",
        "the subring statement does not say that I is δ-J; both forms assume it",
    ]
    return _report(cid, "δ-J-ideals through quotients and subrings", [t1, t2, t3, t4s, t4r], notes)


# CHK-14 ---------------------------------------------------------------------

def chk14(corpus: Corpus) -> CheckReport:
    cid = "CHK-14"
    t = Tally(cid, "superfluous", True, "I δ-J with δ(I) ≠ R ⇒ I superfluous", _cap(corpus))
    for ctx in corpus.contexts():
        proper = np.array(ctx.lat.proper)
        for d in ctx.expansions:
            sel = ctx.dj(d)[proper] & (d.table[proper] != ctx.top)
            t.tested(int(sel.sum()))
            t.filtered(int((~sel).sum()))
            for i in proper[sel & ~ctx.superfluous[proper]]:
                i = int(i)

                def build(ctx=ctx, d=d, i=i):
                    facts = [dj_fact(ctx, i, d, True), maps_fact(ctx, d, i),
                             fact("superfluous", ctx.ring, False, ideal=ctx.lat[i])]
                    return instance(ctx, {"delta": d}, I=i), facts
                t.fail(build)
    return _report(cid, "δ-J-ideals with proper expansion are superfluous", [t])


# CHK-15 ---------------------------------------------------------------------

def chk15(corpus: Corpus) -> CheckReport:
    cid = "CHK-15"
    cap = _cap(corpus)
    ts = Tally(cid, "stated", False, "I, J δ-J with δ(I), δ(J) ≠ R ⇒ I + J is δ-J", cap)
    tp = Tally(cid, "intersection-preserving", True,
               "as stated, for intersection-preserving δ (the argument passes through I ∩ J)", cap)
    for ctx in corpus.contexts():
        lat = ctx.lat
        proper = np.array(lat.proper)
        p = len(proper)
        total = p * (p - 1) // 2
        st = lat.sum_table
        for d in ctx.expansions:
            dj = ctx.dj(d)
            good = proper[dj[proper] & (d.table[proper] != ctx.top)]
            hits = len(good) * (len(good) - 1) // 2
            ip = ctx.intersection_preserving(d)
            ts.tested(hits)
            ts.filtered(total - hits)
            tp.tested(hits if ip else 0)
            tp.filtered(total - (hits if ip else 0))
            for a, b in itertools.combinations(good.tolist(), 2):
                s = int(st[a, b])
                if s != ctx.top and dj[s]:
                    continue

                def build(ctx=ctx, d=d, a=a, b=b, s=s, ip=ip):
                    facts = [dj_fact(ctx, a, d, True), dj_fact(ctx, b, d, True), maps_fact(ctx, d, a),
                             maps_fact(ctx, d, b), dj_fact(ctx, s, d, False)]
                    if ip:
                        facts.insert(0, fact("intersection_preserving", ctx.ring, True, expansion=d))
                    inst = instance(ctx, {"delta": d}, I=a, J=b, sum=s)
                    inst["witness"] = dj_pair(ctx, s, int(d.table[s])) if s != ctx.top else None
                    return inst, facts
                ts.fail(build)
                if ip:
                    tp.fail(build)
    return _report(cid, "sums of δ-J-ideals", [ts, tp])


# CHK-16 ---------------------------------------------------------------------

def multiplicative_sets(R: FiniteRing):
    """Closures of non-nilpotent elements, complements of primes, and the unit group."""
    lat = all_ideals(R)
    nil = lat.masks[lat.nilradical_index]
    seen: dict[frozenset, object] = {}
    for s in R.elements():
        if nil >> s & 1:
            continue
        S = multiplicative_closure(R, [s])
        seen.setdefault(S.members, S)
    o = context_for(R, ())
    for i in lat.proper:
        if o.prime[i]:
            S = make_multiplicative_set(R, [a for a in R.elements() if not lat.masks[i] >> a & 1])
            seen.setdefault(S.members, S)
    S = make_multiplicative_set(R, members_of(R.unit_mask))
    seen.setdefault(S.members, S)
    return [seen[k] for k in sorted(seen, key=lambda m: (len(m), sorted(m)))]


def chk16(corpus: Corpus) -> CheckReport:
    cid = "CHK-16"
    cap = _cap(corpus)
    t1 = Tally(cid, "extension", True, "J(S⁻¹R) = S⁻¹J(R), I δ-J, I ∩ S = ∅ ⇒ S⁻¹I is δ_S-J", cap)
    t2 = Tally(cid, "contraction", True,
               "J(S⁻¹R) = S⁻¹J(R), S ∩ Z_J(R) = S ∩ Z_δ(I) = ∅, S⁻¹I δ_S-J ⇒ I δ-J", cap)
    n_sets = n_hyp = n_ill = n_pairs = 0
    for ctx in corpus.contexts():
        R = ctx.ring
        lat = ctx.lat
        proper = np.array(lat.proper)
        o = ctx.oracle
        zj = o.reach(ctx.jac, lat.masks[ctx.jac])
        for S in multiplicative_sets(R):
            n_sets += 1
            smask = mask_of(S.members)
            L, pi, ext = localization_maps(R, S)
            lctx = context_for(L, ())
            jl = lctx.lat.masks[lctx.jac]
            hyp = jl == mask_of(pi.map[a] for a in members_of(lat.masks[ctx.jac]))
            n_hyp += hyp
            for d in ctx.expansions:
                n_pairs += 1
                if not hyp:
                    t1.filtered(len(proper))
                    t2.filtered(len(proper))
                    continue
                try:
                    dS = induce_localization(d, S)
                except ExpansionError:
                    n_ill += 1
                    t1.filtered(len(proper))
                    t2.filtered(len(proper))
                    continue
                dj = ctx.dj(d)
                ldj = lctx.dj(dS)
                sj_ok = not (smask & zj)
                for i in proper.tolist():
                    e = int(ext[i])

                    def base_facts(i=i, e=e, d=d, dS=dS, L=L, lctx=lctx):
                        return [
                            fact("jacobson_image", R, True, **_hom_args(pi)),
                            fact("maps", L, True, expansion=dS, ideal=lctx.lat[e],
                                 image=lctx.lat[int(dS.table[e])]),
                            fact("maps_under", R, True, ideal=lat[i], image=list(lctx.lat[e].members),
                                 **_hom_args(pi)),
                        ]

                    # (1)
                    if dj[i] and not (lat.masks[i] & smask):
                        t1.tested()
                        if not ldj[e]:
                            def build(i=i, e=e, d=d, dS=dS, lctx=lctx, bf=base_facts):
                                facts = bf() + [dj_fact(ctx, i, d, True), dj_fact(lctx, e, dS, False)]
                                inst = instance(ctx, {"delta": d}, I=i)
                                inst["S"] = S.names()
                                inst["localization"] = instance(lctx, {"delta_S": dS}, S_inv_I=e)
                                return inst, facts
                            t1.fail(build)
                    else:
                        t1.filtered()
                    # (2)
                    tgt = int(d.table[i])
                    ok = sj_ok and tgt != ctx.top and e != lctx.top and ldj[e]
                    if ok:
                        ok = not (smask & o.reach(tgt, lat.masks[tgt]))
                    if not ok:
                        t2.filtered()
                        continue
                    t2.tested()
                    if not dj[i]:
                        def build(i=i, e=e, d=d, dS=dS, lctx=lctx, tgt=tgt, bf=base_facts):
                            facts = bf() + [
                                jac_fact(ctx),
                                fact("z_disjoint", R, True, set=sorted(S.members), ideal=lat[ctx.jac]),
                                maps_fact(ctx, d, i),
                                fact("z_disjoint", R, True, set=sorted(S.members), ideal=lat[tgt]),
                                dj_fact(lctx, e, dS, True),
                                dj_fact(ctx, i, d, False),
                            ]
                            inst = instance(ctx, {"delta": d}, I=i)
                            inst["S"] = S.names()
                            inst["localization"] = instance(lctx, {"delta_S": dS}, S_inv_I=e)
                            return inst, facts
                        t2.fail(build)
    notes = [
        "multiplicative sets: closures of non-nilpotent elements, complements of prime ideals, the unit group",
        "S⁻¹R is realised as R/K with K = {r : rs = 0 for some s in S}",
        f"J(S⁻¹R) = S⁻¹J(R) held for {n_hyp} of {n_sets} multiplicative sets",
        f"δ_S was ill-defined for {n_ill} of the {n_pairs} (S, δ) pairs; those instances are filtered",
    ]
    return _report(cid, "δ-J-ideals under localization", [t1, t2], notes)


# CHK-17 ---------------------------------------------------------------------

def chk17(corpus: Corpus) -> CheckReport:
    cid = "CHK-17"
    t = Tally(cid, "equivalence", True, "I δ-J in R ⟺ I(+)N δ_(+)-J in R(+)M, for IM ⊆ N", _cap(corpus))
    non_split = 0
    rings = 0
    for hctx in corpus.contexts():
        RM = hctx.ring
        if RM.kind != "idealization":
            continue
        rings += 1
        R, M = idealization_parts(RM)
        rctx = corpus.context(R)
        hl = hctx.lat
        pairs = []
        for i in rctx.lat.proper:
            I = rctx.lat[i]
            for N in submodules_between(M, M.ideal_times_module(I)):
                pairs.append((i, hl.position(embed_ideal(RM, I, N)), N))
        dplus = [induce_idealization(d, RM) for d in rctx.expansions]
        if dplus and dplus[0].notes:
            non_split += 1
        for d, dp in zip(rctx.expansions, dplus):
            djr = rctx.dj(d)
            djh = hctx.dj(dp)
            for i, h, N in pairs:
                t.tested()
                if bool(djr[i]) != bool(djh[h]):
                    def build(d=d, dp=dp, i=i, h=h):
                        facts = [dj_fact(rctx, i, d, bool(djr[i])), dj_fact(hctx, h, dp, bool(djh[h]))]
                        inst = instance(rctx, {"delta": d}, I=i)
                        inst["idealization"] = instance(hctx, {"delta_plus": dp}, I_plus_N=h)
                        return inst, facts
                    t.fail(build)
    notes = [
        "δ_(+) is extended to ideals not of the form I(+)N by H ↦ δ(I_H)(+)M, I_H the projection of H to R",
        f"{non_split} of {rings} idealization rings have ideals not of the form I(+)N",
    ]
    return _report(cid, "δ-J-ideals of an idealization", [t], notes)


CHECKS: dict[str, Check] = {
    c.id: c
    for c in (
        Check("CHK-01", "three characterisations of δ-J-ideals agree", chk01),
        Check("CHK-02", "δ-J-ideals via J(I)", chk02),
        Check("CHK-03", "rings in which every proper ideal is δ-J", chk03),
        Check("CHK-04", "δ-primary and maximal ideals that are δ-J", chk04),
        Check("CHK-05", "colon ideals of δ-J-ideals", chk05),
        Check("CHK-06", "maximal δ-J-ideals are J-ideals", chk06),
        Check("CHK-07", "J(R) as a J-ideal, a δ-J-ideal and a prime ideal", chk07),
        Check("CHK-08", "δ-J-ideals under an idempotent expansion", chk08),
        Check("CHK-09", "comparing and composing expansions", chk09),
        Check("CHK-10", "ideals between a δ-J-ideal and one with the same expansion", chk10),
        Check("CHK-11", "intersections of δ-J-ideals", chk11),
        Check("CHK-12", "δ-J-ideals along δγ-homomorphisms", chk12),
        Check("CHK-13", "δ-J-ideals through quotients and subrings", chk13),
        Check("CHK-14", "δ-J-ideals with proper expansion are superfluous", chk14),
        Check("CHK-15", "sums of δ-J-ideals", chk15),
        Check("CHK-16", "δ-J-ideals under localization", chk16),
        Check("CHK-17", "δ-J-ideals of an idealization", chk17),
    )
}
