"""Expansion functions on the ideal lattice of a finite ring.

An expansion is stored as a total table over lattice indices.  Every
constructor validates extensivity (``I ⊆ δ(I)``) and monotonicity
(``I ⊆ J ⇒ δ(I) ⊆ δ(J)``) before returning.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from deltaj.constructions import (
    MultiplicativeSet,
    Verdict,
    idealization_parts,
    localize,
    split_idealization_ideal,
)
from deltaj.ideals import Ideal, IdealError, IdealLattice, all_ideals, generator_names
from deltaj.ring import FiniteRing, RingError, mask_of, members_of, quotient_ring


class ExpansionError(RingError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ExpansionFn:
    """A validated expansion function δ on 𝓘(R).

    ``kind`` is one of ``delta0``, ``delta1``, ``plus``, ``table``,
    ``composed``, ``quotient``, ``localization``, ``idealization``.
    """

    def __init__(self, ring: FiniteRing, table, kind: str, label: str, param: Ideal | None = None, notes=()):
        self.ring = ring
        self.lattice: IdealLattice = all_ideals(ring)
        t = np.array(table, dtype=np.int32)
        t.flags.writeable = False
        if t.shape != (len(self.lattice),):
            raise ExpansionError("expansion table must have one entry per ideal")
        self.table = t
        self.kind = kind
        self.label = label
        self.param = param
        self.notes = tuple(notes)
        _validate(self)

    def __call__(self, I: Ideal) -> Ideal:
        return self.lattice[int(self.table[self.lattice.position(I)])]

    def __repr__(self) -> str:
        return f"ExpansionFn({self.label} on {self.ring.spec})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpansionFn):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.ring.order, self.table.tobytes()))

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, int(t)) for i, t in enumerate(self.table)]

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "param": None if self.param is None else list(self.param.members),
            "table": self.pairs(),
        }


def _validate(delta: ExpansionFn) -> None:
    lat, t = delta.lattice, delta.table
    leq = lat.leq
    n = len(lat)
    ext = leq[np.arange(n), t]
    if not ext.all():
        i = int(np.argmin(ext))
        raise ExpansionError(f"not extensive: I ⊄ δ(I) at I={lat[i].label()}", (i,))
    bad = leq & ~leq[np.ix_(t, t)]
    if bad.any():
        i, j = (int(v) for v in np.argwhere(bad)[0])
        raise ExpansionError(
            f"not monotone: {lat[i].label()} ⊆ {lat[j].label()} but δ images are not nested", (i, j)
        )


def delta0(R: FiniteRing) -> ExpansionFn:
    """Identity expansion."""
    lat = all_ideals(R)
    return ExpansionFn(R, np.arange(len(lat)), "delta0", "delta0")


def delta1(R: FiniteRing) -> ExpansionFn:
    """Radical expansion ``I ↦ √I``."""
    lat = all_ideals(R)
    return ExpansionFn(R, lat.radical_table, "delta1", "delta1")


def plus_ideal(R: FiniteRing, M: Ideal) -> ExpansionFn:
    """``I ↦ I + M``."""
    lat = all_ideals(R)
    m = lat.position(M)
    label = "plus:(" + ",".join(generator_names(R, M.mask)) + ")"
    return ExpansionFn(R, lat.sum_table[:, m], "plus", label, param=lat[m])


def from_table(R: FiniteRing, mapping, label: str = "table") -> ExpansionFn:
    """Explicit expansion from a sequence of lattice indices or an Ideal→Ideal mapping."""
    lat = all_ideals(R)
    if isinstance(mapping, Mapping):
        table = list(range(len(lat)))
        for k, v in mapping.items():
            table[lat.position(k)] = lat.position(v)
    else:
        table = [int(x) for x in mapping]
    return ExpansionFn(R, table, "table", label)


def make_expansion(R: FiniteRing, kind: str, param=None) -> ExpansionFn:
    if kind in ("delta0", "identity"):
        return delta0(R)
    if kind in ("delta1", "radical"):
        return delta1(R)
    if kind == "plus":
        if not isinstance(param, Ideal):
            raise ExpansionError("plus expansion needs an ideal parameter")
        return plus_ideal(R, param)
    if kind == "table":
        return from_table(R, param)
    raise ExpansionError(f"unknown expansion kind {kind!r}")


def compose(delta: ExpansionFn, gamma: ExpansionFn) -> ExpansionFn:
    """``δ∘γ``: first γ, then δ."""
    if delta.ring != gamma.ring:
        raise ExpansionError("cannot compose expansions on different rings")
    return ExpansionFn(delta.ring, delta.table[gamma.table], "composed", f"{delta.label}∘{gamma.label}")


def is_intersection_preserving(delta: ExpansionFn) -> Verdict:
    """``δ(I ∩ J) = δ(I) ∩ δ(J)`` for all pairs; witness is the least failing (I, J)."""
    lat = delta.lattice
    meet = lat.meet_table
    t = delta.table
    lhs = t[meet]
    rhs = meet[np.ix_(t, t)]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        i, j = (int(v) for v in bad[0])
        return Verdict(False, (lat[i], lat[j]))
    return Verdict(True)


def is_idempotent_at(delta: ExpansionFn, I: Ideal) -> bool:
    i = delta.lattice.position(I)
    return delta.table[delta.table[i]] == delta.table[i]


def pointwise_leq(delta: ExpansionFn, gamma: ExpansionFn) -> bool:
    """δ(I) ⊆ γ(I) for every ideal I."""
    if delta.ring != gamma.ring:
        raise ExpansionError("expansions on different rings")
    lat = delta.lattice
    return bool(lat.leq[delta.table, gamma.table].all())


# induced expansions ------------------------------------------------------------

def _image_mask(pi_map: Sequence[int], mask: int) -> int:
    return mask_of(pi_map[a] for a in members_of(mask))


def quotient_maps(R: FiniteRing, J: Ideal) -> tuple[FiniteRing, np.ndarray, np.ndarray]:
    """(R/J, lattice index of the preimage of each ideal of R/J, image index of each ideal of R)."""
    key = ("quotient_maps", J.mask)
    hit = R._cache.get(key)
    if hit is not None:
        return hit
    Q, pi = quotient_ring(R, J)
    rl, ql = all_ideals(R), all_ideals(Q)
    pre = np.array(
        [rl.index[mask_of(a for a in R.elements() if qm >> pi.map[a] & 1)] for qm in ql.masks], dtype=np.int32
    )
    img = np.array([ql.index[_image_mask(pi.map, m)] for m in rl.masks], dtype=np.int32)
    R._cache[key] = (Q, pre, img)
    return Q, pre, img


def induce_quotient(delta: ExpansionFn, J: Ideal) -> ExpansionFn:
    """δ_q on R/J with ``δ_q(K/J) = δ(K)/J`` (K the full preimage)."""
    R = delta.ring
    if not J.is_proper:
        raise ExpansionError("cannot induce on R/R")
    Q, pre, img = quotient_maps(R, J)
    return ExpansionFn(Q, img[delta.table[pre]], "quotient", f"{delta.label}/q")


def localization_maps(R: FiniteRing, S: MultiplicativeSet):
    """(S⁻¹R, π, lattice index in S⁻¹R of the extension of each ideal of R)."""
    key = ("localization_maps", S.members)
    hit = R._cache.get(key)
    if hit is not None:
        return hit
    L, pi, _ = localize(R, S)
    rl, ll = all_ideals(R), all_ideals(L)
    ext = np.array([ll.index[_image_mask(pi.map, m)] for m in rl.masks], dtype=np.int32)
    R._cache[key] = (L, pi, ext)
    return L, pi, ext


def induce_localization(delta: ExpansionFn, S: MultiplicativeSet) -> ExpansionFn:
    """δ_S on S⁻¹R mapping the extension of I to the extension of δ(I).

    Raises :class:`ExpansionError` when two ideals with the same extension
    have expansions with different extensions.
    """
    R = delta.ring
    L, pi, ext = localization_maps(R, S)
    rl, ll = all_ideals(R), all_ideals(L)
    vals = ext[delta.table]
    table = np.full(len(ll), -1, dtype=np.int64)
    first = np.full(len(ll), -1, dtype=np.int64)
    for i, (e, v) in enumerate(zip(ext.tolist(), vals.tolist())):
        if table[e] < 0:
            table[e], first[e] = v, i
        elif table[e] != v:
            j = int(first[e])
            raise ExpansionError(
                f"δ_S is ill-defined: {rl[j].label()} and {rl[i].label()} have the same extension "
                "but their expansions do not",
                (rl[j], rl[i]),
            )
    if (table < 0).any():
        raise ExpansionError("some ideal of S^-1 R is not an extension")
    return ExpansionFn(L, table, "localization", f"{delta.label}_S")


def idealization_maps(RM: FiniteRing):
    """Per ideal H of R(+)M: lattice index of its projection to R, and whether H = I_H(+)N_H;
    per ideal I of R: lattice index of I(+)M."""
    hit = RM._cache.get("idealization_maps")
    if hit is not None:
        return hit
    R, M = idealization_parts(RM)
    rl, hl = all_ideals(R), all_ideals(RM)
    k = M.order
    full = (1 << k) - 1
    proj, split = [], []
    for H in hl:
        p, _, s = split_idealization_ideal(RM, H)
        proj.append(rl.index[p])
        split.append(s)
    top = []
    for m in rl.masks:
        img = 0
        for a in members_of(m):
            img |= full << (a * k)
        top.append(hl.index[img])
    out = (np.array(proj, dtype=np.int32), np.array(split, dtype=bool), np.array(top, dtype=np.int32))
    RM._cache["idealization_maps"] = out
    return out


def induce_idealization(delta: ExpansionFn, RM: FiniteRing) -> ExpansionFn:
    """δ_(+) on R(+)M: ``H ↦ δ(I_H)(+)M`` with ``I_H`` the projection of H to R.

    On ideals of the form I(+)N this is exactly ``δ(I)(+)M``; the labels of
    ideals not of that form are recorded in ``notes``.
    """
    R, M = idealization_parts(RM)
    if delta.ring != R:
        raise ExpansionError("δ must live on the base ring of the idealization")
    proj, split, top = idealization_maps(RM)
    hl = all_ideals(RM)
    notes = RM._cache.get("idealization_notes")
    if notes is None:
        notes = [hl[int(h)].label() for h in np.flatnonzero(~split)]
        RM._cache["idealization_notes"] = notes
    return ExpansionFn(RM, top[delta.table[proj]], "idealization", f"{delta.label}_(+)", notes=notes)


def resolve_expansion(R: FiniteRing, selector: str) -> ExpansionFn:
    """``delta0`` | ``delta1`` | ``plus:<gens>`` | ``plusM:<gens>`` | ``a∘b``."""
    from deltaj.ideals import ideal_from_names
    from deltaj.parse import split_top_level

    sel = selector.strip()
    if "∘" in sel:
        head, tail = sel.split("∘", 1)
        return compose(resolve_expansion(R, head), resolve_expansion(R, tail))
    aliases = {"δ₀": "delta0", "δ0": "delta0", "δ₁": "delta1", "δ1": "delta1"}
    sel = aliases.get(sel, sel)
    if sel in ("delta0", "identity"):
        return delta0(R)
    if sel in ("delta1", "radical"):
        return delta1(R)
    for prefix in ("plusM:", "plus:"):
        if sel.startswith(prefix):
            body = sel[len(prefix) :].strip()
            if body.startswith("(") and body.endswith(")"):
                body = body[1:-1]
            try:
                return plus_ideal(R, ideal_from_names(R, split_top_level(body)))
            except (RingError, IdealError) as exc:
                raise ExpansionError(f"bad plus expansion {selector!r}: {exc}") from None
    raise ExpansionError(f"unknown expansion selector {selector!r}")
