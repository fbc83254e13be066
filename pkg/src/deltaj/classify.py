"""Ideal classes decided by exhaustive scans over element pairs.

Every class here has the shape "whenever ab ∈ I and a ∉ A, then b ∈ B" for
some excluded set A and target set B:

=================  ==========  ===========
class              A           B
=================  ==========  ===========
prime              I           I
primary            I           √I
δ-primary          I           δ(I)
n-ideal            √0          I
δ-n-ideal          √0          δ(I)
δ-J-ideal          J(R)        δ(I)
J-ideal            J(R)        I
quasi-J-ideal      J(R)        √I
=================  ==========  ===========

:func:`implication_witness` is the one scan; the witness is the violating
pair ``(a, b)`` with the least ``(ab, a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from deltaj.constructions import Verdict
from deltaj.expansion import ExpansionFn
from deltaj.ideals import (
    Ideal,
    IdealError,
    IdealLattice,
    all_ideals,
    classify_basic,
    radical_mask,
    superfluous_witness,
)
from deltaj.ring import FiniteRing, bools_to_mask, mask_to_bools


def implication_witness(R: FiniteRing, ideal_mask: int, excluded: int, target: int) -> tuple[int, int] | None:
    """Violating pair (a, b): ab ∈ I, a ∉ excluded, b ∉ target; None if there is none.

    Among all violating pairs the one minimising (ab, a, b) is returned, so
    annihilating pairs (ab = 0) are preferred.
    """
    best = None
    for a in R.elements():
        if excluded >> a & 1:
            continue
        row = R._mul[a]
        for b in R.elements():
            c = row[b]
            if ideal_mask >> c & 1 and not target >> b & 1:
                key = (c, a, b)
                if best is None or key < best:
                    best = key
    return None if best is None else best[1:]


def _require_proper(I: Ideal) -> None:
    if not I.is_proper:
        raise IdealError("the class is only defined for proper ideals")


def _jacobson_mask(R: FiniteRing) -> int:
    lat = all_ideals(R)
    return lat.masks[lat.jacobson_index]


def _verdict(w) -> Verdict:
    return Verdict(w is None, w)


def is_delta_J_ideal(I: Ideal, delta: ExpansionFn) -> Verdict:
    """ab ∈ I ⇒ a ∈ J(R) or b ∈ δ(I)."""
    _require_proper(I)
    R = I.ring
    return _verdict(implication_witness(R, I.mask, _jacobson_mask(R), delta(I).mask))


def is_delta_primary(I: Ideal, delta: ExpansionFn) -> Verdict:
    """ab ∈ I and a ∉ I ⇒ b ∈ δ(I)."""
    _require_proper(I)
    return _verdict(implication_witness(I.ring, I.mask, I.mask, delta(I).mask))


def is_delta_n_ideal(I: Ideal, delta: ExpansionFn) -> Verdict:
    """ab ∈ I and a ∉ √0 ⇒ b ∈ δ(I)."""
    _require_proper(I)
    R = I.ring
    return _verdict(implication_witness(R, I.mask, radical_mask(R, 1 << R.zero), delta(I).mask))


def is_J_ideal(I: Ideal) -> Verdict:
    _require_proper(I)
    R = I.ring
    return _verdict(implication_witness(R, I.mask, _jacobson_mask(R), I.mask))


def is_quasi_J_ideal(I: Ideal) -> Verdict:
    _require_proper(I)
    R = I.ring
    return _verdict(implication_witness(R, I.mask, _jacobson_mask(R), radical_mask(R, I.mask)))


def is_n_ideal(I: Ideal) -> Verdict:
    _require_proper(I)
    R = I.ring
    return _verdict(implication_witness(R, I.mask, radical_mask(R, 1 << R.zero), I.mask))


def is_prime(I: Ideal) -> Verdict:
    if not I.is_proper:
        return Verdict(False, None)
    return _verdict(implication_witness(I.ring, I.mask, I.mask, I.mask))


def is_primary(I: Ideal) -> Verdict:
    if not I.is_proper:
        return Verdict(False, None)
    return _verdict(implication_witness(I.ring, I.mask, I.mask, radical_mask(I.ring, I.mask)))


# profiles ----------------------------------------------------------------------

BASE_FLAGS = ("proper", "prime", "maximal", "primary", "superfluous", "n_ideal", "J_ideal", "quasi_J_ideal")
DELTA_FLAGS = ("delta_primary", "delta_n_ideal", "delta_J_ideal")


@dataclass
class IdealProfile:
    """All classification flags of one ideal.

    ``witnesses`` maps a false flag to its evidence: a pair ``(a, b)`` for the
    implication-shaped classes, the offending ideal's members for
    ``superfluous`` (a proper J with I+J=R) and ``maximal`` (a strictly larger
    proper ideal).  For I = R every flag is false and no witness exists.
    """

    ideal: Ideal
    flags: dict[str, bool]
    delta_flags: dict[str, dict[str, bool]] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)

    def to_record(self) -> dict:
        R = self.ideal.ring
        rec = {
            "ring_spec": R.spec,
            "ideal": list(self.ideal.members),
            "ideal_label": self.ideal.label(),
        }
        rec.update(self.flags)
        for label, fl in self.delta_flags.items():
            for name, v in fl.items():
                rec[f"{name}[{label}]"] = v
        rec["witnesses"] = {k: list(v) if isinstance(v, tuple) else v for k, v in self.witnesses.items()}
        return rec


def ideal_profile(I: Ideal, deltas: Sequence[ExpansionFn] = ()) -> IdealProfile:
    R = I.ring
    if not I.is_proper:
        flags = {k: False for k in BASE_FLAGS}
        dflags = {d.label: {k: False for k in DELTA_FLAGS} for d in deltas}
        return IdealProfile(I, flags, dflags, {})
    lat = all_ideals(R)
    basic = classify_basic(I)
    flags: dict[str, bool] = {"proper": True}
    wit: dict[str, object] = {}

    def put(name: str, v: Verdict, key: str | None = None) -> None:
        flags[key or name] = v.holds
        if not v.holds:
            wit[key or name] = v.witness

    put("prime", is_prime(I))
    flags["maximal"] = basic["is_maximal"]
    if not flags["maximal"]:
        i = lat.position(I)
        bigger = next(j for j in lat.proper if lat.leq[i, j] and j != i)
        wit["maximal"] = list(lat[bigger].members)
    put("primary", is_primary(I))
    sw = superfluous_witness(I)
    flags["superfluous"] = sw is None
    if sw is not None:
        wit["superfluous"] = list(sw.members)
    put("n_ideal", is_n_ideal(I))
    put("J_ideal", is_J_ideal(I))
    put("quasi_J_ideal", is_quasi_J_ideal(I))
    dflags: dict[str, dict[str, bool]] = {}
    for d in deltas:
        fl = {}
        for name, fn in (
            ("delta_primary", is_delta_primary),
            ("delta_n_ideal", is_delta_n_ideal),
            ("delta_J_ideal", is_delta_J_ideal),
        ):
            v = fn(I, d)
            fl[name] = v.holds
            if not v.holds:
                wit[f"{name}[{d.label}]"] = v.witness
        dflags[d.label] = fl
    return IdealProfile(I, flags, dflags, wit)


# lattice-wide memoised oracle ----------------------------------------------------

class LatticeOracle:
    """Vectorised form of the implication scan over a whole ideal lattice.

    ``reach(i, A)`` is the set ``{b : ab ∈ I_i for some a ∉ A}``; the class
    "ab ∈ I, a ∉ A ⇒ b ∈ B" holds iff ``reach(i, A) ⊆ B``.  This is the same
    exhaustive pair scan as :func:`implication_witness`, done once per (I, A).
    """

    def __init__(self, lattice: IdealLattice):
        self.lat = lattice
        self.ring = lattice.ring
        self.masks = lattice.masks
        self.jacobson = lattice.masks[lattice.jacobson_index]
        self.nil = lattice.masks[lattice.nilradical_index]
        self._hits: dict[int, np.ndarray] = {}
        self._reach: dict[tuple[int, int], int] = {}
        self._dj_vec: dict[bytes, np.ndarray] = {}

    @classmethod
    def of(cls, R: FiniteRing) -> "LatticeOracle":
        o = R._cache.get("oracle")
        if o is None:
            o = cls(all_ideals(R))
            R._cache["oracle"] = o
        return o

    def hits(self, i: int) -> np.ndarray:
        h = self._hits.get(i)
        if h is None:
            h = self.lat[i].indicator[self.ring.mul_table]
            self._hits[i] = h
        return h

    def reach(self, i: int, excluded: int) -> int:
        key = (i, excluded)
        r = self._reach.get(key)
        if r is None:
            rows = ~mask_to_bools(excluded, self.ring.order)
            r = bools_to_mask(self.hits(i)[rows].any(axis=0)) if rows.any() else 0
            self._reach[key] = r
        return r

    def holds(self, i: int, excluded: int, target: int) -> bool:
        return self.reach(i, excluded) & ~target == 0

    def dj(self, i: int, t: int) -> bool:
        """I_i is a δ-J-ideal given δ(I_i) = I_t (I_i proper)."""
        return self.reach(i, self.jacobson) & ~self.masks[t] == 0

    def j_ideal(self, i: int) -> bool:
        return i != self.lat.top_index and self.dj(i, i)

    def delta_primary(self, i: int, t: int) -> bool:
        return self.reach(i, self.masks[i]) & ~self.masks[t] == 0

    def dj_vector(self, delta: ExpansionFn) -> np.ndarray:
        """Boolean vector over the lattice: is I a δ-J-ideal (False at R)."""
        key = delta.table.tobytes()
        v = self._dj_vec.get(key)
        if v is None:
            top = self.lat.top_index
            v = np.array([i != top and self.dj(i, int(t)) for i, t in enumerate(delta.table)], dtype=bool)
            self._dj_vec[key] = v
        return v

    def dj_witness(self, i: int, t: int) -> tuple[int, int] | None:
        return implication_witness(self.ring, self.masks[i], self.jacobson, self.masks[t])
