"""Ideals of a finite ring and the lattice of all of them.

An :class:`Ideal` is a bitmask over element indices of its owning ring.
:func:`all_ideals` materialises the full lattice once per ring; everything
else (sums, colons, radicals, the Jacobson radical) is computed against it.
"""

from __future__ import annotations

import os
from functools import cached_property
from typing import Iterable

import numpy as np

from deltaj.ring import FiniteRing, RingError, bools_to_mask, mask_of, mask_to_bools, members_of

DEFAULT_LATTICE_CAP = 4096


class IdealError(RingError):
    pass


def lattice_cap() -> int:
    return int(os.environ.get("DELTAJ_LATTICE_CAP", DEFAULT_LATTICE_CAP))


class Ideal:
    """An ideal of ``ring``; equality is set equality within the same ring."""

    def __init__(self, ring: FiniteRing, mask: int):
        self.ring = ring
        self.mask = mask

    @cached_property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    @cached_property
    def indicator(self) -> np.ndarray:
        return mask_to_bools(self.mask, self.ring.order)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, a: int) -> bool:
        return bool(self.mask >> a & 1)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.mask == other.mask and (self.ring is other.ring or self.ring == other.ring)

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: Ideal) -> bool:
        _same_ring(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Ideal) -> bool:
        return self <= other and self.mask != other.mask

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __and__(self, other: Ideal) -> Ideal:
        return ideal_intersect(self, other)

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self

    @property
    def is_zero(self) -> bool:
        return self.mask == 1 << self.ring.zero

    def sort_key(self) -> tuple:
        return (len(self), self.members)

    def label(self) -> str:
        return "(" + ",".join(generator_names(self.ring, self.mask)) + ")"

    def names(self) -> list[str]:
        return [self.ring.name(a) for a in self.members]

    def __repr__(self) -> str:
        return f"Ideal{self.label()} of {self.ring.spec}"


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring is not J.ring and I.ring != J.ring:
        raise IdealError(f"ideals belong to different rings: {I.ring.spec} vs {J.ring.spec}")


# closure primitives ---------------------------------------------------------

def _principal_mask(R: FiniteRing, g: int) -> int:
    return mask_of(R._mul[g])


def _sum_mask(R: FiniteRing, a: int, b: int) -> int:
    """Mask of {x + y : x in a, y in b} for additive subgroups a, b."""
    xs = members_of(a)
    out = 0
    add = R._add
    for y in members_of(b):
        row = add[y]
        for x in xs:
            out |= 1 << row[x]
    return out


def ideal_generated(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens``."""
    m = 1 << R.zero
    for g in gens:
        if not 0 <= g < R.order:
            raise IdealError(f"generator {g} is not an element of {R.spec}")
        if m >> g & 1:
            continue
        m = _sum_mask(R, m, _principal_mask(R, g))
    return Ideal(R, m)


def generator_names(R: FiniteRing, mask: int) -> list[str]:
    """Canonical generator list: greedily add the least member not yet generated."""
    cur = 1 << R.zero
    gens = []
    for a in members_of(mask):
        if cur >> a & 1:
            continue
        gens.append(a)
        cur = _sum_mask(R, cur, _principal_mask(R, a))
        if cur == mask:
            break
    if not gens:
        return [R.name(R.zero)]
    return [R.name(a) for a in gens]


def is_ideal_mask(R: FiniteRing, mask: int) -> bool:
    """Direct check of the ideal axioms for a subset given as a bitmask."""
    if not mask >> R.zero & 1:
        return False
    ms = members_of(mask)
    neg = R.negation
    for a in ms:
        if not mask >> neg[a] & 1:
            return False
        row_add = R._add[a]
        row_mul = R._mul[a]
        for b in ms:
            if not mask >> row_add[b] & 1:
                return False
        for r in R.elements():
            if not mask >> row_mul[r] & 1:
                return False
    return True


# the lattice ----------------------------------------------------------------

class IdealLattice:
    """All ideals of a ring in canonical order (cardinality, then members)."""

    def __init__(self, ring: FiniteRing, masks: Iterable[int]):
        self.ring = ring
        ideals = sorted((Ideal(ring, m) for m in set(masks)), key=Ideal.sort_key)
        self.ideals: list[Ideal] = ideals
        self.masks: list[int] = [I.mask for I in ideals]
        self.index: dict[int, int] = {m: i for i, m in enumerate(self.masks)}
        self.zero_index = self.index[1 << ring.zero]
        self.top_index = self.index[(1 << ring.order) - 1]

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __getitem__(self, i: int) -> Ideal:
        return self.ideals[i]

    def position(self, I) -> int:
        mask = I.mask if isinstance(I, Ideal) else I
        try:
            return self.index[mask]
        except KeyError:
            raise IdealError("not an ideal of this ring") from None

    def ideal(self, mask: int) -> Ideal:
        """Canonical lattice member with the given mask."""
        return self.ideals[self.position(mask)]

    @cached_property
    def proper(self) -> list[int]:
        return [i for i in range(len(self)) if i != self.top_index]

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[i, j]`` iff ideal i is contained in ideal j."""
        n = len(self)
        out = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.masks):
            for j, b in enumerate(self.masks):
                out[i, j] = a & ~b == 0
        return out

    @cached_property
    def sum_table(self) -> np.ndarray:
        n = len(self)
        out = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(i, n):
                out[i, j] = out[j, i] = self.index[_sum_mask(self.ring, self.masks[i], self.masks[j])]
        return out

    @cached_property
    def meet_table(self) -> np.ndarray:
        n = len(self)
        out = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(i, n):
                out[i, j] = out[j, i] = self.index[self.masks[i] & self.masks[j]]
        return out

    @cached_property
    def product_table(self) -> np.ndarray:
        n = len(self)
        R = self.ring
        out = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(i, n):
                m = _product_mask(R, self.masks[i], self.masks[j])
                out[i, j] = out[j, i] = self.index[m]
        return out

    @cached_property
    def maximal(self) -> list[int]:
        leq = self.leq
        out = []
        for i in self.proper:
            if not any(leq[i, j] and j != i for j in self.proper):
                out.append(i)
        return out

    @cached_property
    def jacobson_index(self) -> int:
        m = (1 << self.ring.order) - 1
        for i in self.maximal:
            m &= self.masks[i]
        return self.index[m]

    @cached_property
    def nilradical_index(self) -> int:
        return self.index[radical_mask(self.ring, 1 << self.ring.zero)]

    @cached_property
    def colon_elements(self) -> np.ndarray:
        """``colon_elements[i, x]`` = lattice index of ``(I_i : x)``."""
        R = self.ring
        n = len(self)
        out = np.empty((n, R.order), dtype=np.int32)
        mul = R.mul_table
        for i, I in enumerate(self.ideals):
            hit = I.indicator[mul]  # hit[x, y] iff xy in I
            for x in range(R.order):
                out[i, x] = self.index[bools_to_mask(hit[x])]
        return out

    @cached_property
    def radical_table(self) -> np.ndarray:
        return np.array([self.index[radical_mask(self.ring, m)] for m in self.masks], dtype=np.int32)

    @property
    def is_quasi_local(self) -> bool:
        return len(self.maximal) == 1


def _product_mask(R: FiniteRing, a: int, b: int) -> int:
    prods = 0
    mul = R._mul
    bs = members_of(b)
    for x in members_of(a):
        row = mul[x]
        for y in bs:
            prods |= 1 << row[y]
    # the additive span of products of ideal elements is already an ideal
    m = 1 << R.zero
    for p in members_of(prods):
        if not m >> p & 1:
            m = _sum_mask(R, m, _principal_mask(R, p))
    return m


def all_ideals(R: FiniteRing) -> IdealLattice:
    """Every ideal of ``R`` by join-closure of the principal ideals."""
    lat = R._cache.get("lattice")
    if lat is not None:
        return lat
    cap = lattice_cap()
    principal = {_principal_mask(R, g) for g in R.elements()}
    found = set(principal)
    found.add(1 << R.zero)
    frontier = list(principal)
    gens = sorted(principal)
    while frontier:
        nxt = []
        for m in frontier:
            for p in gens:
                if p & ~m == 0:
                    continue
                s = _sum_mask(R, m, p)
                if s not in found:
                    found.add(s)
                    nxt.append(s)
                    if len(found) > cap:
                        raise IdealError(f"ideal lattice of {R.spec} exceeds the cap {cap}")
        frontier = nxt
    lat = IdealLattice(R, found)
    R._cache["lattice"] = lat
    return lat


def lattice_of(I: Ideal) -> IdealLattice:
    return all_ideals(I.ring)


def as_ideal(R: FiniteRing, mask: int) -> Ideal:
    return all_ideals(R).ideal(mask)


# operations -----------------------------------------------------------------

def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return as_ideal(I.ring, _sum_mask(I.ring, I.mask, J.mask))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return as_ideal(I.ring, _product_mask(I.ring, I.mask, J.mask))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return as_ideal(I.ring, I.mask & J.mask)


def ideal_quotient(I: Ideal, J) -> Ideal:
    """``(I : J) = {x : xJ ⊆ I}``; ``J`` may be an ideal or a single element."""
    R = I.ring
    if isinstance(J, Ideal):
        _same_ring(I, J)
        js = J.members
    else:
        js = ideal_generated(R, [J]).members
    m = 0
    inI = I.mask
    for x in R.elements():
        row = R._mul[x]
        if all(inI >> row[j] & 1 for j in js):
            m |= 1 << x
    return as_ideal(R, m)


def radical_mask(R: FiniteRing, mask: int) -> int:
    pm = R.power_masks
    return mask_of(r for r in R.elements() if pm[r] & mask)


def radical(I: Ideal) -> Ideal:
    """``{r : r^k ∈ I for some 1 <= k <= |R|}``."""
    return as_ideal(I.ring, radical_mask(I.ring, I.mask))


def classify_basic(I: Ideal) -> dict[str, bool]:
    R = I.ring
    if not I.is_proper:
        return {"is_proper": False, "is_prime": False, "is_maximal": False, "is_primary": False}
    lat = all_ideals(R)
    rad = radical_mask(R, I.mask)
    prime = primary = True
    for a in R.elements():
        if I.mask >> a & 1:
            continue
        row = R._mul[a]
        for b in R.elements():
            if I.mask >> row[b] & 1:
                if not I.mask >> b & 1:
                    prime = False
                if not rad >> b & 1:
                    primary = False
        if not primary:
            break
    maximal = lat.position(I) in lat.maximal
    return {"is_proper": True, "is_prime": prime, "is_maximal": maximal, "is_primary": primary}


def maximal_ideals(R: FiniteRing) -> list[Ideal]:
    lat = all_ideals(R)
    return [lat[i] for i in lat.maximal]


def jacobson_radical(R: FiniteRing) -> Ideal:
    """Intersection of all maximal ideals."""
    lat = all_ideals(R)
    return lat[lat.jacobson_index]


def jacobson_radical_by_units(R: FiniteRing) -> Ideal:
    """``{a : 1 - ab is a unit for every b}``, computed without the lattice."""
    units = R.unit_mask
    m = 0
    for a in R.elements():
        row = R._mul[a]
        if all(units >> R.sub(R.one, row[b]) & 1 for b in R.elements()):
            m |= 1 << a
    return Ideal(R, m)


def nilradical(R: FiniteRing) -> Ideal:
    return as_ideal(R, radical_mask(R, 1 << R.zero))


def j_radical_of_ideal(I: Ideal) -> Ideal:
    """Intersection of the maximal ideals containing ``I`` (I proper)."""
    if not I.is_proper:
        raise IdealError("J(I) is undefined for I = R")
    lat = all_ideals(I.ring)
    m = (1 << I.ring.order) - 1
    for i in lat.maximal:
        if I.mask & ~lat.masks[i] == 0:
            m &= lat.masks[i]
    return lat.ideal(m)


def is_superfluous(I: Ideal) -> bool:
    """True iff ``I + J != R`` for every proper ideal ``J``."""
    return superfluous_witness(I) is None


def superfluous_witness(I: Ideal) -> Ideal | None:
    """Least proper ideal J with I + J = R, or None."""
    if not I.is_proper:
        raise IdealError("superfluity is only defined for proper ideals")
    lat = all_ideals(I.ring)
    i = lat.position(I)
    for j in lat.proper:
        if lat.sum_table[i, j] == lat.top_index:
            return lat[j]
    return None


def z_set(I: Ideal) -> frozenset[int]:
    """``Z_I(R) = {r : rs ∈ I for some s ∉ I}``."""
    if not I.is_proper:
        raise IdealError("Z_I(R) needs a proper ideal")
    R = I.ring
    out = set()
    outside = [s for s in R.elements() if not I.mask >> s & 1]
    for r in R.elements():
        row = R._mul[r]
        if any(I.mask >> row[s] & 1 for s in outside):
            out.add(r)
    return frozenset(out)


def principal(R: FiniteRing, g) -> Ideal:
    return as_ideal(R, _principal_mask(R, R.element(g) if isinstance(g, str) else g))


def ideal_from_names(R: FiniteRing, names: Iterable) -> Ideal:
    """Ideal generated by elements given by name (or ``k*1`` integers)."""
    return as_ideal(R, ideal_generated(R, [R.element(x) for x in names]).mask)
