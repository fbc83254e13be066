"""Homomorphisms, localization, finite modules and idealization."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from deltaj.ideals import Ideal, IdealError, all_ideals, as_ideal, ideal_generated
from deltaj.ring import (
    AxiomReport,
    FiniteRing,
    RingError,
    RingHom,
    _atom,
    check_order,
    mask_of,
    members_of,
    quotient_ring,
    restrict,
)


class HomError(RingError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class Verdict(NamedTuple):
    """A boolean decision with an optional witness; falsy when it fails."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


# homomorphisms --------------------------------------------------------------

def make_hom(source: FiniteRing, target: FiniteRing, mapping) -> RingHom:
    """Validated ring homomorphism; ``mapping`` is a sequence or a callable."""
    if callable(mapping):
        table = tuple(int(mapping(a)) for a in source.elements())
    else:
        table = tuple(int(x) for x in mapping)
    f = RingHom(source, target, table)
    rep = f.check_axioms()
    if not rep:
        raise HomError(f"not a ring homomorphism: {rep.axiom} fails at {rep.witness}", rep.witness)
    return f


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, tuple(R.elements()))


def kernel(f: RingHom) -> Ideal:
    z = f.target.zero
    return as_ideal(f.source, mask_of(a for a, y in enumerate(f.map) if y == z))


def preimage(f: RingHom, X: Ideal) -> Ideal:
    return as_ideal(f.source, mask_of(a for a, y in enumerate(f.map) if X.mask >> y & 1))


def image(f: RingHom, X: Ideal) -> Ideal:
    if not f.is_surjective:
        raise HomError("the image of an ideal is only guaranteed to be an ideal for surjective maps")
    return as_ideal(f.target, mask_of(f.map[a] for a in X.members))


def hom_ideal_transfer(f: RingHom, direction: str, X: Ideal) -> Ideal:
    if direction == "preimage":
        return preimage(f, X)
    if direction == "image":
        return image(f, X)
    raise ValueError(f"direction must be 'image' or 'preimage', not {direction!r}")


def preimage_table(f: RingHom) -> np.ndarray:
    """Lattice index in the source of ``f^{-1}(J)`` for each target lattice index."""
    cached = f.__dict__.get("_preimage_table")
    if cached is None:
        tl = all_ideals(f.target)
        sl = all_ideals(f.source)
        cached = np.array(
            [sl.index[mask_of(a for a, y in enumerate(f.map) if m >> y & 1)] for m in tl.masks],
            dtype=np.int32,
        )
        object.__setattr__(f, "_preimage_table", cached)
    return cached


def is_delta_gamma_hom(f: RingHom, delta, gamma) -> Verdict:
    """``δ(f⁻¹(J)) = f⁻¹(γ(J))`` for every ideal J of the target."""
    if delta.ring != f.source or gamma.ring != f.target:
        raise RingError("expansions must live on the source and target of f")
    pre = preimage_table(f)
    lhs = delta.table[pre]
    rhs = pre[gamma.table]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        return Verdict(False, all_ideals(f.target)[int(bad[0])])
    return Verdict(True)


# multiplicative sets and localization ----------------------------------------

@dataclass(frozen=True, eq=False)
class MultiplicativeSet:
    ring: FiniteRing
    members: frozenset[int]

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def names(self) -> list[str]:
        return [self.ring.name(a) for a in sorted(self.members)]


def make_multiplicative_set(R: FiniteRing, members: Iterable[int]) -> MultiplicativeSet:
    S = frozenset(int(a) for a in members)
    if R.one not in S:
        raise RingError("a multiplicative set must contain 1")
    if R.zero in S:
        raise RingError("a multiplicative set must not contain 0")
    for a in S:
        for b in S:
            if R.mul(a, b) not in S:
                raise RingError(f"set is not multiplicatively closed: {R.name(a)}*{R.name(b)}")
    return MultiplicativeSet(R, S)


def multiplicative_closure(R: FiniteRing, gens: Iterable[int]) -> MultiplicativeSet:
    S = {R.one}
    frontier = list(S)
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = R.mul(a, g)
                if c not in S:
                    S.add(c)
                    nxt.append(c)
        frontier = nxt
    return make_multiplicative_set(R, S)


class Localization(NamedTuple):
    ring: FiniteRing
    hom: RingHom
    fraction: Callable[[int, int], int]


def localization_kernel(R: FiniteRing, S: MultiplicativeSet) -> Ideal:
    """``{r : rs = 0 for some s in S}``."""
    return as_ideal(R, mask_of(r for r in R.elements() if any(R.mul(r, s) == R.zero for s in S.members)))


def localize(R: FiniteRing, S: MultiplicativeSet) -> Localization:
    """``S⁻¹R`` realised as ``R/K`` with ``K`` the S-torsion ideal."""
    if S.ring is not R and S.ring != R:
        raise RingError("multiplicative set belongs to another ring")
    make_multiplicative_set(R, S.members)
    K = localization_kernel(R, S)
    L, pi = quotient_ring(R, K)
    for s in S.members:
        if not L.is_unit(pi(s)):
            raise RingError(f"image of {R.name(s)} is not a unit in S^-1 R")

    def fraction(a: int, s: int) -> int:
        if s not in S.members:
            raise RingError(f"{R.name(s)} is not in S")
        return L.mul(pi(a), L.inverses[pi(s)])

    return Localization(L, pi, fraction)


# finite modules ----------------------------------------------------------------

class FiniteModule:
    """A finite module over ``ring`` given by addition and action tables."""

    def __init__(self, ring: FiniteRing, add_table, action_table, zero: int, spec: str, element_names=None):
        self.ring = ring
        self.add_table = np.array(add_table, dtype=np.int32)
        self.action_table = np.array(action_table, dtype=np.int32)
        self.order = self.add_table.shape[0]
        self.zero = zero
        self.spec = spec
        self.element_names = tuple(element_names or [str(i) for i in range(self.order)])
        self._add = self.add_table.tolist()
        self._act = self.action_table.tolist()

    def __repr__(self) -> str:
        return f"FiniteModule({self.spec!r} over {self.ring.spec}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def add(self, m: int, n: int) -> int:
        return self._add[m][n]

    def act(self, r: int, m: int) -> int:
        return self._act[r][m]

    def name(self, m: int) -> str:
        return self.element_names[m]

    def element(self, name) -> int:
        text = str(name).strip()
        try:
            return self.element_names.index(text)
        except ValueError:
            raise RingError(f"unknown module element {text!r}") from None

    @cached_property
    def submodule_lattice(self) -> list[int]:
        """Masks of all submodules in canonical order."""
        cyclic = {mask_of(self._act[r][m] for r in self.ring.elements()) for m in self.elements()}
        found = set(cyclic) | {1 << self.zero}
        frontier = list(found)
        gens = sorted(cyclic)
        while frontier:
            nxt = []
            for a in frontier:
                for p in gens:
                    if p & ~a == 0:
                        continue
                    s = self._sum(a, p)
                    if s not in found:
                        found.add(s)
                        nxt.append(s)
            frontier = nxt
        return sorted(found, key=lambda m: (m.bit_count(), members_of(m)))

    def _sum(self, a: int, b: int) -> int:
        out = 0
        bs = members_of(b)
        for x in members_of(a):
            row = self._add[x]
            for y in bs:
                out |= 1 << row[y]
        return out

    def submodule_generated(self, gens: Iterable[int]) -> int:
        m = 1 << self.zero
        for g in gens:
            if not m >> g & 1:
                m = self._sum(m, mask_of(self._act[r][g] for r in self.ring.elements()))
        return m

    def ideal_times_module(self, I: Ideal) -> int:
        """Mask of the submodule IM."""
        return self.submodule_generated({self._act[i][m] for i in I.members for m in self.elements()})


def verify_module_axioms(M: FiniteModule) -> AxiomReport:
    R = M.ring
    n = M.order
    add, act = M.add_table, M.action_table
    idx = np.arange(n)
    if act.shape != (R.order, n) or add.shape != (n, n):
        return AxiomReport(False, "shape")
    if (add[M.zero] != idx).any():
        return AxiomReport(False, "additive identity", (int(np.argmax(add[M.zero] != idx)),))
    if (add != add.T).any():
        return AxiomReport(False, "additive commutativity")
    if not (add == M.zero).any(axis=1).all():
        return AxiomReport(False, "additive inverse")
    for a in range(n):
        if (add[add[a]] != add[a][add]).any():
            return AxiomReport(False, "additive associativity", (a,))
    if (act[R.one] != idx).any():
        return AxiomReport(False, "unital action")
    for r in R.elements():
        # r(m+n) = rm + rn
        if (act[r][add] != add[np.ix_(act[r], act[r])]).any():
            return AxiomReport(False, "action distributes over module addition", (r,))
        for s in R.elements():
            if (act[R.add(r, s)] != add[act[r], act[s]]).any():
                return AxiomReport(False, "action distributes over ring addition", (r, s))
            if (act[R.mul(r, s)] != act[r][act[s]]).any():
                return AxiomReport(False, "action associativity", (r, s))
    return AxiomReport(True)


def free_module(R: FiniteRing, rank: int) -> FiniteModule:
    if rank not in (1, 2):
        raise RingError("free modules are limited to rank 1 or 2")
    n = R.order
    if rank == 1:
        return FiniteModule(R, R.add_table, R.mul_table, R.zero, "free:1", R.element_names)
    check_order(n * n, "module")
    add, mul = R.add_table, R.mul_table
    add2 = (add[:, None, :, None] * n + add[None, :, None, :]).reshape(n * n, n * n)
    act = (mul[:, :, None] * n + mul[:, None, :]).reshape(n, n * n)
    names = [f"({a},{b})" for a in R.element_names for b in R.element_names]
    return FiniteModule(R, add2, act, R.zero * n + R.zero, "free:2", names)


def cyclic_module(R: FiniteRing, I: Ideal, spec: str | None = None) -> FiniteModule:
    """``R/I`` as an R-module."""
    Q, pi = quotient_ring(R, I)
    act = np.array([[Q.mul(pi(r), m) for m in Q.elements()] for r in R.elements()], dtype=np.int32)
    if spec is None:
        spec = "quot:" + I.label()
    return FiniteModule(R, Q.add_table, act, Q.zero, spec, Q.element_names)


def direct_sum(M: FiniteModule, N: FiniteModule) -> FiniteModule:
    if M.ring != N.ring:
        raise RingError("direct sum of modules over different rings")
    a, b = M.order, N.order
    check_order(a * b, "module")
    add = (M.add_table[:, None, :, None] * b + N.add_table[None, :, None, :]).reshape(a * b, a * b)
    act = (M.action_table[:, :, None] * b + N.action_table[:, None, :]).reshape(M.ring.order, a * b)
    names = [f"({x},{y})" for x in M.element_names for y in N.element_names]
    return FiniteModule(M.ring, add, act, M.zero * b + N.zero, f"({M.spec}x{N.spec})", names)


def make_module(R: FiniteRing, spec: str) -> FiniteModule:
    """Module from ``free:<k>`` | ``quot:<gens>`` | ``Z<m>`` | products thereof."""
    from deltaj.parse import parse_module

    M = parse_module(R, spec)
    rep = verify_module_axioms(M)
    if not rep:
        raise RingError(f"module axiom violated: {rep.axiom} at {rep.witness}")
    return M


def submodules_between(M: FiniteModule, lower: Iterable[int] | int = 0) -> list[int]:
    """All submodules N (as masks) with ``lower ⊆ N ⊆ M``, canonical order."""
    low = lower if isinstance(lower, int) else M.submodule_generated(lower)
    return [n for n in M.submodule_lattice if low & ~n == 0]


# idealization ----------------------------------------------------------------

def idealize(R: FiniteRing, M: FiniteModule) -> tuple[FiniteRing, Callable[[Ideal, int], Ideal]]:
    """``R(+)M`` with ``(r,m)(s,n) = (rs, rn + sm)``; element (r,m) has index ``r*|M| + m``."""
    if M.ring != R:
        raise RingError("module is over a different ring")
    n, k = R.order, M.order
    check_order(n * k)
    radd, rmul = R.add_table, R.mul_table
    madd, act = M.add_table, M.action_table
    add = (radd[:, None, :, None] * k + madd[None, :, None, :]).reshape(n * k, n * k)
    # second coordinate: r*n' + s*m
    r = np.arange(n)[:, None, None, None]
    m = np.arange(k)[None, :, None, None]
    s = np.arange(n)[None, None, :, None]
    m2 = np.arange(k)[None, None, None, :]
    second = madd[act[r, m2], act[s, m]]
    first = rmul[r, s]
    mul = (first * k + second).reshape(n * k, n * k)
    names = [f"({a},{b})" for a in R.element_names for b in M.element_names]
    mspec = M.spec
    spec = f"{_atom(R.spec, R.kind)}(+){mspec}"
    RM = FiniteRing(add, mul, R.zero * k + M.zero, R.one * k + M.zero, spec, names, "idealization", (R, M))

    def embed(I: Ideal, N) -> Ideal:
        return embed_ideal(RM, I, N)

    return RM, embed


def idealization_parts(RM: FiniteRing) -> tuple[FiniteRing, FiniteModule]:
    if RM.kind != "idealization":
        raise RingError(f"{RM.spec} is not an idealization ring")
    return RM.parts


def embed_ideal(RM: FiniteRing, I: Ideal, N) -> Ideal:
    """The ideal ``I(+)N`` of ``R(+)M``; requires ``IM ⊆ N``."""
    R, M = idealization_parts(RM)
    nmask = N if isinstance(N, int) else mask_of(N)
    if nmask not in M.submodule_lattice:
        raise RingError("N is not a submodule of M")
    im = M.ideal_times_module(I)
    if im & ~nmask:
        raise RingError("I(+)N is an ideal only when IM ⊆ N")
    k = M.order
    ns = members_of(nmask)
    return as_ideal(RM, mask_of(a * k + x for a in I.members for x in ns))


def split_idealization_ideal(RM: FiniteRing, H: Ideal) -> tuple[int, int, bool]:
    """(projection of H to R, {m : (0,m) ∈ H}, whether H = I_H (+) N_H)."""
    R, M = idealization_parts(RM)
    k = M.order
    proj = mask_of(h // k for h in H.members)
    fibre = mask_of(h % k for h in H.members if h // k == R.zero)
    full = mask_of(a * k + x for a in members_of(proj) for x in members_of(fibre))
    return proj, fibre, full == H.mask


# subrings ----------------------------------------------------------------------

def _subring_closure(R: FiniteRing, gens: Iterable[int]) -> int:
    m = mask_of([R.zero, R.one, *gens])
    while True:
        ms = members_of(m)
        new = m
        for a in ms:
            ra, rm = R._add[a], R._mul[a]
            new |= 1 << R.negation[a]
            for b in ms:
                new |= 1 << ra[b]
                new |= 1 << rm[b]
        if new == m:
            return m
        m = new


def unital_subrings(R: FiniteRing) -> list[int]:
    """Masks of all subrings containing 1, by join-closure of singly generated ones."""
    cached = R._cache.get("subrings")
    if cached is not None:
        return cached
    single = {_subring_closure(R, [a]) for a in R.elements()}
    found = set(single)
    frontier = list(found)
    gens = sorted(single)
    while frontier:
        nxt = []
        for a in frontier:
            for p in gens:
                if p & ~a == 0:
                    continue
                s = _subring_closure(R, members_of(a | p))
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    out = sorted(found, key=lambda m: (m.bit_count(), members_of(m)))
    R._cache["subrings"] = out
    return out


def subring(R: FiniteRing, mask: int) -> tuple[FiniteRing, RingHom]:
    """The subring on ``mask`` with its inclusion into ``R``."""
    key = ("subring", mask)
    hit = R._cache.get(key)
    if hit is not None:
        return hit
    members = members_of(mask)
    names = ",".join(R.name(a) for a in members)
    S = restrict(R, members, f"{_atom(R.spec, R.kind)}{{{names}}}", "subring", (R, mask))
    inc = RingHom(S, R, members)
    R._cache[key] = (S, inc)
    return S, inc
