"""Finite commutative rings with identity, stored as dense Cayley tables.

Elements are integer indices ``0 .. order-1``; all arithmetic is table
lookup.  Constructors in this module cover ``Z_n``, direct products,
``Z_p[x]/(f)`` and quotients by an ideal.  Idealization lives in
:mod:`deltaj.constructions`; the string grammar is in :mod:`deltaj.parse`.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 256


class RingError(ValueError):
    """Raised when a ring cannot be constructed or an operation is undefined."""


def order_cap() -> int:
    """Current ring-order cap (``DELTAJ_ORDER_CAP`` overrides the default)."""
    raw = os.environ.get("DELTAJ_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise RingError(f"DELTAJ_ORDER_CAP must be an integer, got {raw!r}") from None
    if cap < 2:
        raise RingError("DELTAJ_ORDER_CAP must be at least 2")
    return cap


def check_order(order: int, what: str = "ring") -> None:
    cap = order_cap()
    if order > cap:
        raise RingError(f"{what} order {order} exceeds the order cap {cap}")


class AxiomReport(NamedTuple):
    """Outcome of an exhaustive axiom check; falsy on failure."""

    passed: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def bools_to_mask(arr: np.ndarray) -> int:
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_to_bools(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8 or 1, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:n].astype(bool)


class FiniteRing:
    """A finite commutative ring with identity.

    ``kind`` and ``parts`` record provenance: e.g. ``("product", (R, S))`` or
    ``("idealization", (R, M))``.  Instances are immutable; derived data
    (units, lattices, quotients) is memoised in ``_cache``.
    """

    def __init__(
        self,
        add_table,
        mul_table,
        zero: int,
        one: int,
        spec: str,
        element_names: Sequence[str] | None = None,
        kind: str = "tables",
        parts: tuple = (),
    ):
        add = np.array(add_table, dtype=np.int32)
        mul = np.array(mul_table, dtype=np.int32)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise RingError("addition and multiplication tables must be square and equal-sized")
        n = add.shape[0]
        if n == 0:
            raise RingError("empty ring")
        add.flags.writeable = False
        mul.flags.writeable = False
        self.order = n
        self.add_table = add
        self.mul_table = mul
        self.zero = int(zero)
        self.one = int(one)
        self.spec = spec
        if element_names is None:
            element_names = [str(i) for i in range(n)]
        if len(element_names) != n:
            raise RingError("element_names length does not match order")
        self.element_names = tuple(element_names)
        self.kind = kind
        self.parts = parts
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._name_index = {name: i for i, name in enumerate(self.element_names)}
        self._cache: dict = {}
        self._hash = None

    # identity ------------------------------------------------------------
    def __repr__(self) -> str:
        return f"FiniteRing({self.spec!r}, order={self.order})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (
            self.order == other.order
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.mul_table, other.mul_table)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.add_table.tobytes(), self.mul_table.tobytes()))
        return self._hash

    # arithmetic ----------------------------------------------------------
    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self.negation[a]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.negation[b]]

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self._mul[r][a]
        return r

    def scalar(self, k: int) -> int:
        """The element ``k * 1`` (``k`` may be negative)."""
        r = self.zero
        step = self.one if k >= 0 else self.negation[self.one]
        for _ in range(abs(k)):
            r = self._add[r][step]
        return r

    @property
    def negation(self) -> tuple[int, ...]:
        neg = self._cache.get("neg")
        if neg is None:
            z = self.zero
            neg = tuple(row.index(z) for row in self._add)
            self._cache["neg"] = neg
        return neg

    # naming --------------------------------------------------------------
    def name(self, a: int) -> str:
        return self.element_names[a]

    def element(self, name) -> int:
        """Resolve an element name (or an integer ``k`` meaning ``k * 1``)."""
        if isinstance(name, (int, np.integer)):
            return self.scalar(int(name))
        text = str(name).strip()
        if text in self._name_index:
            return self._name_index[text]
        try:
            return self.scalar(int(text))
        except ValueError:
            pass
        parser = self._cache.get("element_parser")
        if parser is not None:
            found = parser(text)
            if found is not None:
                return found
        raise RingError(f"unknown element {text!r} of {self.spec}")

    # derived sets --------------------------------------------------------
    @property
    def inverses(self) -> tuple[int | None, ...]:
        inv = self._cache.get("inv")
        if inv is None:
            one = self.one
            inv = tuple(row.index(one) if one in row else None for row in self._mul)
            self._cache["inv"] = inv
        return inv

    @property
    def unit_mask(self) -> int:
        m = self._cache.get("unit_mask")
        if m is None:
            m = mask_of(u for u, v in enumerate(self.inverses) if v is not None)
            self._cache["unit_mask"] = m
        return m

    def is_unit(self, a: int) -> bool:
        return self.inverses[a] is not None

    @property
    def power_masks(self) -> tuple[int, ...]:
        """For each element r, the bitmask of {r^k : 1 <= k <= order}."""
        pm = self._cache.get("power_masks")
        if pm is None:
            out = []
            for r in range(self.order):
                m, x = 0, r
                for _ in range(self.order):
                    if m >> x & 1:
                        break
                    m |= 1 << x
                    x = self._mul[x][r]
                out.append(m)
            pm = tuple(out)
            self._cache["power_masks"] = pm
        return pm

    def idempotents(self) -> frozenset[int]:
        return frozenset(e for e in range(self.order) if self._mul[e][e] == e)


def units(R: FiniteRing) -> frozenset[int]:
    """Elements u with u*v = 1 for some v."""
    return frozenset(members_of(R.unit_mask))


def verify_ring_axioms(R: FiniteRing) -> AxiomReport:
    """Exhaustively check the commutative-ring-with-identity axioms."""
    n = R.order
    add, mul = R.add_table, R.mul_table
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        return AxiomReport(False, "closure", None)
    z, e = R.zero, R.one
    if not (0 <= z < n and 0 <= e < n):
        return AxiomReport(False, "closure", (z, e))
    if z == e:
        return AxiomReport(False, "nonzero identity", (z,))
    idx = np.arange(n)

    def first(mask: np.ndarray):
        hit = np.argwhere(mask)
        return tuple(int(v) for v in hit[0])

    bad = add[z] != idx
    if bad.any():
        return AxiomReport(False, "additive identity", first(bad))
    bad = add != add.T
    if bad.any():
        return AxiomReport(False, "additive commutativity", first(bad))
    bad = ~(add == z).any(axis=1)
    if bad.any():
        return AxiomReport(False, "additive inverse", first(bad))
    bad = mul != mul.T
    if bad.any():
        return AxiomReport(False, "multiplicative commutativity", first(bad))
    bad = mul[e] != idx
    if bad.any():
        return AxiomReport(False, "multiplicative identity", first(bad))
    for a in range(n):
        # (a+b)+c = a+(b+c) over all b, c
        bad = add[add[a]] != add[a][add]
        if bad.any():
            return AxiomReport(False, "additive associativity", (a,) + first(bad))
        bad = mul[mul[a]] != mul[a][mul]
        if bad.any():
            return AxiomReport(False, "multiplicative associativity", (a,) + first(bad))
        # a(b+c) = ab + ac
        bad = mul[a][add] != add[np.ix_(mul[a], mul[a])]
        if bad.any():
            return AxiomReport(False, "distributivity", (a,) + first(bad))
    return AxiomReport(True)


# constructors -------------------------------------------------------------

def zn(n: int) -> FiniteRing:
    if n < 2:
        raise RingError(f"Z{n} is not a nonzero ring")
    check_order(n)
    r = np.arange(n)
    return FiniteRing(
        (r[:, None] + r[None, :]) % n, (r[:, None] * r[None, :]) % n, 0, 1, f"Z{n}", kind="zn", parts=(n,)
    )


def _atom(spec: str, kind: str) -> str:
    return f"({spec})" if kind in ("product", "idealization", "quotient", "subring") else spec


def product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    """Direct product; element (a, b) has index ``a * |S| + b``."""
    n, m = R.order, S.order
    check_order(n * m)
    ra, sa = R.add_table, S.add_table
    rm, sm = R.mul_table, S.mul_table
    add = (ra[:, None, :, None] * m + sa[None, :, None, :]).reshape(n * m, n * m)
    mul = (rm[:, None, :, None] * m + sm[None, :, None, :]).reshape(n * m, n * m)
    names = [f"({a},{b})" for a in R.element_names for b in S.element_names]
    spec = f"{_product_operand(R)}x{_product_operand(S)}"
    return FiniteRing(add, mul, R.zero * m + S.zero, R.one * m + S.one, spec, names, "product", (R, S))


def _product_operand(R: FiniteRing) -> str:
    return R.spec if R.kind in ("zn", "poly", "product") else f"({R.spec})"


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_name(coeffs: Sequence[int]) -> str:
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
        else:
            mono = "x" if deg == 1 else f"x^{deg}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def poly_quotient(p: int, modulus: Sequence[int]) -> FiniteRing:
    """``Z_p[x]/(f)`` with ``f`` given by coefficients, constant term first.

    Element index is ``sum(c_i * p**i)`` over the reduced coefficients.
    """
    if not is_prime(p):
        raise RingError(f"polynomial quotient needs a prime modulus, got {p}")
    f = [c % p for c in modulus]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d < 1 or d > 3:
        raise RingError(f"modulus degree must be between 1 and 3, got {d}")
    if f[-1] != 1:
        raise RingError("modulus polynomial must be monic")
    n = p**d
    check_order(n)
    vecs = list(itertools.product(range(p), repeat=d))
    vecs = [tuple(reversed(v)) for v in vecs]  # index = sum c_i p^i
    vecs.sort(key=lambda v: sum(c * p**i for i, c in enumerate(v)))

    def index(v) -> int:
        return sum(c * p**i for i, c in enumerate(v))

    def reduce(prod: Sequence[int]) -> list[int]:
        prod = list(prod) + [0] * max(0, d - len(prod))
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(d + 1):
                    prod[k - d + j] -= c * f[j]
        return [c % p for c in prod[:d]]

    add = np.zeros((n, n), dtype=np.int32)
    mul = np.zeros((n, n), dtype=np.int32)
    for a, va in enumerate(vecs):
        for b, vb in enumerate(vecs):
            add[a, b] = index([(x + y) % p for x, y in zip(va, vb)])
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(va):
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
            mul[a, b] = index(reduce(prod))
    names = [_poly_name(v) for v in vecs]
    spec = f"Z{p}[x]/({_poly_name(f)})"
    R = FiniteRing(add, mul, 0, 1, spec, names, "poly", (p, tuple(f)))

    def parse_element(text: str):
        from deltaj.parse import parse_poly

        try:
            return index(reduce(parse_poly(text)))
        except RingError:
            return None

    R._cache["element_parser"] = parse_element
    return R


@dataclass(frozen=True, eq=False)
class RingHom:
    """Element-index map between two finite rings."""

    source: FiniteRing
    target: FiniteRing
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __repr__(self) -> str:
        return f"RingHom({self.source.spec} -> {self.target.spec})"

    def check_axioms(self) -> AxiomReport:
        R, S, f = self.source, self.target, self.map
        if len(f) != R.order or any(not (0 <= y < S.order) for y in f):
            return AxiomReport(False, "totality", None)
        if f[R.one] != S.one:
            return AxiomReport(False, "unital", (R.one,))
        if f[R.zero] != S.zero:
            return AxiomReport(False, "zero", (R.zero,))
        fa = np.asarray(f)
        for a in R.elements():
            bad = fa[R.add_table[a]] != S.add_table[f[a]][fa]
            if bad.any():
                return AxiomReport(False, "additive", (a, int(np.argmax(bad))))
            bad = fa[R.mul_table[a]] != S.mul_table[f[a]][fa]
            if bad.any():
                return AxiomReport(False, "multiplicative", (a, int(np.argmax(bad))))
        return AxiomReport(True)

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order


def restrict(R: FiniteRing, subset: Sequence[int], spec: str, kind: str, parts: tuple = ()) -> FiniteRing:
    """Ring on a subset closed under the operations, relabelled 0..k-1 in index order."""
    members = sorted(subset)
    pos = {x: i for i, x in enumerate(members)}
    sub = np.array(members)
    add = np.vectorize(pos.__getitem__, otypes=[np.int32])(R.add_table[np.ix_(sub, sub)])
    mul = np.vectorize(pos.__getitem__, otypes=[np.int32])(R.mul_table[np.ix_(sub, sub)])
    names = [R.element_names[x] for x in members]
    return FiniteRing(add, mul, pos[R.zero], pos[R.one], spec, names, kind, parts)


def quotient_ring(R: FiniteRing, J) -> tuple[FiniteRing, RingHom]:
    """``R/J`` with each coset represented by its least element index.

    ``J`` is anything exposing ``mask`` (an :class:`~deltaj.ideals.Ideal`).
    Results are memoised per (R, J) so repeated calls return the same ring.
    """
    key = ("quotient", J.mask)
    hit = R._cache.get(key)
    if hit is not None:
        return hit
    jm = members_of(J.mask)
    if len(jm) == R.order:
        raise RingError("quotient by the whole ring is the zero ring")
    rep = [-1] * R.order
    reps = []
    for a in R.elements():
        if rep[a] >= 0:
            continue
        k = len(reps)
        reps.append(a)
        for j in jm:
            rep[R._add[a][j]] = k
    if any(r < 0 for r in rep):
        raise RingError("J is not an additive subgroup")
    reps_arr = np.array(reps)
    rep_arr = np.array(rep, dtype=np.int32)
    add = rep_arr[R.add_table[np.ix_(reps_arr, reps_arr)]]
    mul = rep_arr[R.mul_table[np.ix_(reps_arr, reps_arr)]]
    names = [R.element_names[a] for a in reps]
    from deltaj.ideals import generator_names

    gens = ",".join(generator_names(R, J.mask))
    spec = f"{_atom(R.spec, R.kind)}/({gens})"
    Q = FiniteRing(add, mul, rep[R.zero], rep[R.one], spec, names, "quotient", (R, J.mask))
    pi = RingHom(R, Q, tuple(rep))
    R._cache[key] = (Q, pi)
    return Q, pi


def from_tables(
    add_table,
    mul_table,
    zero: int = 0,
    one: int = 1,
    spec: str = "tables",
    element_names: Sequence[str] | None = None,
    check: bool = True,
) -> FiniteRing:
    R = FiniteRing(add_table, mul_table, zero, one, spec, element_names)
    if check:
        rep = verify_ring_axioms(R)
        if not rep:
            raise RingError(f"ring axiom violated: {rep.axiom} at {rep.witness}")
    return R


def table_from_op(elements: Sequence, op: Callable) -> list[list[int]]:
    pos = {x: i for i, x in enumerate(elements)}
    return [[pos[op(x, y)] for y in elements] for x in elements]
