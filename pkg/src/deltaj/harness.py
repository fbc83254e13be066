"""Ring corpora, per-ring evaluation contexts, and check reports.

The checks themselves live in :mod:`deltaj.checks`; this module owns the
data they run over and the report format.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from deltaj.classify import LatticeOracle
from deltaj.expansion import ExpansionFn, delta0, delta1, plus_ideal
from deltaj.ideals import all_ideals
from deltaj.parse import make_ring
from deltaj.ring import FiniteRing, RingError, mask_of, mask_to_bools, order_cap, quotient_ring


@dataclass(frozen=True)
class CorpusConfig:
    """Which ring families to generate and how large.

    ``colon_readings`` lists the readings of the colon hypothesis in the
    maximal-δ-J and colon-ideal checks: ``literal`` takes the hypothesis
    exactly as printed (x ∉ R∖δ(I)), ``corrected`` as the proofs use it.
    """

    zn: bool = True
    zn_max: int = 24
    products: bool = True
    product_max: int = 24
    polys: bool = True
    poly_primes: tuple[int, ...] = (2, 3)
    poly_degrees: tuple[int, ...] = (2,)
    idealizations: bool = True
    idealization_max: int = 32
    quotients: bool = True
    expansions: tuple[str, ...] = ("delta0", "delta1", "plus")
    subring_max: int = 16
    family_max: int = 3
    colon_readings: tuple[str, ...] = ("literal", "corrected")
    max_witnesses: int = 200

    @classmethod
    def from_overrides(cls, **overrides) -> "CorpusConfig":
        known = {k: v for k, v in overrides.items() if v is not None}
        for k in ("poly_primes", "poly_degrees", "expansions", "colon_readings"):
            if k in known and not isinstance(known[k], tuple):
                known[k] = tuple(known[k])
        return cls(**known)

    @classmethod
    def only_zn(cls, zn_max: int, expansions=("delta0", "delta1", "plus")) -> "CorpusConfig":
        return cls(
            zn_max=zn_max, products=False, polys=False, idealizations=False, quotients=False,
            expansions=tuple(expansions),
        )


def _monic_polys(p: int, d: int):
    for lower in itertools.product(range(p), repeat=d):
        coeffs = list(reversed(lower)) + [1]  # constant first
        yield coeffs


def _poly_text(coeffs) -> str:
    from deltaj.ring import _poly_name

    return _poly_name(coeffs)


def corpus_specs(config: CorpusConfig) -> list[str]:
    """Ring spec strings of the corpus, in generation order, without duplicates."""
    cap = order_cap()
    specs: list[str] = []

    def add(s: str) -> None:
        if s not in specs:
            specs.append(s)

    base: list[str] = []
    if config.zn:
        for n in range(2, config.zn_max + 1):
            if n <= cap:
                add(f"Z{n}")
                base.append(f"Z{n}")
    if config.products:
        for a in range(2, config.product_max // 2 + 1):
            for b in range(a, config.product_max // a + 1):
                if a * b <= min(cap, config.product_max):
                    add(f"Z{a}xZ{b}")
                    base.append(f"Z{a}xZ{b}")
    if config.polys:
        for p in config.poly_primes:
            for d in config.poly_degrees:
                if p**d > cap:
                    continue
                for coeffs in _monic_polys(p, d):
                    s = f"Z{p}[x]/({_poly_text(coeffs)})"
                    add(s)
                    base.append(s)
    if config.idealizations:
        limit = min(cap, config.idealization_max)
        for s in base:
            R = make_ring(s)
            if 2 * R.order > limit:
                continue
            atom = s if R.kind in ("zn", "poly") else f"({s})"
            candidates = ["free:1"]
            if R.order**3 <= limit:
                candidates.append("free:2")
            lat = all_ideals(R)
            for I in lat:
                if I.is_proper and not I.is_zero:
                    candidates.append("quot:" + I.label())
            for m in candidates:
                spec = f"{atom}(+){m}"
                try:
                    RM = make_ring(spec)
                except RingError:
                    continue
                if RM.order <= limit:
                    add(spec)
    if config.quotients:
        # Z_n/(d) is Z_d again, so only the other families are quotiented
        for s in list(specs):
            R = make_ring(s)
            if R.kind == "zn":
                continue
            for I in all_ideals(R):
                if I.is_proper and not I.is_zero:
                    Q, _ = quotient_ring(R, I)
                    add(Q.spec)
    return specs


def ring_expansions(R: FiniteRing, kinds=("delta0", "delta1", "plus")) -> list[ExpansionFn]:
    """δ₀, δ₁ and δ_{+M} for every ideal M, in that order."""
    out = []
    if "delta0" in kinds:
        out.append(delta0(R))
    if "delta1" in kinds:
        out.append(delta1(R))
    if "plus" in kinds:
        out.extend(plus_ideal(R, M) for M in all_ideals(R))
    return out


class RingContext:
    """A corpus ring with its lattice, oracle and registered expansions."""

    def __init__(self, ring: FiniteRing, expansions: list[ExpansionFn]):
        self.ring = ring
        self.lat = all_ideals(ring)
        self.oracle = LatticeOracle.of(ring)
        self.expansions = expansions
        self.n = len(self.lat)
        self.top = self.lat.top_index
        self.proper = np.array(self.lat.proper, dtype=np.int64)
        self.jac = self.lat.jacobson_index
        self.leq = self.lat.leq

    @cached_property
    def dj_matrix(self) -> np.ndarray:
        """``dj_matrix[i, t]``: I_i is a δ-J-ideal for any δ with δ(I_i) = I_t."""
        o = self.oracle
        masks = self.lat.masks
        out = np.zeros((self.n, self.n), dtype=bool)
        for i in self.lat.proper:
            r = o.reach(i, o.jacobson)
            for t in range(self.n):
                out[i, t] = r & ~masks[t] == 0
        return out

    def dj(self, delta: ExpansionFn) -> np.ndarray:
        return self.dj_matrix[np.arange(self.n), delta.table]

    @cached_property
    def j_ideal(self) -> np.ndarray:
        return self.dj_matrix[np.arange(self.n), np.arange(self.n)]

    @cached_property
    def prime(self) -> np.ndarray:
        o = self.oracle
        return np.array(
            [i != self.top and o.holds(i, m, m) for i, m in enumerate(self.lat.masks)], dtype=bool
        )

    @cached_property
    def colon(self) -> np.ndarray:
        return self.lat.colon_elements

    @cached_property
    def nonjac_elements(self) -> np.ndarray:
        jm = self.lat.masks[self.jac]
        return np.array([a for a in self.ring.elements() if not jm >> a & 1], dtype=np.int64)

    @cached_property
    def j_of_ideal(self) -> np.ndarray:
        """Lattice index of J(I): the meet of the maximal ideals above I (top for I = R)."""
        out = np.full(self.n, self.top, dtype=np.int32)
        full = (1 << self.ring.order) - 1
        for i in self.lat.proper:
            m = full
            for k in self.lat.maximal:
                if self.leq[i, k]:
                    m &= self.lat.masks[k]
            out[i] = self.lat.index[m]
        return out

    @cached_property
    def principal(self) -> list[int]:
        R = self.ring
        return sorted({self.lat.index[mask_of(R._mul[g])] for g in R.elements()})

    @cached_property
    def member_bools(self) -> np.ndarray:
        """``member_bools[i, x]``: x lies in ideal i."""
        return np.array([mask_to_bools(m, self.ring.order) for m in self.lat.masks], dtype=bool)

    @cached_property
    def superfluous(self) -> np.ndarray:
        st = self.lat.sum_table
        out = np.zeros(self.n, dtype=bool)
        for i in self.lat.proper:
            out[i] = not any(st[i, j] == self.top for j in self.lat.proper)
        return out

    @cached_property
    def maximal_mask(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        out[self.lat.maximal] = True
        return out

    def intersection_preserving(self, delta: ExpansionFn) -> bool:
        key = ("ip", delta.table.tobytes())
        v = self.ring._cache.get(key)
        if v is None:
            from deltaj.expansion import is_intersection_preserving

            v = is_intersection_preserving(delta).holds
            self.ring._cache[key] = v
        return v


@dataclass
class Corpus:
    config: CorpusConfig
    specs: list[str]

    def rings(self):
        for s in self.specs:
            yield make_ring(s)

    def context(self, R: FiniteRing) -> RingContext:
        return context_for(R, self.config.expansions)

    def contexts(self):
        for R in self.rings():
            yield self.context(R)


def generate_corpus(config: CorpusConfig | None = None) -> Corpus:
    config = config or CorpusConfig()
    return Corpus(config, corpus_specs(config))


def context_for(R: FiniteRing, kinds=("delta0", "delta1", "plus")) -> RingContext:
    """Context for a ring outside a corpus (quotients, subrings, localizations)."""
    key = ("context", tuple(kinds))
    ctx = R._cache.get(key)
    if ctx is None:
        ctx = RingContext(R, ring_expansions(R, kinds))
        R._cache[key] = ctx
    return ctx


# axiom suite --------------------------------------------------------------------

@dataclass
class AxiomSuite:
    """Per-category counts of axiom checks over a corpus, with any failures."""

    counts: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def tick(self, category: str, ok: bool, **detail) -> None:
        self.counts[category] = self.counts.get(category, 0) + 1
        if not ok:
            self.failures.append({"category": category, **detail})


def axiom_suite(corpus: Corpus) -> AxiomSuite:
    """Ring, ideal, module, expansion and homomorphism axioms on every corpus ring.

    Homomorphisms are the projections onto R/I for every proper ideal I,
    checked for the ring-map axioms, surjectivity and kernel I.
    """
    from deltaj.constructions import verify_module_axioms
    from deltaj.ideals import is_ideal_mask
    from deltaj.ring import verify_ring_axioms

    out = AxiomSuite()
    for ctx in corpus.contexts():
        R, lat = ctx.ring, ctx.lat
        rep = verify_ring_axioms(R)
        out.tick("ring", rep.passed, ring=R.spec, axiom=rep.axiom)
        for I in lat:
            out.tick("ideal", is_ideal_mask(R, I.mask), ring=R.spec, ideal=list(I.members))
        if R.kind == "idealization":
            M = R.parts[1]
            rep = verify_module_axioms(M)
            out.tick("module", rep.passed, ring=R.spec, axiom=rep.axiom)
        leq = ctx.leq
        for d in ctx.expansions:
            t = d.table
            ok = bool(leq[np.arange(ctx.n), t].all()) and not (leq & ~leq[np.ix_(t, t)]).any()
            out.tick("expansion", ok, ring=R.spec, expansion=d.label)
        for i in lat.proper:
            Q, pi = quotient_ring(R, lat[i])
            rep = pi.check_axioms()
            kernel = mask_of(a for a in R.elements() if pi.map[a] == Q.zero)
            ok = rep.passed and pi.is_surjective and kernel == lat.masks[i]
            out.tick("homomorphism", ok, ring=R.spec, ideal=list(lat[i].members), axiom=rep.axiom)
    return out


def search_counterexample(template: str, corpus) -> list[dict]:
    """See :func:`deltaj.search.search_counterexample`."""
    from deltaj.search import search_counterexample as search

    return search(template, corpus)


# reports ---------------------------------------------------------------------------

@dataclass
class FormResult:
    """One stated or strengthened form of a check."""

    name: str
    required: bool
    description: str
    tested: int = 0
    filtered: int = 0
    counterexample_count: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.tested == 0

    @property
    def passed(self) -> bool:
        return self.counterexample_count == 0

    @property
    def outcome(self) -> str:
        if not self.passed:
            return "counterexamples"
        return "vacuous" if self.vacuous else "pass"

    def to_record(self) -> dict:
        return {
            "form": self.name,
            "required": self.required,
            "description": self.description,
            "instances_tested": self.tested,
            "hypothesis_filtered": self.filtered,
            "outcome": self.outcome,
            "vacuous": self.vacuous,
            "counterexample_count": self.counterexample_count,
            "counterexamples": self.counterexamples,
        }


@dataclass
class CheckReport:
    check: str
    title: str
    forms: list[FormResult]
    notes: list[str] = field(default_factory=list)
    runtime: float = 0.0

    def form(self, name: str) -> FormResult:
        for f in self.forms:
            if f.name == name:
                return f
        raise KeyError(name)

    @property
    def instances_tested(self) -> int:
        return sum(f.tested for f in self.forms)

    @property
    def hypothesis_filtered(self) -> int:
        return sum(f.filtered for f in self.forms)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.forms if f.required)

    @property
    def vacuous(self) -> bool:
        return all(f.vacuous for f in self.forms if f.required)

    @property
    def outcome(self) -> str:
        if not self.passed:
            return "fail"
        return "vacuous" if self.vacuous else "pass"

    def counterexamples(self) -> list[dict]:
        return [c for f in self.forms for c in f.counterexamples]

    def to_record(self, timings: bool = False) -> dict:
        rec = {
            "check": self.check,
            "title": self.title,
            "outcome": self.outcome,
            "instances_tested": self.instances_tested,
            "hypothesis_filtered": self.hypothesis_filtered,
            "forms": [f.to_record() for f in self.forms],
            "notes": self.notes,
        }
        if timings:
            rec["runtime"] = round(self.runtime, 3)
        return rec


def reports_to_json(reports: list[CheckReport], timings: bool = False) -> str:
    return json.dumps([r.to_record(timings) for r in reports], indent=2, sort_keys=True, ensure_ascii=False)


def run_check(check_id: str, corpus: Corpus) -> CheckReport:
    from deltaj.checks import CHECKS

    try:
        check = CHECKS[check_id.upper()]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}") from None
    start = time.perf_counter()
    report = check.run(corpus)
    report.runtime = time.perf_counter() - start
    return report


def run_all(corpus: Corpus, ids=None) -> list[CheckReport]:
    from deltaj.checks import CHECKS

    return [run_check(c, corpus) for c in (ids or CHECKS)]
