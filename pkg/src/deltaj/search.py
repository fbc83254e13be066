"""Counterexample search over a small template language.

A template is a conjunction of literals joined by ``∧``, ``&``, ``and`` or
``,``.  A literal is a flag name, optionally negated with ``¬``, ``!`` or
``not``::

    proper ∧ ¬superfluous ∧ delta_J_ideal(δ₀)
    delta_J_ideal(δ₁) ∧ ring not quasi-local

Ideal flags are evaluated on every ideal of every ring, R included (where
all of them are false).  The expansion flags take a selector in
parentheses; ``δ``, ``*`` or no argument ranges over every registered
expansion, and all such literals share that one expansion.  Ring flags
(``quasi_local``, ``field``, ``reduced``) may be written with a ``ring``
prefix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from deltaj.expansion import ExpansionError, ExpansionFn, resolve_expansion
from deltaj.facts import fact
from deltaj.harness import Corpus, RingContext, context_for
from deltaj.parse import make_ring
from deltaj.ring import FiniteRing, RingError

IDEAL_FLAGS = ("proper", "prime", "maximal", "primary", "superfluous", "n_ideal", "J_ideal", "quasi_J_ideal", "zero")
DELTA_FLAGS = ("delta_J_ideal", "delta_primary", "delta_n_ideal", "delta_proper")
RING_FLAGS = ("quasi_local", "field", "reduced")
_ALIASES = {"local": "quasi_local", "j_ideal": "J_ideal", "quasi_j_ideal": "quasi_J_ideal"}
_ANY = ("", "δ", "*", "delta")


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class Literal:
    name: str
    negated: bool
    kind: str  # "ideal", "delta" or "ring"
    selector: str | None = None  # None: the shared expansion variable

    def text(self) -> str:
        body = self.name if self.kind != "delta" else f"{self.name}({self.selector or 'δ'})"
        return ("¬" if self.negated else "") + ("ring " if self.kind == "ring" else "") + body


def _canon(word: str) -> str:
    w = word.strip().replace("-", "_")
    return _ALIASES.get(w.lower(), _ALIASES.get(w, w))


def parse_template(template: str) -> list[Literal]:
    text = template.strip()
    if not text:
        raise TemplateError("empty template")
    parts = re.split(r"\s*(?:∧|&|,|\band\b)\s*", text)
    out = []
    for raw in parts:
        s = raw.strip()
        if not s:
            raise TemplateError(f"empty literal in {template!r}")
        neg = False
        ring = False
        while True:
            if s.startswith(("¬", "!")):
                neg, s = not neg, s[1:].strip()
            elif re.match(r"not\s", s):
                neg, s = not neg, s[3:].strip()
            elif re.match(r"ring\s", s):
                ring, s = True, s[4:].strip()
            else:
                break
        m = re.fullmatch(r"([A-Za-z_\-]+)\s*(?:\((.*)\))?", s)
        if not m:
            raise TemplateError(f"malformed literal {raw!r}")
        name, arg = _canon(m.group(1)), m.group(2)
        if name in RING_FLAGS:
            if arg is not None:
                raise TemplateError(f"ring flag {name} takes no argument")
            out.append(Literal(name, neg, "ring"))
        elif ring:
            raise TemplateError(f"unknown ring flag {m.group(1)!r}")
        elif name in DELTA_FLAGS:
            sel = None if arg is None or arg.strip() in _ANY else arg.strip()
            out.append(Literal(name, neg, "delta", sel))
        elif name in IDEAL_FLAGS:
            if arg is not None:
                raise TemplateError(f"flag {name} takes no argument")
            out.append(Literal(name, neg, "ideal"))
        else:
            raise TemplateError(f"unknown flag {m.group(1)!r}")
    return out


def _ideal_flags(ctx: RingContext) -> dict[str, np.ndarray]:
    cache_key = ("search_flags",)
    got = ctx.ring._cache.get(cache_key)
    if got is not None:
        return got
    lat, o = ctx.lat, ctx.oracle
    masks = lat.masks
    rad = lat.radical_table
    proper = np.zeros(ctx.n, dtype=bool)
    proper[lat.proper] = True

    def per(fn):
        return np.array([bool(proper[i]) and fn(i) for i in range(ctx.n)], dtype=bool)

    flags = {
        "proper": proper,
        "prime": ctx.prime.copy(),
        "maximal": ctx.maximal_mask.copy(),
        "primary": per(lambda i: o.holds(i, masks[i], masks[rad[i]])),
        "superfluous": ctx.superfluous.copy(),
        "n_ideal": per(lambda i: o.holds(i, o.nil, masks[i])),
        "J_ideal": ctx.j_ideal & proper,
        "quasi_J_ideal": per(lambda i: o.holds(i, o.jacobson, masks[rad[i]])),
        "zero": np.arange(ctx.n) == lat.zero_index,
    }
    ctx.ring._cache[cache_key] = flags
    return flags


def _delta_flag(ctx: RingContext, name: str, d: ExpansionFn) -> np.ndarray:
    lat, o = ctx.lat, ctx.oracle
    masks = lat.masks
    T = d.table
    proper = np.zeros(ctx.n, dtype=bool)
    proper[lat.proper] = True
    if name == "delta_J_ideal":
        return ctx.dj(d) & proper
    if name == "delta_proper":
        return (T != ctx.top) & proper
    excl = {"delta_primary": None, "delta_n_ideal": o.nil}[name]
    return np.array(
        [bool(proper[i]) and o.holds(i, masks[i] if excl is None else excl, masks[T[i]]) for i in range(ctx.n)],
        dtype=bool,
    )


def _ring_flag(ctx: RingContext, name: str) -> bool:
    if name == "quasi_local":
        return len(ctx.lat.maximal) == 1
    if name == "field":
        return ctx.n == 2
    return ctx.oracle.nil == 1 << ctx.ring.zero


def _rings(corpus) -> list[FiniteRing]:
    if isinstance(corpus, Corpus):
        return list(corpus.rings())
    if isinstance(corpus, (str, FiniteRing)):
        corpus = [corpus]
    return [make_ring(r) if isinstance(r, str) else r for r in corpus]


def search_counterexample(template: str, corpus, expansions=("delta0", "delta1", "plus")) -> list[dict]:
    """All (ring, ideal, expansion) tuples satisfying the template.

    Hits are ordered by ring (corpus order), then expansion (registration
    order), then ideal (lattice order).
    ``corpus`` is a :class:`Corpus`, a ring, a spec, or a list of those.  The
    expansion is ``None`` unless some literal ranges over all expansions.
    Each hit carries the facts that make it one, for :func:`deltaj.facts.replay`.
    """
    lits = parse_template(template)
    if isinstance(corpus, Corpus):
        expansions = corpus.config.expansions
    free = any(l.kind == "delta" and l.selector is None for l in lits)
    rings = _rings(corpus)
    hits = []
    for R in rings:
        ctx = context_for(R, expansions)
        if not all(_ring_flag(ctx, l.name) != l.negated for l in lits if l.kind == "ring"):
            continue
        base = np.ones(ctx.n, dtype=bool)
        flags = _ideal_flags(ctx)
        fixed: dict[str, ExpansionFn] = {}
        for l in lits:
            if l.kind == "ideal":
                base &= flags[l.name] != l.negated
            elif l.kind == "delta" and l.selector is not None:
                try:
                    d = fixed.setdefault(l.selector, resolve_expansion(R, l.selector))
                except (ExpansionError, RingError):
                    # a plus selector names elements only some rings have
                    if len(rings) > 1:
                        base[:] = False
                        continue
                    raise
                base &= _delta_flag(ctx, l.name, d) != l.negated
        for d in ctx.expansions if free else [None]:
            sel = base.copy()
            if d is not None:
                for l in lits:
                    if l.kind == "delta" and l.selector is None:
                        sel &= _delta_flag(ctx, l.name, d) != l.negated
            for i in np.flatnonzero(sel):
                hits.append(_hit(ctx, int(i), d, fixed, lits))
    return hits


def _hit(ctx: RingContext, i: int, d: ExpansionFn | None, fixed: dict, lits: list[Literal]) -> dict:
    R, I = ctx.ring, ctx.lat[i]
    facts = []
    for l in lits:
        if l.kind == "ring":
            facts.append(fact("ring_flag", R, not l.negated, flag=l.name))
        elif l.kind == "ideal":
            facts.append(fact("flag", R, not l.negated, flag=l.name, ideal=I))
        else:
            e = d if l.selector is None else fixed[l.selector]
            facts.append(fact("flag", R, not l.negated, flag=l.name, ideal=I, expansion=e))
    return {
        "ring_spec": R.spec,
        "ideal": {"label": I.label(), "members": list(I.members)},
        "expansion": None if d is None else d.label,
        "template": " ∧ ".join(l.text() for l in lits),
        "facts": facts,
    }
