"""Ring and module spec strings.

Grammar (``×`` may be written for ``x``)::

    spec     := postfix ("x" postfix)*
    postfix  := primary ("/" gens | "(+)" module | "{" names "}")*
    primary  := "Z" INT ["[x]/(" poly ")"] | "(" spec ")"
    module   := "free:" INT | "quot:" gens | "Z" INT | "(" module ("x" module)* ")"
    gens     := "(" name ("," name)* ")"

``/`` is a quotient by the ideal generated by the listed elements, ``(+)`` is
idealization and ``{...}`` names the unital subring on exactly those elements.
Postfix operators bind tighter than the product, so ``Z2xZ4/(2)`` is
``Z2 x (Z4/(2))``.
"""

from __future__ import annotations

import re
from functools import lru_cache

from deltaj.ring import FiniteRing, RingError, check_order, poly_quotient, product, quotient_ring, zn

_TERM = re.compile(r"^([+-]?\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text: str) -> list[int]:
    """Integer coefficients (constant first) of a polynomial like ``2x^2+x-1``."""
    s = text.replace(" ", "")
    if not s:
        raise RingError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise RingError(f"malformed polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for t in terms:
        m = _TERM.match(t)
        if not m or (m.group(1) in ("", "+", "-") and not m.group(2)):
            raise RingError(f"malformed polynomial term {t!r}")
        c_txt, mono, exp = m.groups()
        if c_txt in ("", "+"):
            c = 1
        elif c_txt == "-":
            c = -1
        else:
            c = int(c_txt)
        deg = 0 if not mono else (int(exp) if exp else 1)
        coeffs[deg] = coeffs.get(deg, 0) + c
    top = max(coeffs)
    return [coeffs.get(i, 0) for i in range(top + 1)]


def split_top_level(text: str) -> list[str]:
    """Split at commas not nested inside brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [x.strip() for x in out]


class _Parser:
    def __init__(self, text: str):
        self.s = text.replace(" ", "").replace("×", "x").replace("⊕", "x")
        self.i = 0

    def error(self, msg: str) -> RingError:
        return RingError(f"cannot parse {self.s!r} at position {self.i}: {msg}")

    def peek(self, lit: str) -> bool:
        return self.s.startswith(lit, self.i)

    def eat(self, lit: str) -> bool:
        if self.peek(lit):
            self.i += len(lit)
            return True
        return False

    def expect(self, lit: str) -> None:
        if not self.eat(lit):
            raise self.error(f"expected {lit!r}")

    def integer(self) -> int:
        m = re.match(r"\d+", self.s[self.i :])
        if not m:
            raise self.error("expected an integer")
        self.i += m.end()
        return int(m.group())

    def balanced(self, open_: str, close: str) -> str:
        """Contents between matching brackets, consuming both."""
        self.expect(open_)
        depth, start = 1, self.i
        while self.i < len(self.s):
            ch = self.s[self.i]
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
                if depth == 0:
                    body = self.s[start : self.i]
                    self.i += 1
                    if ch != close:
                        raise self.error(f"mismatched {ch!r}")
                    return body
            self.i += 1
        raise self.error("unbalanced brackets")

    def done(self) -> None:
        if self.i != len(self.s):
            raise self.error("trailing input")

    # rings
    def spec(self) -> FiniteRing:
        R = self.postfix()
        while self.peek("x"):
            self.i += 1
            R = product(R, self.postfix())
        return R

    def postfix(self) -> FiniteRing:
        R = self.primary()
        while True:
            if self.eat("(+)"):
                from deltaj.constructions import idealize

                R, _ = idealize(R, self.module(R))
            elif self.peek("/"):
                self.i += 1
                names = split_top_level(self.balanced("(", ")"))
                R, _ = quotient_ring(R, _ideal(R, names))
            elif self.peek("{"):
                from deltaj.constructions import _subring_closure, subring

                names = split_top_level(self.balanced("{", "}"))
                mask = 0
                for n in names:
                    mask |= 1 << R.element(n)
                if _subring_closure(R, [R.element(n) for n in names]) != mask:
                    raise RingError("listed elements do not form a unital subring")
                R, _ = subring(R, mask)
            else:
                return R

    def primary(self) -> FiniteRing:
        if self.peek("("):
            body = self.balanced("(", ")")
            return make_ring(body)
        if not self.eat("Z"):
            raise self.error("expected 'Z' or '('")
        n = self.integer()
        if self.eat("[x]/"):
            poly = self.balanced("(", ")")
            return poly_quotient(n, parse_poly(poly))
        return zn(n)

    # modules
    def module(self, R: FiniteRing):
        from deltaj.constructions import cyclic_module, direct_sum, free_module

        if self.eat("free:"):
            return free_module(R, self.integer())
        if self.eat("quot:"):
            names = split_top_level(self.balanced("(", ")"))
            return cyclic_module(R, _ideal(R, names))
        if self.eat("Z"):
            m = self.integer()
            from deltaj.ideals import ideal_generated

            I = ideal_generated(R, [R.scalar(m)])
            M = cyclic_module(R, I, f"Z{m}")
            if M.order != m:
                raise RingError(f"Z{m} is not a cyclic quotient module of {R.spec}")
            return M
        if self.peek("("):
            body = self.balanced("(", ")")
            parts = _split_product(body)
            mods = [parse_module(R, p) for p in parts]
            M = mods[0]
            for N in mods[1:]:
                M = direct_sum(M, N)
            return M
        raise self.error("expected a module spec")


def _split_product(text: str) -> list[str]:
    """Split a module product at top-level ``x`` separators."""
    out, depth, cur = [], 0, []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "x" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    out.append("".join(cur))
    return out


def _ideal(R: FiniteRing, names):
    from deltaj.ideals import ideal_from_names

    return ideal_from_names(R, names)


@lru_cache(maxsize=None)
def _make_ring_cached(text: str, cap: int) -> FiniteRing:
    p = _Parser(text)
    R = p.spec()
    p.done()
    return R


def make_ring(spec: str) -> FiniteRing:
    """Build a ring from a spec string such as ``Z2xZ4`` or ``Z12/(4)``.

    Identical specs return the identical (memoised) ring object.
    """
    from deltaj.ring import order_cap

    if not isinstance(spec, str) or not spec.strip():
        raise RingError("empty ring spec")
    R = _make_ring_cached(spec.replace(" ", ""), order_cap())
    check_order(R.order)
    return R


def parse_module(R: FiniteRing, spec: str):
    p = _Parser(spec)
    M = p.module(R)
    p.done()
    return M
