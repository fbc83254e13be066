"""Finite commutative ring workbench for ideal expansions and δ-J-ideals."""

from deltaj.ring import FiniteRing, RingError, RingHom, quotient_ring, units, verify_ring_axioms
from deltaj.parse import make_ring

__version__ = "0.1.0"
