"""Showcase states with known exact coefficients.

Both states were pinned by cross-validating every intermediate bracket value
of their published computations against this library's three methods; the
tests and demos use them as end-to-end fixtures.

The height-5 state over 4 strands has the two-cap top state as its roof; its
floor carries a pair of stacked right hooks, nested left hooks and two bottom
returns.  Its coefficient factors as A^-8 (1 + A^4)(1 + 3A^4 + A^8).

The height-9 state over 5 strands is a one-cap roof over three wall blocks
that drift down the sides, with a single bottom return at position 4.  Its
spaced coefficient sequence 1,2,3,7,8,7,9,5,1 dips at the fifth step and
rises again at the seventh, so the coefficient is not unimodal.
"""

from __future__ import annotations

from .exact_arith import LaurentPoly, qint
from .planar import Conn, parse_conn

TWO_CAP_OVER_HOOKS = (
    "conn nt=4 nb=4 ht=5 T1-T2, T3-T4, R1-R2, R3-L5, R4-R5, "
    "B4-B3, B2-B1, L4-L1, L3-L2"
)

NON_UNIMODAL_9x5 = (
    "conn nt=5 nb=5 ht=9 T1-T2, T3-L3, T4-L4, T5-R1, R2-L7, R3-L8, R4-R5, "
    "R6-B2, R7-B3, R8-R9, B5-B4, B1-L9, L6-L5, L2-L1"
)


def two_cap_state() -> Conn:
    """The Cat(5, 4) showcase state."""
    return parse_conn(TWO_CAP_OVER_HOOKS)


def two_cap_coeff() -> LaurentPoly:
    return LaurentPoly.monomial(-8) * qint(2) * LaurentPoly([(0, 1), (4, 3), (8, 1)])


def non_unimodal_state() -> Conn:
    """The Cat(9, 5) state whose coefficient is not unimodal."""
    return parse_conn(NON_UNIMODAL_9x5)


def non_unimodal_coeff() -> LaurentPoly:
    spaced = [1, 2, 3, 7, 8, 7, 9, 5, 1]
    return LaurentPoly.monomial(-37) * LaurentPoly(
        [(4 * i, c) for i, c in enumerate(spaced)]
    )
