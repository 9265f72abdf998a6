"""The calculus of bottom-return index sets and top-row arc sets.

A bottom state with n bottom points is determined by the set of left ends of
its bottom returns; the sets that occur this way form L_n, and phi_n is the
bijection between bottom states and L_n.  Stacking bottom states induces the
operation ``oplus`` on index sets, removal induces ``ominus``, and quotient
existence induces the partial order ``preceq``.

Height-1 roof states are determined by their arc set J (the e_j's present in
the row); the admissible J form U_n (subsets of 0..n with gaps > 1) and psi_n
is the bijection.  D_n is the set of interleaved pairs (J, I), in bijection
with single-row Kauffman states via the sign-block word s(J, I).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

from . import planar
from .planar import Conn, K0


class NotInLn(ValueError):
    """The index set is not realizable with the given number of bottom points."""


class NotInUn(ValueError):
    """The arc set is not realizable in a single row of the given width."""


class NotBelow(ValueError):
    """ominus(I, J) requires J preceq I."""


class FinSet:
    """Immutable finite set of small non-negative integers.

    Bottom-return index sets contain positive integers only; top-row arc sets
    may contain 0.  ``norm`` is the sum of elements, written ||K||.
    """

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(set(elements)))
        if any(e < 0 for e in elems):
            raise ValueError("elements must be non-negative integers")
        object.__setattr__(self, "elements", elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: int) -> bool:
        return item in self.elements

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __le__(self, other: FinSet) -> bool:
        return set(self.elements) <= set(other.elements)

    @property
    def norm(self) -> int:
        return sum(self.elements)

    def union(self, other: FinSet) -> FinSet:
        return FinSet(self.elements + other.elements)

    def text(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    @staticmethod
    def parse(text: str) -> FinSet:
        s = text.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError(f"bad finite-set literal {text!r}")
        body = s[1:-1].strip()
        if not body:
            return FinSet()
        return FinSet(int(part) for part in body.split(","))

    def __repr__(self) -> str:
        return self.text()


EMPTY = FinSet()


@dataclass(frozen=True)
class RowPair:
    """An interleaved pair (J, I): 0 <= j_1 < i_1 < j_2 < ... < j_{t+1}."""

    J: FinSet
    I: FinSet

    def __post_init__(self):
        J, I = self.J.elements, self.I.elements
        if len(J) != len(I) + 1:
            raise ValueError("need |J| = |I| + 1")
        merged = [v for pair in zip(J, I + (None,)) for v in pair if v is not None]
        if any(a >= b for a, b in zip(merged, merged[1:])):
            raise ValueError("pair is not interleaved")

    def in_Dn(self, n: int) -> bool:
        return max(self.J.elements) <= n

    def text(self) -> str:
        return f"({self.J.text()},{self.I.text()})"

    @staticmethod
    def parse(text: str) -> RowPair:
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"bad row-pair literal {text!r}")
        body = s[1:-1]
        depth = 0
        for k, ch in enumerate(body):
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            elif ch == "," and depth == 0:
                return RowPair(FinSet.parse(body[:k]), FinSet.parse(body[k + 1 :]))
        raise ValueError(f"bad row-pair literal {text!r}")


# -- L_n and phi ---------------------------------------------------


def n_min(I: FinSet) -> int:
    """The least n with I in L_n (0 for the empty set)."""
    if any(e < 1 for e in I):
        raise NotInLn("bottom-return indices are positive")
    return planar.n_min(I.elements)


def in_Ln(I: FinSet, n: int) -> bool:
    return not any(e < 1 for e in I) and planar.in_Ln(I.elements, n)


def phi_inv(I: FinSet, n: int) -> Conn:
    """The bottom state with bottom-return left ends exactly I."""
    if not in_Ln(I, n):
        raise NotInLn(f"{I.text()} is not in L_{n}")
    return planar.bottom_state(I.elements, n)


def phi(F: Conn) -> FinSet:
    """Left ends of the bottom returns of a bottom state."""
    flags = planar.classify(F)
    if not flags.is_bottom:
        raise ValueError("phi is defined on bottom states")
    return FinSet(left for left, _ in F.bottom_returns())


@lru_cache(maxsize=None)
def enumerate_Ln(n: int) -> tuple[FinSet, ...]:
    """All of L_n, lexicographically by element tuple."""
    found = []
    for r in range(0, n // 2 + 1):
        for I in combinations(range(1, n), r):
            if planar.in_Ln(I, n):
                found.append(FinSet(I))
    return tuple(sorted(found, key=lambda s: s.elements))


# -- the oplus / ominus / preceq calculus ---------------------------------------------------


@lru_cache(maxsize=None)
def oplus(I: FinSet, J: FinSet) -> FinSet:
    """Index set of the stack of the bottom state of I on the bottom state of J."""
    if any(e < 1 for e in I) or any(e < 1 for e in J):
        raise NotInLn("bottom-return indices are positive")
    n_star = max(n_min(I) + 2 * len(J), n_min(J))
    upper = planar.bottom_state(I.elements, n_star - 2 * len(J))
    lower = planar.bottom_state(J.elements, n_star)
    stacked, loops = planar.vprod(upper, lower)
    assert stacked is not K0 and loops == 0
    return phi(stacked)


@lru_cache(maxsize=None)
def preceq(J: FinSet, I: FinSet) -> bool:
    """The stabilized quotient order: J preceq I iff the returns J peel off I."""
    if J == I:
        return True
    n = n_min(I)
    return planar.bottom_quotient(phi_inv(I, n), J.elements) is not K0


@lru_cache(maxsize=None)
def ominus(I: FinSet, J: FinSet) -> FinSet:
    """The unique K with K oplus J == I; requires J preceq I."""
    if not preceq(J, I):
        raise NotBelow(f"{J.text()} is not below {I.text()}")
    if not J:
        return I
    quotient = planar.bottom_quotient(phi_inv(I, n_min(I)), J.elements)
    assert quotient is not K0
    return phi(quotient)


# -- U_n, psi and D_n ---------------------------------------------------


def in_Un(J: FinSet, n: int) -> bool:
    e = J.elements
    if not e or e[-1] > n:
        return False
    return all(b - a > 1 for a, b in zip(e, e[1:]))


def psi_inv(J: FinSet, n: int) -> Conn:
    """The height-1 roof state whose arc set is exactly J."""
    if not in_Un(J, n):
        raise NotInUn(f"{J.text()} is not in U_{n}")
    return planar.row_state(J.elements, n)


def psi(R: Conn) -> FinSet:
    """The arc set of a height-1 roof state."""
    if R.ht != 1 or R.has_bottom_return():
        raise ValueError("psi is defined on height-1 roof states")
    return FinSet(planar.arcs_J(R))


@lru_cache(maxsize=None)
def enumerate_Un(n: int) -> tuple[FinSet, ...]:
    found = []
    for r in range(1, n + 2):
        for J in combinations(range(n + 1), r):
            if all(b - a > 1 for a, b in zip(J, J[1:])):
                found.append(FinSet(J))
    return tuple(sorted(found, key=lambda s: s.elements))


def enumerate_Dn(n: int) -> tuple[RowPair, ...]:
    """All interleaved pairs with entries bounded by n; 2^n of them."""
    out = []
    for J in enumerate_Un(n):
        gaps = [range(a + 1, b) for a, b in zip(J.elements, J.elements[1:])]
        for I in product(*gaps):
            out.append(RowPair(J, FinSet(I)))
    return tuple(sorted(out, key=lambda p: (p.J.elements, p.I.elements)))


def enumerate_H(R: Conn) -> tuple[RowPair, ...]:
    """The pairs (J, I) in D_n with J contained in the arc set of R."""
    if R.ht < 1:
        raise ValueError("the first-row pair set needs ht >= 1")
    present = planar.arcs_J(R)
    n = R.n_t
    out = []
    for r in range(1, len(present) + 1):
        for J in combinations(present, r):
            gaps = [range(a + 1, b) for a, b in zip(J, J[1:])]
            for I in product(*gaps):
                out.append(RowPair(FinSet(J), FinSet(I)))
    return tuple(sorted(out, key=lambda p: (p.J.elements, p.I.elements)))


def s_of(J: FinSet, I: FinSet, n: int) -> tuple[int, ...]:
    """The sign word of the pair (J, I): 1^j1 (-1)^(i1-j1) 1^(j2-i1) ...

    Position p carries +1 exactly when more elements of J than of I are >= p.
    """
    pair = RowPair(J, I)
    if not pair.in_Dn(n):
        raise ValueError(f"{pair.text()} is not in D_{n}")
    js, is_ = J.elements, I.elements
    out = []
    for p in range(1, n + 1):
        plus = sum(1 for j in js if j >= p) > sum(1 for i in is_ if i >= p)
        out.append(1 if plus else -1)
    return tuple(out)
