"""Plane rooted trees with delay and the plucking polynomial.

A Catalan state with no bottom returns determines a plane rooted tree: the
vertices are the arcs that avoid the bottom side, the parent of an arc is the
innermost arc separating it from the bottom edge (the root when there is
none), and children are ordered by the boundary walk that goes up the left
side, across the top and down the right side.  A leaf arc that is a left or
right return carries delay equal to the row index of its lower end; all other
leaves carry delay 1.

The plucking polynomial removes delay-1 leaves one at a time, weighting each
removal by q to the number of vertices strictly right of the root-to-leaf
path, and decrementing the remaining delays.  Stripping rows off the top of
the state removes arcs in exactly this order, which is why the polynomial
computes bracket coefficients: the coefficient of a realizable no-bottom
-return state is A^(2*beta - mn) times the min-degree-normalized plucking
polynomial evaluated at q = A^-4, where beta is the largest total +1 count
over staircase row sequences realizing the state.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact_arith import LaurentPoly, scale_exponents
from .planar import Conn, K0, arcs_J, identity, top_row_quotient


class HasBottomReturns(ValueError):
    """The construction needs a state with no bottom returns."""


class HasTopReturns(ValueError):
    """The construction needs a state with no top returns."""


@dataclass(frozen=True)
class PlaneRootedTree:
    """A plane rooted tree; ``alpha`` is the delay when this node is a leaf."""

    alpha: int = 1
    children: tuple[PlaneRootedTree, ...] = ()

    def size(self) -> int:
        return 1 + sum(ch.size() for ch in self.children)

    def is_leaf(self) -> bool:
        return not self.children


def _decrement(node: PlaneRootedTree) -> PlaneRootedTree:
    """Leaf delays drop by one (floor 1); internal nodes keep placeholder 1."""
    if not node.children:
        return PlaneRootedTree(max(1, node.alpha - 1), ())
    return PlaneRootedTree(1, tuple(_decrement(ch) for ch in node.children))


def _pluck(tree: PlaneRootedTree, path: tuple[int, ...]) -> PlaneRootedTree:
    """Remove the leaf at the end of path and decrement surviving leaf delays.

    A former internal node that loses its last child becomes a leaf with
    delay 1, matching its placeholder.
    """
    if not path:
        raise ValueError("cannot pluck the root")
    k = path[0]
    children = []
    for idx, ch in enumerate(tree.children):
        if idx != k:
            children.append(_decrement(ch))
        elif len(path) > 1:
            children.append(_pluck(ch, path[1:]))
        # else: ch is the plucked leaf and is dropped
    return PlaneRootedTree(1, tuple(children))


def _leaf_paths(tree: PlaneRootedTree) -> list[tuple[tuple[int, ...], int]]:
    """(path, right-count) for each non-root leaf, in plane order."""
    out: list[tuple[tuple[int, ...], int]] = []

    def visit(node: PlaneRootedTree, path: tuple[int, ...], right_of_path: int) -> None:
        if not node.children and path:
            out.append((path, right_of_path))
            return
        sizes = [ch.size() for ch in node.children]
        total_right = 0
        for k in range(len(node.children) - 1, -1, -1):
            visit(node.children[k], path + (k,), right_of_path + total_right)
            total_right += sizes[k]

    visit(tree, (), 0)
    return sorted(out)


@lru_cache(maxsize=None)
def plucking_poly(tree: PlaneRootedTree) -> LaurentPoly:
    """The plucking polynomial in q (returned as a polynomial in one variable)."""
    if not tree.children:
        return LaurentPoly.one()
    total = LaurentPoly.zero()
    for path, right in _leaf_paths(tree):
        node = tree
        for k in path:
            node = node.children[k]
        if node.alpha != 1:
            continue
        total = total + LaurentPoly.monomial(right) * plucking_poly(_pluck(tree, path))
    return total


# -- the dual tree of a no-bottom-return state ---------------------------------------------------


def build_tree(c: Conn) -> PlaneRootedTree:
    """Dual plane rooted tree of a state with no bottom returns."""
    if c.has_bottom_return():
        raise HasBottomReturns("the dual tree needs a state with no bottom returns")
    n = c.size()
    bottom_lo = c.n_t + c.ht
    bottom_hi = bottom_lo + c.n_b
    arcs = [
        (p, q)
        for p, q in c.pairs()
        if not (bottom_lo <= p < bottom_hi or bottom_lo <= q < bottom_hi)
    ]
    # The bottom edge sits in the boundary gap just before the bottom points
    # (clockwise); any chord avoiding the bottom has the whole bottom side in
    # one of its two complementary intervals.
    beta = bottom_lo - 0.5

    def inner_interval(p: int, q: int) -> tuple[float, float]:
        if p < beta < q:
            return (q, p + n)  # wrap side
        return (p, q)

    def contains(outer: tuple[int, int], inner_arc: tuple[int, int]) -> bool:
        lo, hi = inner_interval(*outer)
        return all(lo < x < hi or lo < x + n < hi for x in inner_arc)

    def width(arc: tuple[int, int]) -> float:
        lo, hi = inner_interval(*arc)
        return hi - lo

    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    for a in arcs:
        candidates = [b for b in arcs if b != a and contains(b, a)]
        parent[a] = min(candidates, key=width) if candidates else None

    start = bottom_hi % max(n, 1)

    def walk_rank(arc: tuple[int, int]) -> int:
        return min((x - start) % n for x in arc)

    def delay(arc: tuple[int, int]) -> int:
        sides = [c.side_of(x) for x in arc]
        if all(s == "L" for s, _ in sides) or all(s == "R" for s, _ in sides):
            return max(k for _, k in sides)
        return 1

    def build(arc: tuple[int, int] | None) -> PlaneRootedTree:
        kids = sorted((a for a in arcs if parent[a] == arc), key=walk_rank)
        children = tuple(build(a) for a in kids)
        alpha = delay(arc) if arc is not None and not children else 1
        return PlaneRootedTree(alpha, children)

    return build(None)


# -- staircase realizations ---------------------------------------------------


def realizing_sequences(c: Conn) -> list[tuple[int, ...]]:
    """All staircase row sequences b with C_s(b) = c (no-bottom-return states)."""
    if c.has_bottom_return():
        raise HasBottomReturns("staircase realizations need no bottom returns")
    if c.n_t != c.n_b:
        raise ValueError("realizations are defined for Catalan states")
    return _realize(c)


def _realize(c: Conn) -> list[tuple[int, ...]]:
    if c.ht == 0:
        return [()] if c == identity(c.n_t) else []
    out = []
    for b in arcs_J(c):
        rest = top_row_quotient(c, (b,))
        if rest is K0:
            continue
        for tail in _realize(rest):
            out.append((b,) + tail)
    return out


_BETA_MEMO: dict[Conn, int | None] = {}


def beta(c: Conn) -> int:
    """Largest total of a realizing staircase sequence; 0 when there is none."""
    if c.has_bottom_return():
        raise HasBottomReturns("beta needs a state with no bottom returns")
    best = _beta(c)
    return best if best is not None else 0


def _beta(c: Conn) -> int | None:
    if c.ht == 0:
        return 0 if c == identity(c.n_t) else None
    cached = _BETA_MEMO.get(c, "?")
    if cached != "?":
        return cached
    best: int | None = None
    for b in arcs_J(c):
        rest = top_row_quotient(c, (b,))
        if rest is K0:
            continue
        tail = _beta(rest)
        if tail is not None and (best is None or b + tail > best):
            best = b + tail
    _BETA_MEMO[c] = best
    return best


# -- the coefficient formula ---------------------------------------------------


def coeff_no_bottom_returns(c: Conn, m: int, n: int) -> LaurentPoly:
    """Bracket coefficient of a no-bottom-return Catalan state.

    A^(2*beta - mn) times the min-degree-normalized plucking polynomial at
    q = A^-4; zero exactly for non-realizable states.
    """
    if c.n_t != n or c.n_b != n or c.ht != m:
        raise ValueError("state does not live in Cat(m, n)")
    if c.has_bottom_return():
        raise HasBottomReturns("use the rotated formula for states with bottom returns")
    q_poly = plucking_poly(build_tree(c))
    if q_poly.is_zero():
        return LaurentPoly.zero()
    normalized = q_poly.shift(-q_poly.min_exp())
    return scale_exponents(normalized, -4).shift(2 * beta(c) - m * n)


def coeff_no_top_returns(c: Conn, m: int, n: int) -> LaurentPoly:
    """Bracket coefficient of a no-top-return Catalan state, via pi-rotation."""
    if c.has_top_return():
        raise HasTopReturns("state has a top return")
    from .planar import symmetry

    return coeff_no_bottom_returns(symmetry(c, "rotate"), m, n)


# -- tree literals ---------------------------------------------------


def _names() -> list[str]:
    import string

    single = list(string.ascii_lowercase)
    return single + [a + b for a in single for b in single]


def tree_text(tree: PlaneRootedTree) -> str:
    """Nested-parentheses literal with per-leaf delay suffixes."""
    names = iter(_names())

    def render(node: PlaneRootedTree, label: str) -> str:
        suffix = f":{node.alpha}" if node.is_leaf() and node.alpha != 1 else ""
        inner = " ".join(render(ch, next(names)) for ch in node.children)
        return f"({label}{suffix} {inner})" if inner else f"({label}{suffix})"

    return render(tree, "v0")


def parse_tree(text: str) -> PlaneRootedTree:
    """Parse the nested-parentheses literal (node names are decorative)."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def node() -> PlaneRootedTree:
        nonlocal pos
        skip_ws()
        if pos >= len(text) or text[pos] != "(":
            raise ValueError(f"expected '(' at position {pos}")
        pos += 1
        skip_ws()
        label = ""
        while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
            label += text[pos]
            pos += 1
        alpha = 1
        if pos < len(text) and text[pos] == ":":
            pos += 1
            digits = ""
            while pos < len(text) and text[pos].isdigit():
                digits += text[pos]
                pos += 1
            alpha = int(digits)
        children = []
        skip_ws()
        while pos < len(text) and text[pos] == "(":
            children.append(node())
            skip_ws()
        if pos >= len(text) or text[pos] != ")":
            raise ValueError(f"expected ')' at position {pos}")
        pos += 1
        return PlaneRootedTree(alpha if not children else 1, tuple(children))

    result = node()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing characters at position {pos}")
    return result
