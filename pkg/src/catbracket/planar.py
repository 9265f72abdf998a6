"""Crossingless connections in a rectangle, their products and quotients.

A connection lives in a rectangle with ``n_t`` points on the top side, ``n_b``
on the bottom and ``ht`` on each of the left and right sides.  Boundary points
are indexed clockwise starting at the top-left corner:

    top     x_1 .. x_{n_t}     left to right      indices 0 .. n_t-1
    right   y'_1 .. y'_ht      top to bottom      indices n_t .. n_t+ht-1
    bottom  x'_{n_b} .. x'_1   right to left      next n_b indices
    left    y_ht .. y_1        bottom to top      last ht indices

The matching is a fixpoint-free involution on these indices; noncrossing means
no two matched pairs interleave in the cyclic order, equivalently the pairing
reads as a balanced bracket sequence.

``K0`` is the formal null connection, absorbing under both products; it stands
for "not a tangle" and has bracket value 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Crossing(ValueError):
    """A pair of chords interleaves in the cyclic order."""


class BadArity(ValueError):
    """Point counts are inconsistent (odd total, out-of-range index, ...)."""


class LiteralError(ValueError):
    """A connection literal failed to parse."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _K0Type:
    """Singleton absorbing element for the two tangle products."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "K0"

    def __reduce__(self):
        return (_K0Type, ())


K0 = _K0Type()


def is_noncrossing(pairing: Sequence[int]) -> bool:
    """True when the involution reads as a balanced bracket sequence."""
    stack: list[int] = []
    for i, j in enumerate(pairing):
        if j > i:
            stack.append(j)
        else:
            if not stack or stack.pop() != i:
                return False
    return not stack


class Conn:
    """Immutable crossingless connection."""

    __slots__ = ("n_t", "n_b", "ht", "pairing", "_hash")

    def __init__(self, n_t: int, n_b: int, ht: int, pairing: Sequence[int]):
        n = n_t + n_b + 2 * ht
        if n % 2:
            raise BadArity(f"odd number of boundary points: {n}")
        if len(pairing) != n:
            raise BadArity(f"pairing length {len(pairing)} != {n} boundary points")
        for i, j in enumerate(pairing):
            if not 0 <= j < n or j == i or pairing[j] != i:
                raise BadArity(f"pairing is not a fixpoint-free involution at {i}")
        if not is_noncrossing(pairing):
            raise Crossing("matched pairs interleave")
        self.n_t = n_t
        self.n_b = n_b
        self.ht = ht
        self.pairing = tuple(pairing)
        self._hash = hash((n_t, n_b, ht, self.pairing))

    # -- indexing helpers (1-based point ordinals per side) -----------------

    def size(self) -> int:
        return self.n_t + self.n_b + 2 * self.ht

    def top_index(self, i: int) -> int:
        if not 1 <= i <= self.n_t:
            raise BadArity(f"top point T{i} out of range")
        return i - 1

    def right_index(self, j: int) -> int:
        if not 1 <= j <= self.ht:
            raise BadArity(f"right point R{j} out of range")
        return self.n_t + j - 1

    def bottom_index(self, i: int) -> int:
        if not 1 <= i <= self.n_b:
            raise BadArity(f"bottom point B{i} out of range")
        return self.n_t + self.ht + self.n_b - i

    def left_index(self, j: int) -> int:
        if not 1 <= j <= self.ht:
            raise BadArity(f"left point L{j} out of range")
        return self.n_t + self.ht + self.n_b + self.ht - j

    def side_of(self, idx: int) -> tuple[str, int]:
        """Return (side letter, 1-based ordinal) of a cyclic index."""
        if idx < self.n_t:
            return "T", idx + 1
        idx -= self.n_t
        if idx < self.ht:
            return "R", idx + 1
        idx -= self.ht
        if idx < self.n_b:
            return "B", self.n_b - idx
        idx -= self.n_b
        return "L", self.ht - idx

    # -- structure queries ---------------------------------------------------

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.pairing) if i < j]

    def matched(self, i: int, j: int) -> bool:
        return self.pairing[i] == j

    def has_top_return(self) -> bool:
        return any(j < self.n_t for i, j in self.pairs() if i < self.n_t)

    def has_bottom_return(self) -> bool:
        lo = self.n_t + self.ht
        hi = lo + self.n_b
        return any(lo <= i < hi and lo <= j < hi for i, j in self.pairs())

    def bottom_returns(self) -> list[tuple[int, int]]:
        """Bottom returns as 1-based (left end, right end) ordinal pairs."""
        lo = self.n_t + self.ht
        hi = lo + self.n_b
        out = []
        for i, j in self.pairs():
            if lo <= i < hi and lo <= j < hi:
                a, b = self.side_of(i)[1], self.side_of(j)[1]
                out.append((min(a, b), max(a, b)))
        return sorted(out)

    def top_returns(self) -> list[tuple[int, int]]:
        return sorted(
            (i + 1, j + 1) for i, j in self.pairs() if j < self.n_t
        )

    def sort_key(self) -> tuple:
        return (self.n_t, self.n_b, self.ht, self.pairing)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Conn)
            and self.n_t == other.n_t
            and self.n_b == other.n_b
            and self.ht == other.ht
            and self.pairing == other.pairing
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Conn[{conn_text(self)}]"


ExtConn = Conn | _K0Type


@dataclass(frozen=True)
class BoundaryLine:
    """Horizontal line l^h_i (0 <= i <= ht) or vertical line l^v_j.

    Horizontal index i sits below the i-th left/right point pair; index 0 is
    the line above the first pair, index ht the line above the bottom edge.
    """

    orientation: str  # "h" or "v"
    index: int


@dataclass(frozen=True)
class StateFlags:
    is_catalan: bool
    is_roof: bool
    is_floor: bool
    is_middle: bool
    is_top: bool
    is_bottom: bool


def make_connection(n_t: int, n_b: int, ht: int, pairs: Iterable[tuple[int, int]]) -> Conn:
    """Build a validated connection from cyclic-index pairs."""
    n = n_t + n_b + 2 * ht
    pairing = [-1] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise BadArity(f"bad pair ({i}, {j})")
        if pairing[i] != -1 or pairing[j] != -1:
            raise BadArity(f"point reused in pair ({i}, {j})")
        pairing[i] = j
        pairing[j] = i
    if any(p == -1 for p in pairing):
        raise BadArity("unmatched boundary point")
    return Conn(n_t, n_b, ht, pairing)


def empty_connection() -> Conn:
    return Conn(0, 0, 0, ())


def identity(n: int) -> Conn:
    """L(0, n): n parallel vertical strands."""
    return Conn(n, n, 0, tuple(2 * n - 1 - i for i in range(2 * n)))


def horizontal_strands(m: int) -> Conn:
    """m parallel horizontal strands (the smoothing-free L(m, 0))."""
    return Conn(0, 0, m, tuple(2 * m - 1 - i for i in range(2 * m)))


def classify(c: ExtConn) -> StateFlags:
    if c is K0:
        return StateFlags(False, False, False, False, False, False)
    roof = not c.has_bottom_return()
    floor = not c.has_top_return()
    return StateFlags(
        is_catalan=c.n_t == c.n_b,
        is_roof=roof,
        is_floor=floor,
        is_middle=roof and floor,
        is_top=roof and c.ht == 0,
        is_bottom=floor and c.ht == 0,
    )


# -- products ---------------------------------------------------


def _trace(
    n_result: int,
    seam: int,
    map1: list[tuple[str, int]],
    map2: list[tuple[str, int]],
    pair1: Sequence[int],
    pair2: Sequence[int],
    seam1: dict[int, int],
    seam2: dict[int, int],
) -> tuple[list[int], int]:
    """Follow strands through two glued diagrams.

    ``mapX[local]`` is ("r", result index) or ("s", seam ordinal);
    ``seamX[ordinal]`` is the local index of that seam point in diagram X.
    Returns the result pairing and the number of closed loops.
    """
    result = [-1] * n_result
    seen = [False] * seam
    starts: list[tuple[int, int]] = [(-1, -1)] * n_result
    for local, (kind, val) in enumerate(map1):
        if kind == "r":
            starts[val] = (1, local)
    for local, (kind, val) in enumerate(map2):
        if kind == "r":
            starts[val] = (2, local)

    def advance(diag: int, local: int) -> int:
        while True:
            partner = (pair1 if diag == 1 else pair2)[local]
            kind, val = (map1 if diag == 1 else map2)[partner]
            if kind == "r":
                return val
            seen[val] = True
            diag = 2 if diag == 1 else 1
            local = (seam1 if diag == 1 else seam2)[val]

    for start in range(n_result):
        if result[start] != -1:
            continue
        diag, local = starts[start]
        end = advance(diag, local)
        result[start] = end
        result[end] = start
    loops = 0
    for s in range(seam):
        if seen[s]:
            continue
        loops += 1
        cur = s
        while not seen[cur]:
            seen[cur] = True
            partner1 = pair1[seam1[cur]]
            cur_mid = map1[partner1][1]
            seen[cur_mid] = True
            partner2 = pair2[seam2[cur_mid]]
            cur = map2[partner2][1]
    return result, loops


def vprod(t1: ExtConn, t2: ExtConn) -> tuple[ExtConn, int]:
    """Vertical product: t1 on top of t2; K0 on arity mismatch."""
    if t1 is K0 or t2 is K0 or t1.n_b != t2.n_t:
        return K0, 0
    n_t, n_b, ht = t1.n_t, t2.n_b, t1.ht + t2.ht
    out = _Builder(n_t, n_b, ht)

    map1 = [("", 0)] * t1.size()
    for i in range(1, t1.n_t + 1):
        map1[t1.top_index(i)] = ("r", out.top(i))
    for j in range(1, t1.ht + 1):
        map1[t1.right_index(j)] = ("r", out.right(j))
        map1[t1.left_index(j)] = ("r", out.left(j))
    for i in range(1, t1.n_b + 1):
        map1[t1.bottom_index(i)] = ("s", i - 1)

    map2 = [("", 0)] * t2.size()
    for i in range(1, t2.n_t + 1):
        map2[t2.top_index(i)] = ("s", i - 1)
    for j in range(1, t2.ht + 1):
        map2[t2.right_index(j)] = ("r", out.right(t1.ht + j))
        map2[t2.left_index(j)] = ("r", out.left(t1.ht + j))
    for i in range(1, t2.n_b + 1):
        map2[t2.bottom_index(i)] = ("r", out.bottom(i))

    seam1 = {i - 1: t1.bottom_index(i) for i in range(1, t1.n_b + 1)}
    seam2 = {i - 1: t2.top_index(i) for i in range(1, t2.n_t + 1)}
    pairing, loops = _trace(out.size, t1.n_b, map1, map2, t1.pairing, t2.pairing, seam1, seam2)
    return Conn(n_t, n_b, ht, pairing), loops


def hprod(t1: ExtConn, t2: ExtConn) -> ExtConn:
    """Horizontal product: t1 to the left of t2; K0 on arity mismatch."""
    conn, _ = hprod_with_loops(t1, t2)
    return conn


def hprod_with_loops(t1: ExtConn, t2: ExtConn) -> tuple[ExtConn, int]:
    if t1 is K0 or t2 is K0 or t1.ht != t2.ht:
        return K0, 0
    n_t, n_b, ht = t1.n_t + t2.n_t, t1.n_b + t2.n_b, t1.ht
    out = _Builder(n_t, n_b, ht)

    map1 = [("", 0)] * t1.size()
    for i in range(1, t1.n_t + 1):
        map1[t1.top_index(i)] = ("r", out.top(i))
    for i in range(1, t1.n_b + 1):
        map1[t1.bottom_index(i)] = ("r", out.bottom(i))
    for j in range(1, ht + 1):
        map1[t1.left_index(j)] = ("r", out.left(j))
        map1[t1.right_index(j)] = ("s", j - 1)

    map2 = [("", 0)] * t2.size()
    for i in range(1, t2.n_t + 1):
        map2[t2.top_index(i)] = ("r", out.top(t1.n_t + i))
    for i in range(1, t2.n_b + 1):
        map2[t2.bottom_index(i)] = ("r", out.bottom(t1.n_b + i))
    for j in range(1, ht + 1):
        map2[t2.right_index(j)] = ("r", out.right(j))
        map2[t2.left_index(j)] = ("s", j - 1)

    seam1 = {j - 1: t1.right_index(j) for j in range(1, ht + 1)}
    seam2 = {j - 1: t2.left_index(j) for j in range(1, ht + 1)}
    pairing, loops = _trace(out.size, ht, map1, map2, t1.pairing, t2.pairing, seam1, seam2)
    return Conn(n_t, n_b, ht, pairing), loops


class _Builder:
    """Index arithmetic for a result rectangle under construction."""

    def __init__(self, n_t: int, n_b: int, ht: int):
        self.n_t, self.n_b, self.ht = n_t, n_b, ht
        self.size = n_t + n_b + 2 * ht

    def top(self, i: int) -> int:
        return i - 1

    def right(self, j: int) -> int:
        return self.n_t + j - 1

    def bottom(self, i: int) -> int:
        return self.n_t + self.ht + self.n_b - i

    def left(self, j: int) -> int:
        return self.n_t + self.ht + self.n_b + self.ht - j


def vprod_chain(*parts: ExtConn) -> tuple[ExtConn, int]:
    """Left-to-right vertical product of several tangles, summing loop counts."""
    if not parts:
        raise ValueError("empty product")
    acc: ExtConn = parts[0]
    loops = 0
    for part in parts[1:]:
        acc, k = vprod(acc, part)
        loops += k
    return acc, loops


# -- symmetries ---------------------------------------------------


def symmetry(c: ExtConn, kind: str) -> ExtConn:
    """Reflection about a vertical line ("reflect") or pi-rotation ("rotate")."""
    if c is K0:
        return K0
    if kind == "reflect":
        out = _Builder(c.n_t, c.n_b, c.ht)
        perm = {}
        for i in range(1, c.n_t + 1):
            perm[c.top_index(i)] = out.top(c.n_t + 1 - i)
        for i in range(1, c.n_b + 1):
            perm[c.bottom_index(i)] = out.bottom(c.n_b + 1 - i)
        for j in range(1, c.ht + 1):
            perm[c.left_index(j)] = out.right(j)
            perm[c.right_index(j)] = out.left(j)
        n_t, n_b, ht = c.n_t, c.n_b, c.ht
    elif kind == "rotate":
        out = _Builder(c.n_b, c.n_t, c.ht)
        perm = {}
        for i in range(1, c.n_t + 1):
            perm[c.top_index(i)] = out.bottom(c.n_t + 1 - i)
        for i in range(1, c.n_b + 1):
            perm[c.bottom_index(i)] = out.top(c.n_b + 1 - i)
        for j in range(1, c.ht + 1):
            perm[c.left_index(j)] = out.right(c.ht + 1 - j)
            perm[c.right_index(j)] = out.left(c.ht + 1 - j)
        n_t, n_b, ht = c.n_b, c.n_t, c.ht
    else:
        raise ValueError(f"unknown symmetry kind: {kind!r}")
    pairing = [-1] * c.size()
    for i, j in c.pairs():
        pairing[perm[i]] = perm[j]
        pairing[perm[j]] = perm[i]
    return Conn(n_t, n_b, ht, pairing)


def flip_upside_down(c: ExtConn) -> ExtConn:
    """Reflection about a horizontal line: rotate after reflect."""
    return symmetry(symmetry(c, "reflect"), "rotate")


# -- lines, realizability, splitting ---------------------------------------------------


def _above_set(c: Conn, i: int) -> set[int]:
    """Indices above horizontal line l^h_i."""
    above = set(range(c.n_t))
    for j in range(1, i + 1):
        above.add(c.left_index(j))
        above.add(c.right_index(j))
    return above


def line_cross_count(c: Conn, line: BoundaryLine) -> int:
    """Minimal intersection count: matched pairs separated by the chord."""
    if line.orientation == "h":
        if not 0 <= line.index <= c.ht:
            raise BadArity(f"horizontal line index {line.index} out of range")
        side = _above_set(c, line.index)
    elif line.orientation == "v":
        j = line.index
        if not (1 <= j <= c.n_t - 1 and j <= c.n_b - 1):
            raise BadArity(f"vertical line index {j} out of range")
        side = {c.top_index(i) for i in range(1, j + 1)}
        side |= {c.bottom_index(i) for i in range(1, j + 1)}
        side |= {c.left_index(k) for k in range(1, c.ht + 1)}
    else:
        raise ValueError(f"unknown orientation: {line.orientation!r}")
    return sum(1 for p, q in c.pairs() if (p in side) != (q in side))


def realizable(c: Conn, m: int, n: int) -> bool:
    """Line-condition test for Catalan states of the m x n lattice crossing."""
    if c.n_t != n or c.n_b != n or c.ht != m:
        raise BadArity("state does not live in Cat(m, n)")
    for i in range(1, m):
        if line_cross_count(c, BoundaryLine("h", i)) > n:
            return False
    for j in range(1, n):
        if line_cross_count(c, BoundaryLine("v", j)) > m:
            return False
    return True


def split(c: Conn, line: BoundaryLine) -> tuple[Conn, Conn]:
    """Split c along a horizontal line into (top part, bottom part).

    The top part is a roof state, the bottom part a floor state, and
    ``vprod(top, bottom) == (c, 0)``; cut points are ordered along the line by
    the boundary order of the cut arcs' endpoints in each half.
    """
    if line.orientation != "h":
        raise BadArity("split is defined along horizontal lines")
    i = line.index
    if not 0 <= i <= c.ht:
        raise BadArity(f"horizontal line index {i} out of range")
    above = _above_set(c, i)

    # Walk each half-boundary from the left end of the cut line.
    upper_walk = (
        [c.left_index(j) for j in range(i, 0, -1)]
        + [c.top_index(k) for k in range(1, c.n_t + 1)]
        + [c.right_index(j) for j in range(1, i + 1)]
    )
    lower_walk = (
        [c.left_index(j) for j in range(i + 1, c.ht + 1)]
        + [c.bottom_index(k) for k in range(1, c.n_b + 1)]
        + [c.right_index(j) for j in range(c.ht, i, -1)]
    )
    cut = [(p, q) for p, q in c.pairs() if (p in above) != (q in above)]
    cut = [(p, q) if p in above else (q, p) for p, q in cut]
    upper_rank = {p: r for r, p in enumerate(sorted((p for p, _ in cut), key=upper_walk.index))}
    lower_rank = {q: r for r, q in enumerate(sorted((q for _, q in cut), key=lower_walk.index))}

    n_cut = len(cut)
    b1 = _Builder(c.n_t, n_cut, i)
    b2 = _Builder(n_cut, c.n_b, c.ht - i)

    def up_index(p: int) -> int:
        side, k = c.side_of(p)
        if side == "T":
            return b1.top(k)
        if side == "L":
            return b1.left(k)
        return b1.right(k)

    def down_index(p: int) -> int:
        side, k = c.side_of(p)
        if side == "B":
            return b2.bottom(k)
        if side == "L":
            return b2.left(k - i)
        return b2.right(k - i)

    pair1 = [-1] * b1.size
    pair2 = [-1] * b2.size
    for p, q in c.pairs():
        if p in above and q in above:
            a, b = up_index(p), up_index(q)
            pair1[a], pair1[b] = b, a
        elif p not in above and q not in above:
            a, b = down_index(p), down_index(q)
            pair2[a], pair2[b] = b, a
    for p, q in cut:
        a = up_index(p)
        b = b1.bottom(upper_rank[p] + 1)
        pair1[a], pair1[b] = b, a
        a2 = b2.top(lower_rank[q] + 1)
        b2i = down_index(q)
        pair2[a2], pair2[b2i] = b2i, a2

    c1 = Conn(c.n_t, n_cut, i, pair1)
    c2 = Conn(n_cut, c.n_b, c.ht - i, pair2)
    rebuilt, loops = vprod(c1, c2)
    assert rebuilt == c and loops == 0, "split reconstruction failed"
    return c1, c2


# -- the arcs e_j and the two quotients ---------------------------------------------------


def arcs_J(c: Conn) -> tuple[int, ...]:
    """All j such that the arc e_j (joining x_j and x_{j+1}) lies in c.

    For ht >= 1 the range is 0..n_t with x_0 = y_1 and x_{n_t+1} = y'_1; for
    ht = 0 only interior indices 1..n_t-1 qualify.  Each e_j is a cyclically
    adjacent matched pair, so adjacency is the whole test.
    """
    n = c.size()
    if n == 0:
        return ()
    out = []
    if c.ht >= 1 and c.pairing[n - 1] == 0:
        out.append(0)
    for j in range(1, c.n_t):
        if c.pairing[j - 1] == j:
            out.append(j)
    if c.ht >= 1 and c.n_t >= 1 and c.pairing[c.n_t - 1] == c.n_t:
        out.append(c.n_t)
    return tuple(out)


def row_state(j_set: Iterable[int], n: int) -> Conn:
    """The height-1 roof state with arc set exactly J (the psi-inverse row)."""
    J = tuple(sorted(set(j_set)))
    if not J:
        raise BadArity("row state needs a nonempty arc set")
    if any(not 0 <= j <= n for j in J):
        raise BadArity(f"arc index out of range for n={n}")
    if any(b - a <= 1 for a, b in zip(J, J[1:])):
        raise BadArity("arc indices must differ by more than 1")
    n_b = n + 2 - 2 * len(J)
    out = _Builder(n, n_b, 1)
    pairs: list[tuple[int, int]] = []
    used_tops: set[int] = set()
    if n == 0:
        # J == {0}; the sole arc joins the two side points.
        return make_connection(0, 0, 1, [(out.left(1), out.right(1))])
    for j in J:
        if j == 0:
            pairs.append((out.left(1), out.top(1)))
            used_tops.add(1)
        elif j == n:
            pairs.append((out.top(n), out.right(1)))
            used_tops.add(n)
        else:
            pairs.append((out.top(j), out.top(j + 1)))
            used_tops.update((j, j + 1))
    bottoms = list(range(1, n_b + 1))
    if 0 not in J:
        pairs.append((out.left(1), out.bottom(bottoms.pop(0))))
    if n not in J:
        pairs.append((out.right(1), out.bottom(bottoms.pop())))
    through = [i for i in range(1, n + 1) if i not in used_tops]
    for i, b in zip(through, bottoms):
        pairs.append((out.top(i), out.bottom(b)))
    return make_connection(n, n_b, 1, pairs)


def single_return_bottom(i: int, n: int) -> Conn:
    """Bottom state with one return at (i, i+1) and straight strands elsewhere."""
    if not 1 <= i <= n - 1:
        raise BadArity(f"return position {i} out of range for n={n}")
    out = _Builder(n - 2, n, 0)
    pairs = [(out.bottom(i), out.bottom(i + 1))]
    through = [b for b in range(1, n + 1) if b not in (i, i + 1)]
    for t, b in enumerate(through, start=1):
        pairs.append((out.top(t), out.bottom(b)))
    return make_connection(n - 2, n, 0, pairs)


def bottom_state(i_set: Iterable[int], n: int) -> Conn:
    """The bottom state whose bottom-return left ends are exactly the given set.

    Built by stacking single-return states, narrowest first; raises BadArity
    when the set does not fit in n bottom points.
    """
    return _bottom_state_cached(tuple(sorted(set(i_set))), n)


@lru_cache(maxsize=None)
def _bottom_state_cached(I: tuple[int, ...], n: int) -> Conn:
    if not I:
        return identity(n)
    t = len(I)
    acc: ExtConn = None
    for k, i in enumerate(I, start=1):
        width = n - 2 * t + 2 * k
        layer = single_return_bottom(i, width)  # raises BadArity when invalid
        if acc is None:
            acc = layer
        else:
            acc, loops = vprod(acc, layer)
            assert acc is not K0 and loops == 0
    return acc


@lru_cache(maxsize=None)
def _n_min_cached(I: tuple[int, ...]) -> int:
    if not I:
        return 0
    base = max(I) + len(I)
    b = bottom_state(I, base)
    return max(right for _, right in b.bottom_returns())


def n_min(i_set: Iterable[int]) -> int:
    """Least n such that the set indexes the bottom returns of a bottom state."""
    I = tuple(sorted(set(i_set)))
    if any(i < 1 for i in I):
        raise BadArity("return indices are positive integers")
    return _n_min_cached(I)


def in_Ln(i_set: Iterable[int], n: int) -> bool:
    return n >= n_min(i_set)


def bottom_quotient(c: ExtConn, i_set: Iterable[int]) -> ExtConn:
    """The connection c' with c == c' *_v bottom_state(I); K0 when none exists."""
    if c is K0:
        return K0
    I = tuple(sorted(set(i_set)))
    if not I:
        return c
    n = c.n_b
    if any(i < 1 for i in I) or not in_Ln(I, n):
        return K0
    caps = bottom_state(I, n).bottom_returns()
    for a, b in caps:
        if not c.matched(c.bottom_index(a), c.bottom_index(b)):
            return K0
    removed = {c.bottom_index(a) for a, b in caps} | {c.bottom_index(b) for a, b in caps}
    survivors = [i for i in range(1, n + 1) if c.bottom_index(i) not in removed]
    out = _Builder(c.n_t, n - 2 * len(I), c.ht)
    remap = {}
    for i in range(1, c.n_t + 1):
        remap[c.top_index(i)] = out.top(i)
    for j in range(1, c.ht + 1):
        remap[c.left_index(j)] = out.left(j)
        remap[c.right_index(j)] = out.right(j)
    for new_i, old_i in enumerate(survivors, start=1):
        remap[c.bottom_index(old_i)] = out.bottom(new_i)
    pairing = [-1] * out.size
    for p, q in c.pairs():
        if p in removed:
            continue
        pairing[remap[p]] = remap[q]
        pairing[remap[q]] = remap[p]
    return Conn(c.n_t, n - 2 * len(I), c.ht, pairing)


def top_row_quotient(c: ExtConn, j_set: Iterable[int]) -> ExtConn:
    """The connection c' with c == row_state(J) *_v c'; K0 when none exists."""
    if c is K0:
        return K0
    if c.ht < 1:
        raise BadArity("top-row quotient needs ht >= 1")
    J = tuple(sorted(set(j_set)))
    if not J:
        raise BadArity("top-row quotient needs a nonempty arc set")
    if any(not 0 <= j <= c.n_t for j in J) or any(b - a <= 1 for a, b in zip(J, J[1:])):
        return K0
    present = set(arcs_J(c))
    if not set(J) <= present:
        return K0
    n = c.size()
    consumed: set[int] = set()
    for j in J:
        if j == 0:
            consumed.update((n - 1, 0))
        else:
            consumed.update((j - 1, j))
    # New cyclic order: start at y_1 (old index n-1) so surviving side points
    # migrate to the ends of the new top row; drop consumed points.
    order = [n - 1] + list(range(n - 1))
    survivors = [idx for idx in order if idx not in consumed]
    new_nt = c.n_t + 2 - 2 * len(J)
    remap = {old: new for new, old in enumerate(survivors)}
    pairing = [-1] * len(survivors)
    for p, q in c.pairs():
        if p in consumed:
            continue
        pairing[remap[p]] = remap[q]
        pairing[remap[q]] = remap[p]
    result = Conn(new_nt, c.n_b, c.ht - 1, pairing)
    return result


# -- text literals ---------------------------------------------------


def conn_text(c: Conn) -> str:
    """Canonical literal, e.g. 'conn nt=2 nb=0 ht=1 T1-T2, L1-R1'."""
    header = f"conn nt={c.n_t} nb={c.n_b} ht={c.ht}"
    names = {}
    for idx in range(c.size()):
        side, k = c.side_of(idx)
        names[idx] = f"{side}{k}"
    body = ", ".join(f"{names[p]}-{names[q]}" for p, q in c.pairs())
    return f"{header} {body}" if body else header


def parse_conn(text: str) -> Conn:
    """Parse a connection literal; raises LiteralError with a position."""
    s = text.strip()
    if not s.startswith("conn"):
        raise LiteralError("expected literal to start with 'conn'", 0)
    rest = s[4:].strip()
    fields = {}
    pos = len(s) - len(rest)
    for key in ("nt", "nb", "ht"):
        if not rest.startswith(f"{key}="):
            raise LiteralError(f"expected '{key}='", pos)
        rest = rest[len(key) + 1 :]
        pos += len(key) + 1
        num = ""
        while rest and rest[0].isdigit():
            num += rest[0]
            rest = rest[1:]
            pos += 1
        if not num:
            raise LiteralError(f"expected a number for {key}", pos)
        fields[key] = int(num)
        skip = len(rest) - len(rest.lstrip())
        rest = rest.lstrip()
        pos += skip
    n_t, n_b, ht = fields["nt"], fields["nb"], fields["ht"]
    probe = Conn.__new__(Conn)
    probe.n_t, probe.n_b, probe.ht = n_t, n_b, ht

    def point_index(name: str, at: int) -> int:
        if not name or name[0] not in "TBLR" or not name[1:].isdigit():
            raise LiteralError(f"bad point name {name!r}", at)
        side, k = name[0], int(name[1:])
        try:
            if side == "T":
                return probe.top_index(k)
            if side == "B":
                return probe.bottom_index(k)
            if side == "L":
                return probe.left_index(k)
            return probe.right_index(k)
        except BadArity as exc:
            raise LiteralError(str(exc), at) from None

    pairs = []
    if rest:
        for chunk in rest.split(","):
            at = pos + s[pos:].find(chunk.strip())
            part = chunk.strip()
            if "-" not in part:
                raise LiteralError(f"expected 'P-Q' pair, got {part!r}", at)
            a, b = part.split("-", 1)
            pairs.append((point_index(a.strip(), at), point_index(b.strip(), at)))
    try:
        return make_connection(n_t, n_b, ht, pairs)
    except (BadArity, Crossing) as exc:
        raise LiteralError(str(exc), 0) from None


# -- enumeration ---------------------------------------------------


def _matchings(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not points:
        yield ()
        return
    p = points[0]
    for k in range(1, len(points), 2):
        q = points[k]
        for left in _matchings(points[1:k]):
            for right in _matchings(points[k + 1 :]):
                yield ((p, q),) + left + right


def enumerate_connections(n_t: int, n_b: int, ht: int) -> list[Conn]:
    """All crossingless connections of the given arity, in a fixed order."""
    n = n_t + n_b + 2 * ht
    if n % 2:
        return []
    out = []
    for pairs in _matchings(tuple(range(n))):
        pairing = [-1] * n
        for p, q in pairs:
            pairing[p], pairing[q] = q, p
        out.append(Conn(n_t, n_b, ht, pairing))
    return out


def enumerate_floor_states(n_b: int, ht: int) -> list[Conn]:
    """All floor states (no top returns) with the given bottom arity and height."""
    out = []
    for n_t in range(n_b + 2 * ht, -1, -2):
        for c in enumerate_connections(n_t, n_b, ht):
            if not c.has_top_return():
                out.append(c)
    return out


def enumerate_roof_states(n_t: int, ht: int) -> list[Conn]:
    """All roof states (no bottom returns) with the given top arity and height."""
    out = []
    for n_b in range(n_t + 2 * ht, -1, -2):
        for c in enumerate_connections(n_t, n_b, ht):
            if not c.has_bottom_return():
                out.append(c)
    return out
