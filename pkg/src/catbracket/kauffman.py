"""Kauffman states of the lattice crossing and the bracket state sum.

The m x n lattice crossing has n vertical strands passing over m horizontal
strands.  A Kauffman state assigns +1 or -1 to each of the mn crossings; a
positive marker smooths a crossing by joining the north port to the east and
the south port to the west, a negative marker joins north-west and south-east.
(The single-crossing states pin this convention: the +1 smoothing of the 1x1
grid joins T1-R1 and B1-L1.)

Smoothing all crossings yields a diagram whose arc part is a Catalan state and
whose closed components are counted separately.  The state sum over all
2^(mn) marker assignments gives the exact bracket coefficient of each Catalan
state.  The first-row recursion computes the same coefficients by repeatedly
factoring off the top row, which stays feasible far beyond the brute-force
range and serves as the independent cross-check.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .exact_arith import LaurentPoly
from .planar import (
    Conn,
    K0,
    arcs_J,
    bottom_quotient,
    enumerate_connections,
    identity,
    top_row_quotient,
    vprod,
)

DEFAULT_MAX_CELLS = 24
_ENV_MAX_CELLS = "CATBRACKET_MAX_CELLS"

#: -A^2 - A^-2, the weight of one closed component.
LOOP_WEIGHT = LaurentPoly([(2, Fraction(-1)), (-2, Fraction(-1))])


class TooLarge(ValueError):
    """The requested brute-force enumeration exceeds the cell guard."""


def max_cells() -> int:
    value = os.environ.get(_ENV_MAX_CELLS)
    return int(value) if value else DEFAULT_MAX_CELLS


@dataclass(frozen=True)
class KauffmanState:
    """Markers of the m x n grid, rows top to bottom, +1/-1 entries."""

    markers: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.markers or not self.markers[0]:
            raise ValueError("marker grid must be nonempty")
        n = len(self.markers[0])
        if any(len(row) != n for row in self.markers):
            raise ValueError("ragged marker grid")
        if any(v not in (1, -1) for row in self.markers for v in row):
            raise ValueError("markers must be +1 or -1")

    @property
    def m(self) -> int:
        return len(self.markers)

    @property
    def n(self) -> int:
        return len(self.markers[0])

    def positives(self) -> int:
        return sum(1 for row in self.markers for v in row if v == 1)

    def negatives(self) -> int:
        return self.m * self.n - self.positives()

    def text(self) -> str:
        return "/".join("".join("+" if v == 1 else "-" for v in row) for row in self.markers)

    @staticmethod
    def parse(text: str) -> KauffmanState:
        rows = [r for r in text.replace("\n", "/").split("/") if r]
        grid = []
        for row in rows:
            if any(ch not in "+-" for ch in row):
                raise ValueError(f"bad marker row {row!r}")
            grid.append(tuple(1 if ch == "+" else -1 for ch in row))
        return KauffmanState(tuple(grid))


@dataclass(frozen=True)
class SmoothingResult:
    state: Conn
    loops: int


def _wiring(m: int, n: int) -> tuple[list[tuple[int, int]], int, int]:
    """Static strand segments of the m x n grid.

    Node ids: crossing (i, j) ports N/S/W/E occupy 4*((i-1)*n + (j-1)) + 0..3;
    boundary nodes follow: tops, bottoms, lefts, rights.
    Returns (edges, boundary start id, total node count).
    """
    base = 4 * m * n
    total = base + 2 * n + 2 * m

    def port(i: int, j: int, d: int) -> int:
        return 4 * ((i - 1) * n + (j - 1)) + d

    N, S, W, E = 0, 1, 2, 3
    top = lambda j: base + (j - 1)
    bot = lambda j: base + n + (j - 1)
    left = lambda i: base + 2 * n + (i - 1)
    right = lambda i: base + 2 * n + m + (i - 1)

    edges = []
    for j in range(1, n + 1):
        if m == 0:
            edges.append((top(j), bot(j)))
            continue
        edges.append((top(j), port(1, j, N)))
        for i in range(1, m):
            edges.append((port(i, j, S), port(i + 1, j, N)))
        edges.append((port(m, j, S), bot(j)))
    for i in range(1, m + 1):
        if n == 0:
            edges.append((left(i), right(i)))
            continue
        edges.append((left(i), port(i, 1, W)))
        for j in range(1, n):
            edges.append((port(i, j, E), port(i, j + 1, W)))
        edges.append((port(i, n, E), right(i)))
    return edges, base, total


def smooth(s: KauffmanState) -> SmoothingResult:
    """Resolve every crossing by its marker and trace the strands."""
    m, n = s.m, s.n
    edges, base, total = _wiring(m, n)
    parent = list(range(total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for x, y in edges:
        union(x, y)
    N, S, W, E = 0, 1, 2, 3
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            p = 4 * ((i - 1) * n + (j - 1))
            if s.markers[i - 1][j - 1] == 1:
                union(p + N, p + E)
                union(p + S, p + W)
            else:
                union(p + N, p + W)
                union(p + S, p + E)

    conn, loops = _extract(m, n, find, base, total)
    return SmoothingResult(conn, loops)


def _extract(m, n, find, base, total) -> tuple[Conn, int]:
    # Map boundary node ids to cyclic indices of the resulting connection.
    builder = _ConnIndex(n, n, m)
    def cyc(node: int) -> int:
        k = node - base
        if k < n:
            return builder.top(k + 1)
        k -= n
        if k < n:
            return builder.bottom(k + 1)
        k -= n
        if k < m:
            return builder.left(k + 1)
        k -= m
        return builder.right(k + 1)

    groups: dict[int, list[int]] = {}
    for node in range(base, total):
        groups.setdefault(find(node), []).append(node)
    pairing = [-1] * (2 * (m + n))
    for members in groups.values():
        assert len(members) == 2, "boundary component is not an arc"
        a, b = cyc(members[0]), cyc(members[1])
        pairing[a], pairing[b] = b, a
    roots = {find(x) for x in range(total)}
    loops = len(roots) - (m + n)
    return Conn(n, n, m, pairing), loops


class _ConnIndex:
    def __init__(self, n_t: int, n_b: int, ht: int):
        self.n_t, self.n_b, self.ht = n_t, n_b, ht

    def top(self, i: int) -> int:
        return i - 1

    def right(self, j: int) -> int:
        return self.n_t + j - 1

    def bottom(self, i: int) -> int:
        return self.n_t + self.ht + self.n_b - i

    def left(self, j: int) -> int:
        return self.n_t + self.ht + self.n_b + self.ht - j


_TABLE_CACHE: dict[tuple[int, int], dict[Conn, LaurentPoly]] = {}


def coeff_table(m: int, n: int, guard: int | None = None) -> dict[Conn, LaurentPoly]:
    """Bracket coefficients of every realizable Catalan state of L(m, n).

    One pass over all 2^(mn) Kauffman states; cached per grid size.
    """
    key = (m, n)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    limit = guard if guard is not None else max_cells()
    if m * n > limit:
        raise TooLarge(f"2^{m * n} Kauffman states exceed the guard of 2^{limit}")
    acc: dict[Conn, LaurentPoly] = {}
    if m == 0 or n == 0:
        result = smooth_empty(m, n)
        acc[result] = LaurentPoly.one()
        _TABLE_CACHE[key] = acc
        return acc
    loop_powers = [LaurentPoly.one()]
    for markers in product((1, -1), repeat=m * n):
        grid = tuple(markers[r * n : (r + 1) * n] for r in range(m))
        state = KauffmanState(grid)
        res = smooth(state)
        while len(loop_powers) <= res.loops:
            loop_powers.append(loop_powers[-1] * LOOP_WEIGHT)
        weight = LaurentPoly.monomial(state.positives() - state.negatives()) * loop_powers[res.loops]
        prev = acc.get(res.state)
        acc[res.state] = weight if prev is None else prev + weight
    acc = {c: p for c, p in acc.items() if not p.is_zero()}
    _TABLE_CACHE[key] = acc
    return acc


def smooth_empty(m: int, n: int) -> Conn:
    """The unique smoothing when the grid has no crossings."""
    if m == 0:
        return identity(n)
    builder = _ConnIndex(0, 0, m)
    pairing = [-1] * (2 * m)
    for i in range(1, m + 1):
        a, b = builder.left(i), builder.right(i)
        pairing[a], pairing[b] = b, a
    return Conn(0, 0, m, pairing)


#: Grids up to this many cells go through the direct 2^(mn) enumeration; the
#: row-by-row accumulation below computes the identical sum for larger grids.
DIRECT_ENUMERATION_CELLS = 16

_DP_CACHE: dict[tuple[int, int], dict[Conn, LaurentPoly]] = {}


def _row_smoothings(n: int) -> list[tuple[Conn, int]]:
    """Each single-row marker word with its exponent p(s) - n(s)."""
    out = []
    for markers in product((1, -1), repeat=n):
        res = smooth(KauffmanState((markers,)))
        assert res.loops == 0
        out.append((res.state, sum(markers)))
    return out


def coeff_table_by_rows(m: int, n: int, guard: int | None = None) -> dict[Conn, LaurentPoly]:
    """The same state sum as coeff_table, grouped by equal row prefixes.

    Every Kauffman state factors into m single-row smoothings; stacking them
    one row at a time and merging equal partial diagrams keeps the work
    polynomial in the number of reachable states instead of 2^(mn).
    """
    key = (m, n)
    if key in _DP_CACHE:
        return _DP_CACHE[key]
    limit = guard if guard is not None else max_cells()
    if m * n > limit:
        raise TooLarge(f"2^{m * n} Kauffman states exceed the guard of 2^{limit}")
    if m == 0 or n == 0:
        return {smooth_empty(m, n): LaurentPoly.one()}
    rows = _row_smoothings(n)
    loop_powers = [LaurentPoly.one()]
    level: dict[Conn, LaurentPoly] = {identity(n): LaurentPoly.one()}
    for _ in range(m):
        nxt: dict[Conn, LaurentPoly] = {}
        for partial, poly in level.items():
            for row_state_, exponent in rows:
                stacked, loops = vprod(partial, row_state_)
                while len(loop_powers) <= loops:
                    loop_powers.append(loop_powers[-1] * LOOP_WEIGHT)
                weight = poly * LaurentPoly.monomial(exponent) * loop_powers[loops]
                prev = nxt.get(stacked)
                nxt[stacked] = weight if prev is None else prev + weight
        level = nxt
    level = {c: p for c, p in level.items() if not p.is_zero()}
    _DP_CACHE[key] = level
    return level


def bracket_coeff(c: Conn, m: int, n: int, guard: int | None = None) -> LaurentPoly:
    """Exact state sum over all Kauffman states smoothing to c."""
    if c.n_t != n or c.n_b != n or c.ht != m:
        raise ValueError("state does not live in Cat(m, n)")
    if m * n <= DIRECT_ENUMERATION_CELLS:
        table = coeff_table(m, n, guard)
    else:
        table = coeff_table_by_rows(m, n, guard)
    result = table.get(c, LaurentPoly.zero())
    assert result.is_integral(), "bracket coefficients must be integers"
    return result


def _interleavings(J: tuple[int, ...], n: int):
    """All I with (J, I) interleaving 0 <= j_1 < i_1 < j_2 < ... <= n."""
    gaps = [range(a + 1, b) for a, b in zip(J, J[1:])]
    return product(*gaps)


_FIRST_ROW_MEMO: dict[Conn, LaurentPoly] = {}


def coeff_first_row(c: Conn, m: int, n: int) -> LaurentPoly:
    """Bracket coefficient by the memoized top-row factorization."""
    if c.n_t != n or c.n_b != n or c.ht != m:
        raise ValueError("state does not live in Cat(m, n)")
    return _first_row(c)


def _first_row(c: Conn) -> LaurentPoly:
    if c.ht == 0:
        return LaurentPoly.one() if c == identity(c.n_t) else LaurentPoly.zero()
    cached = _FIRST_ROW_MEMO.get(c)
    if cached is not None:
        return cached
    n = c.n_t
    total = LaurentPoly.zero()
    present = arcs_J(c)
    for r in range(1, len(present) + 1):
        for J in combinations(present, r):
            upper = top_row_quotient(c, J)
            if upper is K0:
                continue
            for I in _interleavings(J, n):
                rest = bottom_quotient(upper, I)
                if rest is K0:
                    continue
                exp = -n + 2 * (sum(J) - sum(I))
                total = total + LaurentPoly.monomial(exp) * _first_row(rest)
    _FIRST_ROW_MEMO[c] = total
    return total


def enumerate_catalan(m: int, n: int) -> list[Conn]:
    """All Catalan states of the m x n rectangle, in a fixed order."""
    return enumerate_connections(n, n, m)


def realizable_states(m: int, n: int, guard: int | None = None) -> set[Conn]:
    """States C_s that occur as smoothings; the brute-force realizability set."""
    return set(coeff_table(m, n, guard))


def states_per_catalan(m: int, n: int) -> dict[Conn, int]:
    """Number of Kauffman states smoothing to each Catalan state."""
    counts: dict[Conn, int] = {}
    if m == 0 or n == 0:
        return {smooth_empty(m, n): 1}
    for markers in product((1, -1), repeat=m * n):
        grid = tuple(markers[r * n : (r + 1) * n] for r in range(m))
        res = smooth(KauffmanState(grid))
        counts[res.state] = counts.get(res.state, 0) + 1
    return counts
