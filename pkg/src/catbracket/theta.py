"""Expansions of bracket coefficients over middle states.

For a roof state R and index set I, the function F |-> [[R *_v F_I]] can be
written as a rational-function combination of the same functions attached to
middle states only.  This module implements that expansion machinery: the
first-row expansion, the transforms that push an expansion through oplus,
through stacking with a middle state and through reflection, the closed-form
expansion of the corner middle states R_nk with its Z coefficients, the
recursive expansion procedure for arbitrary roof states, the chain formula
for the one-cap-group top states T_nju, and the end-to-end coefficient
pipeline for arbitrary Catalan states.

The special states R_nk, R'_nkl, R''_nkl, M_nk and T_nju are transcribed
constructively: R'_nk0 has min(k, n-k) nested caps centered between positions
k and k+1 with all through strands on one side, R_nk is the stack of k
all-positive rows and n-k staircase rows over R'_nk0 (mirrored for large k),
M_nk hooks its side points to the outermost bottom points, and T_nju keeps u
nested caps with through strands on both sides.  Every builder is pinned by
exact coefficient tests, so a transcription error cannot pass silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact_arith import LaurentPoly, RationalFn
from .finsets import EMPTY, FinSet, enumerate_H, enumerate_Ln, in_Ln, n_min, ominus, oplus, preceq
from .planar import (
    BoundaryLine,
    Conn,
    K0,
    arcs_J,
    bottom_state,
    classify,
    empty_connection,
    identity,
    line_cross_count,
    make_connection,
    row_state,
    split,
    symmetry,
    top_row_quotient,
    vprod,
    _Builder,
    bottom_quotient,
)
from .plucking import coeff_no_bottom_returns, coeff_no_top_returns


class BadParams(ValueError):
    """Special-state parameters out of range."""


class NotRoof(ValueError):
    """The expansion machinery needs a roof state."""


class NotTopState(ValueError):
    """The termination measure is defined for top states only."""


class ModePrecondition(ValueError):
    """An expansion transform was applied outside its precondition."""


@dataclass(frozen=True)
class WPair:
    """A roof state together with a bottom-return index set."""

    R: Conn
    I: FinSet

    def __post_init__(self):
        if self.R.has_bottom_return():
            raise NotRoof("the first component must be a roof state")


@dataclass(frozen=True)
class ThetaTerm:
    coeff: RationalFn
    R: Conn
    I: FinSet


@dataclass(frozen=True)
class ThetaExpansion:
    """A finite combination sum(coeff * Theta(R', I')) attached to a source pair."""

    source: WPair
    terms: tuple[ThetaTerm, ...]

    def is_zero(self) -> bool:
        return not self.terms


def _collect(source: WPair, acc: dict[tuple[Conn, FinSet], RationalFn]) -> ThetaExpansion:
    terms = [
        ThetaTerm(coeff, state, iset)
        for (state, iset), coeff in acc.items()
        if not coeff.is_zero()
    ]
    terms.sort(key=lambda t: (t.R.sort_key(), t.I.elements))
    return ThetaExpansion(source, tuple(terms))


def _scaled(acc: dict, factor: RationalFn) -> dict:
    return {key: coeff * factor for key, coeff in acc.items()}


# -- special states ---------------------------------------------------


@lru_cache(maxsize=None)
def _top_state_nested(n: int, k: int) -> Conn:
    """R'_nk0: min(k, n-k) nested caps around position k, strands one side."""
    if not 0 <= k <= n:
        raise BadParams(f"need 0 <= k <= n, got k={k}, n={n}")
    u = min(k, n - k)
    n_b = n - 2 * u
    out = _Builder(n, n_b, 0)
    pairs = []
    used = set()
    for s in range(u):
        a, b = k - s, k + 1 + s
        pairs.append((out.top(a), out.top(b)))
        used.update((a, b))
    through = [i for i in range(1, n + 1) if i not in used]
    for t, b in zip(through, range(1, n_b + 1)):
        pairs.append((out.top(t), out.bottom(b)))
    return make_connection(n, n_b, 0, pairs)


@lru_cache(maxsize=None)
def _middle_rnk(n: int, k: int) -> Conn:
    """R_nk: the height-n middle state with arc set {e_0, e_n}."""
    if not 0 <= k <= n:
        raise BadParams(f"need 0 <= k <= n, got k={k}, n={n}")
    if n == 0:
        return empty_connection()
    if 2 * k > n:
        return symmetry(_middle_rnk(n, n - k), "reflect")
    acc: Conn = _top_state_nested(n, k)
    for _ in range(n - k):
        acc, loops = vprod(row_state((k,), n), acc)
        assert loops == 0
    for _ in range(k):
        acc, loops = vprod(row_state((n,), n), acc)
        assert loops == 0
    flags = classify(acc)
    assert flags.is_middle and acc.ht == n and acc.n_b == abs(n - 2 * k)
    # Both corner arcs are present except in the degenerate columns k = 0, n.
    expected = (0,) if k == 0 else (n,) if k == n else (0, n)
    assert arcs_J(acc) == expected
    return acc


@lru_cache(maxsize=None)
def _middle_mnk(n: int, k: int) -> Conn:
    """M_nk: sides hook to the outer bottom points, tops drop straight down."""
    if k < 0 or n < 2 * k:
        raise BadParams(f"need 0 <= 2k <= n, got k={k}, n={n}")
    out = _Builder(n - 2 * k, n, k)
    pairs = []
    for i in range(1, k + 1):
        pairs.append((out.left(k + 1 - i), out.bottom(i)))
        pairs.append((out.right(i), out.bottom(n - k + i)))
    for i in range(1, n - 2 * k + 1):
        pairs.append((out.top(i), out.bottom(k + i)))
    c = make_connection(n - 2 * k, n, k, pairs)
    assert classify(c).is_middle
    return c


@lru_cache(maxsize=None)
def _top_state_tnju(n: int, j: int, u: int) -> Conn:
    """T_nju: u nested caps around position j, through strands on both sides."""
    if not (1 <= j <= n - 1 and 1 <= u <= min(j, n - j)):
        raise BadParams(f"need 1 <= j <= n-1 and 1 <= u <= min(j, n-j)")
    n_b = n - 2 * u
    out = _Builder(n, n_b, 0)
    pairs = []
    used = set()
    for s in range(u):
        a, b = j - s, j + 1 + s
        pairs.append((out.top(a), out.top(b)))
        used.update((a, b))
    through = [i for i in range(1, n + 1) if i not in used]
    for t, b in zip(through, range(1, n_b + 1)):
        pairs.append((out.top(t), out.bottom(b)))
    return make_connection(n, n_b, 0, pairs)


def special_state(kind: str, *params: int) -> Conn:
    """Constructors for the named state families.

    R_nk(n, k)      height-n middle state, n_b = |n - 2k|
    Rp_nkl(n, k, l) top state, equal to Rp of the reduced parameters (n-2l, k-l, 0)
    Rpp_nkl(n, k, l) middle state R_nk stacked on M_(n-2l),(min(k,n-k)-l)
    M_nk(n, k)      middle state with n_t = n - 2k, n_b = n, ht = k
    T_nju(n, j, u)  top state with u nested caps at position j
    """
    if kind == "R_nk":
        n, k = params
        return _middle_rnk(n, k)
    if kind == "Rp_nkl":
        n, k, l = params
        if not 0 <= l <= min(k, n - k):
            raise BadParams(f"need 0 <= l <= min(k, n-k), got l={l}")
        return _top_state_nested(n - 2 * l, k - l)
    if kind == "Rpp_nkl":
        n, k, l = params
        if not 0 <= l <= min(k, n - k):
            raise BadParams(f"need 0 <= l <= min(k, n-k), got l={l}")
        state, loops = vprod(_middle_rnk(n, k), _middle_mnk(n - 2 * l, min(k, n - k) - l))
        assert state is not K0 and loops == 0
        return state
    if kind == "M_nk":
        n, k = params
        return _middle_mnk(n, k)
    if kind == "T_nju":
        n, j, u = params
        return _top_state_tnju(n, j, u)
    raise BadParams(f"unknown special state kind {kind!r}")


# -- Z coefficients and the corner expansion ---------------------------------------------------


@lru_cache(maxsize=None)
def z_coeff(n: int, k: int, I: FinSet) -> LaurentPoly:
    """The coefficient attached to (Rp_nkl, I) in the expansion of R_nk."""
    kp = min(k, n - k)
    if not 0 <= k <= n:
        raise BadParams(f"need 0 <= k <= n")
    if len(I) > kp or not in_Ln(I, n):
        raise BadParams(f"{I.text()} is not admissible for (n={n}, k={k})")
    inner, loops = vprod(special_state("Rpp_nkl", n, k, len(I)), bottom_state(I.elements, n))
    assert inner is not K0 and loops == 0
    value = coeff_no_top_returns(inner, inner.ht, inner.n_t)
    result = value.shift((n - 2 * k) * (kp - len(I)))
    assert not result.is_zero(), "Z coefficients are nonzero"
    return result


def rnk_expansion(n: int, k: int) -> ThetaExpansion:
    """Expansion of (R_nk, empty) over the top states Rp with Z coefficients."""
    source = WPair(_middle_rnk(n, k), EMPTY)
    acc: dict[tuple[Conn, FinSet], RationalFn] = {}
    kp = min(k, n - k)
    for I in enumerate_Ln(n):
        if len(I) > kp:
            continue
        state = special_state("Rp_nkl", n, k, len(I))
        acc[(state, I)] = RationalFn.from_poly(z_coeff(n, k, I))
    return _collect(source, acc)


# -- the ordering on W and the transforms ---------------------------------------------------


def triangle_leq(a: WPair, b: WPair) -> bool:
    """(R, I) trianglelefteq (R', I'): I' over I lands in L of the top arity,
    and the padded arities agree top and bottom."""
    if a.R.n_t + 2 * len(a.I) != b.R.n_t + 2 * len(b.I):
        return False
    if a.R.n_b != b.R.n_b:
        return False
    if not preceq(a.I, b.I):
        return False
    return in_Ln(ominus(b.I, a.I), a.R.n_t)


def first_row_expansion(R: Conn, I_tilde: FinSet = EMPTY) -> ThetaExpansion:
    """Peel the top row: one term per interleaved pair supported on arcs of R."""
    if R.has_bottom_return():
        raise NotRoof("first-row expansion needs a roof state")
    if R.ht < 1:
        raise ModePrecondition("first-row expansion needs ht >= 1")
    n = R.n_t
    acc: dict[tuple[Conn, FinSet], RationalFn] = {}
    for pair in enumerate_H(R):
        coeff = RationalFn.from_poly(
            LaurentPoly.monomial(-n + 2 * (pair.J.norm - pair.I.norm))
        )
        state = top_row_quotient(R, pair.J.elements)
        assert state is not K0
        key = (state, oplus(pair.I, I_tilde))
        acc[key] = acc.get(key, RationalFn.zero()) + coeff
    return _collect(WPair(R, I_tilde), acc)


def _reflect_finset(I: FinSet, n: int) -> FinSet:
    """Index set of the mirrored bottom state inside n bottom points."""
    from .finsets import phi, phi_inv

    return phi(symmetry(phi_inv(I, n), "reflect"))


def expansion_transform(expansion: ThetaExpansion, mode: str, arg=None) -> ThetaExpansion:
    """Push an expansion through oplus ("shift"), stacking ("append_middle"),
    or reflection ("reflect"); terms not above the source are dropped first."""
    source = expansion.source
    kept = [t for t in expansion.terms if triangle_leq(source, WPair(t.R, t.I))]
    acc: dict[tuple[Conn, FinSet], RationalFn] = {}
    if mode == "shift":
        if not isinstance(arg, FinSet):
            raise ModePrecondition("shift needs an index set")
        new_source = WPair(source.R, oplus(source.I, arg))
        for t in kept:
            key = (t.R, oplus(t.I, arg))
            acc[key] = acc.get(key, RationalFn.zero()) + t.coeff
    elif mode == "append_middle":
        if not isinstance(arg, Conn) or not classify(arg).is_middle:
            raise ModePrecondition("append_middle needs a middle state")
        if arg.n_t != source.R.n_b:
            raise ModePrecondition("middle state arity must match the source")
        stacked, loops = vprod(source.R, arg)
        assert stacked is not K0 and loops == 0
        new_source = WPair(stacked, source.I)
        for t in kept:
            state, loops = vprod(t.R, arg)
            assert state is not K0 and loops == 0
            key = (state, t.I)
            acc[key] = acc.get(key, RationalFn.zero()) + t.coeff
    elif mode == "reflect":
        if source.I != EMPTY:
            raise ModePrecondition("reflect needs an empty source index set")
        n = source.R.n_t
        new_source = WPair(symmetry(source.R, "reflect"), EMPTY)
        for t in kept:
            key = (symmetry(t.R, "reflect"), _reflect_finset(t.I, n))
            acc[key] = acc.get(key, RationalFn.zero()) + t.coeff.invert_variable()
    else:
        raise ModePrecondition(f"unknown transform mode {mode!r}")
    return _collect(new_source, acc)


# -- the expansion procedure ---------------------------------------------------


def _h_line_conditions(R: Conn) -> bool:
    n = R.n_t
    return all(
        line_cross_count(R, BoundaryLine("h", i)) <= n for i in range(1, R.ht + 1)
    )


_EXPAND_MEMO: dict[tuple[Conn, FinSet], ThetaExpansion] = {}


def theta_expand(R: Conn, I: FinSet = EMPTY) -> ThetaExpansion:
    """A middle-state expansion of (R, I), by the recursive procedure.

    Zero expansions encode pairs killed by the horizontal-line conditions;
    middle states expand to themselves; positive-height roofs split off their
    top-row part; top states are resolved against the corner family (solving
    the corner expansion for its lead term) or, failing that, by prepending a
    one-cap row and subtracting the other first-row terms.
    """
    if R.has_bottom_return():
        raise NotRoof("theta_expand needs a roof state")
    key = (R, I)
    cached = _EXPAND_MEMO.get(key)
    if cached is not None:
        return cached
    source = WPair(R, I)
    n = R.n_t
    if not _h_line_conditions(R):
        result = ThetaExpansion(source, ())
    elif classify(R).is_middle:
        result = _collect(source, {(R, I): RationalFn.one()})
    elif R.ht > 0:
        top, middle = split(R, BoundaryLine("h", 0))
        result = expansion_transform(theta_expand(top, I), "append_middle", middle)
        result = ThetaExpansion(source, result.terms)
    else:
        j = min(arcs_J(R))
        if R == _top_state_nested(n, j):
            acc: dict[tuple[Conn, FinSet], RationalFn] = {
                (_middle_rnk(n, j), I): RationalFn.one()
            }
            for I_prime in enumerate_Ln(n):
                if not 0 < len(I_prime) <= min(j, n - j):
                    continue
                z = RationalFn.from_poly(z_coeff(n, j, I_prime))
                sub = theta_expand(
                    special_state("Rp_nkl", n, j, len(I_prime)), oplus(I_prime, I)
                )
                for t in sub.terms:
                    key2 = (t.R, t.I)
                    acc[key2] = acc.get(key2, RationalFn.zero()) - z * t.coeff
            z0 = RationalFn.from_poly(z_coeff(n, j, EMPTY))
            result = _collect(source, _scaled(acc, z0.inverse()))
        else:
            capped, loops = vprod(row_state((j,), n), R)
            assert capped is not K0 and loops == 0
            acc = {}
            for t in theta_expand(capped, I).terms:
                acc[(t.R, t.I)] = t.coeff
            for pair in enumerate_H(capped):
                if pair.J == FinSet((j,)) and pair.I == EMPTY:
                    continue
                coeff = RationalFn.from_poly(
                    LaurentPoly.monomial(-n + 2 * pair.J.norm - 2 * pair.I.norm)
                )
                sub = theta_expand(top_row_quotient(capped, pair.J.elements), oplus(pair.I, I))
                for t in sub.terms:
                    key2 = (t.R, t.I)
                    acc[key2] = acc.get(key2, RationalFn.zero()) - coeff * t.coeff
            scale = RationalFn.from_poly(LaurentPoly.monomial(n - 2 * j))
            result = _collect(source, _scaled(acc, scale))
    assert all(classify(t.R).is_middle for t in result.terms)
    _EXPAND_MEMO[key] = result
    return result


# -- evaluation ---------------------------------------------------


def theta_eval(R: Conn, I: FinSet, F) -> LaurentPoly:
    """[[R *_v F_I]]: the bracket coefficient of the composite, or 0."""
    if R.has_bottom_return():
        raise NotRoof("theta functions take roof states")
    if F is K0:
        return LaurentPoly.zero()
    lowered = bottom_quotient(F, I.elements)
    if lowered is K0:
        return LaurentPoly.zero()
    state, loops = vprod(R, lowered)
    if state is K0:
        return LaurentPoly.zero()
    assert loops == 0
    if state.n_t != state.n_b:
        return LaurentPoly.zero()
    m, n = state.ht, state.n_t
    if not state.has_top_return():
        return coeff_no_top_returns(state, m, n)
    if not state.has_bottom_return():
        return coeff_no_bottom_returns(state, m, n)
    return coeff_any(state, m, n)


def eval_expansion(expansion: ThetaExpansion, F) -> RationalFn:
    """Evaluate the right-hand side of an expansion at a floor state.

    Terms are grouped by denominator so canonicalization runs once per group.
    """
    groups: dict[LaurentPoly, LaurentPoly] = {}
    for t in expansion.terms:
        value = theta_eval(t.R, t.I, F)
        if value.is_zero():
            continue
        piece = t.coeff.num * value
        prev = groups.get(t.coeff.den)
        groups[t.coeff.den] = piece if prev is None else prev + piece
    total = RationalFn.zero()
    for den, num in groups.items():
        total = total + RationalFn(num, den)
    return total


# -- the termination measure ---------------------------------------------------


def q_measure(R: Conn) -> int:
    """min(j, n-j) - u + n - v for a top state; decreases along the recursion."""
    if R.ht != 0 or R.has_bottom_return():
        raise NotTopState("the measure is defined for top states")
    arcs = arcs_J(R)
    if not arcs:
        return 0
    n = R.n_t
    j = min(arcs)
    u = sum(1 for a, _ in R.top_returns() if a <= j)
    v = min([x for x in arcs if x != j] + [n])
    return min(j, n - j) - u + n - v


# -- the chain formula for T_nju ---------------------------------------------------


def _chains(n: int, u: int) -> list[tuple[FinSet, ...]]:
    """Strictly increasing quotient-order chains from the empty set in L_n,
    with all member sizes at most u."""
    pool = [I for I in enumerate_Ln(n) if len(I) <= u]
    out: list[tuple[FinSet, ...]] = []

    def grow(chain: tuple[FinSet, ...]) -> None:
        out.append(chain)
        last = chain[-1]
        for nxt in pool:
            if len(nxt) > len(last) and preceq(last, nxt):
                grow(chain + (nxt,))

    grow((EMPTY,))
    return out


def tnju_expansion(n: int, j: int, u: int) -> ThetaExpansion:
    """Expansion of (T_nju, empty) as a sum over quotient-order chains."""
    if not (1 <= j <= n - 1 and 1 <= u <= min(j, n - j)):
        raise BadParams("need 1 <= j <= n-1 and 1 <= u <= min(j, n-j)")
    d = min(j, n - j) - u
    middle = _middle_mnk(n - 2 * u, d)
    lead = RationalFn.from_poly(LaurentPoly.monomial((n - 2 * j) * d))
    acc: dict[tuple[Conn, FinSet], RationalFn] = {}
    for chain in _chains(n, u):
        I_c = chain[-1]
        pi = RationalFn.from_poly(z_coeff(n - 2 * len(I_c), j - len(I_c), EMPTY)).inverse()
        for a, b in zip(chain, chain[1:]):
            num = RationalFn.from_poly(
                z_coeff(n - 2 * len(a), j - len(a), ominus(b, a))
            )
            den = RationalFn.from_poly(z_coeff(n - 2 * len(a), j - len(a), EMPTY))
            pi = pi * (RationalFn.zero() - num / den)
        state, loops = vprod(_middle_rnk(n - 2 * len(I_c), j - len(I_c)), middle)
        assert state is not K0 and loops == 0
        key = (state, I_c)
        acc[key] = acc.get(key, RationalFn.zero()) + lead * pi
    return _collect(WPair(_top_state_tnju(n, j, u), EMPTY), acc)


# -- the coefficient pipeline ---------------------------------------------------


def coeff_any(c: Conn, m: int, n: int, method: str = "auto") -> LaurentPoly:
    """Bracket coefficient of an arbitrary Catalan state.

    Splits off the top-state part above the first row line, expands it over
    middle states, and evaluates every term with the rotated plucking formula;
    the rational-function total always collapses to a Laurent polynomial.
    """
    if c.n_t != n or c.n_b != n or c.ht != m:
        raise ValueError("state does not live in Cat(m, n)")
    if method not in ("auto", "theta"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto" and not c.has_top_return():
        return coeff_no_top_returns(c, m, n)
    top, floor = split(c, BoundaryLine("h", 0))
    expansion = theta_expand(top, EMPTY)
    total = eval_expansion(expansion, floor)
    return total.to_laurent()
