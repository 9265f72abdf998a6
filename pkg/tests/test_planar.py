"""Crossingless connections: products, symmetries, lines, quotients."""

import random
from itertools import combinations

import pytest

from catbracket.kauffman import coeff_table, enumerate_catalan
from catbracket.exact_arith import LaurentPoly
from catbracket.planar import (
    BadArity,
    BoundaryLine,
    Conn,
    Crossing,
    K0,
    LiteralError,
    arcs_J,
    bottom_quotient,
    bottom_state,
    classify,
    conn_text,
    empty_connection,
    enumerate_connections,
    enumerate_floor_states,
    enumerate_roof_states,
    hprod,
    hprod_with_loops,
    identity,
    is_noncrossing,
    line_cross_count,
    make_connection,
    parse_conn,
    realizable,
    row_state,
    split,
    symmetry,
    top_row_quotient,
    vprod,
)


def brute_noncrossing(pairing):
    """Quadratic interleaving scan, the independent validation oracle."""
    pairs = [(i, j) for i, j in enumerate(pairing) if i < j]
    for (a, b), (c, d) in combinations(pairs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


class TestConstruction:
    def test_identity_valid(self):
        c = identity(3)
        assert c.n_t == c.n_b == 3 and c.ht == 0
        assert all(c.matched(c.top_index(i), c.bottom_index(i)) for i in (1, 2, 3))

    def test_crossing_rejected(self):
        # x_1-x'_2 and x_2-x'_1 interleave
        c = identity(2)
        with pytest.raises(Crossing):
            make_connection(2, 2, 0, [(c.top_index(1), c.bottom_index(2)),
                                      (c.top_index(2), c.bottom_index(1))])

    def test_odd_total_rejected(self):
        with pytest.raises(BadArity):
            Conn(1, 0, 0, (0,))

    def test_reused_point_rejected(self):
        with pytest.raises(BadArity):
            make_connection(2, 0, 0, [(0, 1), (0, 1)])

    def test_fig9_style_bottom_state(self):
        b = bottom_state((3, 4), 7)
        assert (b.n_t, b.n_b, b.ht) == (3, 7, 0)
        assert b.bottom_returns() == [(3, 6), (4, 5)]

    def test_noncrossing_matches_brute_force(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.choice([2, 4, 6, 8])
            perm = list(range(n))
            rng.shuffle(perm)
            pairing = [0] * n
            for a, b in zip(perm[::2], perm[1::2]):
                pairing[a], pairing[b] = b, a
            assert is_noncrossing(pairing) == brute_noncrossing(pairing)


class TestClassify:
    def test_identity_all_flags(self):
        flags = classify(identity(4))
        assert flags == classify(identity(4))
        assert all(
            [flags.is_catalan, flags.is_roof, flags.is_floor,
             flags.is_middle, flags.is_top, flags.is_bottom]
        )

    def test_single_cap(self):
        cap = make_connection(2, 0, 0, [(0, 1)])
        flags = classify(cap)
        assert flags.is_roof and flags.is_top
        assert not flags.is_floor and not flags.is_middle and not flags.is_catalan

    def test_middle_state(self):
        # tops slide to the left wall, rights slide to the bottom
        c = parse_conn("conn nt=2 nb=2 ht=2 T1-L1, T2-L2, R1-B1, R2-B2")
        assert classify(c).is_middle and not classify(c).is_top


class TestProducts:
    def test_vprod_identity(self):
        for c in enumerate_connections(3, 1, 1):
            assert vprod(identity(3), c) == (c, 0)

    def test_vprod_mismatch_is_null(self):
        assert vprod(identity(2), identity(3)) == (K0, 0)
        assert vprod(K0, identity(3)) == (K0, 0)

    def test_cap_over_cup_loop(self):
        cap = make_connection(0, 2, 0, [(0, 1)])
        cup = make_connection(2, 0, 0, [(0, 1)])
        conn, loops = vprod(cap, cup)
        assert conn == empty_connection() and loops == 1

    def test_vprod_associative_with_loops(self):
        rng = random.Random(3)
        tops = enumerate_connections(2, 2, 1)
        mids = enumerate_connections(2, 2, 1)
        bots = enumerate_connections(2, 2, 1)
        for _ in range(60):
            a, b, c = rng.choice(tops), rng.choice(mids), rng.choice(bots)
            ab, l1 = vprod(a, b)
            left, l2 = vprod(ab, c)
            bc, r1 = vprod(b, c)
            right, r2 = vprod(a, bc)
            assert left == right and l1 + l2 == r1 + r2

    def test_hprod_unit(self):
        for c in enumerate_connections(2, 2, 0):
            assert hprod(c, identity(0)) == c

    def test_hprod_widens_bottom_state(self):
        assert hprod(bottom_state((2,), 4), identity(1)) == bottom_state((2,), 5)

    def test_hprod_mismatch(self):
        one_bar = make_connection(0, 0, 1, [(0, 1)])
        assert hprod(one_bar, identity(1)) is K0

    def test_interchange_law(self):
        rng = random.Random(11)
        pool = enumerate_connections(2, 2, 1)
        for _ in range(40):
            t11, t12, t21, t22 = (rng.choice(pool) for _ in range(4))
            h1, hl1 = hprod_with_loops(t11, t12)
            h2, hl2 = hprod_with_loops(t21, t22)
            lhs, vl = vprod(h1, h2)
            v1, vl1 = vprod(t11, t21)
            v2, vl2 = vprod(t12, t22)
            rhs, hl = hprod_with_loops(v1, v2)
            assert lhs == rhs
            assert hl1 + hl2 + vl == vl1 + vl2 + hl


class TestSymmetry:
    def test_involutions(self):
        for c in enumerate_connections(2, 2, 1):
            assert symmetry(symmetry(c, "reflect"), "reflect") == c
            assert symmetry(symmetry(c, "rotate"), "rotate") == c
        assert symmetry(K0, "reflect") is K0

    def test_reflect_single_return(self):
        for n in range(2, 7):
            for i in range(1, n):
                assert symmetry(bottom_state((i,), n), "reflect") == bottom_state((n - i,), n)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            symmetry(identity(1), "transpose")


class TestLines:
    def test_parallel_strands(self):
        c = identity(4)
        # vertical strands all cross any horizontal line of a taller rectangle
        tall = vprod(row_state((4,), 4), bottom_state((), 4))[0]
        assert line_cross_count(tall, BoundaryLine("h", 0)) == 4

    def test_arc_above_line_avoids_it(self):
        # cap over two bars: no arc is separated by any line
        c = parse_conn("conn nt=2 nb=0 ht=2 T1-T2, R1-L1, R2-L2")
        for i in range(0, 3):
            assert line_cross_count(c, BoundaryLine("h", i)) == 0

    def test_matched_top_and_bottom_returns(self):
        # a top return above the line and a bottom return below it: both avoid it
        c = parse_conn("conn nt=2 nb=2 ht=1 T1-T2, B2-B1, R1-L1")
        assert line_cross_count(c, BoundaryLine("h", 0)) == 0
        assert line_cross_count(c, BoundaryLine("h", 1)) == 0
        # straight strands each cross once
        assert line_cross_count(identity(2), BoundaryLine("h", 0)) == 2

    def test_bad_index(self):
        with pytest.raises(BadArity):
            line_cross_count(identity(2), BoundaryLine("h", 1))


class TestSplit:
    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2), (2, 4), (3, 3)])
    def test_reconstruction_exhaustive(self, m, n):
        for c in enumerate_catalan(m, n):
            for i in range(0, m + 1):
                top, bottom = split(c, BoundaryLine("h", i))
                assert not top.has_bottom_return()
                assert not bottom.has_top_return()
                assert top.n_b == line_cross_count(c, BoundaryLine("h", i))
                assert vprod(top, bottom) == (c, 0)

    def test_vertical_rejected(self):
        with pytest.raises(BadArity):
            split(identity(2), BoundaryLine("v", 1))


class TestArcsJ:
    def test_row_state_round_trip(self):
        assert arcs_J(row_state((0, 4, 6), 7)) == (0, 4, 6)

    def test_single_cap(self):
        assert arcs_J(make_connection(2, 0, 0, [(0, 1)])) == (1,)

    def test_identity_empty(self):
        assert arcs_J(identity(4)) == ()

    def test_nested_cap_not_counted(self):
        c = make_connection(4, 0, 0, [(0, 3), (1, 2)])
        assert arcs_J(c) == (2,)


class TestBottomQuotient:
    def test_empty_set_is_identity(self):
        for c in enumerate_connections(2, 2, 1):
            assert bottom_quotient(c, ()) == c

    def test_nested_returns_peel(self):
        c = bottom_state((3, 4), 7)
        inner = bottom_quotient(c, (4,))
        assert inner is not K0 and inner.bottom_returns() == [(3, 4)]
        both = bottom_quotient(c, (3, 4))
        assert both == identity(3)

    def test_unrealizable_set_is_null(self):
        c = bottom_state((3, 4), 7)
        assert bottom_quotient(c, (3,)) is K0
        assert bottom_quotient(c, (6,)) is K0
        assert bottom_quotient(K0, (1,)) is K0

    def test_factorization_identity(self):
        for c in enumerate_floor_states(4, 1):
            for i_set in [(1,), (2,), (3,), (1, 3), (1, 2)]:
                q = bottom_quotient(c, i_set)
                if q is not K0:
                    assert vprod(q, bottom_state(i_set, 4)) == (c, 0)


class TestTopRowQuotient:
    def test_reconstruction(self):
        for c in enumerate_connections(3, 3, 1):
            for j_set in [(0,), (1,), (2,), (3,), (0, 2), (0, 3), (1, 3)]:
                q = top_row_quotient(c, j_set)
                if q is not K0:
                    assert vprod(row_state(j_set, 3), q) == (c, 0)
                    assert q.ht == c.ht - 1
                    assert q.n_t == c.n_t + 2 - 2 * len(j_set)

    def test_missing_arc_is_null(self):
        c = row_state((1,), 3)
        assert top_row_quotient(c, (2,)) is K0

    def test_row_quotient_of_itself(self):
        r = row_state((0, 4, 6), 7)
        q = top_row_quotient(r, (4, 6))
        assert q is not K0 and q.ht == 0
        assert vprod(row_state((4, 6), 7), q) == (r, 0)

    def test_needs_height(self):
        with pytest.raises(BadArity):
            top_row_quotient(identity(2), (1,))


class TestRealizable:
    def test_identity_true(self):
        assert realizable(identity(3), 0, 3)

    def test_overfull_middle_line(self):
        # two verticals plus a return on each wall: middle cut is 4 > n = 2
        c = parse_conn("conn nt=2 nb=2 ht=2 T1-B1, T2-B2, R1-R2, L2-L1")
        assert line_cross_count(c, BoundaryLine("h", 1)) == 4
        assert not realizable(c, 2, 2)

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2), (3, 3)])
    def test_matches_brute_force(self, m, n):
        reachable = set(coeff_table(m, n))
        for c in enumerate_catalan(m, n):
            assert realizable(c, m, n) == (c in reachable)


class TestLiterals:
    def test_round_trip_everywhere(self):
        for c in enumerate_connections(2, 2, 1) + enumerate_connections(3, 1, 0):
            assert parse_conn(conn_text(c)) == c
            assert conn_text(parse_conn(conn_text(c))) == conn_text(c)

    def test_empty_connection(self):
        assert conn_text(empty_connection()) == "conn nt=0 nb=0 ht=0"
        assert parse_conn("conn nt=0 nb=0 ht=0") == empty_connection()

    def test_user_syntax_bottom_left_to_right(self):
        c = parse_conn("conn nt=2 nb=2 ht=0 T1-B1, T2-B2")
        assert c == identity(2)

    def test_error_positions(self):
        with pytest.raises(LiteralError):
            parse_conn("nope")
        with pytest.raises(LiteralError):
            parse_conn("conn nt=2 nb=2 ht=0 T1-B3, T2-B2")
        with pytest.raises(LiteralError):
            parse_conn("conn nt=x")


class TestEnumeration:
    def test_counts_are_catalan_numbers(self):
        assert len(enumerate_connections(1, 1, 1)) == 2
        assert len(enumerate_connections(2, 2, 2)) == 14

    def test_deterministic_order(self):
        assert enumerate_connections(2, 2, 1) == enumerate_connections(2, 2, 1)

    def test_roof_floor_filters(self):
        assert all(not c.has_bottom_return() for c in enumerate_roof_states(3, 1))
        assert all(not c.has_top_return() for c in enumerate_floor_states(3, 1))
