"""Middle-state expansions: transforms, the corner family, the procedure."""

import random

import pytest

from catbracket.exact_arith import LaurentPoly, RationalFn, poly_text, qint, rf_text
from catbracket.finsets import EMPTY, FinSet, enumerate_Ln, oplus
from catbracket.gallery import (
    non_unimodal_coeff,
    non_unimodal_state,
    two_cap_coeff,
    two_cap_state,
)
from catbracket.kauffman import bracket_coeff, coeff_first_row, coeff_table, enumerate_catalan
from catbracket.planar import (
    BoundaryLine,
    Conn,
    K0,
    bottom_quotient,
    bottom_state,
    classify,
    conn_text,
    enumerate_floor_states,
    enumerate_roof_states,
    flip_upside_down,
    identity,
    make_connection,
    parse_conn,
    row_state,
    split,
    symmetry,
    vprod,
)
from catbracket.theta import (
    BadParams,
    ModePrecondition,
    NotRoof,
    NotTopState,
    ThetaExpansion,
    WPair,
    coeff_any,
    eval_expansion,
    expansion_transform,
    first_row_expansion,
    q_measure,
    rnk_expansion,
    special_state,
    theta_eval,
    theta_expand,
    tnju_expansion,
    triangle_leq,
    z_coeff,
)

A = LaurentPoly.monomial


def F(*xs):
    return FinSet(xs)


def oracle_value(roof, iset, floor):
    """Theta evaluated through the kauffman module only."""
    lowered = bottom_quotient(floor, iset.elements)
    if lowered is K0:
        return LaurentPoly.zero()
    state, loops = vprod(roof, lowered)
    assert loops == 0
    if state is K0 or state.n_t != state.n_b:
        return LaurentPoly.zero()
    m, n = state.ht, state.n_t
    if m * n <= 12:
        return bracket_coeff(state, m, n)
    return coeff_first_row(state, m, n)


def expansion_matches_oracle(expansion, floors):
    for floor in floors:
        direct = oracle_value(expansion.source.R, expansion.source.I, floor)
        total = eval_expansion(expansion, floor)
        if total != RationalFn.from_poly(direct):
            return False
    return True


class TestSpecialStates:
    def test_rp_reduction_identities(self):
        assert special_state("Rp_nkl", 4, 2, 1) == special_state("Rp_nkl", 2, 1, 0)
        assert special_state("Rp_nkl", 4, 2, 2) == special_state("Rp_nkl", 2, 1, 1)
        assert special_state("Rp_nkl", 2, 1, 1) == special_state("R_nk", 0, 0)

    def test_rp_absorbs_into_middle(self):
        m_rot = symmetry(special_state("M_nk", 2, 1), "rotate")
        prod, loops = vprod(special_state("Rp_nkl", 4, 1, 1), m_rot)
        assert loops == 0 and prod == m_rot

    def test_arities(self):
        for n in range(0, 6):
            for k in range(0, n + 1):
                r = special_state("R_nk", n, k)
                assert (r.n_t, r.ht, r.n_b) == (n, n, abs(n - 2 * k))
                assert classify(r).is_middle
                kp = min(k, n - k)
                for l in range(0, kp + 1):
                    rp = special_state("Rp_nkl", n, k, l)
                    assert (rp.n_t, rp.ht, rp.n_b) == (n - 2 * l, 0, abs(n - 2 * k))
                    rpp = special_state("Rpp_nkl", n, k, l)
                    assert classify(rpp).is_middle

    def test_mnk(self):
        for n in range(0, 7):
            for k in range(0, n // 2 + 1):
                m = special_state("M_nk", n, k)
                assert (m.n_t, m.n_b, m.ht) == (n - 2 * k, n, k)
                assert classify(m).is_middle

    def test_tnju(self):
        for n in range(2, 7):
            for j in range(1, n):
                for u in range(1, min(j, n - j) + 1):
                    t = special_state("T_nju", n, j, u)
                    assert (t.n_t, t.n_b, t.ht) == (n, n - 2 * u, 0)
                    from catbracket.planar import arcs_J

                    assert arcs_J(t) == (j,)

    def test_bad_params(self):
        with pytest.raises(BadParams):
            special_state("Rp_nkl", 3, 1, 2)
        with pytest.raises(BadParams):
            special_state("T_nju", 4, 2, 3)
        with pytest.raises(BadParams):
            special_state("what", 1)


class TestZCoefficients:
    PINNED = [
        (3, 1, (), [(-7, 1), (-3, 1), (1, 1)]),
        (3, 1, (1,), [(-5, 1), (-1, 1)]),
        (3, 1, (2,), [(-3, 1)]),
        (3, 2, (), [(-1, 1), (3, 1), (7, 1)]),
        (3, 2, (1,), [(3, 1)]),
        (3, 2, (2,), [(1, 1), (5, 1)]),
        (5, 1, (), [(-23, 1), (-19, 1), (-15, 1), (-11, 1), (-7, 1)]),
        (5, 1, (4,), [(-15, 1)]),
    ]

    @pytest.mark.parametrize("n,k,iset,expect", PINNED)
    def test_pinned_values(self, n, k, iset, expect):
        assert z_coeff(n, k, F(*iset)) == LaurentPoly(expect)

    def test_nonzero_everywhere(self):
        for n in range(0, 6):
            for k in range(0, n + 1):
                for I in enumerate_Ln(n):
                    if len(I) <= min(k, n - k):
                        assert not z_coeff(n, k, I).is_zero()

    def test_bad_params(self):
        with pytest.raises(BadParams):
            z_coeff(3, 1, F(1, 2))  # too many returns for min(k, n-k)


class TestThetaEval:
    def test_null_inputs(self):
        r = special_state("Rp_nkl", 3, 1, 0)
        assert theta_eval(r, F(1), bottom_state((), 3)).is_zero()  # quotient dies
        assert theta_eval(r, EMPTY, K0).is_zero()
        assert theta_eval(r, EMPTY, bottom_state((), 4)).is_zero()  # arity mismatch

    def test_lemma_style_evaluation(self):
        # [[Rp *_v M]] is the pinned monomial
        for n in range(1, 6):
            for k in range(0, n + 1):
                kp = min(k, n - k)
                for l in range(0, kp + 1):
                    rp = special_state("Rp_nkl", n, k, l)
                    m = special_state("M_nk", n - 2 * l, kp - l)
                    if m.n_b != rp.n_t:
                        continue
                    value = theta_eval(rp, EMPTY, m)
                    assert value == A(-(n - 2 * k) * (kp - l))

    def test_requires_roof(self):
        floor = parse_conn("conn nt=0 nb=2 ht=1 B1-B2, R1-L1")
        with pytest.raises(NotRoof):
            theta_eval(floor, EMPTY, identity(2))


class TestTriangle:
    def test_reflexive(self):
        for r in enumerate_roof_states(2, 1):
            pair = WPair(r, F(1))
            assert triangle_leq(pair, pair)

    def test_first_row_pairs_dominate(self):
        for r in enumerate_roof_states(3, 1):
            source = WPair(r, EMPTY)
            for term in first_row_expansion(r, EMPTY).terms:
                assert triangle_leq(source, WPair(term.R, term.I))

    def test_transitive_on_samples(self):
        rng = random.Random(9)
        roots = enumerate_roof_states(3, 1)
        for _ in range(30):
            r = rng.choice(roots)
            e1 = first_row_expansion(r, EMPTY)
            if not e1.terms:
                continue
            t1 = rng.choice(e1.terms)
            if t1.R.ht < 1:
                continue
            e2 = first_row_expansion(t1.R, t1.I)
            if not e2.terms:
                continue
            t2 = rng.choice(e2.terms)
            a, b, c = WPair(r, EMPTY), WPair(t1.R, t1.I), WPair(t2.R, t2.I)
            assert triangle_leq(a, b) and triangle_leq(b, c)
            assert triangle_leq(a, c)


class TestFirstRowExpansion:
    def test_single_arc_single_term(self):
        r, loops = vprod(row_state((2,), 5), special_state("Rp_nkl", 5, 2, 0))
        assert loops == 0
        e = first_row_expansion(r, EMPTY)
        assert len(e.terms) == 1
        assert e.terms[0].coeff == RationalFn.from_poly(A(-5 + 4))

    def test_worked_two_arc_relation(self):
        # the cap-over-bar roof solves out of the corner state's expansion
        r21 = special_state("R_nk", 2, 1)
        e = first_row_expansion(r21, EMPTY)
        bar = make_connection(0, 0, 1, [(0, 1)])
        cap_over_bar = parse_conn("conn nt=2 nb=0 ht=1 T1-T2, R1-L1")
        as_map = {(t.R, t.I): t.coeff for t in e.terms}
        assert as_map[(cap_over_bar, EMPTY)] == RationalFn.from_poly(A(-2) + A(2))
        assert as_map[(bar, F(1))] == RationalFn.one()

    def test_functional_soundness(self):
        for r in enumerate_roof_states(2, 1) + enumerate_roof_states(3, 1):
            e = first_row_expansion(r, EMPTY)
            floors = enumerate_floor_states(r.n_t, 0) + enumerate_floor_states(r.n_t, 1)
            assert expansion_matches_oracle(e, floors)

    def test_needs_height(self):
        with pytest.raises(ModePrecondition):
            first_row_expansion(identity(2), EMPTY)


class TestTransforms:
    def test_shift_empty_is_identity(self):
        r = special_state("R_nk", 2, 1)
        e = first_row_expansion(r, EMPTY)
        shifted = expansion_transform(e, "shift", EMPTY)
        assert shifted.terms == e.terms and shifted.source == e.source

    def test_shift_functional(self):
        r = special_state("R_nk", 3, 1)
        e = first_row_expansion(r, EMPTY)
        shifted = expansion_transform(e, "shift", F(1))
        floors = enumerate_floor_states(5, 0) + enumerate_floor_states(5, 1)
        assert expansion_matches_oracle(shifted, floors)

    def test_append_middle_functional(self):
        r = special_state("Rp_nkl", 3, 1, 0)
        middle = special_state("M_nk", 1, 0)
        e = theta_expand(r, EMPTY)
        appended = expansion_transform(e, "append_middle", middle)
        floors = enumerate_floor_states(3, 0) + enumerate_floor_states(3, 1)
        assert expansion_matches_oracle(appended, floors)

    def test_reflect_matches_mirror_corner(self):
        # the reflected corner expansion is the opposite corner with A -> 1/A
        left = rnk_expansion(3, 1)
        mirrored = expansion_transform(left, "reflect", None)
        right = rnk_expansion(3, 2)
        as_map = {(t.R, t.I): t.coeff for t in mirrored.terms}
        assert mirrored.source.R == special_state("R_nk", 3, 2)
        for t in right.terms:
            assert as_map[(t.R, t.I)] == t.coeff

    def test_mode_preconditions(self):
        e = rnk_expansion(2, 1)
        with pytest.raises(ModePrecondition):
            expansion_transform(e, "append_middle", identity(5))
        shifted = expansion_transform(e, "shift", F(1))
        with pytest.raises(ModePrecondition):
            expansion_transform(shifted, "reflect", None)
        with pytest.raises(ModePrecondition):
            expansion_transform(e, "spin", None)


class TestRnkExpansion:
    def test_degenerate_corner(self):
        e = rnk_expansion(0, 0)
        assert len(e.terms) == 1
        assert e.terms[0].coeff == RationalFn.one()

    def test_term_family(self):
        e = rnk_expansion(3, 1)
        assert len(e.terms) == 3
        values = {(t.R, t.I): t.coeff for t in e.terms}
        assert values[(special_state("Rp_nkl", 3, 1, 0), EMPTY)] == RationalFn.from_poly(
            z_coeff(3, 1, EMPTY)
        )

    @pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (2, 1), (3, 1), (3, 2), (4, 2)])
    def test_functional_correctness(self, n, k):
        e = rnk_expansion(n, k)
        floors = [
            floor
            for ht in (0, 1, 2)
            for floor in enumerate_floor_states(n, ht)
            if floor.n_t == abs(n - 2 * k)
        ]
        assert expansion_matches_oracle(e, floors)


class TestThetaExpand:
    def test_middle_state_is_terminal(self):
        slide = parse_conn("conn nt=2 nb=2 ht=2 T1-L1, T2-L2, R1-B1, R2-B2")
        e = theta_expand(slide, F(2))
        assert len(e.terms) == 1
        assert e.terms[0].coeff == RationalFn.one()
        assert e.terms[0].R == slide and e.terms[0].I == F(2)

    def test_overfull_middle_state_expands_to_zero(self):
        # a middle state whose own cross-section exceeds its top arity has an
        # identically zero function, and the line precheck catches it
        m = special_state("M_nk", 4, 1)
        assert theta_expand(m, EMPTY).is_zero()
        for floor in enumerate_floor_states(4, 0):
            assert theta_eval(m, EMPTY, floor).is_zero()

    def test_worked_cap_over_bar(self):
        # two terms, coefficients +-1/(A^-2 + A^2) in canonical form
        r = parse_conn("conn nt=2 nb=0 ht=1 T1-T2, R1-L1")
        e = theta_expand(r, EMPTY)
        bar = make_connection(0, 0, 1, [(0, 1)])
        corner_over_bar, loops = vprod(special_state("R_nk", 2, 1), bar)
        assert loops == 0
        values = {(t.R, t.I): t.coeff for t in e.terms}
        unit = RationalFn(LaurentPoly.one(), A(-2) + A(2))
        assert values[(corner_over_bar, EMPTY)] == unit
        assert values[(bar, F(1))] == RationalFn.zero() - unit

    def test_ten_term_showcase(self):
        r = make_connection(4, 0, 0, [(0, 1), (2, 3)])
        e = theta_expand(r, EMPTY)
        assert len(e.terms) == 10
        m_rot = symmetry(special_state("M_nk", 2, 1), "rotate")
        r41m, _ = vprod(special_state("R_nk", 4, 1), m_rot)
        values = {(t.R, t.I): t.coeff for t in e.terms}
        q4 = qint(4)
        assert values[(r41m, EMPTY)] == RationalFn(A(16), q4)
        assert values[(m_rot, F(1))] == RationalFn(-A(4) * qint(3), q4)
        assert values[(m_rot, F(2))] == RationalFn(-A(6) * qint(2), q4)
        assert values[(m_rot, F(3))] == RationalFn(-A(8), q4)
        assert values[(special_state("R_nk", 4, 2), EMPTY)] == RationalFn(
            -A(14) * qint(2), q4 * qint(3)
        )
        r21 = special_state("R_nk", 2, 1)
        assert values[(r21, F(1))] == RationalFn(A(12), q4)
        assert values[(r21, F(2))] == RationalFn(A(6) * (A(4) - LaurentPoly.one()), q4)
        assert values[(r21, F(3))] == RationalFn(-A(4), q4)
        r00 = special_state("R_nk", 0, 0)
        assert values[(r00, F(1, 2))] == RationalFn(A(6), qint(3) * qint(2))
        assert values[(r00, F(1, 3))] == RationalFn(A(4), qint(3))

    def test_zero_for_line_violations(self):
        # a roof whose bottom is wider than its top evaluates to zero everywhere
        wide = parse_conn("conn nt=1 nb=3 ht=1 T1-B2, L1-B1, R1-B3")
        assert not wide.has_bottom_return()
        e = theta_expand(wide, EMPTY)
        assert e.is_zero()

    def test_invariants_small(self):
        for r in enumerate_roof_states(3, 1):
            e = theta_expand(r, EMPTY)
            source = WPair(r, EMPTY)
            seen = set()
            for t in e.terms:
                assert classify(t.R).is_middle
                assert not t.coeff.is_zero()
                assert triangle_leq(source, WPair(t.R, t.I))
                assert (t.R, t.I) not in seen
                seen.add((t.R, t.I))

    def test_requires_roof(self):
        with pytest.raises(NotRoof):
            theta_expand(parse_conn("conn nt=0 nb=2 ht=1 B1-B2, R1-L1"), EMPTY)


class TestQMeasure:
    def test_identity_is_zero(self):
        assert q_measure(identity(4)) == 0

    def test_corner_top_states_are_zero(self):
        for n in range(1, 7):
            for j in range(1, n):
                assert q_measure(special_state("Rp_nkl", n, j, 0)) == 0

    def test_tnju_measure(self):
        for n in range(2, 7):
            for j in range(1, n):
                for u in range(1, min(j, n - j) + 1):
                    t = special_state("T_nju", n, j, u)
                    assert q_measure(t) == min(j, n - j) - u

    def test_matches_flip_definition(self):
        from catbracket.finsets import phi
        from catbracket.planar import arcs_J

        for r in enumerate_roof_states(4, 0):
            arcs = arcs_J(r)
            if not arcs:
                continue
            n, j = r.n_t, min(arcs)
            u = len([i for i in phi(flip_upside_down(r)) if i <= j])
            v = min([x for x in arcs if x != j] + [n])
            assert q_measure(r) == min(j, n - j) - u + n - v

    def test_strict_decrease_along_recursion(self):
        for r in enumerate_roof_states(4, 0) + enumerate_roof_states(5, 0):
            arcs = arcs_J(r)
            if not arcs:
                continue
            n, j = r.n_t, min(arcs)
            if r == special_state("Rp_nkl", n, j, 0):
                continue
            capped, loops = vprod(row_state((j,), n), r)
            assert loops == 0
            top, _ = split(capped, BoundaryLine("h", 0))
            if not classify(top).is_middle:
                assert q_measure(top) < q_measure(r)

    def test_rejects_tall_states(self):
        with pytest.raises(NotTopState):
            q_measure(special_state("R_nk", 2, 1))


class TestTnju:
    def test_single_chain_coefficient(self):
        # with u = min(j, n-j) and only the empty chain, pi = 1/Z
        e = tnju_expansion(2, 1, 1)
        values = {(t.R, t.I): t.coeff for t in e.terms}
        key = (special_state("R_nk", 2, 1), EMPTY)
        assert values[key] == RationalFn.from_poly(z_coeff(2, 1, EMPTY)).inverse()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_procedure(self, n):
        for j in range(1, n):
            for u in range(1, min(j, n - j) + 1):
                t = special_state("T_nju", n, j, u)
                e1 = tnju_expansion(n, j, u)
                e2 = theta_expand(t, EMPTY)
                floors = [
                    f
                    for ht in (0, 1)
                    for f in enumerate_floor_states(n, ht)
                ]
                for floor in floors:
                    assert eval_expansion(e1, floor) == eval_expansion(e2, floor)

    def test_degenerate_is_the_corner_top_state(self):
        # with the largest cap count the top state is the corner one, and the
        # chain formula agrees with the solved corner expansion functionally
        for n, j in [(2, 1), (3, 1), (3, 2), (4, 2)]:
            u = min(j, n - j)
            corner = special_state("Rp_nkl", n, j, 0)
            assert special_state("T_nju", n, j, u) == corner
            e1 = tnju_expansion(n, j, u)
            e2 = theta_expand(corner, EMPTY)
            for floor in enumerate_floor_states(n, 1):
                assert eval_expansion(e1, floor) == eval_expansion(e2, floor)

    def test_bad_params(self):
        with pytest.raises(BadParams):
            tnju_expansion(4, 2, 3)


class TestCoeffAny:
    def test_two_cap_showcase(self):
        c = two_cap_state()
        assert coeff_any(c, 5, 4) == two_cap_coeff()
        assert coeff_any(c, 5, 4, method="theta") == two_cap_coeff()

    def test_non_unimodal_showcase(self):
        c = non_unimodal_state()
        assert coeff_any(c, 9, 5) == non_unimodal_coeff()

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_oracle_sweep(self, m, n):
        table = coeff_table(m, n)
        for c in enumerate_catalan(m, n):
            assert coeff_any(c, m, n) == table.get(c, LaurentPoly.zero())

    def test_split_choice_irrelevant(self):
        # every horizontal cut of the state yields the same coefficient by
        # expanding the top part and evaluating at the bottom part
        for c in enumerate_catalan(2, 2):
            expect = bracket_coeff(c, 2, 2)
            for i in range(0, 3):
                top, bottom = split(c, BoundaryLine("h", i))
                if top.has_bottom_return():
                    continue
                total = eval_expansion(theta_expand(top, EMPTY), bottom)
                assert total == RationalFn.from_poly(expect)

    def test_method_validation(self):
        with pytest.raises(ValueError):
            coeff_any(identity(2), 0, 2, method="banana")
