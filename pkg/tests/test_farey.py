from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lenscalc import farey
from lenscalc.errors import DegenerateInputError, InvariantError, PreconditionError
from lenscalc.farey import (
    Classification,
    DecoratedPath,
    EdgeSign,
    IntMat2,
    Slope,
    classify,
    cw_between,
    farey_mult,
    farey_neighbors,
    farey_sum,
    is_farey_edge,
    minimal_path,
    shorten,
    totally_inconsistent_path,
)

s = Slope.parse


def slopes_st(bound=60):
    return st.tuples(
        st.integers(-bound, bound), st.integers(-bound, bound)
    ).filter(lambda t: t != (0, 0)).map(lambda t: Slope(*t))


class TestSlope:
    def test_normalization(self):
        assert Slope(2, 4) == Slope(1, 2)
        assert Slope(-2, -4) == Slope(1, 2)
        assert Slope(3, -6) == Slope(-1, 2)

    def test_infinity_representative(self):
        assert Slope(-5, 0) == Slope(1, 0)
        assert Slope(1, 0).is_infinity

    def test_zero_zero_rejected(self):
        with pytest.raises(DegenerateInputError):
            Slope(0, 0)

    def test_parse(self):
        assert s("-8/5") == Slope(-8, 5)
        assert s("3") == Slope(3, 1)
        assert s("inf") == Slope(1, 0)


class TestFareySum:
    def test_zero_plus_infinity(self):
        assert farey_sum(s("0"), s("inf")) == s("1")

    def test_mediant_between_neighbors(self):
        assert farey_sum(s("-5/3"), s("-3/2")) == s("-8/5")

    def test_direct_formula(self):
        assert farey_sum(s("-1/2"), s("-1/3")) == s("-2/5")

    def test_self_sum_is_identity(self):
        assert farey_sum(s("1/2"), s("1/2")) == s("1/2")


class TestFareyMult:
    def test_infinity_zero(self):
        assert farey_mult(s("inf"), s("0")) == 1

    def test_edge_value(self):
        assert farey_mult(s("-8/5"), s("-3/2")) == -1

    def test_non_edge(self):
        assert farey_mult(s("-8/5"), s("-1")) == -3

    @given(slopes_st(), slopes_st())
    def test_antisymmetric(self, u, v):
        assert farey_mult(u, v) == -farey_mult(v, u)

    def test_mediant_adjacent_to_both_exhaustive(self):
        # all Farey edges between slopes in [0, 1] u {inf} with den <= 50
        pts = [Slope(1, 0)]
        for den in range(1, 51):
            for num in range(0, den + 1):
                p = Slope(num, den)
                if p.den == den:
                    pts.append(p)
        for i, u in enumerate(pts):
            for v in pts[i + 1 :]:
                if abs(farey_mult(u, v)) == 1:
                    m = farey_sum(u, v)
                    assert abs(farey_mult(m, u)) == 1
                    assert abs(farey_mult(m, v)) == 1


class TestNeighbors:
    def test_example_deep(self):
        c, a = farey_neighbors(s("-8/5"))
        assert (c, a) == (s("-3/2"), s("-5/3"))

    def test_example_half(self):
        assert farey_neighbors(s("1/2")) == (s("1"), s("0"))

    @given(slopes_st())
    def test_pair_is_adjacent_to_input(self, x):
        c, a = farey_neighbors(x)
        assert abs(farey_mult(c, x)) == 1
        assert abs(farey_mult(a, x)) == 1

    def test_non_integer_pair_is_mutually_adjacent(self):
        for x in [s("-8/5"), s("1/2"), s("-5/3"), s("7/3")]:
            c, a = farey_neighbors(x)
            assert abs(farey_mult(c, a)) == 1

    def test_integer_extremes(self):
        assert farey_neighbors(s("3")) == (s("4"), s("2"))

    @given(slopes_st())
    def test_clockwise_order(self, x):
        c, a = farey_neighbors(x)
        assert cw_between(a, x, c)

    def test_infinity_fallback(self):
        c, a = farey_neighbors(s("inf"))
        assert (c, a) == (s("-1"), s("0"))
        assert cw_between(a, s("inf"), c)


class TestMinimalPath:
    def test_path_to_zero(self):
        assert minimal_path(s("-8/5"), s("0")) == [s("-8/5"), s("-3/2"), s("-1"), s("0")]

    def test_path_between_negatives(self):
        assert minimal_path(s("-3"), s("-8/5")) == [s("-3"), s("-2"), s("-5/3"), s("-8/5")]

    def test_integer_descent(self):
        assert minimal_path(s("-3"), s("0")) == [s("-3"), s("-2"), s("-1"), s("0")]

    def test_equal_endpoints_rejected(self):
        with pytest.raises(PreconditionError):
            minimal_path(s("1/2"), s("1/2"))

    def test_wraps_through_infinity(self):
        path = minimal_path(s("1"), s("-1"))
        assert path[0] == s("1") and path[-1] == s("-1")
        assert Slope(1, 0) in path

    @given(slopes_st(25), slopes_st(25))
    @settings(max_examples=60)
    def test_chord_free_and_clockwise(self, u, v):
        if u == v:
            return
        path = minimal_path(u, v)
        # consecutive vertices adjacent, no chords, valid as a decorated path
        deco = DecoratedPath(tuple(path), tuple(EdgeSign.PLUS for _ in path[1:]))
        assert deco.is_minimal()


def _insert_mediants(path, times):
    # refine an edge with the triangle vertex inside the clockwise arc
    out = list(path)
    for _ in range(times):
        i = (len(out) - 1) // 2
        u, v = out[i], out[i + 1]
        m = farey_sum(u, v)
        if not cw_between(u, m, v):
            m = Slope(u.num - v.num, u.den - v.den)
        out.insert(i + 1, m)
    return out


class TestShorten:
    def _signed(self, slopes, signs):
        return DecoratedPath(tuple(slopes), tuple(EdgeSign(x) for x in signs))

    def test_opposite_junction_detected(self):
        p = self._signed(
            [s("-3"), s("-2"), s("-5/3"), s("-8/5"), s("-3/2"), s("-1"), s("0")],
            ["o", "+", "+", "-", "-", "o"],
        )
        res = shorten(p)
        assert [str(x) for x in res.path.slopes] == ["-3", "-2", "-1", "0"]
        assert res.opposite_sign_junction

    def test_minimal_is_fixed_point(self):
        p = self._signed([s("-3"), s("-2"), s("-1"), s("0")], ["o", "+", "o"])
        res = shorten(p)
        assert res.path == p and not res.removed_any

    def test_uniform_signs_no_junction(self):
        p = self._signed(
            [s("-3"), s("-2"), s("-5/3"), s("-8/5"), s("-3/2"), s("-1"), s("0")],
            ["o", "+", "+", "+", "+", "o"],
        )
        res = shorten(p)
        assert [str(x) for x in res.path.slopes] == ["-3", "-2", "-1", "0"]
        assert not res.opposite_sign_junction

    @given(slopes_st(20), slopes_st(20), st.integers(0, 4))
    @settings(max_examples=60)
    def test_idempotent_and_minimal(self, u, v, extra):
        if u == v:
            return
        slopes = _insert_mediants(minimal_path(u, v), extra)
        p = DecoratedPath(tuple(slopes), tuple(EdgeSign.MINUS for _ in slopes[1:]))
        once = shorten(p)
        assert once.path.is_minimal()
        assert shorten(once.path).path == once.path


class TestClassify:
    def _signed(self, slopes, signs):
        return DecoratedPath(tuple(slopes), tuple(EdgeSign(x) for x in signs))

    def test_inconsistent_is_overtwisted(self):
        p = self._signed(
            [s("-3"), s("-2"), s("-5/3"), s("-8/5"), s("-3/2"), s("-1"), s("0")],
            ["o", "+", "+", "-", "-", "o"],
        )
        assert classify(p) is Classification.OVERTWISTED

    def test_minimal_uniform_is_universally_tight(self):
        p = self._signed([s("-8/5"), s("-3/2"), s("-1"), s("0")], ["o", "-", "o"])
        assert classify(p) is Classification.UNIVERSALLY_TIGHT

    def test_minimal_mixed_is_virtually_overtwisted(self):
        p = self._signed([s("-4"), s("-3"), s("-2"), s("-1"), s("0")], ["o", "+", "-", "o"])
        assert classify(p) is Classification.VIRTUALLY_OVERTWISTED

    def test_nonminimal_uniform_is_undetermined(self):
        p = self._signed(
            [s("-3"), s("-2"), s("-5/3"), s("-8/5"), s("-3/2"), s("-1"), s("0")],
            ["o", "+", "+", "+", "+", "o"],
        )
        assert classify(p) is Classification.UNDETERMINED

    def test_malformed_decoration_rejected(self):
        p = self._signed([s("-3"), s("-2"), s("-1"), s("0")], ["+", "+", "o"])
        with pytest.raises(InvariantError):
            classify(p)

    @given(slopes_st(20), slopes_st(20), st.lists(st.booleans(), min_size=1, max_size=12))
    @settings(max_examples=60)
    def test_sign_flip_invariance(self, u, v, coin):
        if u == v:
            return
        slopes = _insert_mediants(minimal_path(u, v), 2)
        if len(slopes) < 3:
            return
        interior = [
            EdgeSign.PLUS if coin[i % len(coin)] else EdgeSign.MINUS
            for i in range(len(slopes) - 3)
        ]
        signs = [EdgeSign.RING] + interior + [EdgeSign.RING]
        flip = {EdgeSign.PLUS: EdgeSign.MINUS, EdgeSign.MINUS: EdgeSign.PLUS}
        flipped = [flip.get(x, x) for x in signs]
        p1 = DecoratedPath(tuple(slopes), tuple(signs))
        p2 = DecoratedPath(tuple(slopes), tuple(flipped))
        assert classify(p1) is classify(p2)


class TestTotallyInconsistent:
    def test_figure_path(self):
        p = totally_inconsistent_path(s("-3"), s("-8/5"))
        assert [str(x) for x in p.slopes] == ["-3", "-2", "-5/3", "-8/5", "-3/2", "-1", "0"]
        assert [x.value for x in p.signs] == ["o", "+", "+", "-", "-", "o"]
        assert classify(p) is Classification.OVERTWISTED

    def test_outside_arc_rejected(self):
        with pytest.raises(PreconditionError):
            totally_inconsistent_path(s("-3"), s("1/2"))

    def test_sign_flip_classifies_identically(self):
        p = totally_inconsistent_path(s("-3"), s("-8/5"))
        flip = {EdgeSign.PLUS: EdgeSign.MINUS, EdgeSign.MINUS: EdgeSign.PLUS}
        q = DecoratedPath(p.slopes, tuple(flip.get(x, x) for x in p.signs))
        assert classify(p) is classify(q)

    def test_overtwisted_when_both_legs_bend(self):
        # bends with interior edges on both sides force an opposite junction
        for lens_slope, at in [("-3", "-5/3"), ("-7/2", "-5/3")]:
            p = totally_inconsistent_path(s(lens_slope), s(at))
            assert classify(p) is Classification.OVERTWISTED


class TestDecoratedPathValidation:
    def test_non_adjacent_rejected(self):
        with pytest.raises(InvariantError):
            DecoratedPath((s("0"), s("2/5")), (EdgeSign.PLUS,))

    def test_wrong_sign_count_rejected(self):
        with pytest.raises(InvariantError):
            DecoratedPath((s("0"), s("1")), (EdgeSign.PLUS, EdgeSign.PLUS))

    def test_counterclockwise_rejected(self):
        with pytest.raises(InvariantError):
            DecoratedPath((s("0"), s("-1"), s("-2")), (EdgeSign.PLUS, EdgeSign.PLUS))

    def test_json_round_trip(self):
        p = totally_inconsistent_path(s("-3"), s("-8/5"))
        assert DecoratedPath.from_json_obj(p.to_json_obj()) == p


class TestMatrices:
    @given(slopes_st())
    def test_to_infinity(self, u):
        m = farey.unimodular_to_infinity(u)
        assert m.det() == 1
        assert m.apply(u).is_infinity

    def test_inverse(self):
        m = IntMat2(2, 1, 1, 1)
        assert m @ m.inverse() == IntMat2.identity()

    def test_bad_inverse(self):
        with pytest.raises(PreconditionError):
            IntMat2(2, 0, 0, 2).inverse()


class TestClockwiseOrder:
    def test_wrap_at_infinity(self):
        assert cw_between(s("1"), s("inf"), s("-1"))
        assert cw_between(s("inf"), s("-10"), s("0"))
        assert not cw_between(s("inf"), s("0"), s("-10"))

    def test_numeric_segment(self):
        assert cw_between(s("-3"), s("-8/5"), s("0"))
        assert not cw_between(s("0"), s("-8/5"), s("-3"))
