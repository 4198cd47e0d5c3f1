from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spincq.lie_core import (
    Box,
    RootDatum,
    Singular,
    Weight,
    adjoint_weights,
    norm_ball_box,
    normalized_trace,
    rho,
    stabilizer_levi,
    weyl_normalize,
)

GROUPS = ["su2", "u2", "su3", "torus:1", "torus:2"]


def test_rho_values():
    # [PAPER] rho = w1 + w2 for SU(3); rho = (1/2, -1/2) for U(2)
    assert rho(RootDatum.su3()) == Weight(1, 1)
    assert rho(RootDatum.u2()) == Weight(F(1, 2), F(-1, 2))
    # [TRIVIAL] a torus has no roots
    assert rho(RootDatum.torus(3)) == Weight(0, 0, 0)


def test_rho_is_sum_of_fundamental_weights():
    # [DERIVED]
    for tag in ("su2", "su3"):
        d = RootDatum.from_tag(tag)
        total = Weight.zero(d.rank)
        for w in d.fundamental:
            total = total + w
        assert rho(d) == total


def test_weyl_group_orders_and_signs():
    # [DERIVED]
    orders = {"su2": 2, "u2": 2, "su3": 6, "torus:2": 1}
    for tag, n in orders.items():
        d = RootDatum.from_tag(tag)
        assert len(d.weyl_group) == n
        if n > 1:
            assert sum(w.sign for w in d.weyl_group) == 0


def test_weyl_group_permutes_roots_and_lattice():
    # [DERIVED]
    for tag in GROUPS:
        d = RootDatum.from_tag(tag)
        roots = set(d.roots)
        for w in d.weyl_group:
            assert {w(a) for a in roots} == roots
            for e in Box.cube(-1, 1, d.rank).points():
                assert w(e).is_integral


def test_stabilizer_levi_examples():
    d = RootDatum.su3()
    # [DERIVED] only alpha_2 = (-1, 2) pairs to zero with w1 under the trace form
    levi = stabilizer_levi(Weight(1, 0), d)
    assert levi.roots == frozenset({Weight(-1, 2)})
    assert levi.semisimple == "su(2)"
    assert stabilizer_levi(rho(d), d).is_torus
    assert stabilizer_levi(Weight(0, 0), d).semisimple == "su(3)"


def test_levi_classes_of_su3():
    # [DERIVED]
    labels = [h.label for h in RootDatum.su3().levi_classes()]
    assert labels == [("0", 2), ("su(2)", 1), ("su(3)", 0)]


def test_weyl_normalize_examples():
    u2 = RootDatum.u2()
    # [DERIVED] one reflection swaps the coordinates
    assert weyl_normalize(Weight(F(-1, 2), F(3, 2)), u2) == (-1, Weight(F(3, 2), F(-1, 2)))
    assert weyl_normalize(Weight(F(1, 2), F(1, 2)), u2) is Singular
    d = RootDatum.su3()
    assert weyl_normalize(rho(d), d) == (1, rho(d))


def test_normalized_trace_examples():
    d = RootDatum.su3()
    # [DERIVED] sum over positive roots of <alpha, rho> = <2 rho, rho> = 4
    assert normalized_trace(adjoint_weights(d), rho(d), d) == 4
    u2 = RootDatum.u2()
    assert normalized_trace(adjoint_weights(u2), Weight(1, 0), u2) == 1
    assert normalized_trace(adjoint_weights(d), Weight(0, 0), d) == 0


def test_norm_ball_box_is_sound():
    # [TRIVIAL]
    d = RootDatum.su3()
    r2 = F(7, 2)
    box = norm_ball_box(d, r2)
    for x in Box.cube(-6, 6, 2).half_points():
        if d.norm2(x) <= r2:
            assert x in box


def test_json_round_trip():
    # [TRIVIAL]
    for tag in GROUPS:
        d = RootDatum.from_tag(tag)
        assert RootDatum.from_json(d.to_json()) == d
    w = Weight(F(3, 2), F(-1, 3))
    assert w.to_json() == ["3/2", "-1/3"]
    assert Weight.from_json(w.to_json()) == w


def test_rejects_floats_and_bad_tags():
    # [TRIVIAL]
    with pytest.raises(TypeError):
        Weight(0.5)
    with pytest.raises(ValueError):
        RootDatum.from_tag("so5")


def test_box_parse():
    # [TRIVIAL]
    assert Box.parse("2", 2) == Box((-2, -2), (2, 2))
    assert Box.parse("-10:10", 1) == Box((-10,), (10,))
    assert Box.parse("-1:2,0:3", 2).shape == (4, 4)
    with pytest.raises(ValueError):
        Box.parse("1:2,3:4,5:6", 2)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["su2", "u2", "su3"]), st.lists(rationals, min_size=2, max_size=2),
       st.lists(rationals, min_size=2, max_size=2))
def test_gram_is_weyl_invariant(tag, xs, ys):
    # [DERIVED]
    d = RootDatum.from_tag(tag)
    x, y = Weight(tuple(xs[: d.rank])), Weight(tuple(ys[: d.rank]))
    for w in d.weyl_group:
        assert d.pair(w(x), w(y)) == d.pair(x, y)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["su2", "u2", "su3"]), st.lists(rationals, min_size=2, max_size=2))
def test_weyl_normalize_is_equivariant(tag, xs):
    # [DERIVED]
    d = RootDatum.from_tag(tag)
    xi = Weight(tuple(xs[: d.rank]))
    base = weyl_normalize(xi, d)
    for w in d.weyl_group:
        other = weyl_normalize(w(xi), d)
        if base is Singular:
            assert other is Singular
        else:
            assert other == (base[0] * w.sign, base[1])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 3))
def test_stabilizer_constant_on_faces(a, b, c):
    # [DERIVED]
    d = RootDatum.su3()
    x, y = Weight(a, b), Weight(c * a, c * b)
    assert stabilizer_levi(x, d) == stabilizer_levi(y, d)


def test_rho_is_regular():
    # [TRIVIAL]
    for tag in ("su2", "su3"):
        d = RootDatum.from_tag(tag)
        assert d.is_regular(rho(d))
