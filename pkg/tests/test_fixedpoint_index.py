import random
from fractions import Fraction as F

import pytest

from oracles import fixed_point_sum_at, laurent_at
from spincq.catalog import build, p1_model
from spincq.characters import mult_at, window
from spincq.errors import NonGenericPolarization, PreconditionViolated, UnhandledComponentGeometry
from spincq.fixedpoint_index import (
    FixedPoint,
    FixedPointModel,
    generic_beta,
    global_index,
    local_term,
    witten_decomposition,
)
from spincq.lie_core import Box, Weight

HALF = F(1, 2)


def values(F_, lo, hi):
    return [mult_at(F_, Weight(k)) for k in range(lo, hi + 1)]


def test_local_term_south_pole():
    p = p1_model(4).points[0]
    t = local_term(p, Weight(-1))
    # [PAPER] Q_{-1/2} = -sum_{k<=-1} t^k
    assert (t.sign, t.offset, t.denominators) == (-1, Weight(-1), (Weight(-1),))
    assert [t.sign * t.count(Weight(k)) for k in range(-4, 2)] == [-1, -1, -1, -1, 0, 0]


def test_local_term_north_pole():
    p = p1_model(4).points[1]
    t = local_term(p, Weight(1))
    # [PAPER] Q_{n+1/2} = -sum_{k>=n+1} t^k with n = 4
    assert [t.sign * t.count(Weight(k)) for k in range(3, 9)] == [0, 0, -1, -1, -1, -1]


def test_opposite_polarizations_differ_by_full_series():
    # [DERIVED] (1 - t^-1)^-1 and -t (1 - t)^-1 differ by sum over all of Z
    p = p1_model(4).points[0]
    plus, minus = local_term(p, Weight(1)), local_term(p, Weight(-1))
    for k in range(-6, 7):
        mu = Weight(k)
        assert plus.sign * plus.count(mu) - minus.sign * minus.count(mu) == 1


def test_nongeneric_polarization():
    # [TRIVIAL]
    p = FixedPoint.make("x", [(1, 0), (0, 1)], (HALF, HALF))
    with pytest.raises(NonGenericPolarization):
        local_term(p, Weight(0, 1))


def test_spinc_condition_enforced():
    # [TRIVIAL]
    p = FixedPoint.make("bad", [(1,)], (0,))
    with pytest.raises(PreconditionViolated):
        local_term(p, Weight(1))


def test_fixed_point_validation():
    # [TRIVIAL]
    with pytest.raises(ValueError):
        FixedPoint.make("z", [(0,)], (HALF,))
    with pytest.raises(ValueError):
        FixedPoint("m", (Weight(1),), Weight(HALF), 1, Weight(F(3, 2)))


@pytest.mark.parametrize("n,expect", [
    (4, [0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0]),
    (-1, [0] * 11),
    (-3, [0, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0]),
])
def test_global_index_p1(n, expect):
    # [PAPER] closed forms for S(n); window [-3, 7]
    g = global_index(p1_model(n), Weight(1))
    assert values(g, -3, 7) == expect


def test_global_index_matches_rational_function():
    # [DERIVED] evaluate the fixed-point sum at t = 4 and t = (4, 9) against the finite characters
    for n in (-3, 0, 4):
        M = p1_model(n)
        g = global_index(M, Weight(1))
        mults = {Weight(k): mult_at(g, Weight(k)) for k in range(-10, 11)}
        assert fixed_point_sum_at(M, (2,)) == laurent_at(mults, (2,))
    b = build("hirzebruch:3,6")
    g = global_index(b.model, generic_beta(b.model))
    mults = {mu: mult_at(g, mu) for mu in Box.cube(-6, 4, 2).points()}
    assert fixed_point_sum_at(b.model, (2, 3)) == laurent_at(mults, (2, 3))


def test_polarization_independence_random():
    # [DERIVED]
    rng = random.Random(11)
    for desc in ("p1:4", "product_p1", "hirzebruch:3,6", "hirzebruch:8,5"):
        M = build(desc).model
        box = Box.cube(-9, 9, M.rank) if M.rank == 1 else Box.cube(-9, 4, 2)
        ref = window(global_index(M, generic_beta(M)), box)
        for _ in range(4):
            beta = Weight(tuple(F(rng.randint(-50, 50) or 1, rng.randint(1, 50)) for _ in range(M.rank)))
            try:
                g = global_index(M, beta)
            except NonGenericPolarization:
                continue
            assert (window(g, box) == ref).all()


def test_witten_decomposition_p1():
    # [PAPER]
    comps = witten_decomposition(p1_model(4))
    assert list(comps) == [Weight(-HALF), Weight(0), Weight(F(9, 2))]
    assert values(comps[Weight(-HALF)], -3, 1) == [-1, -1, -1, 0, 0]
    assert values(comps[Weight(0)], -5, 9) == [1] * 15


def test_witten_decomposition_sums_to_global():
    # [DERIVED]
    for desc in ("p1:4", "p1:0", "product_p1"):
        M = build(desc).model
        comps = witten_decomposition(M)
        g = global_index(M, generic_beta(M))
        for k in range(-10, 11):
            mu = Weight(k)
            assert sum(mult_at(c, mu) for c in comps.values()) == mult_at(g, mu)


def test_single_point_model():
    # [DERIVED]
    M = FixedPointModel(1, (FixedPoint.make("p", [(1,)], (F(3, 2),)),))
    comps = witten_decomposition(M)
    g = global_index(M, Weight(1))
    assert values(comps[Weight(F(3, 2))], -3, 6) == values(g, -3, 6)


def test_shared_levels_are_rejected():
    # [DERIVED]
    with pytest.raises(UnhandledComponentGeometry):
        witten_decomposition(p1_model(-1))


def test_model_json_round_trip():
    # [TRIVIAL]
    M = build("hirzebruch:3,6").model
    assert FixedPointModel.from_json(M.to_json()) == M
    M = build("product_p1").model
    assert FixedPointModel.from_json(M.to_json()) == M
