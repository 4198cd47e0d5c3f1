from fractions import Fraction as F

import pytest

from spincq.catalog import CATALOG, ExampleDescriptor, build, hirzebruch_golden_K, su3_golden_K
from spincq.characters import CharacterK, mult_at, restrict_to_torus
from spincq.errors import UnknownDescriptor
from spincq.fixedpoint_index import generic_beta, global_index
from spincq.lie_core import Box, RootDatum, Weight
from spincq.orbits import NonLevi, vanishing_criterion

HALF = F(1, 2)


def golden_K(datum, rows):
    return CharacterK.from_json(datum, [{"label": l, "mult": m} for l, m in rows])


@pytest.mark.parametrize("text,name,params", [
    ("p1:4", "p1", (4,)),
    ("p1:-3", "p1", (-3,)),
    ("p1_deformed:4,15", "p1_deformed", (4, 15)),
    ("product_p1", "product_p1", ()),
    (" hirzebruch : 3, 6 ", "hirzebruch", (3, 6)),
    ("su3_flag:4,1", "su3_flag", (4, 1)),
])
def test_descriptor_parse(text, name, params):
    # [TRIVIAL]
    d = ExampleDescriptor.parse(text)
    assert (d.name, d.params) == (name, params)
    assert ExampleDescriptor.parse(str(d)) == d


@pytest.mark.parametrize("text", ["nope", "p1", "p1:1,2", "hirzebruch:a,b", "p1:4:5", ""])
def test_descriptor_rejects(text):
    # [TRIVIAL]
    with pytest.raises(UnknownDescriptor):
        ExampleDescriptor.parse(text)


@pytest.mark.parametrize("desc", CATALOG)
def test_catalog_builds(desc):
    # [TRIVIAL]
    b = build(desc)
    assert str(b.descriptor) == desc
    assert b.kirwan.pieces


def test_p1_global_goldens(goldens):
    # [PAPER] closed forms of the P^1 index
    for n, rows in goldens["p1_global"].items():
        M = build(f"p1:{n}").model
        g = global_index(M, Weight(1))
        want = {k: m for k, m in rows}
        for k in range(-12, 13):
            assert mult_at(g, Weight(k)) == want.get(k, 0), (n, k)


def test_hirzebruch_global_golden(goldens):
    # [PAPER] 13-term polynomial for (n1, n2) = (3, 6)
    M = build("hirzebruch:3,6").model
    g = global_index(M, generic_beta(M))
    want = {Weight(e1, e2): m for e1, e2, m in goldens["hirzebruch_3_6_T"]}
    assert len(want) == 13
    for mu in Box.cube(-8, 6, 2).points():
        assert mult_at(g, mu) == want.get(mu, 0), mu


@pytest.mark.parametrize("params", ["8,5", "3,6"])
def test_hirzebruch_goldens_both_regimes(goldens, params):
    # [PAPER]
    n1, n2 = map(int, params.split(","))
    b = build(f"hirzebruch:{params}")
    K = golden_K(RootDatum.u2(), goldens["hirzebruch_K"][params])
    assert hirzebruch_golden_K(n1, n2) == K
    assert b.induced == K
    # the golden K-character restricts to the torus index
    T = restrict_to_torus(K)
    g = global_index(b.model, generic_beta(b.model))
    for mu in Box.cube(-12, 8, 2).points():
        assert mult_at(T, mu) == mult_at(g, mu)


def test_hirzebruch_image_shape():
    # [DERIVED]
    assert len(build("hirzebruch:3,6").image.pieces) == 2
    assert len(build("hirzebruch:8,5").image.pieces) == 1


@pytest.mark.parametrize("params", ["4,1", "5,2", "6,3"])
def test_su3_goldens(goldens, params):
    # [PAPER]
    a, b_ = map(int, params.split(","))
    b = build(f"su3_flag:{params}")
    K = golden_K(RootDatum.su3(), goldens["su3_flag"][params])
    assert su3_golden_K(a, b_) == K
    assert b.induced == K


def test_su3_vanishing_criterion():
    d = RootDatum.su3()
    levi = build("su3_flag:4,1").slice_levi
    # [DERIVED] su(2) stabilizers pass; a non-Levi semisimple part forces vanishing
    assert vanishing_criterion(levi, d)
    assert not vanishing_criterion(NonLevi("so(3) in su(3)"), d)
