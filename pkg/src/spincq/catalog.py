"""Builders for the worked examples.

Every builder returns an :class:`ExampleBundle` holding the torus fixed-point
model (when there is one), the moment and Kirwan images, closed-form golden
characters, and for the non-abelian examples the slice data used on the
reduction side.

Fixed-point data (tangent weights, orientations) was fixed once by checking
the global index against the closed-form characters; derivations are noted
next to each builder.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .characters import CharacterK, FormalCharacter, holomorphic_induct, restrict_to_torus
from .errors import UnknownDescriptor
from .fixedpoint_index import FixedPoint, FixedPointModel
from .lie_core import Box, LeviClass, RootDatum, Weight, rho, stabilizer_levi
from .orbits import CoadjointOrbit, ancestors_of
from .reduction import FiberPoint, MomentImage, ReducedFiberModel

F = Fraction
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExampleDescriptor:
    name: str
    params: tuple[int, ...] = ()

    _ARITY = {"p1": 1, "p1_deformed": 2, "product_p1": 0, "hirzebruch": 2, "su3_flag": 2}

    @classmethod
    def parse(cls, text: str) -> "ExampleDescriptor":
        m = re.fullmatch(r"\s*([a-z0-9_]+)\s*(?::\s*([-0-9,\s]*))?\s*", text)
        if not m:
            raise UnknownDescriptor(f"cannot parse example {text!r}")
        name, args = m.group(1), m.group(2)
        if name not in cls._ARITY:
            raise UnknownDescriptor(f"unknown example {name!r}")
        try:
            params = tuple(int(a) for a in args.split(",")) if args and args.strip() else ()
        except ValueError as exc:
            raise UnknownDescriptor(f"bad parameters in {text!r}") from exc
        if len(params) != cls._ARITY[name]:
            raise UnknownDescriptor(f"{name} takes {cls._ARITY[name]} parameters, got {len(params)}")
        return cls(name, params)

    def __str__(self) -> str:
        return self.name + (":" + ",".join(map(str, self.params)) if self.params else "")


@dataclass
class ExampleBundle:
    descriptor: ExampleDescriptor
    model: Optional[FixedPointModel]
    image: Optional[MomentImage]
    kirwan: MomentImage
    # closed-form multiplicity of the global torus index
    golden_T: Optional[Callable[[Weight], int]] = None
    # closed-form Witten components, keyed by level
    golden_components: dict = field(default_factory=dict)
    golden_K: Optional[CharacterK] = None
    group: Optional[RootDatum] = None
    H_weights: Optional[FormalCharacter] = None
    rho_C: Optional[Weight] = None
    slice_levi: Optional[LeviClass] = None
    ancestor_fiber: Optional[Callable[[CoadjointOrbit], ReducedFiberModel]] = None
    fiber_at: Optional[Callable[[Weight, Weight], Optional[ReducedFiberModel]]] = None

    @property
    def induced(self) -> Optional[CharacterK]:
        if self.H_weights is None:
            return None
        return holomorphic_induct(self.H_weights, self.rho_C, self.group)

    def slice_data_for(self, O: CoadjointOrbit, box: Optional[Box] = None) -> dict:
        """Fiber data for every (h)-ancestor of O."""
        return {P: self.ancestor_fiber(P) for P in ancestors_of(O, self.slice_levi, box)}

    def k_box(self, margin: int = 3) -> Box:
        """Box of lattice offsets x such that rho + x covers the Kirwan set with a margin."""
        r = rho(self.group)
        pts = [v - r for piece in self.kirwan.pieces for v in piece.vertices]
        rank = len(pts[0])
        lo = tuple(int(min(p[i] for p in pts).__floor__()) - margin for i in range(rank))
        hi = tuple(int(max(p[i] for p in pts).__ceil__()) + margin for i in range(rank))
        return Box(lo, hi)

    def qr_box(self, margin: int = 3) -> Box:
        """Integral box around the moment image, padded by ``margin``."""
        pts = [v for piece in self.image.pieces for v in piece.vertices]
        rank = len(pts[0])
        lo = tuple(int(min(p[i] for p in pts).__floor__()) - margin for i in range(rank))
        hi = tuple(int(max(p[i] for p in pts).__ceil__()) + margin for i in range(rank))
        return Box(lo, hi)


# -- P^1 -------------------------------------------------------------------------------


def p1_model(n: int) -> FixedPointModel:
    """Circle acting on P^1 with Spin^c structure S(n).

    The moment values -1/2 and n+1/2 are the endpoints of the image; the
    tangent weights are -1 at the south pole and +1 at the north pole.
    """
    free = (("circle", Weight(0)),) if n >= 0 else ()
    return FixedPointModel(
        1,
        (
            FixedPoint.make("p-", [(-1,)], (-HALF,)),
            FixedPoint.make("p+", [(1,)], (n + HALF,)),
        ),
        free,
    )


def p1_golden(n: int) -> Callable[[Weight], int]:
    def g(mu: Weight) -> int:
        k = mu[0]
        if n >= 0:
            return int(0 <= k <= n)
        return -int(n + 1 <= k <= -1)

    return g


def _p1_components(n: int) -> dict:
    if n < 0:
        return {}
    return {
        Weight(-HALF): lambda mu: -int(mu[0] <= -1),
        Weight(0): lambda mu: 1,
        Weight(n + HALF): lambda mu: -int(mu[0] >= n + 1),
    }


def deformed_p1_fibers(n: int, f: int):
    """Point fibers of Phi(x) = (n+1)x - f x(1-x) - 1/2 on [0,1].

    The moment map is monotone on at most two branches split at its vertex;
    each branch meets a level strictly inside its value range once, with the
    orientation given by the sign of the derivative there.
    """
    fq = F(f)

    def phi(x: Fraction) -> Fraction:
        return (n + 1) * x - fq * x * (1 - x) - HALF

    cuts = [F(0), F(1)]
    if f != 0:
        xv = (fq - n - 1) / (2 * fq)
        if 0 < xv < 1:
            cuts = [F(0), xv, F(1)]
    branches = [(phi(a), phi(b)) for a, b in zip(cuts, cuts[1:])]

    def fiber_at(mu: Weight, eps: Weight) -> Optional[ReducedFiberModel]:
        c = mu[0] + eps[0]
        pts = []
        for va, vb in branches:
            if va == vb:
                return None  # constant moment map: no point reduction
            if min(va, vb) < c < max(va, vb):
                pts.append(FiberPoint(1 if vb > va else -1, mu))
        return ReducedFiberModel(tuple(pts))

    lo = min(min(b) for b in branches)
    hi = max(max(b) for b in branches)
    return fiber_at, MomentImage.of([(lo,), (hi,)])


def build_p1(n: int) -> ExampleBundle:
    model = p1_model(n)
    fiber_at, image = deformed_p1_fibers(n, 0)
    return ExampleBundle(
        ExampleDescriptor("p1", (n,)),
        model,
        image,
        image,
        golden_T=p1_golden(n),
        golden_components=_p1_components(n),
        fiber_at=fiber_at,
    )


def build_p1_deformed(n: int, f: int) -> ExampleBundle:
    """Same fixed points as P^1(n), moment map folded by the term f x(1-x)."""
    model = p1_model(n)
    fiber_at, image = deformed_p1_fibers(n, f)
    return ExampleBundle(
        ExampleDescriptor("p1_deformed", (n, f)),
        model,
        image,
        image,
        golden_T=p1_golden(n),
        fiber_at=fiber_at,
    )


# -- P^1 x P^1 -------------------------------------------------------------------------


def build_product() -> ExampleBundle:
    """Diagonal circle on P^1 x P^1, both factors with n = 0.

    Fixed points are pairs of poles; moment values and tangent weights add.
    The level 0 contains the anti-diagonal pair of fixed points and the free
    circle orbits between them.
    """
    poles = {"-": (-HALF, -1), "+": (HALF, 1)}
    pts = []
    for s1, (phi1, a1) in poles.items():
        for s2, (phi2, a2) in poles.items():
            pts.append(FixedPoint.make(f"({s1},{s2})", [(a1,), (a2,)], (phi1 + phi2,)))
    model = FixedPointModel(1, tuple(pts), (("antidiagonal", Weight(0)),))
    image = MomentImage.of([(-1,), (1,)])
    components = {
        Weight(-1): lambda mu: -mu[0] - 1 if mu[0] <= -2 else 0,
        Weight(0): lambda mu: 1 - abs(mu[0]),
        Weight(1): lambda mu: mu[0] - 1 if mu[0] >= 2 else 0,
    }
    return ExampleBundle(
        ExampleDescriptor("product_p1"),
        model,
        image,
        image,
        golden_T=lambda mu: int(mu[0] == 0),
        golden_components=components,
    )


# -- Hirzebruch surface --------------------------------------------------------------------


def hirzebruch_model(n1: int, n2: int) -> FixedPointModel:
    """Maximal torus of U(2) on the Hirzebruch surface with S(n1, n2).

    Two fixed points A, B lie on the invariant P^1 over the fixed point of
    P^1 with moment (1/2, *); the Weyl reflection swaps them with sA, sB.
    """
    pts = (
        FixedPoint.make("A", [(0, -1), (1, -1)], (HALF, -n1 - 1)),
        FixedPoint.make("B", [(0, 1), (1, -1)], (HALF, n2 - n1)),
        FixedPoint.make("sA", [(-1, 0), (-1, 1)], (-n1 - 1, HALF)),
        FixedPoint.make("sB", [(1, 0), (-1, 1)], (n2 - n1, HALF)),
    )
    return FixedPointModel(2, pts)


def hirzebruch_golden_K(n1: int, n2: int) -> CharacterK:
    u2 = RootDatum.u2()
    terms = []
    if n1 >= n2:
        terms += [(Weight(HALF, -k - HALF), 1) for k in range(n1 - n2, n1 + 1)]
    else:
        terms += [(Weight(HALF, -k - HALF), 1) for k in range(0, n1 + 1)]
        terms += [(Weight(k + F(3, 2), HALF), -1) for k in range(0, n2 - n1 - 1)]
    return CharacterK.from_terms(u2, terms)


def hirzebruch_fiber(n1: int, n2: int):
    """Reduced space of the U(2) slice at a regular orbit K.lambda.

    The slice over the open chamber has two pieces.  On the first, lambda -
    rho_C = (0, y) for y in (-n1-1/2, min(1, n2-n1+1/2)), oriented +1.  On the
    second, lambda - rho_C = (x, 1) for x in (0, n2-n1-1/2), oriented -1.
    Each reduced space is a point with trivial stabilizer.
    """
    rho_C = Weight(HALF, -HALF)

    def fiber(P: CoadjointOrbit) -> ReducedFiberModel:
        v = P.rep - rho_C
        zero = Weight(0, 0)
        if v[0] == 0 and -n1 - HALF < v[1] < min(F(1), n2 - n1 + HALF):
            return ReducedFiberModel((FiberPoint(1, zero),), zero)
        if v[1] == 1 and 0 < v[0] < n2 - n1 - HALF:
            return ReducedFiberModel((FiberPoint(-1, zero),), zero)
        return ReducedFiberModel((), zero)

    return fiber


def build_hirzebruch(n1: int, n2: int) -> ExampleBundle:
    u2 = RootDatum.u2()
    model = hirzebruch_model(n1, n2)
    if n2 > n1:
        c = (HALF, HALF)
        image = MomentImage.of(
            [c, (HALF, -n1 - 1), (-n1 - 1, HALF)],
            [c, (HALF, n2 - n1), (n2 - n1, HALF)],
        )
    else:
        image = MomentImage.of([(HALF, -n1 - 1), (HALF, n2 - n1), (n2 - n1, HALF), (-n1 - 1, HALF)])
    top = min(HALF, F(n2 - n1))
    pieces = [[(HALF, -n1 - 1), (HALF, top)]]
    if n2 - n1 - HALF > 0:
        pieces.append([(HALF, HALF), (n2 - n1, HALF)])
    kirwan = MomentImage.of(*pieces)
    golden_K = hirzebruch_golden_K(n1, n2)
    golden_poly = restrict_to_torus(golden_K)
    # L(n1, n2) restricted to the invariant P^1 is L^{n2} twisted by C_{(0,-n1)}
    H = FormalCharacter.polynomial(2, {Weight(0, k - n1): 1 for k in range(n2 + 1)})
    return ExampleBundle(
        ExampleDescriptor("hirzebruch", (n1, n2)),
        model,
        image,
        kirwan,
        golden_T=lambda mu: golden_poly.tail.get(mu, 0),
        golden_K=golden_K,
        group=u2,
        H_weights=H,
        rho_C=Weight(HALF, -HALF),
        slice_levi=stabilizer_levi(Weight(1, 0), u2),
        ancestor_fiber=hirzebruch_fiber(n1, n2),
    )


# -- SU(3) partial flag -----------------------------------------------------------------------


def su3_golden_K(a: int, b: int) -> CharacterK:
    d = RootDatum.su3()
    r = rho(d)
    terms = [(Weight(k, 0) + r, -1) for k in range(0, b)]
    terms += [(Weight(0, j) + r, -1) for j in range(0, a - 3)]
    return CharacterK.from_terms(d, terms)


def su3_fiber(a: int, b: int):
    """Reduced spaces at the su(2)-ancestors K(s w1) and K(s w2).

    The slice is a line through w1 on which K(s w1) sits at z = s and K(s w2)
    at z = -s; its image is the open interval (2-a, b+1) and every non-empty
    reduction is a point with orientation -1 and trivial stabilizer.
    """

    def fiber(P: CoadjointOrbit) -> ReducedFiberModel:
        x, y = P.rep
        zero = Weight(0, 0)
        if y == 0 and x != 0:
            z = x
        elif x == 0 and y != 0:
            z = -y
        else:
            return ReducedFiberModel((), zero)
        if 2 - a < z < b + 1:
            return ReducedFiberModel((FiberPoint(-1, zero),), zero)
        return ReducedFiberModel((), zero)

    return fiber


def build_su3_flag(a: int, b: int) -> ExampleBundle:
    d = RootDatum.su3()
    alpha2_half = Weight(-HALF, 1)
    # H-labels c*w1 + rho_H with rho_H = alpha_2 / 2, all with multiplicity -1
    H = FormalCharacter.polynomial(2, {Weight(c, 0) + alpha2_half: -1 for c in range(1 - a, b)})
    kirwan = MomentImage.of([(0, 0), (b + 1, 0)], [(0, 0), (0, a - 2)])
    golden = su3_golden_K(a, b) if a >= 4 and b >= 1 else None
    return ExampleBundle(
        ExampleDescriptor("su3_flag", (a, b)),
        None,
        None,
        kirwan,
        golden_K=golden,
        group=d,
        H_weights=H,
        rho_C=Weight(F(3, 2), 0),
        slice_levi=stabilizer_levi(Weight(1, 0), d),
        ancestor_fiber=su3_fiber(a, b),
    )


# -- dispatch ------------------------------------------------------------------------------------


def build(desc) -> ExampleBundle:
    if isinstance(desc, str):
        desc = ExampleDescriptor.parse(desc)
    name, p = desc.name, desc.params
    if name == "p1":
        return build_p1(*p)
    if name == "p1_deformed":
        return build_p1_deformed(*p)
    if name == "product_p1":
        return build_product()
    if name == "hirzebruch":
        return build_hirzebruch(*p)
    if name == "su3_flag":
        return build_su3_flag(*p)
    raise UnknownDescriptor(f"unknown example {name!r}")  # pragma: no cover


CATALOG = ("p1:4", "p1_deformed:4,15", "product_p1", "hirzebruch:3,6", "su3_flag:4,1")
