"""Quantization of reduced spaces and the comparison with multiplicities.

Two routes lead to Q^spin(M_mu) for an abelian model:

* the residual route: the multiplicity of the global index at mu minus the
  contributions of every fixed point, each polarized along phi(p) - mu - eps.
  What is left is the contribution of the level mu + eps, which is the
  reduced space.
* the fiber route: when the reduced space at mu + eps is a finite set of
  points, the index is a signed count of Gamma-invariants.

Both are computed when fiber data is available and must agree.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .characters import CharacterK, mult_at
from .errors import MissingAncestorData, OnWall, PreconditionViolated, RouteMismatch
from .fixedpoint_index import FixedPointModel, generic_beta, global_index, local_term, polarize
from .lie_core import Box, LeviClass, Weight, dot, fmt_q
from .orbits import CoadjointOrbit, ancestors_of


# -- moment images -------------------------------------------------------------


def _cross(o: Weight, a: Weight, b: Weight) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: Sequence[Weight]) -> list[Weight]:
    """Counter-clockwise convex hull (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Weight] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Weight] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Piece:
    """Convex hull of finitely many points of t* (rank 1 or 2)."""

    vertices: tuple[Weight, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))

    def in_relative_interior(self, x: Weight) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return x == vs[0]
        rank = len(vs[0])
        if rank == 1:
            return vs[0][0] < x[0] < vs[-1][0]
        hull = _hull(vs)
        if len(hull) == 2:
            a, b = hull
            if _cross(a, b, x) != 0:
                return False
            t = dot(x - a, b - a) / dot(b - a, b - a)
            return 0 < t < 1
        return all(_cross(hull[i], hull[(i + 1) % len(hull)], x) > 0 for i in range(len(hull)))

    def to_json(self) -> list:
        return [v.to_json() for v in self.vertices]


@dataclass(frozen=True)
class MomentImage:
    """A finite union of convex pieces."""

    pieces: tuple[Piece, ...]

    @classmethod
    def of(cls, *pieces: Iterable) -> "MomentImage":
        return cls(tuple(Piece(tuple(Weight(tuple(v)) if not isinstance(v, Weight) else v for v in p))
                         for p in pieces))

    @classmethod
    def convex_hull_of(cls, model: FixedPointModel) -> "MomentImage":
        return cls((Piece(tuple(p.phi for p in model.points)),)) if model.points else cls(())

    def in_relative_interior(self, x: Weight) -> bool:
        return any(p.in_relative_interior(x) for p in self.pieces)

    def to_json(self) -> list:
        return [p.to_json() for p in self.pieces]


# -- point reductions -------------------------------------------------------------


@dataclass(frozen=True)
class FiberPoint:
    """One point of Phi^{-1}(mu + eps)/T.

    ``gamma_generators`` generate the finite stabilizer Gamma as elements of
    t/lattice; a weight w is trivial on Gamma when <w, g> is an integer for
    every generator.
    """

    orientation: int
    half_det_weight: Weight
    gamma_generators: tuple[Weight, ...] = ()
    stabilizer_order: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +-1")
        if self.stabilizer_order < 1:
            raise ValueError("stabilizer order must be positive")
        if not self.half_det_weight.is_half_integral:
            raise ValueError("2*half_det_weight must be integral")


@dataclass(frozen=True)
class ReducedFiberModel:
    points: tuple[FiberPoint, ...] = ()
    level: Optional[Weight] = None


def qspin_point(fiber: ReducedFiberModel, mu: Weight) -> int:
    total = 0
    for pt in fiber.points:
        w = pt.half_det_weight - mu
        if all(dot(w, g).denominator == 1 for g in pt.gamma_generators):
            total += pt.orientation
    return total


FiberSource = Callable[[Weight, Weight], Optional[ReducedFiberModel]]


def default_eps(rank: int) -> Weight:
    return Weight(tuple(Fraction(1, 997 * 1009 ** i) for i in range(rank)))


def residual_at(M: FixedPointModel, mu: Weight, eps: Weight, total=None) -> int:
    """mult of the global index at mu minus every fixed-point term polarized along phi(p) - mu - eps."""
    if total is None:
        total = global_index(M, generic_beta(M))
    value = mult_at(total, mu)
    for p in M.points:
        term = local_term(p, p.phi - mu - eps)
        value -= term.sign * term.count(mu)
    return value


def reduced_profile(
    M: FixedPointModel,
    box: Box,
    image: Optional[MomentImage] = None,
    fiber_at: Optional[FiberSource] = None,
    eps: Optional[Weight] = None,
) -> dict[Weight, int]:
    """Q^spin(M_mu) for every integral mu in the box."""
    image = image if image is not None else MomentImage.convex_hull_of(M)
    eps = eps if eps is not None else default_eps(M.rank)
    total = global_index(M, generic_beta(M)) if M.points else None
    out = {}
    for mu in box.points():
        if not image.in_relative_interior(mu):
            out[mu] = 0
            continue
        value = residual_at(M, mu, eps, total)
        if fiber_at is not None:
            fiber = fiber_at(mu, eps)
            if fiber is not None:
                via_points = qspin_point(fiber, mu)
                if via_points != value:
                    raise RouteMismatch(f"at {mu}: fiber count {via_points}, residual {value}")
        out[mu] = value
    return out


# -- reports -------------------------------------------------------------------------


@dataclass(frozen=True)
class QRRow:
    label: Weight
    m: int
    q: int

    @property
    def match(self) -> bool:
        return self.m == self.q


@dataclass(frozen=True)
class QRReport:
    rows: tuple[QRRow, ...] = ()
    kind: str = "abelian"

    @property
    def summary(self) -> bool:
        return all(r.match for r in self.rows)

    @property
    def mismatches(self) -> list[QRRow]:
        return [r for r in self.rows if not r.match]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "m", "q", "match"])
        for r in self.rows:
            w.writerow([" ".join(fmt_q(c) for c in r.label), r.m, r.q, int(r.match)])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"{'label':>16} {'m':>5} {'q':>5}  match"]
        for r in self.rows:
            lab = "(" + ", ".join(fmt_q(c) for c in r.label) + ")"
            lines.append(f"{lab:>16} {r.m:>5} {r.q:>5}  {'yes' if r.match else 'NO'}")
        lines.append(f"summary: {'all levels match' if self.summary else f'{len(self.mismatches)} mismatches'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "summary": self.summary,
            "rows": [{"label": r.label.to_json(), "m": r.m, "q": r.q, "match": r.match} for r in self.rows],
        }


def verify_qr_abelian(
    M: FixedPointModel,
    box: Box,
    image: Optional[MomentImage] = None,
    fiber_at: Optional[FiberSource] = None,
    eps: Optional[Weight] = None,
) -> QRReport:
    if not M.points:
        return QRReport(tuple(QRRow(mu, 0, 0) for mu in box.points()))
    total = global_index(M, generic_beta(M))
    profile = reduced_profile(M, box, image, fiber_at, eps)
    return QRReport(tuple(QRRow(mu, mult_at(total, mu), profile[mu]) for mu in box.points()))


# -- non-abelian side ------------------------------------------------------------------


@dataclass(frozen=True)
class SliceModel:
    """An abelian slice model whose reduced space at ``level`` is the summand."""

    model: FixedPointModel
    level: Weight
    image: Optional[MomentImage] = None


SliceEntry = Union[ReducedFiberModel, SliceModel]


def ancestor_contribution(entry: SliceEntry) -> int:
    if isinstance(entry, ReducedFiberModel):
        level = entry.level
        if level is None:
            rank = len(entry.points[0].half_det_weight) if entry.points else 0
            level = Weight.zero(rank)
        return qspin_point(entry, level)
    lvl = entry.level
    box = Box(tuple(int(c) for c in lvl), tuple(int(c) for c in lvl))
    return reduced_profile(entry.model, box, entry.image)[lvl]


def multiplicity_via_ancestors(
    slice_data: Mapping[CoadjointOrbit, SliceEntry],
    O: CoadjointOrbit,
    levi: Optional[LeviClass] = None,
    box: Optional[Box] = None,
) -> int:
    """Sum over the (h)-ancestors P of O of Q^spin(M_P)."""
    if levi is None:
        classes = {P.levi.label: P.levi for P in slice_data}
        if len(classes) != 1:
            raise PreconditionViolated("pass levi= when slice data does not fix a single class")
        levi = next(iter(classes.values()))
    total = 0
    for P in ancestors_of(O, levi, box):
        if P not in slice_data:
            raise MissingAncestorData(f"no slice data for ancestor {P}")
        total += ancestor_contribution(slice_data[P])
    return total


def kirwan_image(desc) -> MomentImage:
    """Exact Kirwan set of a catalog example (descriptor string or object)."""
    from .catalog import build

    return build(desc).kirwan


# -- Duistermaat-Heckman ------------------------------------------------------------------


def _solve(columns: Sequence[Weight], rhs: Weight) -> list[Fraction]:
    n = len(rhs)
    a = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise PreconditionViolated("tangent weights at a fixed point are not independent")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def dh_density(M: FixedPointModel, query: Weight, beta: Optional[Weight] = None) -> int:
    """Signed count of polarized open cones phi(p) + Cone(d_j) containing the query."""
    beta = beta if beta is not None else generic_beta(M)
    total = 0
    for p in M.points:
        if len(p.tangent_weights) != M.rank:
            raise PreconditionViolated("the density is only modelled for toric fixed-point data")
        sign, ds = polarize(p.tangent_weights, beta)
        coeffs = _solve(ds, query - p.phi)
        if any(c < 0 for c in coeffs):
            continue
        if any(c == 0 for c in coeffs):
            raise OnWall(f"{query} lies on a wall of the cone at {p.id}")
        total += p.orientation * sign
    return total


def verify_qr_nonabelian(
    character: CharacterK,
    slice_data_for: Callable[[CoadjointOrbit], Mapping[CoadjointOrbit, SliceEntry]],
    levi: LeviClass,
    box: Box,
) -> QRReport:
    """Compare coefficients of a K-character with ancestor sums, label by label.

    Labels are rho + x for integral x in the box, kept when strictly dominant.
    """
    from .lie_core import rho

    datum = character.datum
    r = rho(datum)
    rows = []
    for x in box.points():
        lam = x + r
        if not (datum.is_dominant(lam) and datum.is_regular(lam)):
            continue
        O = CoadjointOrbit(lam, datum)
        q = multiplicity_via_ancestors(slice_data_for(O), O, levi)
        rows.append(QRRow(lam, character.mults.get(lam, 0), q))
    return QRReport(tuple(rows), kind="nonabelian")
