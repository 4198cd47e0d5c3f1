"""Admissible coadjoint orbits: rho(xi), admissibility, shifts, ancestors.

Orbits are stored by their dominant representative.  The quantization of an
admissible orbit is either zero or an irreducible representation, named here
by its rho-shifted label (``rho`` itself is the trivial representation).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import NotAdmissible, PreconditionViolated
from .lie_core import (
    Box,
    LeviClass,
    RootDatum,
    Weight,
    dominant_representative,
    norm_ball_box,
    rho,
    stabilizer_levi,
)


@dataclass(frozen=True)
class CoadjointOrbit:
    rep: Weight
    datum: RootDatum

    def __post_init__(self):
        if not self.datum.is_dominant(self.rep):
            raise ValueError(f"{self.rep} is not dominant; use CoadjointOrbit.through()")

    @classmethod
    def through(cls, xi: Weight, datum: RootDatum) -> "CoadjointOrbit":
        """The orbit K.xi, normalized to its dominant point."""
        return cls(dominant_representative(xi, datum)[1], datum)

    @property
    def levi(self) -> LeviClass:
        return stabilizer_levi(self.rep, self.datum)

    @property
    def is_regular(self) -> bool:
        return self.levi.is_torus

    @property
    def is_admissible(self) -> bool:
        return is_admissible(self)

    def dual(self) -> "CoadjointOrbit":
        return CoadjointOrbit.through(-self.rep, self.datum)

    def __repr__(self) -> str:
        return f"K{self.rep!r}"


def rho_orbit(datum: RootDatum) -> CoadjointOrbit:
    """o(k), the orbit through rho."""
    return CoadjointOrbit(rho(datum), datum)


@dataclass(frozen=True)
class OrbitQuantization:
    """Zero (``label is None``) or the irreducible pi_label."""

    label: Optional[Weight]

    @property
    def is_zero(self) -> bool:
        return self.label is None

    def __repr__(self) -> str:
        return "Zero" if self.label is None else f"pi{self.label!r}"


ZERO = OrbitQuantization(None)


def rho_of(xi: Weight, datum: RootDatum) -> Weight:
    """Half the sum of the roots that are positive on xi.

    For dominant xi this is the rho of the complex module q^xi.  The same
    expression makes sense for any xi and is Weyl-equivariant.
    """
    total = Weight.zero(datum.rank)
    for a, v in zip(datum.positive_roots, datum.root_pairings(xi)):
        if v > 0:
            total = total + a
        elif v < 0:
            total = total - a
    return total * Fraction(1, 2)


def levi_rho(xi: Weight, datum: RootDatum) -> Weight:
    """rho of the stabilizer of dominant xi, for the induced positive system."""
    total = Weight.zero(datum.rank)
    for a, v in zip(datum.positive_roots, datum.root_pairings(xi)):
        if v == 0:
            total = total + a
    return total * Fraction(1, 2)


def is_admissible(P: CoadjointOrbit) -> bool:
    return P.datum.is_lattice(P.rep - rho_of(P.rep, P.datum))


def shift(P: CoadjointOrbit) -> CoadjointOrbit:
    """s(P) = K(mu + rho^{K_mu}) for mu the dominant point of P."""
    return CoadjointOrbit.through(P.rep + levi_rho(P.rep, P.datum), P.datum)


def qspin_orbit(P: CoadjointOrbit) -> OrbitQuantization:
    if not is_admissible(P):
        raise NotAdmissible(f"{P} is not admissible")
    s = shift(P)
    return OrbitQuantization(s.rep) if s.is_regular else ZERO


def default_ancestor_box(O: CoadjointOrbit) -> Box:
    """A box containing every mu with |mu| <= |lambda|."""
    return norm_ball_box(O.datum, O.datum.norm2(O.rep))


@functools.lru_cache(maxsize=256)
def admissible_orbits(datum: RootDatum, box: Box) -> tuple[CoadjointOrbit, ...]:
    """All admissible orbits whose dominant point lies in the box (half-integral scan)."""
    return tuple(_scan_admissible(datum, box))


def _scan_admissible(datum: RootDatum, box: Box) -> list[CoadjointOrbit]:
    out = []
    for xi in box.half_points():
        if not datum.is_dominant(xi):
            continue
        P = CoadjointOrbit(xi, datum)
        if is_admissible(P):
            out.append(P)
    return out


def ancestors_of(
    O: CoadjointOrbit, h: Optional[LeviClass] = None, search_box: Optional[Box] = None
) -> list[CoadjointOrbit]:
    """Admissible orbits P with stabilizer class h and s(P) = O.

    ``h=None`` means every Levi class.  Admissible points always have 2*mu
    integral, so a half-integral scan of the box is exhaustive.
    """
    if not (O.is_regular and is_admissible(O)):
        raise PreconditionViolated(f"{O} is not regular admissible")
    box = search_box if search_box is not None else default_ancestor_box(O)
    out = []
    for P in admissible_orbits(O.datum, box):
        if h is not None and not P.levi.conjugate_to(h):
            continue
        if shift(P) == O:
            out.append(P)
    return sorted(out, key=lambda P: P.rep)


# -- magical inequality ----------------------------------------------------


@dataclass(frozen=True)
class MagicalReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool
    conclusions_verified: bool


def is_very_regular(lam: Weight, datum: RootDatum) -> bool:
    """lam lies in rho(lam) + C_lam: <alpha, lam - rho(lam)> >= 0 whenever <alpha, lam> > 0."""
    d = lam - rho_of(lam, datum)
    return all(datum.pair(a, d) >= 0 for a in datum.roots if datum.pair(a, lam) > 0)


def magical_check(lam: Weight, mu: Weight, datum: RootDatum) -> MagicalReport:
    """|beta|^2 >= 1/2 nTr_{k_mu}|beta| for beta = mu - lam, plus the equality-case conclusions."""
    if not is_very_regular(lam, datum):
        raise PreconditionViolated(f"{lam} is not very regular")
    beta = mu - lam
    lhs = datum.norm2(beta)
    levi = [a for a in datum.positive_roots if datum.pair(a, mu) == 0]
    rhs = Fraction(1, 2) * sum((abs(datum.pair(a, beta)) for a in levi), Fraction(0))
    equality = lhs == rhs
    verified = True
    if equality:
        same_offset = lam - rho_of(lam, datum) == mu - rho_of(mu, datum)
        same_shift = shift(CoadjointOrbit.through(mu, datum)) == CoadjointOrbit.through(lam, datum)
        verified = same_offset and same_shift
    return MagicalReport(lhs, rhs, lhs >= rhs, equality, verified)


def d_value(theta: Weight, tangent_weights: Sequence[Weight], datum: RootDatum) -> Fraction:
    """|theta|^2 + 1/2 nTr_{T_mM}|theta| - nTr_k|theta|."""
    tangent = sum((abs(datum.pair(w, theta)) for w in tangent_weights), Fraction(0))
    adjoint = sum((abs(datum.pair(a, theta)) for a in datum.positive_roots), Fraction(0))
    return datum.norm2(theta) + tangent / 2 - adjoint


class NonLevi:
    """Marker for a generic stabilizer whose semisimple part is not ([h,h]) for any Levi h."""

    def __init__(self, description: str = ""):
        self.description = description

    def __repr__(self) -> str:
        return f"NonLevi({self.description!r})"


def vanishing_criterion(k_M, datum: RootDatum) -> bool:
    """False means the index is forced to vanish."""
    if isinstance(k_M, NonLevi):
        return False
    return any(k_M.semisimple == h.semisimple for h in datum.levi_classes())


# -- export -------------------------------------------------------------------


def orbit_record(P: CoadjointOrbit) -> dict:
    adm = is_admissible(P)
    record = {
        "group": P.datum.tag,
        "rep": P.rep.to_json(),
        "admissible": adm,
        "regular": P.is_regular,
        "levi": P.levi.semisimple,
        "shift": shift(P).rep.to_json(),
        "qspin": None,
    }
    if adm:
        Q = qspin_orbit(P)
        record["qspin"] = None if Q.is_zero else Q.label.to_json()
    return record


def ancestor_dot(orbits: Iterable[CoadjointOrbit], name: str = "ancestors") -> str:
    """Graphviz digraph with one edge P -> s(P) per admissible P."""

    def node(P: CoadjointOrbit) -> str:
        return '"' + ",".join(P.rep.to_json()) + '"'

    lines = [f"digraph {name} {{"]
    for P in orbits:
        attrs = "shape=box" if P.is_regular else "shape=ellipse"
        lines.append(f"  {node(P)} [{attrs}];")
        s = shift(P)
        if s != P:
            style = "solid" if s.is_regular else "dashed"
            lines.append(f"  {node(P)} -> {node(s)} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
