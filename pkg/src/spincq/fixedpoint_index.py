"""Equivariant Spin^c index of a torus manifold from isolated fixed-point data.

A fixed point p contributes

    o_p * t^{phi(p)} / prod_j (t^{a_j/2} - t^{-a_j/2})

where a_j are the complex tangent weights and phi(p) is the moment value,
which is also the weight of det(S)^{1/2} at p.  Expanding each factor as a
geometric series in the direction selected by a covector beta gives a cone
term; the sum over p is independent of beta.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .characters import ConeTerm, FormalCharacter
from .errors import NonGenericPolarization, PreconditionViolated, UnhandledComponentGeometry
from .lie_core import Weight, dot


@dataclass(frozen=True)
class FixedPoint:
    id: str
    tangent_weights: tuple[Weight, ...]
    s_weight: Weight
    orientation: int
    phi: Weight

    def __post_init__(self):
        object.__setattr__(self, "tangent_weights", tuple(self.tangent_weights))
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +-1")
        for a in self.tangent_weights:
            if not a or not a.is_integral:
                raise ValueError(f"tangent weight {a} at {self.id} must be nonzero integral")
        if not self.s_weight.is_half_integral:
            raise ValueError(f"2*s_weight must be integral at {self.id}")
        if self.phi != self.s_weight:
            raise ValueError(f"moment value and half-determinant weight differ at {self.id}")

    @classmethod
    def make(cls, id: str, tangent, phi, orientation: int = 1) -> "FixedPoint":
        phi = Weight(tuple(phi))
        return cls(id, tuple(Weight(tuple(a)) for a in tangent), phi, orientation, phi)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "tangent": [a.to_json() for a in self.tangent_weights],
            "s_weight": self.s_weight.to_json(),
            "orientation": self.orientation,
            "phi": self.phi.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FixedPoint":
        return cls(
            str(data.get("id", "")),
            tuple(Weight.from_json(a) for a in data["tangent"]),
            Weight.from_json(data["s_weight"]),
            int(data["orientation"]),
            Weight.from_json(data["phi"]),
        )


@dataclass(frozen=True)
class FixedPointModel:
    rank: int
    points: tuple[FixedPoint, ...]
    free_components: tuple[tuple[str, Weight], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "free_components", tuple(self.free_components))
        for p in self.points:
            if len(p.phi) != self.rank or any(len(a) != self.rank for a in p.tangent_weights):
                raise ValueError(f"fixed point {p.id} does not have rank {self.rank}")

    @property
    def dimension(self) -> int:
        """Real dimension, read off the tangent weights."""
        return 2 * len(self.points[0].tangent_weights) if self.points else 0

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "points": [p.to_json() for p in self.points],
            "free": [{"label": lab, "phi": phi.to_json()} for lab, phi in self.free_components],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FixedPointModel":
        return cls(
            int(data["rank"]),
            tuple(FixedPoint.from_json(p) for p in data["points"]),
            tuple((f["label"], Weight.from_json(f["phi"])) for f in data.get("free", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def polarize(weights: Sequence[Weight], beta: Weight) -> tuple[int, tuple[Weight, ...]]:
    """Flip every weight into the half-space beta > 0.

    Returns (product of expansion signs, polarized weights).  A weight already
    positive on beta is expanded as -t^{a/2} sum t^{ka}, hence sign -1.
    """
    sign = 1
    out = []
    for a in weights:
        s = dot(a, beta)
        if s == 0:
            raise NonGenericPolarization(f"weight {a} is orthogonal to {beta}")
        if s > 0:
            sign = -sign
            out.append(a)
        else:
            out.append(-a)
    return sign, tuple(out)


def local_term(p: FixedPoint, beta: Weight) -> ConeTerm:
    sign, ds = polarize(p.tangent_weights, beta)
    offset = p.s_weight
    for d in ds:
        offset = offset + d * Fraction(1, 2)
    if not offset.is_integral:
        raise PreconditionViolated(f"Spin^c condition fails at {p.id}: offset {offset}")
    return ConeTerm(p.orientation * sign, offset, ds, beta)


def global_index(M: FixedPointModel, beta: Weight) -> FormalCharacter:
    return FormalCharacter(M.rank, tuple(local_term(p, beta) for p in M.points))


def generic_beta(M: FixedPointModel) -> Weight:
    """A deterministic covector with <a, beta> != 0 for every tangent weight."""
    weights = {a for p in M.points for a in p.tangent_weights}
    r = M.rank
    for k in range(1, 200):
        # (1, 1/(k+1), 1/(k+1)^2, ...) is off every hyperplane for large enough k
        beta = Weight(tuple(Fraction(1, (k + 1) ** i) for i in range(r)))
        if all(dot(a, beta) != 0 for a in weights):
            return beta
    raise NonGenericPolarization("no generic covector found")  # pragma: no cover


def witten_decomposition(M: FixedPointModel, beta: Optional[Weight] = None) -> dict[Weight, FormalCharacter]:
    """Split the index by level of the moment map.

    Each isolated point at a nonzero level gets its term polarized along its
    own moment value; the zero level (a free component, possibly containing
    fixed points) is whatever remains of the global index.
    """
    zero = Weight.zero(M.rank)
    free = [phi for _, phi in M.free_components]
    if len(free) > 1:
        raise UnhandledComponentGeometry("more than one free component")
    if free and free[0] != zero:
        raise UnhandledComponentGeometry("free components away from level zero are not modelled")
    out: dict[Weight, FormalCharacter] = {}
    rest = []
    for p in M.points:
        if p.phi == zero:
            if not free:
                raise PreconditionViolated(f"fixed point {p.id} sits at level 0 without a free component")
            rest.append(p)
            continue
        if p.phi in out:
            raise UnhandledComponentGeometry(f"two fixed points share the level {p.phi}")
        try:
            term = local_term(p, p.phi)
        except NonGenericPolarization as exc:
            raise UnhandledComponentGeometry(f"{p.id} is not an isolated component: {exc}") from exc
        out[p.phi] = FormalCharacter(M.rank, (term,))
    if free:
        total = global_index(M, beta if beta is not None else generic_beta(M))
        residual = total
        for comp in out.values():
            residual = residual - comp
        out[zero] = residual
    return dict(sorted(out.items()))
