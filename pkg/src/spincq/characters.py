"""Characters: finite virtual K-characters and infinite torus characters.

An infinite torus character is kept as a finite signed list of polarized
cone series, ``sign * t^offset * prod_j (sum_{k>=0} t^{k d_j})``, together
with a finite tail of monomials.  Multiplicities are read off one weight at a
time by bounded vector-partition enumeration; nothing infinite is ever
materialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InfiniteSupport, PreconditionViolated
from .lie_core import Box, RootDatum, Singular, Weight, dot, rho, weyl_normalize


# -- K-characters -------------------------------------------------------------


@dataclass(frozen=True)
class CharacterK:
    """Finite virtual character sum m_lambda pi_lambda, keyed by rho-shifted labels."""

    datum: RootDatum
    mults: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        r = rho(self.datum)
        for lam, m in self.mults.items():
            if not (self.datum.is_dominant(lam) and self.datum.is_regular(lam)):
                raise ValueError(f"label {lam} is not strictly dominant")
            if not self.datum.is_lattice(lam - r):
                raise ValueError(f"label {lam} is not in rho + lattice")
            if m:
                clean[lam] = int(m)
        object.__setattr__(self, "mults", dict(sorted(clean.items())))

    @classmethod
    def from_terms(cls, datum: RootDatum, terms: Iterable[tuple[Weight, int]]) -> "CharacterK":
        acc: dict[Weight, int] = {}
        for lam, m in terms:
            acc[lam] = acc.get(lam, 0) + m
        return cls(datum, acc)

    def __add__(self, other: "CharacterK") -> "CharacterK":
        return CharacterK.from_terms(self.datum, list(self.mults.items()) + list(other.mults.items()))

    def __neg__(self) -> "CharacterK":
        return CharacterK(self.datum, {k: -v for k, v in self.mults.items()})

    def __sub__(self, other: "CharacterK") -> "CharacterK":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, CharacterK) and self.datum == other.datum and self.mults == other.mults

    def __hash__(self):
        return hash((self.datum.tag, tuple(self.mults.items())))

    def to_json(self) -> list[dict]:
        return [{"label": lam.to_json(), "mult": m} for lam, m in self.mults.items()]

    @classmethod
    def from_json(cls, datum: RootDatum, data: Sequence[dict]) -> "CharacterK":
        return cls.from_terms(datum, ((Weight.from_json(d["label"]), int(d["mult"])) for d in data))

    def __repr__(self) -> str:
        body = " + ".join(f"{m}*pi{lam!r}" for lam, m in self.mults.items()) or "0"
        return f"CharacterK({body})"


def coefficient(c: CharacterK, O) -> int:
    """Multiplicity of pi_O in c, where O is a regular admissible orbit."""
    return c.mults.get(O.rep, 0)


# -- torus characters -----------------------------------------------------------


@dataclass(frozen=True)
class ConeTerm:
    """sign * t^offset * prod_j sum_{k>=0} t^{k d_j}, with <d_j, witness> > 0 for all j."""

    sign: int
    offset: Weight
    denominators: tuple[Weight, ...]
    witness: Weight

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        if not self.offset.is_integral:
            raise ValueError(f"offset {self.offset} is not integral")
        for d in self.denominators:
            if not d.is_integral or not d:
                raise ValueError(f"bad denominator {d}")
            if dot(d, self.witness) <= 0:
                raise ValueError(f"denominator {d} is not polarized by {self.witness}")

    def negate(self) -> "ConeTerm":
        return ConeTerm(-self.sign, self.offset, self.denominators, self.witness)

    def count(self, mu: Weight) -> int:
        """Number of (k_j >= 0) with offset + sum k_j d_j = mu."""
        return _partition_count(mu - self.offset, self.denominators, self.witness)


def _partition_count(target: Weight, gens: Sequence[Weight], witness: Weight) -> int:
    if not gens:
        return 1 if not target else 0
    height = dot(target, witness)
    if height < 0:
        return 0
    d, rest = gens[0], gens[1:]
    bound = height // dot(d, witness)
    if not rest:
        # single generator: target must be an exact multiple
        k = None
        for i, (t, g) in enumerate(zip(target.coords, d.coords)):
            if g != 0:
                k = t / g
                break
        if k is None or k.denominator != 1 or k < 0:
            return 0
        return 1 if d * k == target else 0
    return sum(_partition_count(target - d * k, rest, witness) for k in range(int(bound) + 1))


@dataclass(frozen=True)
class FormalCharacter:
    """A torus character with possibly infinite support, queryable pointwise."""

    rank: int
    terms: tuple[ConeTerm, ...] = ()
    tail: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "tail", {k: v for k, v in sorted(self.tail.items()) if v})

    @classmethod
    def zero(cls, rank: int) -> "FormalCharacter":
        return cls(rank)

    @classmethod
    def polynomial(cls, rank: int, monomials: Mapping[Weight, int]) -> "FormalCharacter":
        return cls(rank, (), dict(monomials))

    @property
    def is_finite(self) -> bool:
        return not self.terms

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        tail = dict(self.tail)
        for k, v in other.tail.items():
            tail[k] = tail.get(k, 0) + v
        return FormalCharacter(self.rank, self.terms + other.terms, tail)

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter(self.rank, tuple(t.negate() for t in self.terms),
                               {k: -v for k, v in self.tail.items()})

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def mult_at(self, mu: Weight) -> int:
        return mult_at(self, mu)


def mult_at(F: FormalCharacter, mu: Weight) -> int:
    if not mu.is_integral:
        raise PreconditionViolated(f"{mu} is not integral")
    total = F.tail.get(mu, 0)
    for t in F.terms:
        total += t.sign * t.count(mu)
    return total


def window(F: FormalCharacter, box: Box) -> np.ndarray:
    """mult_at over the box, as an integer array of shape box.shape (lexicographic)."""
    values = [mult_at(F, mu) for mu in box.points()]
    return np.array(values, dtype=np.int64).reshape(box.shape)


# -- weight multiplicities of irreducibles ---------------------------------------


def _kostant(x: Weight, datum: RootDatum) -> int:
    """Number of ways to write x as a nonneg integer sum of positive roots."""
    pos = datum.positive_roots
    if not pos:
        return 1 if not x else 0
    # any covector strictly positive on positive roots works as a witness
    witness = _positive_witness(datum)
    return _partition_count(x, pos, witness)


def _positive_witness(datum: RootDatum) -> Weight:
    # pairing with rho through the gram is positive on every positive root
    from .lie_core import raise_index

    return raise_index(datum, rho(datum))


def _lowering_bound(top: Weight, datum: RootDatum) -> int:
    """How far below the highest weight a weight of the irreducible can sit."""
    if not datum.positive_roots:
        return 0
    # weights lie between top and w0(top); sum of coordinates of top - w0 top in simple roots
    low = min((w(top) for w in datum.weyl_group), key=lambda v: datum.pair(v, rho(datum)))
    diff = top - low
    return int(sum(abs(c) for c in diff.coords)) + 1


def irreducible_weights(lam: Weight, datum: RootDatum) -> dict[Weight, int]:
    """T-weight multiplicities of pi_lam (lam rho-shifted) by Kostant's alternating sum."""
    r = rho(datum)
    top = lam - r
    if not datum.positive_roots:
        return {top: 1}
    simple = datum.simple_roots
    bound = _lowering_bound(top, datum)
    out: dict[Weight, int] = {}
    for ns in itertools.product(range(bound + 1), repeat=len(simple)):
        gamma = top
        for n, a in zip(ns, simple):
            gamma = gamma - a * n
        m = sum(w.sign * _kostant(w(lam) - gamma - r, datum) for w in datum.weyl_group)
        if m:
            out[gamma] = m
    return out


def restrict_to_torus(c: CharacterK) -> FormalCharacter:
    acc: dict[Weight, int] = {}
    for lam, m in c.mults.items():
        for gamma, k in irreducible_weights(lam, c.datum).items():
            acc[gamma] = acc.get(gamma, 0) + m * k
    return FormalCharacter.polynomial(c.datum.rank, acc)


# -- holomorphic induction -----------------------------------------------------


def holomorphic_induct(H_weights: FormalCharacter, rho_C: Weight, datum: RootDatum) -> CharacterK:
    """Sum over H-labels nu of mult(nu) times the Weyl-normalized pi_{nu + rho_C}.

    ``nu`` are rho_H-shifted labels of the inducing subgroup (plain weights when
    it is a torus).  Labels on a wall contribute nothing.
    """
    if not H_weights.is_finite:
        raise InfiniteSupport("holomorphic induction needs a finite H-character")
    acc: dict[Weight, int] = {}
    for nu, m in H_weights.tail.items():
        res = weyl_normalize(nu + rho_C, datum)
        if res is Singular:
            continue
        sign, lam = res
        acc[lam] = acc.get(lam, 0) + sign * m
    return CharacterK(datum, acc)


def character_from_polynomial(rank: int, monomials: Iterable[tuple[Sequence, int]]) -> FormalCharacter:
    acc: dict[Weight, int] = {}
    for coords, m in monomials:
        w = Weight(tuple(coords))
        acc[w] = acc.get(w, 0) + m
    return FormalCharacter.polynomial(rank, acc)
