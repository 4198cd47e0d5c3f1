"""Exact root data, Weyl groups and weight arithmetic for the supported groups.

Supported tags are ``torus:r``, ``su2``, ``u2`` and ``su3``.  All coordinates
are :class:`fractions.Fraction`; nothing in here touches floating point.

Coordinates are taken in the standard ``e_i`` basis for tori and U(2), and in
the fundamental-weight basis for SU(2) and SU(3), so that the weight lattice is
always ``Z^r`` coordinate-wise.  The invariant inner product is the trace form
of the defining representation.  Any other Weyl-invariant form gives the same
answers for every yes/no question asked in this package (admissibility,
regularity, shifts, ancestors); only the equality-case arithmetic of the
magical inequality depends on the choice, per simple factor, up to scale.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence


def q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or 'p/q' strings")
    return Fraction(x)


def fmt_q(x: Fraction) -> str:
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Weight:
    """An element of t* with exact rational coordinates."""

    coords: tuple[Fraction, ...]

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        object.__setattr__(self, "coords", tuple(q(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    @classmethod
    def _raw(cls, coords: tuple) -> "Weight":
        # trusted constructor: coords already a tuple of Fractions
        w = object.__new__(cls)
        object.__setattr__(w, "coords", coords)
        return w

    def __add__(self, other: "Weight") -> "Weight":
        return Weight._raw(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight._raw(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight._raw(tuple(-a for a in self.coords))

    def __mul__(self, s) -> "Weight":
        s = q(s)
        return Weight._raw(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_half_integral(self) -> bool:
        """True when 2*coords is integral (rho-shifted lattice)."""
        return all((2 * c).denominator == 1 for c in self.coords)

    def __repr__(self) -> str:
        return "Weight(" + ", ".join(fmt_q(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [fmt_q(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence) -> "Weight":
        return cls(tuple(q(x) for x in data))


Matrix = tuple[tuple[Fraction, ...], ...]


def _mat(rows) -> Matrix:
    return tuple(tuple(q(x) for x in row) for row in rows)


def _matvec(m: Matrix, v: Weight) -> Weight:
    return Weight._raw(tuple(sum((a * b for a, b in zip(row, v.coords)), Fraction(0)) for row in m))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0])
    return tuple(
        tuple(sum((row[k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(n))
        for row in a
    )


def _det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    return sum(
        ((-1) ** j * m[0][j] * _det(tuple(row[:j] + row[j + 1:] for row in m[1:])) for j in range(n)),
        Fraction(0),
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    length: int

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def __call__(self, v: Weight) -> Weight:
        return _matvec(self.matrix, v)


@dataclass(frozen=True)
class LeviClass:
    """Stabilizer algebra of a point of t*: the roots it contains.

    ``roots`` is the actual positive-root subset; two LeviClass values with
    different subsets may still be conjugate, which is what ``label`` (and
    :meth:`conjugate_to`) compares.
    """

    roots: frozenset
    center_dim: int
    semisimple: str

    @property
    def label(self) -> tuple[str, int]:
        return (self.semisimple, self.center_dim)

    def conjugate_to(self, other: "LeviClass") -> bool:
        return self.label == other.label

    @property
    def is_torus(self) -> bool:
        return not self.roots

    def __repr__(self) -> str:
        return f"LeviClass({self.semisimple}, center_dim={self.center_dim}, roots={sorted(self.roots)})"


_SEMISIMPLE_BY_ROOT_COUNT = {0: "0", 1: "su(2)", 3: "su(3)"}


@dataclass(frozen=True)
class RootDatum:
    """Root system of one of the supported groups, in a fixed lattice basis."""

    tag: str
    rank: int
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    gram: Matrix
    # fundamental weights of the semisimple part, in the same basis
    fundamental: tuple[Weight, ...] = ()
    weyl_generators: tuple[Matrix, ...] = field(default=(), repr=False)

    # -- construction -----------------------------------------------------

    @classmethod
    @functools.cache
    def torus(cls, r: int) -> "RootDatum":
        return cls(f"torus:{r}", r, (), (), _identity(r))

    @classmethod
    @functools.cache
    def su2(cls) -> "RootDatum":
        alpha = Weight(2)
        return cls("su2", 1, (alpha,), (alpha,), _mat([[Fraction(1, 2)]]),
                   fundamental=(Weight(1),), weyl_generators=(_mat([[-1]]),))

    @classmethod
    @functools.cache
    def u2(cls) -> "RootDatum":
        alpha = Weight(1, -1)
        return cls("u2", 2, (alpha,), (alpha,), _identity(2),
                   weyl_generators=(_mat([[0, 1], [1, 0]]),))

    @classmethod
    @functools.cache
    def su3(cls) -> "RootDatum":
        a1, a2 = Weight(2, -1), Weight(-1, 2)
        gram = _mat([[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]])
        s1 = _mat([[-1, 0], [1, 1]])
        s2 = _mat([[1, 1], [0, -1]])
        return cls("su3", 2, (a1, a2, a1 + a2), (a1, a2), gram,
                   fundamental=(Weight(1, 0), Weight(0, 1)), weyl_generators=(s1, s2))

    @classmethod
    def from_tag(cls, tag: str) -> "RootDatum":
        tag = tag.strip().lower()
        if tag == "su2":
            return cls.su2()
        if tag == "u2":
            return cls.u2()
        if tag == "su3":
            return cls.su3()
        if tag.startswith("torus"):
            _, _, r = tag.partition(":")
            r = int(r) if r else 1
            if r < 1:
                raise ValueError(f"torus rank must be positive, got {r}")
            return cls.torus(r)
        raise ValueError(f"unsupported group tag {tag!r}")

    def to_json(self) -> dict:
        if self.tag.startswith("torus"):
            return {"group": "torus", "rank": self.rank}
        return {"group": self.tag}

    @classmethod
    def from_json(cls, data: dict) -> "RootDatum":
        group = data["group"]
        if group == "torus":
            return cls.torus(int(data.get("rank", 1)))
        return cls.from_tag(group)

    # -- basic structure ----------------------------------------------------

    @property
    def roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + tuple(-a for a in self.positive_roots)

    def pair(self, x: Weight, y: Weight) -> Fraction:
        """Invariant inner product <x, y>."""
        gx = _matvec(self.gram, y)
        return sum((a * b for a, b in zip(x.coords, gx.coords)), Fraction(0))

    @cached_property
    def _positive_covectors(self) -> tuple[Weight, ...]:
        return tuple(_matvec(self.gram, a) for a in self.positive_roots)

    @cached_property
    def _simple_covectors(self) -> tuple[Weight, ...]:
        return tuple(_matvec(self.gram, a) for a in self.simple_roots)

    def root_pairings(self, x: Weight) -> tuple[Fraction, ...]:
        """<alpha, x> for every positive root alpha, in order."""
        return tuple(dot(c, x) for c in self._positive_covectors)

    def norm2(self, x: Weight) -> Fraction:
        return self.pair(x, x)

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        """All Weyl group elements, enumerated by closure under simple reflections."""
        ident = _identity(self.rank)
        found = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for s in self.weyl_generators:
                    p = _matmul(s, m)
                    if p not in found:
                        found[p] = found[m] + 1
                        nxt.append(p)
            frontier = nxt
        # BFS depth is the Coxeter length; det fixes the parity independently
        elems = tuple(WeylElement(m, n) for m, n in found.items())
        for w in elems:
            assert (-1) ** w.length == _det(w.matrix)
        return tuple(sorted(elems, key=lambda w: (w.length, w.matrix)))

    def is_lattice(self, x: Weight) -> bool:
        return x.is_integral

    def is_dominant(self, x: Weight) -> bool:
        return all(dot(c, x) >= 0 for c in self._simple_covectors)

    def is_regular(self, x: Weight) -> bool:
        return all(v != 0 for v in self.root_pairings(x))

    @property
    def is_semisimple(self) -> bool:
        return self.tag in ("su2", "su3")

    # -- Levi classes -------------------------------------------------------

    def levi_from_roots(self, roots: Iterable[Weight]) -> LeviClass:
        roots = frozenset(roots)
        ss = _SEMISIMPLE_BY_ROOT_COUNT[len(roots)]
        rank_ss = {"0": 0, "su(2)": 1, "su(3)": 2}[ss]
        return LeviClass(roots, self.rank - rank_ss, ss)

    def levi_classes(self) -> list[LeviClass]:
        """One representative per conjugacy class of stabilizers, from faces of the dominant chamber."""
        out: list[LeviClass] = []
        for k in range(len(self.simple_roots) + 1):
            for subset in itertools.combinations(self.simple_roots, k):
                span = [a for a in self.positive_roots if _in_span(a, subset)]
                levi = self.levi_from_roots(span)
                if not any(levi.conjugate_to(o) for o in out):
                    out.append(levi)
        return out


def _in_span(alpha: Weight, basis: Sequence[Weight]) -> bool:
    """Whether alpha is a nonneg integer combination of basis (tiny rank brute force)."""
    if not basis:
        return not alpha
    ranges = [range(0, 3)] * len(basis)
    for coeffs in itertools.product(*ranges):
        s = Weight.zero(len(alpha))
        for c, b in zip(coeffs, basis):
            s = s + b * c
        if s == alpha and any(coeffs):
            return True
    return False


def rho(datum: RootDatum) -> Weight:
    """Half the sum of the positive roots."""
    total = Weight.zero(datum.rank)
    for a in datum.positive_roots:
        total = total + a
    return total * Fraction(1, 2)


def stabilizer_levi(xi: Weight, datum: RootDatum) -> LeviClass:
    return datum.levi_from_roots(
        a for a, v in zip(datum.positive_roots, datum.root_pairings(xi)) if v == 0
    )


class _Singular:
    """Returned by :func:`weyl_normalize` for points on a wall."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Singular"

    def __bool__(self) -> bool:
        return False


Singular = _Singular()


def dominant_representative(xi: Weight, datum: RootDatum) -> tuple[int, Weight]:
    """Some Weyl conjugate of xi in the closed dominant chamber, with det(w)."""
    for w in datum.weyl_group:
        y = w(xi)
        if datum.is_dominant(y):
            return w.sign, y
    raise AssertionError("no dominant conjugate found")  # pragma: no cover


def weyl_normalize(xi: Weight, datum: RootDatum):
    """Return ``(sign, dominant)`` for regular xi, or :data:`Singular` on a wall."""
    if not datum.is_regular(xi):
        return Singular
    return dominant_representative(xi, datum)


def normalized_trace(weights: Iterable[Weight], b: Weight, datum: RootDatum) -> Fraction:
    """Sum of |<w, b>| over the listed (complex or signed real) weights."""
    return sum((abs(datum.pair(w, b)) for w in weights), Fraction(0))


def adjoint_weights(datum: RootDatum) -> tuple[Weight, ...]:
    """Weights of k/t, one per real root pair."""
    return datum.positive_roots


def gram_inverse(datum: RootDatum) -> Matrix:
    """Exact inverse of the gram matrix by Gauss-Jordan elimination."""
    n = datum.rank
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(datum.gram)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def raise_index(datum: RootDatum, xi: Weight) -> Weight:
    """The covector X -> <xi, X>, in coordinates dual to the lattice basis."""
    return _matvec(datum.gram, xi)


def dot(x: Weight, y: Weight) -> Fraction:
    """Plain coordinate pairing of a weight with a covector."""
    total = Fraction(0)
    for a, b in zip(x.coords, y.coords):
        if a and b:
            total += a * b
    return total


@dataclass(frozen=True)
class Box:
    """Closed integer coordinate box ``lo[i] <= x[i] <= hi[i]``."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("box bounds have different lengths")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"empty box {self.lo}..{self.hi}")

    @classmethod
    def cube(cls, lo: int, hi: int, rank: int) -> "Box":
        return cls((lo,) * rank, (hi,) * rank)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Box":
        """``"R"`` (symmetric), ``"lo:hi"`` or per-axis ``"lo:hi,lo:hi"``."""
        parts = text.split(",")
        bounds = []
        for part in parts:
            if ":" in part:
                a, b = part.split(":")
                bounds.append((int(a), int(b)))
            else:
                r = int(part)
                bounds.append((-r, r))
        if len(bounds) == 1:
            bounds = bounds * rank
        if len(bounds) != rank:
            raise ValueError(f"box {text!r} does not have {rank} axes")
        return cls(tuple(b[0] for b in bounds), tuple(b[1] for b in bounds))

    @property
    def rank(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    def points(self) -> Iterator[Weight]:
        """Integral points in lexicographic order."""
        for c in itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))):
            yield Weight(c)

    def half_points(self) -> Iterator[Weight]:
        """Points with 2*x integral, lexicographic."""
        ranges = (range(2 * a, 2 * b + 1) for a, b in zip(self.lo, self.hi))
        for c in itertools.product(*ranges):
            yield Weight(tuple(Fraction(x, 2) for x in c))

    def __contains__(self, x: Weight) -> bool:
        return all(a <= c <= b for a, c, b in zip(self.lo, x.coords, self.hi))

    def to_text(self) -> str:
        return ",".join(f"{a}:{b}" for a, b in zip(self.lo, self.hi))


def norm_ball_box(datum: RootDatum, radius2: Fraction) -> Box:
    """Smallest integer box containing every x with <x,x> <= radius2.

    Uses max x_i^2 over the ellipsoid = radius2 * (G^-1)_ii, rounded outward
    with integer square roots.
    """
    inv = gram_inverse(datum)
    bounds = []
    for i in range(datum.rank):
        m = q(radius2) * inv[i][i]
        # smallest integer b with b^2 >= m
        b = math.isqrt(math.floor(m))
        if b * b < m:
            b += 1
        bounds.append(b)
    return Box(tuple(-b for b in bounds), tuple(bounds))
