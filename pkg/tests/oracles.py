"""Independent reference computations used by the tests.

None of these reuse the package's enumeration code paths: series are expanded
by brute-force truncated products, SU(3) weights come from Gelfand-Tsetlin
patterns, and finite indices are checked by evaluating the fixed-point
rational function at a numeric point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from spincq.lie_core import Weight


def truncated_series(sign, offset, denominators, order):
    """sign * t^offset * prod_j sum_{k=0}^{order} t^{k d_j} as a dict."""
    poly = {tuple(offset.coords): sign}
    for d in denominators:
        nxt = {}
        for mono, c in poly.items():
            for k in range(order + 1):
                key = tuple(m + k * x for m, x in zip(mono, d.coords))
                nxt[key] = nxt.get(key, 0) + c
        poly = nxt
    return poly


def truncation_order(term, window_points):
    """An order N such that no contribution with some k_j > N lands in the window."""
    heights = [sum((m - o) * w for m, o, w in zip(mu.coords, term.offset.coords, term.witness.coords))
               for mu in window_points]
    top = max(heights + [Fraction(0)])
    step = min(sum(a * w for a, w in zip(d.coords, term.witness.coords)) for d in term.denominators) \
        if term.denominators else Fraction(1)
    return int(top / step) + 1


def su3_weights_gt(a: int, b: int) -> dict:
    """Weight multiplicities of the SU(3) irreducible with highest weight a w1 + b w2.

    Counted by Gelfand-Tsetlin patterns (m1, m2, 0 / x1, x2 / y); the e-basis
    weight is converted to fundamental-weight coordinates.
    """
    m1, m2 = a + b, b
    out = {}
    for x1 in range(m2, m1 + 1):
        for x2 in range(0, m2 + 1):
            for y in range(x2, x1 + 1):
                e = (y, x1 + x2 - y, m1 + m2 - x1 - x2)
                w = Weight(e[0] - e[1], e[1] - e[2])
                out[w] = out.get(w, 0) + 1
    return out


def u2_weights_string(l1: Fraction, l2: Fraction) -> dict:
    """Weights of the U(2) irreducible with rho-shifted label (l1, l2), as a string."""
    n = int(l1 - l2) - 1
    return {Weight(l1 - Fraction(1, 2) - j, l2 + Fraction(1, 2) + j): 1 for j in range(n + 1)}


def fixed_point_sum_at(model, t):
    """Evaluate sum_p o_p t^phi / prod (t^{a/2} - t^{-a/2}) at t = s^2, given s (exact).

    ``t`` is a tuple of exact square roots (s_1, ..., s_r) so half-integer
    exponents stay rational.
    """
    def mono(coords):
        val = Fraction(1)
        for s, c in zip(t, coords):
            # s^(2c) with 2c integral
            val *= Fraction(s) ** int(2 * c)
        return val

    total = Fraction(0)
    for p in model.points:
        num = p.orientation * mono(p.phi.coords)
        den = Fraction(1)
        for a in p.tangent_weights:
            half = tuple(Fraction(c, 2) for c in a.coords)
            den *= mono(half) - mono(tuple(-x for x in half))
        total += num / den
    return total


def laurent_at(mults: dict, t):
    total = Fraction(0)
    for w, m in mults.items():
        val = Fraction(m)
        for s, c in zip(t, w.coords):
            val *= Fraction(s) ** int(2 * c)
        total += val
    return total


def box_points(lo, hi, rank):
    return [Weight(c) for c in itertools.product(range(lo, hi + 1), repeat=rank)]
