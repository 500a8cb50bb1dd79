"""Numerical shadows of the even Clifford module: Betti numbers and tables.

Everything here is exact integer arithmetic driven by the generator-degree
data of the module F = Ext^ev(P_U, k): even-part generators sit in degree i
with multiplicity C(g+2, 2i), odd-part generators with C(g+2, 2i+1).  The
two-strand Tate shape, the Betti number formulas, the cohomology tables and
the rank-parity obstruction for Ulrich modules all derive from these counts.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .mf import CohomologyTable
from .polymatrix import GradedFreeModule


def fu_even_degrees(g: int) -> dict[int, int]:
    """Generator degrees of the even part: degree i with multiplicity C(g+2, 2i)."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    out = {}
    i = 0
    while 2 * i <= g + 2:
        mult = comb(g + 2, 2 * i)
        if mult:
            out[i] = mult
        i += 1
    return out


def fu_odd_degrees(g: int) -> dict[int, int]:
    """Generator degrees of the odd part: degree i with multiplicity C(g+2, 2i+1)."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    out = {}
    i = 0
    while 2 * i + 1 <= g + 2:
        mult = comb(g + 2, 2 * i + 1)
        if mult:
            out[i] = mult
        i += 1
    return out


def _hilbert(degree_mults: dict[int, int], n: int) -> int:
    return sum(m * max(0, n - d + 1) for d, m in degree_mults.items())


def fu_module(g: int):
    """(GradedFreeModule, rank, degree) of the even Clifford bundle.

    rank = 2^g, degree = g * 2^(g-1); the pushforward degree is
    -(g+2) * 2^(g-1), all cross-checked against the generator multiset.
    """
    mults = fu_even_degrees(g)
    degrees = []
    for d in sorted(mults):
        degrees.extend([d] * mults[d])
    module = GradedFreeModule(degrees)
    if module.rank != 2 ** (g + 1):
        raise ValueError("generator count disagrees with 2^(g+1)")
    rank = module.rank // 2
    deg_push = -sum(degrees)
    if deg_push != -(g + 2) * 2 ** (g - 1):
        raise ValueError("pushforward degree disagrees with -(g+2)2^(g-1)")
    degree = deg_push + rank * (g + 1)
    if degree != g * 2 ** (g - 1):
        raise ValueError("bundle degree disagrees with g 2^(g-1)")
    return module, rank, degree


def betti_number(g: int, i: int) -> int:
    """a_i of the linear strand: a_2p = sum (p-j+1) C(g+2, 2j), odd analogously."""
    if i < 0:
        return 0
    p, rem = divmod(i, 2)
    total = 0
    for j in range(p + 1):
        k = 2 * j + rem
        total += (p - j + 1) * comb(g + 2, k)
    return total


def betti_numbers(g: int, count: int) -> list[int]:
    return [betti_number(g, i) for i in range(count)]


class BettiTable:
    """Two-strand Betti display with a finite overlap.

    ``lower`` lists a_0, a_1, ... left to right; ``upper`` is the quadratic
    strand as displayed (so its right end reverses the start of ``lower``).
    The strand duality pins upper values: the entry sitting over lower index
    i is a_{overlap - 1 - i}.
    """

    def __init__(self, lower, upper, overlap: int):
        self.lower = list(lower)
        self.upper = list(upper)
        self.overlap = overlap
        for k in range(min(self.overlap, len(self.lower), len(self.upper))):
            if self.upper[-1 - k] != self.lower[k]:
                raise ValueError("strand duality violated on the overlap")

    def columns(self):
        """Rows padded to a common width; upper ends at column overlap-1 of lower."""
        upper_start = 0
        lower_start = len(self.upper) - self.overlap
        width = max(len(self.upper), lower_start + len(self.lower))
        top = [None] * width
        bottom = [None] * width
        for k, v in enumerate(self.upper):
            top[upper_start + k] = v
        for k, v in enumerate(self.lower):
            bottom[lower_start + k] = v
        return top, bottom

    def render(self) -> str:
        top, bottom = self.columns()
        shown = [v for v in top + bottom if v is not None]
        w = max(len(str(v)) for v in shown)
        blank = " " * w

        def fmt(row, lead, tail):
            cells = [str(v).rjust(w) if v is not None else blank for v in row]
            return (lead + " ".join(cells) + tail).rstrip()

        return "\n".join(
            [fmt(top, "... ", ""), fmt(bottom, "    ", " ...")]
        )


def tate_shape(g: int, n_terms: int | None = None) -> BettiTable:
    """Tate-resolution shape of the isotropic-plane module: overlap g."""
    if n_terms is None:
        n_terms = 2 * g
    lower = betti_numbers(g, n_terms)
    upper = list(reversed(betti_numbers(g, n_terms - 1)))
    return BettiTable(lower, upper, overlap=g)


def chi_and_parity(g: int, r: int, d: int):
    """(chi of the twisted bundle, Ulrich rank on X, parity admissibility).

    chi = d 2^g + r g 2^(g-1) + r 2^g (1-g); the Ulrich module built from a
    rank-r bundle has rank r 2^(g-2); chi can vanish for an integer twist d
    exactly when r*g is even.
    """
    if r < 1:
        raise ValueError("bundle rank must be positive")
    chi = d * 2**g + r * g * 2 ** (g - 1) + r * 2**g * (1 - g)
    rank_x = Fraction(r * 2**g, 4)
    if rank_x.denominator == 1:
        rank_x = int(rank_x)
    admissible = (r * g) % 2 == 0
    return chi, rank_x, admissible


def fu_h0(g: int, n: int) -> int:
    """h^0 of the even Clifford bundle twisted by n ramification points."""
    if n % 2 == 0:
        return _hilbert(fu_even_degrees(g), n // 2)
    return _hilbert(fu_odd_degrees(g), (n - 1) // 2)


def fu_cohomology_table(g: int, n0: int, n1: int) -> CohomologyTable:
    _, rank, degree = fu_module(g)
    twists = list(range(n0, n1 + 1))
    h0 = [fu_h0(g, n) for n in twists]
    chi = lambda n: degree + n * rank + rank * (1 - g)
    h1 = [a - chi(n) for a, n in zip(h0, twists)]
    return CohomologyTable(twists, h0, h1, rank, degree, g)


def sum_with_shift_table(g: int, n0: int, n1: int, shift: int | None = None) -> CohomologyTable:
    """Cohomology table of the direct sum of the bundle and its shift.

    Models tensoring with (degree-0 line bundle) (+) (degree-g line bundle):
    the second summand's table is the first one shifted by g twists.
    """
    if shift is None:
        shift = g
    _, rank, degree = fu_module(g)
    twists = list(range(n0, n1 + 1))
    h0 = [fu_h0(g, n) + fu_h0(g, n + shift) for n in twists]
    rank2 = 2 * rank
    degree2 = degree + (degree + shift * rank)
    chi = lambda n: degree2 + n * rank2 + rank2 * (1 - g)
    h1 = [a - chi(n) for a, n in zip(h0, twists)]
    return CohomologyTable(twists, h0, h1, rank2, degree2, g)


def format_tate_style(table: CohomologyTable) -> str:
    """Staggered two-row rendering: column j holds h1(j p) over h0((j+1) p)."""
    cols = table.twists[:-1]
    top = [table.h1[table.twists.index(j)] for j in cols]
    bottom = [table.h0[table.twists.index(j + 1)] for j in cols]
    shown = [v for v in top + bottom if v]
    w = max(len(str(v)) for v in shown) if shown else 1
    blank = " " * w

    def fmt(row, lead, tail):
        cells = [str(v).rjust(w) if v else blank for v in row]
        return (lead + " ".join(cells) + tail).rstrip()

    return "\n".join([fmt(top, "... ", ""), fmt(bottom, "    ", " ...")])
