"""Colored and type B Eulerian polynomials and half-open box counting.

``A_{d,l}^{(r)}`` is the numerator of the Ehrhart series of the half-open
box ``[0,r]^d`` with ``l`` upper facets removed.  It is computed three ways:
from finite differences of the lattice-point polynomial, by enumerating
colored permutations by ``l``-descents, and by brute-force lattice counting
followed by interpolation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import BudgetExceededError, InputRangeError
from .polyreal import IntPolynomial, reverse

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class ColoredPermutation:
    pi: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
            raise InputRangeError(f"{self.pi} is not a permutation of 1..{len(self.pi)}")
        if len(self.colors) != len(self.pi):
            raise InputRangeError("colors and pi differ in length")


@dataclass(frozen=True)
class SignedPermutation:
    pi: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
            raise InputRangeError(f"{self.pi} is not a permutation of 1..{len(self.pi)}")
        if len(self.signs) != len(self.pi) or any(s not in (-1, 1) for s in self.signs):
            raise InputRangeError("signs must be a +-1 sequence aligned with pi")

    def values(self) -> tuple[int, ...]:
        return tuple(s * p for s, p in zip(self.signs, self.pi))


@dataclass(frozen=True)
class HalfOpenBox:
    """``[0,r]^d`` with ``ell`` facets removed in normal form.

    For ``ell <= d`` the upper facets ``x_d = r, ..., x_{d+1-ell} = r`` are
    removed.  For ``ell > d`` all upper facets go, plus the lower facets
    ``x_d = 0, ..., x_{2d+1-ell} = 0``.
    """

    d: int
    r: int
    ell: int

    def __post_init__(self):
        if self.d < 1 or self.r < 1:
            raise InputRangeError("need d >= 1 and r >= 1")
        if not 0 <= self.ell <= 2 * self.d:
            raise InputRangeError(f"ell={self.ell} outside [0, {2 * self.d}]")

    def open_sides(self) -> tuple[int, int]:
        """(number of coordinates missing only the top value, number missing both ends)."""
        if self.ell <= self.d:
            return self.ell, 0
        return 2 * self.d - self.ell, self.ell - self.d

    def euler_characteristic(self) -> int:
        if self.ell == 0:
            return 1
        if self.ell == 2 * self.d:
            return (-1) ** self.d
        return 0


def _check(d: int, ell: int, r: int) -> None:
    if d < 1:
        raise InputRangeError("d must be positive")
    if r < 1:
        raise InputRangeError("r must be positive")
    if not 0 <= ell <= d:
        raise InputRangeError(f"ell={ell} outside [0, {d}]")


def colored_eulerian(d: int, ell: int, r: int) -> IntPolynomial:
    """``A_{d,ell}^{(r)}`` from finite differences of ``(rt)^ell (rt+1)^(d-ell)``.

    >>> str(colored_eulerian(2, 1, 2))
    '6x+2x^2'
    >>> str(colored_eulerian(2, 0, 1))
    '1+x'
    """
    _check(d, ell, r)

    def g(t: int) -> int:
        return (r * t) ** ell * (r * t + 1) ** (d - ell)

    return IntPolynomial(
        sum((-1) ** j * math.comb(d + 1, j) * g(k - j) for j in range(k + 1)) for k in range(d + 1)
    )


def _budget(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceededError(f"enumeration of {count} objects exceeds budget {budget}")


def colored_permutations(d: int, r: int) -> Iterator[ColoredPermutation]:
    for pi in itertools.permutations(range(1, d + 1)):
        for colors in itertools.product(range(r), repeat=d):
            yield ColoredPermutation(pi, colors)


def colored_descents(w: ColoredPermutation, ell: int) -> int:
    """Size of the ``ell``-descent set of a colored permutation.

    Letters compare by color first (larger color is smaller) and then by
    value; position 0 compares against the letter ``0`` of color 0, and is
    also counted when ``pi_1 <= ell``.
    """
    keys = [(0, 0)] + [(-c, p) for p, c in zip(w.pi, w.colors)]
    des = {i for i in range(len(w.pi)) if keys[i] > keys[i + 1]}
    if w.pi and w.pi[0] <= ell:
        des.add(0)
    return len(des)


def colored_eulerian_by_descents(d: int, ell: int, r: int, budget: int = DEFAULT_BUDGET) -> IntPolynomial:
    """``A_{d,ell}^{(r)}`` by enumerating ``ell``-descents of colored permutations."""
    _check(d, ell, r)
    _budget(r**d * math.factorial(d), budget)
    counts = [0] * (d + 1)
    for w in colored_permutations(d, r):
        counts[colored_descents(w, ell)] += 1
    return IntPolynomial(counts)


def signed_descents(w: SignedPermutation) -> int:
    """Descents of a signed permutation at positions ``0..d-1`` with ``w_0 = 0``."""
    vals = (0,) + w.values()
    return sum(1 for i in range(len(w.pi)) if vals[i] > vals[i + 1])


def type_b_l_eulerian(d: int, ell: int, budget: int = DEFAULT_BUDGET) -> IntPolynomial:
    """Type B ``ell``-Eulerian polynomial ``B_{d,ell}``.

    Sums ``x^des`` over signed permutations whose last value is
    ``d + 1 - ell``.  No extra descent is added at position ``d``: with the
    last value pinned inside ``[d+1-ell, d]`` that extra descent would fire
    for every term and only multiply the result by ``x``.  For ``ell = 0`` the
    last value would be ``d + 1``, so the sum is empty and the result is zero.

    >>> str(type_b_l_eulerian(2, 1))
    '1+x'
    """
    if d < 1 or not 0 <= ell <= d:
        raise InputRangeError("need d >= 1 and 0 <= ell <= d")
    _budget(2**d * math.factorial(d), budget)
    target = d + 1 - ell
    counts = [0] * (d + 1)
    if target > d:
        return IntPolynomial()
    for pi in itertools.permutations(range(1, d + 1)):
        if pi[-1] != target:
            continue
        for signs in itertools.product((1, -1), repeat=d - 1):
            w = SignedPermutation(pi, signs + (1,))
            counts[signed_descents(w)] += 1
    return IntPolynomial(counts)


def lattice_count_halfopen(box: HalfOpenBox, t: int, budget: int = DEFAULT_BUDGET) -> int:
    """Count lattice points of ``t * box`` by enumeration."""
    if t < 1:
        raise InputRangeError("t must be positive")
    side = box.r * t
    _budget((side + 1) ** box.d, budget)
    top_only, both = box.open_sides()
    closed = box.d - top_only - both
    # coordinates are ordered closed, top-open, both-open, as in the normal form
    lows = [0] * (closed + top_only) + [1] * both
    highs = [side] * closed + [side - 1] * (top_only + both)
    return sum(1 for _ in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))))


def hstar_by_interpolation(box: HalfOpenBox, budget: int = DEFAULT_BUDGET) -> IntPolynomial:
    """Ehrhart numerator from lattice counts at ``t = 1..d+1``.

    The counting polynomial is interpolated exactly, its value at 0 is
    checked against the Euler characteristic, and the series term at
    ``t = 0`` is 1 for the closed box and 0 otherwise.
    """
    d = box.d
    ts = list(range(1, d + 2))
    vals = [lattice_count_halfopen(box, t, budget) for t in ts]

    def interp(x: int) -> Fraction:
        total = Fraction(0)
        for i, ti in enumerate(ts):
            term = Fraction(vals[i])
            for j, tj in enumerate(ts):
                if j != i:
                    term *= Fraction(x - tj, ti - tj)
            total += term
        return total

    at_zero = interp(0)
    if at_zero != box.euler_characteristic():
        raise AssertionError(f"counting polynomial at 0 is {at_zero}, expected Euler characteristic")
    series = [1 if box.ell == 0 else 0] + vals
    return IntPolynomial(
        sum((-1) ** j * math.comb(d + 1, j) * series[k - j] for j in range(k + 1)) for k in range(d + 1 + 1)
    )


def hstar_halfopen_cube(d: int, ell: int, r: int) -> IntPolynomial:
    """h*-polynomial of ``[0,r]^d`` with ``ell`` facets removed in normal form.

    >>> str(hstar_halfopen_cube(2, 4, 2))
    'x+6x^2+x^3'
    """
    if d < 1 or r < 1 or not 0 <= ell <= 2 * d:
        raise InputRangeError("need d >= 1, r >= 1 and 0 <= ell <= 2d")
    if ell <= d:
        return colored_eulerian(d, ell, r)
    return reverse(colored_eulerian(d, 2 * d - ell, r), d).shift(1)


def eulerian_degree(d: int, ell: int, r: int) -> int:
    _check(d, ell, r)
    return d - 1 if r == 1 and ell < d else d


def eulerian_table(ds, ells, rs) -> list[tuple[int, int, int, IntPolynomial]]:
    """Rows ``(d, ell, r, A_{d,ell}^{(r)})`` for every valid combination."""
    rows = []
    for d in ds:
        for ell in ells:
            for r in rs:
                if 0 <= ell <= d:
                    rows.append((d, ell, r, colored_eulerian(d, ell, r)))
    return rows
