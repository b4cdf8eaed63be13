"""Exact univariate polynomials, real-root isolation and interlacing.

Everything here works over the integers or the rationals with no floating
point.  Roots are isolated with Sturm sequences on the squarefree part,
multiplicities come from Yun's squarefree factorisation, and the
interlacing relation ``p ≺ q`` is decided by exact comparison of isolated
roots.

Examples
--------
>>> p = IntPolynomial([1, 6, 1])
>>> is_real_rooted(p)
True
>>> interlaces(IntPolynomial([0, 6, 2]), IntPolynomial([0, 4, 4]))
True
>>> str(h_from_f(IntPolynomial([1, 8, 8]), 2))
'1+6x+x^2'
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import InputRangeError, UnsupportedInputError


def _strip(coeffs: Iterable) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class _PolyOps:
    """Arithmetic shared by the integer and rational polynomial types."""

    coeffs: tuple

    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial's -inf."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other):
        if isinstance(other, _PolyOps):
            return other.coeffs
        return (other,)

    def __add__(self, other):
        return self._wrap(other, _add(self.coeffs, self._coerce(other)))

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        return self._wrap(other, _add(self.coeffs, [-c for c in self._coerce(other)]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._wrap(other, _mul(self.coeffs, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputRangeError("negative exponent")
        out = type(self)([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _wrap(self, other, coeffs):
        if isinstance(self, RationalPolynomial) or isinstance(other, (RationalPolynomial, Fraction)):
            return RationalPolynomial(coeffs)
        return type(self)(coeffs)

    def shift(self, k: int):
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return type(self)([0] * k + list(self.coeffs))

    def derivative(self):
        return type(self)([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_power(self, r: int):
        """Return ``p(x**r)``."""
        out = [0] * (r * max(len(self.coeffs) - 1, 0) + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[k * r] = c
        return type(self)(out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += sign + body
        return text


@dataclass(frozen=True, init=False)
class IntPolynomial(_PolyOps):
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        vals = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise UnsupportedInputError(f"non-integer coefficient {c}")
                c = c.numerator
            if isinstance(c, bool) or not isinstance(c, int):
                raise UnsupportedInputError(f"non-integer coefficient {c!r}")
            vals.append(c)
        object.__setattr__(self, "coeffs", _strip(vals))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def to_rational(self) -> "RationalPolynomial":
        return RationalPolynomial(self.coeffs)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


@dataclass(frozen=True, init=False)
class RationalPolynomial(_PolyOps):
    """Polynomial with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in coeffs))

    def monic(self) -> "RationalPolynomial":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return RationalPolynomial(c / lead for c in self.coeffs)

    def divmod(self, other: "RationalPolynomial") -> tuple["RationalPolynomial", "RationalPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[: len(other.coeffs) - 1])

    def to_primitive_int(self) -> IntPolynomial:
        """Scale to a primitive integer polynomial with positive leading coefficient."""
        if not self.coeffs:
            return IntPolynomial()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return IntPolynomial(c // g for c in ints)

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"


def _as_rational(p) -> RationalPolynomial:
    return p if isinstance(p, RationalPolynomial) else RationalPolynomial(p.coeffs)


def poly_gcd(p, q) -> IntPolynomial:
    """Greatest common divisor as a primitive integer polynomial (leading coefficient > 0)."""
    a, b = _as_rational(p), _as_rational(q)
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.to_primitive_int()


def exact_quotient(p, q) -> IntPolynomial:
    """Return ``p / q`` scaled to a primitive integer polynomial; ``q`` must divide ``p``."""
    quot, rem = _as_rational(p).divmod(_as_rational(q))
    if not rem.is_zero():
        raise UnsupportedInputError("polynomial division is not exact")
    return quot.to_primitive_int()


def _div(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    quot, rem = p.divmod(q)
    if not rem.is_zero():
        raise UnsupportedInputError("polynomial division is not exact")
    return quot


def squarefree_factors(p) -> list[IntPolynomial]:
    """Yun's algorithm: ``[a1, a2, ...]`` with ``p = c * a1 * a2**2 * ...``."""
    if p.is_zero():
        raise UnsupportedInputError("squarefree factorisation of the zero polynomial")
    f = _as_rational(p)
    if f.degree() < 1:
        return []
    df = f.derivative()
    a0 = _as_rational(poly_gcd(f, df))
    b, c = _div(f, a0), _div(df, a0)
    d = c - b.derivative()
    factors = []
    while b.degree() > 0:
        a = _as_rational(poly_gcd(b, d))
        factors.append(a.to_primitive_int())
        b = _div(b, a)
        c = _div(d, a)
        d = c - b.derivative()
    return factors


def squarefree_part(p) -> IntPolynomial:
    out = IntPolynomial([1])
    for a in squarefree_factors(p):
        out = out * a
    return out


# --- Sturm sequences -------------------------------------------------------


def _sturm_chain(s: RationalPolynomial) -> list[RationalPolynomial]:
    chain = [s, s.derivative()]
    while not chain[-1].is_zero():
        rem = chain[-2].divmod(chain[-1])[1]
        chain.append(-rem)
    return chain[:-1]


def _variations(chain: Sequence[RationalPolynomial], x: Fraction) -> int:
    count, last = 0, 0
    for g in chain:
        v = g(x)
        if v == 0:
            continue
        if last and (v > 0) != (last > 0):
            count += 1
        last = v
    return count


def _cauchy_bound(p) -> Fraction:
    lead = abs(Fraction(p.leading()))
    return 1 + max((abs(Fraction(c)) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _isolate_squarefree(s: RationalPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Isolate the real roots of a squarefree polynomial.

    Returns closed intervals in increasing order.  A degenerate interval
    ``(m, m)`` is an exact rational root; otherwise the root lies in the open
    interval and neither endpoint is a root.
    """
    if s.degree() < 1:
        return []
    chain = _sturm_chain(s)
    bound = _cauchy_bound(s)

    def count(a: Fraction, b: Fraction) -> int:
        return _variations(chain, a) - _variations(chain, b)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if s(m) != 0:
            stack.extend([(a, m), (m, b)])
            continue
        # exact rational root: carve out a root-free neighbourhood around it
        out.append((m, m))
        delta = (b - a) / 4
        while s(m - delta) == 0 or s(m + delta) == 0 or count(m - delta, m + delta) != 1:
            delta /= 2
        stack.extend([(a, m - delta), (m + delta, b)])
    out.sort()

    def halve(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
        m = (a + b) / 2
        if s(m) == 0:
            return m, m
        return (a, m) if count(a, m) == 1 else (m, b)

    # neighbours may share a (non-root) endpoint; shrink until strictly disjoint
    for i in range(len(out) - 1):
        while out[i][1] >= out[i + 1][0]:
            out[i] = halve(*out[i])
            if out[i][1] >= out[i + 1][0]:
                out[i + 1] = halve(*out[i + 1])
    return out


def _count_in(chain, lo: Fraction, hi: Fraction, poly: RationalPolynomial) -> int:
    if lo == hi:
        return 1 if poly(lo) == 0 else 0
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass(frozen=True)
class RootIsolation:
    """Isolating intervals for the distinct real roots of a polynomial.

    ``intervals[i]`` is a closed rational interval ``(lo, hi)``; ``lo == hi``
    marks an exact rational root, otherwise the root lies strictly inside.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]
    squarefree_degree: int

    def root_count(self) -> int:
        return sum(self.multiplicities)


def real_root_isolation(p) -> RootIsolation:
    """Isolate all real roots of ``p`` with multiplicities.

    >>> iso = real_root_isolation(IntPolynomial([6, 11, 6, 1]))
    >>> iso.multiplicities
    (1, 1, 1)
    >>> real_root_isolation(IntPolynomial([1, 0, 1])).intervals
    ()
    """
    if p.is_zero():
        raise UnsupportedInputError("root isolation of the zero polynomial is undefined")
    factors = squarefree_factors(p)
    sqf = IntPolynomial([1])
    for a in factors:
        sqf = sqf * a
    intervals = _isolate_squarefree(sqf.to_rational())
    chains = [(_sturm_chain(a.to_rational()), a.to_rational()) for a in factors]
    mults = []
    for lo, hi in intervals:
        m = 0
        for i, (chain, a) in enumerate(chains, start=1):
            if a.degree() > 0 and _count_in(chain, lo, hi, a):
                m = i
                break
        mults.append(m)
    return RootIsolation(tuple(intervals), tuple(mults), sqf.degree())


def is_real_rooted(p) -> bool:
    """True for the zero polynomial or when every root of ``p`` is real."""
    if p.is_zero():
        return True
    return real_root_isolation(p).root_count() == p.degree()


def merged_roots(polys: Sequence) -> list[dict[int, int]]:
    """Locate the real roots of several polynomials on one common ordered list.

    Returns, for each input, a map from the index of a distinct real root in
    the union (ordered increasingly) to its multiplicity in that input.
    Shared roots get the same index, so comparisons are exact.
    """
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return [{} for _ in polys]
    union = IntPolynomial([1])
    for p in nonzero:
        union = union * squarefree_part(p)
    union = squarefree_part(union)
    intervals = _isolate_squarefree(union.to_rational())
    out = []
    for p in polys:
        roots: dict[int, int] = {}
        if not p.is_zero():
            for mult, a in enumerate(squarefree_factors(p), start=1):
                if a.degree() < 1:
                    continue
                ar = a.to_rational()
                chain = _sturm_chain(ar)
                for j, (lo, hi) in enumerate(intervals):
                    if _count_in(chain, lo, hi, ar):
                        roots[j] = mult
        out.append(roots)
    return out


def interlaces(p, q) -> bool:
    """Decide ``p ≺ q`` for polynomials with nonnegative coefficients.

    With roots ``β`` of ``p`` and ``α`` of ``q`` listed decreasingly this is
    ``⋯ ≤ β2 ≤ α2 ≤ β1 ≤ α1``.  Common roots are divided out first; the
    coprime parts must then be squarefree and strictly alternate, starting
    with a root of ``q``.

    >>> interlaces(IntPolynomial([1, 1]), IntPolynomial([0, 1, 1]))
    True
    >>> interlaces(IntPolynomial([0, 4, 4]), IntPolynomial([0, 6, 2]))
    False
    """
    if p.is_zero() or q.is_zero():
        return True
    if not (p.has_nonnegative_coefficients() and q.has_nonnegative_coefficients()):
        raise UnsupportedInputError("interlacing is only decided for nonnegative coefficients")
    if not (is_real_rooted(p) and is_real_rooted(q)):
        return False
    g = poly_gcd(p, q)
    p1, q1 = exact_quotient(p, g), exact_quotient(q, g)
    rp, rq = merged_roots([p1, q1])
    if any(m > 1 for m in rp.values()) or any(m > 1 for m in rq.values()):
        return False
    labels = [src for _, src in sorted([(j, "p") for j in rp] + [(j, "q") for j in rq], reverse=True)]
    return all(lab == ("q" if k % 2 == 0 else "p") for k, lab in enumerate(labels))


def is_interlacing_sequence(ps: Sequence) -> bool:
    """True iff ``ps[i] ≺ ps[j]`` for all ``i <= j``."""
    return all(interlaces(ps[i], ps[j]) for i in range(len(ps)) for j in range(i, len(ps)))


# --- h-polynomials and friends -------------------------------------------


def h_from_f(f: IntPolynomial, m: int) -> IntPolynomial:
    """``(1-x)^m f(x/(1-x))`` expanded."""
    if f.degree() > m:
        raise InputRangeError(f"degree of f exceeds m={m}")
    out = [0] * (m + 1)
    for k, fk in enumerate(f.coeffs):
        # x^k (1-x)^(m-k)
        for j in range(m - k + 1):
            out[k + j] += fk * comb(m - k, j) * (-1) ** j
    return IntPolynomial(out)


def f_from_h(h: IntPolynomial, m: int) -> IntPolynomial:
    """Inverse of :func:`h_from_f`: ``(1+x)^m h(x/(1+x))``."""
    if h.degree() > m:
        raise InputRangeError(f"degree of h exceeds m={m}")
    out = [0] * (m + 1)
    for k, hk in enumerate(h.coeffs):
        for j in range(m - k + 1):
            out[k + j] += hk * comb(m - k, j)
    return IntPolynomial(out)


def reverse(p: IntPolynomial, d: int) -> IntPolynomial:
    """``x^d p(1/x)``."""
    if p.degree() > d:
        raise InputRangeError(f"degree of p exceeds {d}")
    if p.is_zero():
        return p
    return IntPolynomial([p[d - k] for k in range(d + 1)])


def is_symmetric(p: IntPolynomial, d: int) -> bool:
    return reverse(p, d) == p


def veronese_section(p: IntPolynomial, r: int, ell: int) -> IntPolynomial:
    """Coefficient ``k`` of the result is coefficient ``k*r + ell`` of ``p``.

    >>> veronese_section(IntPolynomial([1, 2, 1]), 2, 0)
    IntPolynomial([1, 1])
    """
    if r < 1 or not 0 <= ell < r:
        raise InputRangeError(f"section index {ell} outside [0, {r - 1}]")
    return IntPolynomial(p.coeffs[ell::r])


def shifted_section(p: IntPolynomial, r: int, j: int) -> IntPolynomial:
    """Like :func:`veronese_section` but for any integer offset ``j``.

    Coefficient ``k`` is coefficient ``k*r + j`` of ``p``, read as 0 when that
    index is negative, so ``x * shifted_section(q, r, r - l)`` equals
    ``veronese_section(x^l q, r, 0)`` for every ``l >= 1``.

    >>> shifted_section(IntPolynomial([1, 2, 1]), 2, -1)
    IntPolynomial([0, 2])
    """
    if r < 1:
        raise InputRangeError("r must be positive")
    n = p.degree()
    return IntPolynomial(p.coeffs[k * r + j] if 0 <= k * r + j <= n else 0 for k in range(max(0, (n - j) // r + 1)))


def convolution_power(r: int, d: int) -> IntPolynomial:
    """``(1 + x + ... + x^(r-1))^d``."""
    if r < 1 or d < 0:
        raise InputRangeError("need r >= 1 and d >= 0")
    return IntPolynomial([1] * r) ** d


# --- serialisation ---------------------------------------------------------


def to_json_list(p: IntPolynomial) -> list[str]:
    return [str(c) for c in p.coeffs]


def from_json_list(data: Sequence) -> IntPolynomial:
    if not isinstance(data, list):
        raise UnsupportedInputError("polynomial must be a JSON array")
    vals = []
    for c in data:
        if isinstance(c, bool):
            raise UnsupportedInputError(f"bad coefficient {c!r}")
        if isinstance(c, int):
            vals.append(c)
        elif isinstance(c, str):
            try:
                vals.append(int(c.strip()))
            except ValueError as exc:
                raise UnsupportedInputError(f"bad coefficient {c!r}") from exc
        else:
            raise UnsupportedInputError(f"bad coefficient {c!r}")
    return IntPolynomial(vals)


def dumps(p: IntPolynomial) -> str:
    return json.dumps(to_json_list(p))


def loads(text: str) -> IntPolynomial:
    return from_json_list(json.loads(text))
