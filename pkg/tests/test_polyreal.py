from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from shellpoly.errors import InputRangeError, UnsupportedInputError
from shellpoly.eulerian import colored_eulerian
from shellpoly.polyreal import (
    IntPolynomial,
    dumps,
    f_from_h,
    from_json_list,
    h_from_f,
    interlaces,
    is_interlacing_sequence,
    is_real_rooted,
    is_symmetric,
    loads,
    merged_roots,
    real_root_isolation,
    reverse,
    shifted_section,
    squarefree_factors,
    veronese_section,
)

P = IntPolynomial
X = sympy.Symbol("x")


def sym(p: IntPolynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)) or [0], X)


def sym_real_rooted(p: IntPolynomial) -> bool:
    if p.is_zero():
        return True
    return len(sympy.real_roots(sym(p))) == p.degree()


def sym_interlaces(p: IntPolynomial, q: IntPolynomial) -> bool:
    """Interleaving of the exact root multisets, largest root belonging to q."""
    if p.is_zero() or q.is_zero():
        return True
    if not (sym_real_rooted(p) and sym_real_rooted(q)):
        return False
    beta = sorted(sympy.real_roots(sym(p)), reverse=True)
    alpha = sorted(sympy.real_roots(sym(q)), reverse=True)
    if len(alpha) - len(beta) not in (0, 1):
        return False
    for i, b in enumerate(beta):
        if not alpha[i] >= b:
            return False
        if i + 1 < len(alpha) and not b >= alpha[i + 1]:
            return False
    return True


def from_roots(roots, lead=1) -> IntPolynomial:
    """Integer polynomial with roots -a for each nonnegative rational a."""
    out = P([lead])
    for a in roots:
        a = Fraction(a)
        out = out * P([a.numerator, a.denominator])
    return out


nonneg_roots = st.lists(st.fractions(min_value=0, max_value=6, max_denominator=4), max_size=4)
small_polys = st.lists(st.integers(0, 6), min_size=1, max_size=5).map(P)


# --- worked examples -------------------------------------------------------------


def test_h_from_f_examples():
    assert h_from_f(P([1, 3, 3, 1]), 3) == P([1])
    assert h_from_f(P([0, 1, 2, 1]), 3) == P([0, 1])
    assert h_from_f(P([1, 8, 8]), 2) == P([1, 6, 1])
    with pytest.raises(InputRangeError):
        h_from_f(P([1, 1, 1]), 1)


def test_reverse_and_symmetry():
    assert reverse(P([1, 6, 1]), 2) == P([1, 6, 1])
    assert reverse(P([0, 4, 4]), 2) == P([4, 4])
    assert reverse(P.monomial(2), 5) == P.monomial(3)
    assert is_symmetric(P([1, 6, 1]), 2)
    assert not is_symmetric(P([0, 6, 2]), 2)
    assert is_symmetric(P(), 3)
    for d in range(1, 6):
        assert is_symmetric(colored_eulerian(d, 0, 2), d)
    with pytest.raises(InputRangeError):
        reverse(P([1, 1, 1]), 1)


def test_root_isolation_examples():
    iso = real_root_isolation(P([-2, 0, 1]))
    assert iso.multiplicities == (1, 1)
    (a, b), (c, d) = iso.intervals
    assert a <= b < c <= d and a < 0 < d
    iso = real_root_isolation(P([6, 11, 6, 1]))
    assert len(iso.intervals) == 3
    for (lo, hi), root in zip(iso.intervals, (-3, -2, -1)):
        assert lo <= root <= hi
    assert len(real_root_isolation(P([1, 0, 1])).intervals) == 0
    with pytest.raises(ValueError):
        real_root_isolation(P())


def test_multiplicities():
    p = P([0, 0, 1]) * P([1, 1]) ** 3 * P([-2, 0, 1])  # x^2 (x+1)^3 (x^2-2)
    iso = real_root_isolation(p)
    assert sorted(iso.multiplicities) == [1, 1, 2, 3]
    assert sum(iso.multiplicities) == p.degree()


def test_real_rooted_examples():
    assert is_real_rooted(P())
    assert is_real_rooted(P([1, 6, 1]))
    assert not is_real_rooted(P([0, 22, 4, 22]))


def test_interlaces_examples():
    assert interlaces(P(), P([1, 1]))
    assert interlaces(P([1, 1]), P())
    assert interlaces(P([0, 6, 2]), P([0, 4, 4]))
    assert not interlaces(P([0, 4, 4]), P([0, 6, 2]))
    assert interlaces(P([1, 1]), P([0, 1, 1]))
    with pytest.raises(UnsupportedInputError):
        interlaces(P([1, -1]), P([1]))


def test_sequence_examples():
    assert is_interlacing_sequence([P([1, 6, 1]), P([0, 6, 2]), P([0, 4, 4])])
    assert not is_interlacing_sequence([P([0, 4, 4]), P([0, 6, 2])])
    assert is_interlacing_sequence([P([1, 6, 1])])
    assert not is_interlacing_sequence([P([1, 0, 1])])


def test_veronese_examples():
    assert veronese_section(P([1, 2, 1]), 2, 0) == P([1, 1])
    assert veronese_section(P([1, 2, 1]), 2, 1) == P([2])
    assert veronese_section(P([3, 1, 4]), 1, 0) == P([3, 1, 4])
    with pytest.raises(InputRangeError):
        veronese_section(P([1]), 2, 2)


def test_json_roundtrip_big_integers():
    p = P([10**40, -(3**90), 7])
    assert from_json_list([str(c) for c in p.coeffs]) == p
    assert loads(dumps(p)) == p
    with pytest.raises(ValueError):
        from_json_list([1.5])


def test_str():
    assert str(P([1, 6, 1])) == "1+6x+x^2"
    assert str(P([0, 6, 2])) == "6x+2x^2"
    assert str(P()) == "0"


# --- oracles and properties ------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(small_polys)
def test_real_rootedness_matches_sympy(p):
    assert is_real_rooted(p) == sym_real_rooted(p)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6).map(P))
def test_isolating_intervals_are_disjoint_and_exact(p):
    if p.degree() < 1:
        return
    iso = real_root_isolation(p)
    ivs = iso.intervals
    assert all(ivs[i][1] < ivs[i + 1][0] for i in range(len(ivs) - 1))
    roots = sympy.real_roots(sym(p))
    assert sum(iso.multiplicities) == len(roots)
    for (lo, hi), m in zip(ivs, iso.multiplicities):
        inside = [r for r in roots if sympy.Rational(lo.numerator, lo.denominator) <= r <= sympy.Rational(hi.numerator, hi.denominator)]
        assert len(inside) == m and len(set(inside)) == 1


@settings(max_examples=150, deadline=None)
@given(nonneg_roots, nonneg_roots)
def test_interlacing_matches_root_oracle(rp, rq):
    p, q = from_roots(rp), from_roots(rq)
    assert interlaces(p, q) == sym_interlaces(p, q)


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys)
def test_interlacing_matches_oracle_on_arbitrary(p, q):
    assert interlaces(p, q) == sym_interlaces(p, q)


@settings(max_examples=100, deadline=None)
@given(nonneg_roots, nonneg_roots)
def test_q_before_xp_equivalence(rp, rq):
    p, q = from_roots(rp), from_roots(rq)
    assert interlaces(p, q) == interlaces(q, p.shift(1))


@settings(max_examples=60, deadline=None)
@given(nonneg_roots, nonneg_roots)
def test_interlacing_via_wronskian(rp, rq):
    """p before q iff p'q - pq' is nowhere positive, for real-rooted inputs."""
    p, q = from_roots(rp), from_roots(rq)
    w = sym(p).diff(X) * sym(q) - sym(p) * sym(q).diff(X)
    if w.is_zero:
        nonpos = True
    else:
        crit = sorted(set(sympy.real_roots(w)))
        pts = [sympy.Rational(-100)] + [c for c in crit] + [sympy.Rational(100)]
        samples = [(a + b) / 2 for a, b in zip(pts, pts[1:])] + pts
        nonpos = all(sympy.N(w.eval(s), 50) <= 1e-30 for s in samples) and w.LC() <= 0
    deg_ok = q.degree() - p.degree() in (0, 1)
    assert interlaces(p, q) == (nonpos and deg_ok)


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(0, 3))
def test_reverse_roundtrip(p, extra):
    d = p.degree() + extra
    assert reverse(reverse(p, d), d) == p


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(0, 3))
def test_h_f_roundtrip(f, extra):
    m = f.degree() + extra
    assert f_from_h(h_from_f(f, m), m) == f


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(1, 4))
def test_veronese_reconstructs(p, r):
    total = P()
    for ell in range(r):
        total = total + veronese_section(p, r, ell).compose_power(r).shift(ell)
    assert total == p


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(1, 4), st.integers(-6, 6))
def test_shifted_section_agrees(p, r, j):
    if 0 <= j < r:
        assert shifted_section(p, r, j) == veronese_section(p, r, j)
    for ell in range(1, 6):
        assert shifted_section(p, r, r - ell).shift(1) == veronese_section(p.shift(ell), r, 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(2, 3), st.data())
def test_convex_combinations_of_eulerian_sequences(d, r, data):
    seq = [colored_eulerian(d, ell, r) for ell in range(d + 1)]
    assert is_interlacing_sequence(seq)
    weights = data.draw(st.lists(st.integers(0, 9), min_size=len(seq), max_size=len(seq)))
    combo = P()
    for w, p in zip(weights, seq):
        combo = combo + p * w
    assert is_real_rooted(combo)


@settings(max_examples=80, deadline=None)
@given(small_polys)
def test_squarefree_factors_multiply_back(p):
    if p.is_zero() or p.degree() < 1:
        return
    prod = P([1])
    for k, f in enumerate(squarefree_factors(p), start=1):
        prod = prod * f**k
    assert sym(prod).monic() == sym(p).monic()


def test_merged_roots_orders_across_polynomials():
    a, b = P([2, 3, 1]), P([0, 1])  # roots -1, -2 and 0
    ra, rb = merged_roots([a, b])
    assert max(rb) > max(ra)
    assert sum(ra.values()) == 2 and sum(rb.values()) == 1
