"""Shelling orders, their relative decompositions, and stability.

For an order ``(F_1, ..., F_s)`` of the maximal cells, step ``i`` removes
from ``C(F_i)`` every face already present in ``F_1 ∪ ... ∪ F_{i-1}``
(for ``i >= 2`` this includes the empty face).  The order is a shelling
when each removed part is a nonempty, facet-generated, shellable piece of
the boundary of ``F_i``; it is stable when each step is a reciprocal domain.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .cellcomplex import (
    Complex,
    CubeChart,
    Face,
    RelativeComplex,
    f_polynomial,
    h_polynomial,
    is_stable_relative,
)
from .errors import BudgetExceededError, MalformedComplexError, UnsupportedInputError
from .eulerian import colored_eulerian
from .polyreal import (
    IntPolynomial,
    interlaces,
    is_interlacing_sequence,
    is_real_rooted,
    merged_roots,
    reverse,
)
from .subdivision import Subdivision, VertexRegistry


@dataclass(frozen=True)
class ShellingStep:
    index: int  # 1-based position in the order
    cell_index: int
    intersection_facets: tuple[Face, ...]
    removed: frozenset
    relative: RelativeComplex
    pure: bool
    stable: bool


@dataclass
class Verdict:
    ok: bool
    failing_step: int | None = None
    reason: str = ""


def _check_order(c: Complex, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(len(c.cells))):
        raise MalformedComplexError(f"order {order} is not a permutation of the {len(c.cells)} cells")
    return order


def shelling_steps(c: Complex, order: Sequence[int]) -> list[ShellingStep]:
    order = _check_order(c, order)
    seen: set[Face] = set()
    steps = []
    for pos, k in enumerate(order, start=1):
        cell = c.cells[k]
        mine = c.cell_faces(k)
        removed = frozenset(mine & seen)
        facets = cell.facets()
        inter = tuple(g for g in facets if g in removed)
        local = Complex([cell], c.kind)
        generated = local.closure(inter) if inter else frozenset()
        pure = generated == removed
        stable = pure and is_stable_relative(cell, inter)
        steps.append(ShellingStep(pos, k, inter, removed, RelativeComplex(local, removed), pure, stable))
        seen |= mine
    return steps


def _prefix_ok(cell, inter: Sequence[Face]) -> bool:
    """Is the subcomplex generated by ``inter`` an initial piece of a shelling of the cell boundary?"""
    if not inter:
        return False
    if isinstance(cell, CubeChart):
        facets = cell.facets()
        if len(inter) == len(facets):
            return True
        present = set(inter)
        opposite = {a: b for a, b in zip(facets[: cell.d], facets[cell.d :])}
        opposite.update({b: a for a, b in opposite.items()})
        return any(opposite[g] not in present for g in inter)
    return True


def is_shelling(c: Complex, order: Sequence[int], steps: list[ShellingStep] | None = None) -> Verdict:
    steps = steps if steps is not None else shelling_steps(c, order)
    if c.dim == 0:
        return Verdict(True)
    for st in steps[1:]:
        cell = c.cells[st.cell_index]
        if not st.intersection_facets:
            return Verdict(False, st.index, "no facet of the cell meets the earlier cells")
        if not st.pure:
            return Verdict(False, st.index, "intersection with earlier cells is not generated by facets")
        if not _prefix_ok(cell, st.intersection_facets):
            return Verdict(False, st.index, "intersection is not a shellable part of the cell boundary")
    return Verdict(True)


@dataclass
class StabilityVerdict:
    is_shelling: bool
    is_stable: bool
    failing_step: int | None
    reason: str = ""
    all_steps_stable: bool = False


def is_stable_shelling(c: Complex, order: Sequence[int]) -> StabilityVerdict:
    """Check the shelling property and the stability of every step.

    For cubical complexes, stability of every step implies the shelling
    property; that implication is re-checked and a violation raises.
    """
    steps = shelling_steps(c, order)
    shell = is_shelling(c, order, steps)
    unstable = [st.index for st in steps if not st.stable]
    all_stable = not unstable
    if c.kind == "cubical" and all_stable and not shell.ok:
        raise AssertionError("every step is stable but the order is not a shelling")
    if not shell.ok:
        return StabilityVerdict(False, False, shell.failing_step, shell.reason, all_stable)
    if unstable:
        return StabilityVerdict(True, False, unstable[0], "relative complex is not a reciprocal domain", False)
    return StabilityVerdict(True, True, None, "", True)


def enumerate_shellings(c: Complex, max_cells: int = 8) -> list[tuple[int, ...]]:
    """All shelling orders of a small complex, by exhaustive search."""
    if len(c.cells) > max_cells:
        raise BudgetExceededError(f"exhaustive shelling search is capped at {max_cells} cells")
    return [p for p in itertools.permutations(range(len(c.cells))) if is_shelling(c, p).ok]


# --- subdivisions and the interlacing criterion --------------------------------------


def subdivided_relative_complexes(
    c: Complex, order: Sequence[int], subdiv: Subdivision, registry: VertexRegistry | None = None
) -> list[RelativeComplex]:
    registry = registry if registry is not None else VertexRegistry()
    return [subdiv(st.relative, registry) for st in shelling_steps(c, order)]


def check_partition(c: Complex, parts: Sequence[RelativeComplex], subdiv: Subdivision, registry: VertexRegistry) -> bool:
    """Do the relative pieces partition the faces of the subdivided complex?"""
    whole = subdiv(RelativeComplex(c), registry).ambient
    seen: set[Face] = set()
    for rc in parts:
        for f, _ in rc.present():
            if f in seen:
                return False
            seen.add(f)
    return seen == set(whole.face_dim)


def _root_key(roots: dict[int, int]) -> tuple[int, ...]:
    out: list[int] = []
    for j in sorted(roots, reverse=True):
        out.extend([j] * roots[j])
    return tuple(out)


@dataclass
class InterlacingReport:
    h_steps: list[IntPolynomial]
    h_total: IntPolynomial
    h_direct: IntPolynomial
    additive: bool
    partition_ok: bool
    pairwise_ok: bool
    ordering_found: bool
    order_used: list[int] | None
    real_rooted: bool
    candidates_tried: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "h_steps": [[str(x) for x in h.coeffs] for h in self.h_steps],
            "h_total": [str(x) for x in self.h_total.coeffs],
            "additive": self.additive,
            "partition_ok": self.partition_ok,
            "pairwise_ok": self.pairwise_ok,
            "ordering_found": self.ordering_found,
            "order_used": self.order_used,
            "real_rooted": self.real_rooted,
        }


def find_interlacing_order(hs: Sequence[IntPolynomial]) -> tuple[list[int] | None, list[str]]:
    """Try a few canonical orderings of ``hs`` and return the first interlacing one.

    Along an interlacing sequence the roots, read from the largest down,
    weakly increase; so the primary candidate sorts by that root vector.
    Returns ``(order or None, names of the candidates tried)``.
    """
    interlace = functools.lru_cache(maxsize=None)(interlaces)
    distinct = list(dict.fromkeys(hs))
    roots = dict(zip(distinct, merged_roots([h if is_real_rooted(h) else IntPolynomial() for h in distinct])))
    idx = list(range(len(hs)))
    tried = []

    def ok(perm):
        seq = [hs[i] for i in perm]
        return all(interlace(seq[a], seq[b]) for a in range(len(seq)) for b in range(a, len(seq)))

    ascending = sorted(idx, key=lambda i: _root_key(roots[hs[i]]))
    tried.append("root-ascending")
    if ok(ascending):
        return ascending, tried
    descending = sorted(idx, key=lambda i: _root_key(roots[hs[i]]), reverse=True)
    tried.append("root-descending")
    if ok(descending):
        return descending, tried

    def cmp(i, j):
        a, b = interlace(hs[i], hs[j]), interlace(hs[j], hs[i])
        return -1 if a and not b else 1 if b and not a else 0

    by_relation = sorted(idx, key=functools.cmp_to_key(cmp))
    tried.append("relation-sort")
    if ok(by_relation):
        return by_relation, tried
    return None, tried


def check_interlacing_theorem(
    c: Complex, order: Sequence[int], subdiv: Subdivision, registry: VertexRegistry | None = None
) -> InterlacingReport:
    """Relative h-polynomials of a subdivided shelling and the interlacing test on them.

    A negative ``ordering_found`` only means that no candidate ordering
    worked; it does not prove that none exists.
    """
    registry = registry if registry is not None else VertexRegistry()
    parts = subdivided_relative_complexes(c, order, subdiv, registry)
    m = c.dim + 1
    hs = [h_polynomial(rc, m) for rc in parts]
    total = IntPolynomial()
    for h in hs:
        total = total + h
    whole = subdiv(RelativeComplex(c), registry)
    direct = h_polynomial(whole, m)
    partition = check_partition(c, parts, subdiv, registry)
    pair_cache = functools.lru_cache(maxsize=None)(_safe_interlaces)
    pairwise = all(
        pair_cache(hs[i], hs[j]) or pair_cache(hs[j], hs[i]) for i in range(len(hs)) for j in range(i, len(hs))
    )
    found, tried = (None, [])
    if pairwise:
        found, tried = find_interlacing_order(hs)
    return InterlacingReport(
        hs,
        total,
        direct,
        total == direct,
        partition,
        pairwise,
        found is not None,
        found,
        is_real_rooted(direct),
        tried,
    )


def _safe_interlaces(p: IntPolynomial, q: IntPolynomial) -> bool:
    try:
        return interlaces(p, q)
    except UnsupportedInputError:
        return False


def ladder_label(h: IntPolynomial, d: int, r: int = 2) -> str | None:
    """Name ``h`` as ``A(d,l)`` or ``xI A(d,l)`` for the r-colored family, if it is one."""
    for ell in range(d + 1):
        a = colored_eulerian(d, ell, r)
        if h == a:
            return f"A({d},{ell})"
        if h == reverse(a, d).shift(1):
            return f"xI A({d},{ell})"
    return None


def f_total(parts: Sequence[RelativeComplex]) -> IntPolynomial:
    out = IntPolynomial()
    for rc in parts:
        out = out + f_polynomial(rc)
    return out


def shelling_report(c: Complex, order: Sequence[int], subdiv: Subdivision | None = None) -> dict:
    """JSON-ready report: per-step removed facets, stability and h, plus a summary."""
    steps = shelling_steps(c, order)
    verdict = is_stable_shelling(c, order)
    m = c.dim + 1
    out_steps = []
    if subdiv is not None:
        report = check_interlacing_theorem(c, order, subdiv)
        hs = report.h_steps
    else:
        report = None
        hs = [h_polynomial(st.relative, m) for st in steps]
    for st, h in zip(steps, hs):
        out_steps.append(
            {
                "step": st.index,
                "cell": st.cell_index,
                "removed_facets": [sorted(g) for g in st.intersection_facets],
                "stable": st.stable,
                "h_coeffs": [str(x) for x in h.coeffs],
            }
        )
    total = IntPolynomial()
    for h in hs:
        total = total + h
    summary = {
        "is_shelling": verdict.is_shelling,
        "is_stable": verdict.is_stable,
        "failing_step": verdict.failing_step,
        "h_total": [str(x) for x in total.coeffs],
        "real_rooted": is_real_rooted(total),
        "interlacing_order": report.order_used if report else None,
    }
    if report is not None:
        summary["pairwise_ok"] = report.pairwise_ok
        summary["additive"] = report.additive
    return {"steps": out_steps, "summary": summary}
