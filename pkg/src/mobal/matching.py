"""Pareto-optimal matchings of complete digraphs.

The shipped backend enumerates every matching, so its output is the
exact Pareto front and trivially meets the (1 - eps) contract for any
eps.  The backend interface carries a failure probability so that a
randomized approximation scheme could be plugged in without touching the
callers; the exact backend reports 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Protocol

from .errors import BudgetExceededError
from .graphs import Edge, LabeledDigraph
from .pareto import SolutionSet, Weight, nondominated


class MatchingBackend(Protocol):
    """Producer of (1 - eps)-approximate Pareto sets of matchings."""

    failure_probability: Fraction

    def pareto_matchings(self, g: LabeledDigraph, eps: Fraction) -> SolutionSet:
        ...


def matching_count(n: int) -> int:
    """Number of matchings in a complete digraph on n vertices."""
    return sum(
        comb(n, 2 * j) * factorial(2 * j) // factorial(j) for j in range(n // 2 + 1)
    )


@dataclass
class ExactMatchingBackend:
    """Exhaustive enumeration, one canonical witness per front weight."""

    vertex_cap: int = 10
    failure_probability: Fraction = field(default=Fraction(0))

    def pareto_matchings(
        self, g: LabeledDigraph, eps: Fraction = Fraction(0)
    ) -> SolutionSet:
        if g.num_vertices > self.vertex_cap:
            raise BudgetExceededError(
                f"exact matching backend refuses {g.num_vertices} vertices "
                f"(cap {self.vertex_cap})"
            )
        verts = list(g.vertices)
        dim = g.dimension
        best: dict[Weight, tuple[Edge, ...]] = {}
        used: set[int] = set()
        chosen: list[Edge] = []

        def record(weight: tuple[int, ...]):
            enc = tuple(sorted(chosen))
            cur = best.get(weight)
            if cur is None or enc < cur:
                best[weight] = enc

        def visit(idx: int, weight: tuple[int, ...]):
            while idx < len(verts) and verts[idx] in used:
                idx += 1
            if idx == len(verts):
                record(weight)
                return
            v = verts[idx]
            # v stays uncovered
            visit(idx + 1, weight)
            used.add(v)
            for jdx in range(idx + 1, len(verts)):
                u = verts[jdx]
                if u in used:
                    continue
                used.add(u)
                for e in ((v, u), (u, v)):
                    w = g.weight_map[e]
                    chosen.append(e)
                    visit(idx + 1, tuple(a + b for a, b in zip(weight, w)))
                    chosen.pop()
                used.discard(u)
            used.discard(v)

        visit(0, (0,) * dim)
        front = nondominated(best.keys())
        return SolutionSet.build((best[w], w) for w in front)


def matching_pareto(
    g: LabeledDigraph,
    eps: Fraction = Fraction(0),
    backend: MatchingBackend | None = None,
) -> SolutionSet:
    """(1 - eps)-approximate Pareto set of matchings of g.

    The default exact backend ignores eps and returns the true front.
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if backend is None:
        backend = ExactMatchingBackend()
    return backend.pareto_matchings(g, eps)
