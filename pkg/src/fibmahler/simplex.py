"""Exact convex-combination tests over the rationals.

Decides whether a lattice point lies in the convex hull of the other
members of its family by phase-1 simplex on the system

    sum_j w_j * v_j = target,   sum_j w_j = 1,   w_j >= 0,

with every tableau entry a Fraction, so verdicts and witnesses are exact.
Bland's rule guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]


def _phase1(columns: list[Sequence[Fraction]], rhs: list[Fraction]
            ) -> list[Fraction] | None:
    """Solve A w = rhs, w >= 0 by minimizing the sum of artificials.

    Returns a feasible w (length = number of columns) or None.
    """
    m = len(rhs)
    k = len(columns)
    # rows: [a_1 ... a_k | I_m | rhs], artificial j is basic in row j
    rows = [[columns[j][i] for j in range(k)]
            + [Fraction(1 if r == i else 0) for r in range(m)]
            + [rhs[i]] for i in range(m)]
    for i in range(m):
        if rows[i][-1] < 0:
            rows[i] = [-v for v in rows[i]]
    basis = [k + i for i in range(m)]
    # objective row: minimize sum of artificials, expressed in reduced costs
    obj = [Fraction(0)] * (k + m + 1)
    for i in range(m):
        for j in range(k + m + 1):
            obj[j] += rows[i][j]

    while True:
        enter = next((j for j in range(k + m) if obj[j] > 0 and j not in basis),
                     None)
        if enter is None:
            break
        ratios = [(rows[i][-1] / rows[i][enter], basis[i], i)
                  for i in range(m) if rows[i][enter] > 0]
        if not ratios:
            break
        _, _, piv = min(ratios)
        pr = rows[piv]
        pv = pr[enter]
        rows[piv] = [v / pv for v in pr]
        for i in range(m):
            if i != piv and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[piv])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, rows[piv])]
        basis[piv] = enter

    if obj[-1] != 0:
        return None
    w = [Fraction(0)] * k
    for i, b in enumerate(basis):
        if b < k:
            w[b] = rows[i][-1]
        elif rows[i][-1] != 0:
            return None
    return w


def feasible_combination(target: Sequence[int], others: Sequence[Vector]
                         ) -> list[Fraction] | None:
    """Non-negative rational weights over ``others`` summing to 1 that
    reproduce ``target`` exactly, or None when no such weights exist."""
    if not others:
        return None
    n = len(target)
    cols = [[Fraction(v[i]) for i in range(n)] + [Fraction(1)] for v in others]
    rhs = [Fraction(c) for c in target] + [Fraction(1)]
    return _phase1(cols, rhs)


def check_witness(target: Sequence[int], components: Sequence[Vector],
                  weights: Sequence[Fraction]) -> bool:
    """Exact verification that the weighted combination reproduces target."""
    if len(components) != len(weights):
        return False
    if any(w < 0 for w in weights) or sum(weights, Fraction(0)) != 1:
        return False
    for i in range(len(target)):
        if sum((w * v[i] for w, v in zip(weights, components)),
               Fraction(0)) != target[i]:
            return False
    return True


@dataclass(frozen=True)
class VertexReport:
    vertices: tuple[Vector, ...]
    non_vertices: dict[Vector, tuple[tuple[Vector, Fraction], ...]]

    def is_vertex(self, v: Vector) -> bool:
        return v in self.vertices


def vertex_filter(members: Sequence[Vector]) -> VertexReport:
    """Split a family into hull vertices and points inside the hull of the
    others, the latter with an exact convex-combination witness."""
    members = [tuple(v) for v in members]
    vertices: list[Vector] = []
    non_vertices: dict[Vector, tuple[tuple[Vector, Fraction], ...]] = {}
    for z in members:
        others = [v for v in members if v != z]
        w = feasible_combination(z, others)
        if w is None:
            vertices.append(z)
        else:
            witness = tuple((v, wi) for v, wi in zip(others, w) if wi)
            non_vertices[z] = witness
    return VertexReport(tuple(vertices), non_vertices)
