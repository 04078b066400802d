"""Decide whether a matrix is realizable and build a realization by descent."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .core import GraphError, Jdm, LabeledGraph, vertex_counts

__all__ = [
    "Violation",
    "GraphicalityReport",
    "NotGraphicalError",
    "CandidateState",
    "check_graphical",
    "initial_candidate",
    "psi_descent_step",
    "construct_realization",
]


@dataclass(frozen=True)
class Violation:
    condition: str  # "integrality" | "within-class-capacity" | "cross-class-capacity"
    classes: Tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class GraphicalityReport:
    """Outcome of the three realizability conditions.

    verdict holds iff every class count is an integer, every diagonal entry
    fits under C(n_i, 2), and every off-diagonal entry fits under n_i * n_j.
    """

    verdict: bool
    counts: Tuple[Fraction, ...]
    integral_ok: Tuple[bool, ...]
    within_ok: Tuple[bool, ...]
    cross_ok: Tuple[Tuple[bool, ...], ...]
    violations: Tuple[Violation, ...]

    @property
    def first_violation(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


class NotGraphicalError(GraphError):
    """Raised when construction is asked for an unrealizable matrix."""

    def __init__(self, report: GraphicalityReport):
        self.report = report
        v = report.first_violation
        detail = v.detail if v else "unknown"
        super().__init__(f"matrix is not graphical: {detail}")


def check_graphical(j: Jdm) -> GraphicalityReport:
    """Evaluate the three realizability conditions exactly."""
    counts = vertex_counts(j)
    k = j.k
    violations = []
    integral_ok = tuple(c.denominator == 1 for c in counts)
    for i in range(1, k + 1):
        if not integral_ok[i - 1]:
            violations.append(
                Violation(
                    "integrality",
                    (i,),
                    f"class {i} would need {counts[i - 1]} vertices",
                )
            )
    within_ok = []
    for i in range(1, k + 1):
        n_i = counts[i - 1]
        cap = n_i * (n_i - 1) / 2
        ok = j.entry(i, i) <= cap
        within_ok.append(ok)
        if not ok:
            violations.append(
                Violation(
                    "within-class-capacity",
                    (i,),
                    f"class {i} holds at most {cap} edges, needs {j.entry(i, i)}",
                )
            )
    cross_ok = [[True] * k for _ in range(k)]
    for i in range(1, k + 1):
        for l in range(i + 1, k + 1):
            ok = j.entry(i, l) <= counts[i - 1] * counts[l - 1]
            cross_ok[i - 1][l - 1] = cross_ok[l - 1][i - 1] = ok
            if not ok:
                violations.append(
                    Violation(
                        "cross-class-capacity",
                        (i, l),
                        f"classes {i},{l} span at most "
                        f"{counts[i - 1] * counts[l - 1]} edges, need {j.entry(i, l)}",
                    )
                )
    return GraphicalityReport(
        verdict=not violations,
        counts=counts,
        integral_ok=integral_ok,
        within_ok=tuple(within_ok),
        cross_ok=tuple(tuple(r) for r in cross_ok),
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class CandidateState:
    """A graph with the exact per-class-pair edge counts of jdm.

    Vertex degrees may still disagree with their classes; psi totals that
    disagreement and reaches zero exactly at realizations.
    """

    jdm: Jdm
    graph: LabeledGraph

    @property
    def psi(self) -> int:
        g = self.graph
        return sum(abs(g.degree(v) - g.class_of(v)) for v in g.vertices)

    def pair_counts(self) -> Dict[Tuple[int, int], int]:
        counts: Dict[Tuple[int, int], int] = {}
        g = self.graph
        for u, v in g.edges():
            i, l = sorted((g.class_of(u), g.class_of(v)))
            counts[(i, l)] = counts.get((i, l), 0) + 1
        return counts


def _assign_labels(j: Jdm, labels: Optional[Sequence[int]]) -> Dict[int, int]:
    counts = vertex_counts(j)
    sizes = [int(c) for c in counts]
    total = sum(sizes)
    if labels is None:
        labels = range(total)
    labels = sorted(labels)
    if len(labels) != total:
        raise GraphError(f"need exactly {total} labels, got {len(labels)}")
    if len(set(labels)) != total:
        raise GraphError("labels must be distinct")
    classes: Dict[int, int] = {}
    pos = 0
    for i, size in enumerate(sizes, start=1):
        for v in labels[pos : pos + size]:
            classes[v] = i
        pos += size
    return classes


def initial_candidate(j: Jdm, labels: Optional[Sequence[int]] = None) -> CandidateState:
    """Deterministic seed graph with the exact per-pair edge counts.

    Cross-class pairs take the first J_il cells of the row-major label grid;
    within-class pairs take the first J_ii label pairs in lexicographic order.
    The capacity conditions guarantee room.
    """
    report = check_graphical(j)
    if not report.verdict:
        raise NotGraphicalError(report)
    classes = _assign_labels(j, labels)
    part: Dict[int, list] = {}
    for v, c in sorted(classes.items()):
        part.setdefault(c, []).append(v)
    edges = []
    for i in range(1, j.k + 1):
        left = part.get(i, [])
        quota = j.entry(i, i)
        for u, v in itertools.islice(itertools.combinations(left, 2), quota):
            edges.append((u, v))
        for l in range(i + 1, j.k + 1):
            right = part.get(l, [])
            quota = j.entry(i, l)
            grid = ((u, w) for u in left for w in right)
            for u, w in itertools.islice(grid, quota):
                edges.append((u, w))
    return CandidateState(jdm=j, graph=LabeledGraph(edges, classes))


def psi_descent_step(s: CandidateState) -> CandidateState:
    """Shift one edge from a surplus vertex to a deficient one; psi drops by 2.

    Witnesses are the lowest-labeled deficient vertex x, the lowest-labeled
    surplus vertex y in x's class when one exists (class degree sums are fixed,
    so one always does; other classes are scanned in order as a fallback), and
    the lowest-labeled neighbor z of y that is neither x nor adjacent to x.
    """
    g = s.graph
    psi_before = s.psi
    if psi_before == 0:
        raise GraphError("descent requires psi > 0")
    deficient = [v for v in g.vertices if g.degree(v) < g.class_of(v)]
    assert deficient, "psi > 0 but no vertex is below its class"
    x = min(deficient)
    same = [
        v
        for v in g.partition()[g.class_of(x)]
        if g.degree(v) > g.class_of(v)
    ]
    if same:
        y = min(same)
    else:
        y = None
        for c, members in g.partition().items():
            surplus = [v for v in members if g.degree(v) > c]
            if surplus:
                y = min(surplus)
                break
        assert y is not None, "psi > 0 but no vertex is above its class"
    z = None
    for cand in g.neighbors(y):
        if cand != x and not g.has_edge(x, cand):
            z = cand
            break
    assert z is not None, "no shift target next to the surplus vertex"
    out = CandidateState(jdm=s.jdm, graph=g.rewire([(y, z)], [(x, z)]))
    assert out.psi == psi_before - 2, "descent step must drop psi by exactly 2"
    return out


def construct_realization(
    j: Jdm, labels: Optional[Sequence[int]] = None
) -> LabeledGraph:
    """Build a realization of j, or raise NotGraphicalError with the report."""
    state = initial_candidate(j, labels)
    while state.psi > 0:
        state = psi_descent_step(state)
    assert state.graph.is_realization()
    return state.graph
