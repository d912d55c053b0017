"""Triangle-area genuine multipartite entanglement measures.

A tripartition X | Y | Z of the parties defines a concurrence triangle
whose edges are the concurrences of the three cuts X|YZ, Y|XZ, Z|XY.
The normalized area is ``[(16/3) Q (Q-a)(Q-b)(Q-c)]**e`` with Q the
half-perimeter.  Two edge conventions are supported:

* ``CONCURRENCE`` (default): edges are concurrences and e = 1/2.
* ``SQUARED``: edges are squared concurrences and e = 1/4.

The polygamy inequalities guarantee the triangle inequality for the
edges under both conventions, so a negative Heron radicand beyond
tolerance signals an upstream bug and raises.

The level-l measure geometrically averages the areas of all tripartitions
``{i} | S | rest`` with |S| = l over ordered pairs (i, S); the total
measure averages the levels ``1 .. floor((N-2)/2)``.  Values are never
clamped from above: areas can exceed 1 for subset-vs-rest cuts of high
local dimension, and such triangles are inventoried instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import InternalInvariantError, ValidationError
from .states import PureState
from .concurrence import CutConcurrenceTable, all_cut_concurrences

ZERO_AREA_TOL = 1e-8
ZERO_EDGE_TOL = 1e-6
TRIANGLE_SLACK_TOL = 1e-9
UNIT_AREA_TOL = 1e-9

__all__ = [
    "EdgeConvention",
    "TriangleEdges",
    "Triangle",
    "ZeroAreaTriangle",
    "GmeReport",
    "heron_area_normalized",
    "f3",
    "f_level",
    "f_total",
    "gme_value",
    "ZERO_AREA_TOL",
    "ZERO_EDGE_TOL",
]


class EdgeConvention(Enum):
    """How cut concurrences become triangle edges."""

    CONCURRENCE = "concurrence"
    SQUARED = "squared"

    @property
    def exponent(self) -> float:
        return 0.5 if self is EdgeConvention.CONCURRENCE else 0.25

    def edge(self, concurrence: float) -> float:
        return concurrence if self is EdgeConvention.CONCURRENCE \
            else concurrence * concurrence


@dataclass(frozen=True)
class TriangleEdges:
    """Edge lengths of one concurrence triangle.

    ``vertex_labels`` holds the three disjoint party subsets (X, Y, Z);
    edge ``a`` belongs to the cut X | YZ, ``b`` to Y | XZ, ``c`` to
    Z | XY.  Edges must satisfy the triangle inequality within 1e-9.
    """

    a: float
    b: float
    c: float
    vertex_labels: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        labels = self.vertex_labels
        if len(labels) != 3 or any(not v for v in labels):
            raise ValidationError("triangle needs three nonempty vertex "
                                  f"subsets, got {labels}")
        combined = [p for v in labels for p in v]
        if len(set(combined)) != len(combined):
            raise ValidationError(f"vertex subsets overlap: {labels}")
        for e in (self.a, self.b, self.c):
            if e < 0.0:
                raise ValidationError(f"negative edge length {e!r}")
        if max(self.a, self.b, self.c) > self.Q + TRIANGLE_SLACK_TOL:
            raise InternalInvariantError(
                "polygamy violated: edge "
                f"{max(self.a, self.b, self.c)!r} exceeds half-perimeter "
                f"{self.Q!r} for vertices {self.vertex_labels}")

    @property
    def Q(self) -> float:
        """Half-perimeter (a + b + c) / 2."""
        return 0.5 * (self.a + self.b + self.c)


@dataclass(frozen=True)
class Triangle:
    """A concurrence triangle with its normalized area."""

    level: int
    edges: TriangleEdges
    area: float

    @property
    def vertex_labels(self):
        return self.edges.vertex_labels


@dataclass(frozen=True)
class ZeroAreaTriangle:
    """A degenerate triangle and the vanishing edges that explain it."""

    level: int
    vertex_labels: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    area: float
    zero_edges: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GmeReport:
    """Full triangle inventory behind a total GME value.

    ``value`` is exactly zero whenever some triangle area falls at or
    below ``ZERO_AREA_TOL``, so ``value == 0`` iff ``zero_triangles``
    is nonempty.  Triangles with area above ``1 + 1e-9`` are listed in
    ``areas_above_one`` rather than clamped.
    """

    convention: EdgeConvention
    dims: tuple[int, ...]
    level_values: dict[int, float]
    value: float
    triangles: tuple[Triangle, ...]
    zero_triangles: tuple[ZeroAreaTriangle, ...]
    areas_above_one: tuple[Triangle, ...]

    @property
    def is_gme(self) -> bool:
        return self.value > 0.0


def heron_area_normalized(edges: TriangleEdges,
                          conv: EdgeConvention) -> float:
    """Normalized Heron area ``[(16/3) Q prod(Q - edge)]**exponent``.

    The radicand is clamped at zero when it is within 1e-9 of zero;
    a radicand below -1e-9 raises ``InternalInvariantError`` since the
    polygamy inequalities forbid it for edges derived from a state.
    """
    q = edges.Q
    rad = (16.0 / 3.0) * q * (q - edges.a) * (q - edges.b) * (q - edges.c)
    if rad < -TRIANGLE_SLACK_TOL:
        raise InternalInvariantError(
            f"polygamy violated: Heron radicand {rad!r} < -1e-9 for "
            f"vertices {edges.vertex_labels}")
    return max(rad, 0.0) ** conv.exponent


def _triangle(table: CutConcurrenceTable, vx: tuple[int, ...],
              vy: tuple[int, ...], vz: tuple[int, ...], level: int,
              conv: EdgeConvention) -> Triangle:
    raw = (table.value(vx), table.value(vy), table.value(vz))
    edges = TriangleEdges(conv.edge(raw[0]), conv.edge(raw[1]),
                          conv.edge(raw[2]), (vx, vy, vz))
    # A vanishing edge forces zero area analytically; rounding noise on
    # a near-zero concurrence otherwise leaks into a spurious tiny area.
    if min(raw) <= ZERO_EDGE_TOL:
        area = 0.0
    else:
        area = heron_area_normalized(edges, conv)
    return Triangle(level, edges, area)


def _level_triangles(psi: PureState, table: CutConcurrenceTable,
                     level: int, conv: EdgeConvention) -> list[Triangle]:
    """All ordered (i, S) triangles {i} | S | rest with |S| = level."""
    n = psi.nparties
    parties = range(1, n + 1)
    out = []
    for i in parties:
        others = [p for p in parties if p != i]
        for s in combinations(others, level):
            rest = tuple(p for p in others if p not in s)
            out.append(_triangle(table, (i,), s, rest, level, conv))
    return out


def _geometric_mean(areas: list[float]) -> float:
    """Geometric mean with an exact zero when any area is degenerate.

    Log-space accumulation avoids underflow of the raw product; any
    area at or below ``ZERO_AREA_TOL`` makes the whole mean zero, which
    keeps the zero-characterization exact on biseparable states.
    """
    if min(areas) <= ZERO_AREA_TOL:
        return 0.0
    return math.exp(math.fsum(math.log(a) for a in areas) / len(areas))


def _zero_inventory(triangles: list[Triangle],
                    table: CutConcurrenceTable) -> list[ZeroAreaTriangle]:
    """Deduplicated zero-area triangles with vanishing edges attributed."""
    seen = set()
    out = []
    for tri in triangles:
        if tri.area > ZERO_AREA_TOL:
            continue
        key = (tri.level, frozenset(tri.vertex_labels))
        if key in seen:
            continue
        seen.add(key)
        zero_edges = tuple(v for v in tri.vertex_labels
                           if table.value(v) <= ZERO_EDGE_TOL)
        out.append(ZeroAreaTriangle(tri.level, tri.vertex_labels,
                                    tri.area, zero_edges))
    return out


def _max_level(nparties: int) -> int:
    return max(1, (nparties - 2) // 2)


def _table_for_levels(psi: PureState, levels: list[int]) -> CutConcurrenceTable:
    n = psi.nparties
    need = max(min(l + 1, n - l - 1) for l in levels)
    need = max(need, max(levels), 1)
    return all_cut_concurrences(psi, min(max(need, 1), n // 2))


def f3(psi: PureState, conv: EdgeConvention = EdgeConvention.CONCURRENCE
       ) -> float:
    """Normalized area of the single {1} | {2} | {3} triangle.

    Zero exactly when the state is biseparable across some party.
    """
    if psi.nparties != 3:
        raise ValidationError(
            f"f3 needs exactly 3 parties, got {psi.nparties}")
    table = all_cut_concurrences(psi, 1)
    tri = _triangle(table, (1,), (2,), (3,), 1, conv)
    return 0.0 if tri.area <= ZERO_AREA_TOL else tri.area


def f_level(psi: PureState, level: int,
            conv: EdgeConvention = EdgeConvention.CONCURRENCE) -> float:
    """Geometric mean area over the level-l triangle family.

    Requires ``N >= 4`` and ``1 <= level <= N - 3`` so that the third
    vertex is nonempty and distinct from the singleton vertex.
    """
    n = psi.nparties
    if n < 4:
        raise ValidationError(f"f_level needs at least 4 parties, got {n}")
    if not 1 <= level <= n - 3:
        raise ValidationError(
            f"level {level} out of range 1..{n - 3} for {n} parties")
    table = _table_for_levels(psi, [level])
    areas = [t.area for t in _level_triangles(psi, table, level, conv)]
    return _geometric_mean(areas)


def f_total(psi: PureState,
            conv: EdgeConvention = EdgeConvention.CONCURRENCE) -> GmeReport:
    """Total GME measure with the full triangle inventory.

    For N = 3 this is the single-triangle area; for N >= 4 it is the
    geometric mean of the level values for l = 1 .. floor((N-2)/2).
    """
    n = psi.nparties
    if n < 3:
        raise ValidationError(f"f_total needs at least 3 parties, got {n}")

    if n == 3:
        table = all_cut_concurrences(psi, 1)
        triangles = [_triangle(table, (1,), (2,), (3,), 1, conv)]
        level_values = {1: _geometric_mean([triangles[0].area])}
    else:
        levels = list(range(1, _max_level(n) + 1))
        table = _table_for_levels(psi, levels)
        triangles = []
        level_values = {}
        for l in levels:
            tris = _level_triangles(psi, table, l, conv)
            triangles.extend(tris)
            level_values[l] = _geometric_mean([t.area for t in tris])

    if min(level_values.values()) <= 0.0:
        total = 0.0
    else:
        total = math.exp(
            math.fsum(math.log(v) for v in level_values.values())
            / len(level_values))

    zero = _zero_inventory(triangles, table)
    above = tuple(t for t in triangles if t.area > 1.0 + UNIT_AREA_TOL)
    return GmeReport(conv, psi.dims, level_values, total,
                     tuple(triangles), tuple(zero), above)


def gme_value(psi: PureState,
              conv: EdgeConvention = EdgeConvention.CONCURRENCE) -> float:
    """Total GME value without materializing the report.

    Same number as ``f_total(psi, conv).value``; used in optimization
    and property-campaign hot paths.
    """
    n = psi.nparties
    if n < 3:
        raise ValidationError(f"gme_value needs at least 3 parties, got {n}")
    if n == 3:
        return f3(psi, conv)
    levels = list(range(1, _max_level(n) + 1))
    table = _table_for_levels(psi, levels)
    vals = []
    for l in levels:
        areas = [t.area for t in _level_triangles(psi, table, l, conv)]
        v = _geometric_mean(areas)
        if v <= 0.0:
            return 0.0
        vals.append(v)
    return math.exp(math.fsum(math.log(v) for v in vals) / len(vals))
