"""Recursive arc approximations threading a Cantor-set product.

Each generation splits every cell of the product (base set times factor
product) into 2^(n+1) sub-cells, orders them by distance from the origin,
and joins consecutive sub-cells by connector polylines: far corner of one to
the near corner of the next.  The parameter interval of a cell is split into
2^(n+2)-1 equal parts, alternating used (mapped onto connectors) and
neglected (recursing into the sub-cells), so the approximations converge to
an injective curve through every point of the product.

Connector legality is verified by exact rational geometry, never assumed:

* a connector stays inside its parent cell,
* it meets each closed sibling cell only at its own endpoint corner on that
  cell (no grazing, no face-sliding),
* it is disjoint from every other connector routed in that parent.

Those three checks, plus the disjointness of closed cells within one
generation, force all connectors of all generations to be pairwise disjoint:
a connector of a deeper generation lives inside its parent cell, which any
shallower connector touches at most in the two corner points that are never
deeper-connector endpoints.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from typing import Iterator, Optional, Sequence

import numpy as np

from .cantor import (Address, GenerationBudgetError, ProductCantor,
                     RatioCantorSet)
from .geometry import (Box, Point, box_corners, box_diameter_sq,
                       boxes_disjoint, chain_self_intersection, norm_sq,
                       point_in_box, polyline_is_simple, polylines_disjoint,
                       segment_box_clip)

DEFAULT_CELL_BUDGET = 2 ** 18

#: Waypoint offsets, as fractions of the inter-cell gap, tried in order when
#: the straight segment fails its legality tests.  All lie within (-3/8, 3/8)
#: so every waypoint stays strictly inside the open gap box.
DEFAULT_CLEARANCE_OFFSETS = tuple(
    Fraction(n, d) for n, d in (
        (0, 1), (1, 8), (-1, 8), (1, 4), (-1, 4), (1, 16), (-1, 16),
        (3, 16), (-3, 16), (5, 16), (-5, 16), (1, 32), (-1, 32),
        (3, 32), (-3, 32), (5, 32), (-5, 32), (7, 32), (-7, 32),
    ))


class RoutingFailed(RuntimeError):
    """No candidate path passed the exact legality tests."""


@dataclass(frozen=True)
class ClearancePolicy:
    offsets: tuple[Fraction, ...] = DEFAULT_CLEARANCE_OFFSETS
    axis_detours: bool = True


@dataclass(frozen=True)
class Cell:
    """One product cell: an axis-aligned box with exact rational corners."""

    id: int
    generation: int
    rank: int  # 1-based position in the parent's distance order
    box: Box
    parent_id: Optional[int]
    address: tuple[str, ...]  # one branch word per axis

    @property
    def near_corner(self) -> Point:
        """The unique point of the cell closest to the origin."""
        return tuple(lo for lo, _ in self.box)

    @property
    def far_corner(self) -> Point:
        """The unique point of the cell farthest from the origin."""
        return tuple(hi for _, hi in self.box)

    @property
    def distance_sq(self) -> Fraction:
        return norm_sq(self.near_corner)

    @property
    def diameter_sq(self) -> Fraction:
        return box_diameter_sq(self.box)

    def corners(self) -> list[Point]:
        return box_corners(self.box)


@dataclass(frozen=True)
class CellComplex:
    """All cells of one generation, sorted by distance from the origin
    (ties broken lexicographically by near-corner coordinates)."""

    generation: int
    ambient_dimension: int
    cells: tuple[Cell, ...]

    def __post_init__(self):
        for a, b in zip(self.cells, self.cells[1:]):
            if (a.distance_sq, a.near_corner) > (b.distance_sq, b.near_corner):
                raise ValueError("cells are not in distance order")


@dataclass
class ParamInterval:
    """Node of the parametrisation tree over [0, 1].

    Used intervals carry connectors; neglected intervals recurse into cells.
    """

    id: int
    depth: int
    index: int  # position among siblings, 0-based
    lo: Fraction
    hi: Fraction
    status: str  # "used" | "neglected"
    link: int    # connector id if used, cell id if neglected
    children: list["ParamInterval"] = field(default_factory=list)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, t) -> bool:
        return self.lo <= t <= self.hi


@dataclass
class Connector:
    """Simple polyline from one cell's far corner to the next cell's near
    corner, parametrised at constant speed over its used interval."""

    id: int
    depth: int
    vertices: list[Point]
    parent_cell: int
    source_cell: int
    target_cell: int
    interval_id: int = -1
    param_length: Fraction = Fraction(0)
    _cumulative: Optional[list[float]] = None

    @property
    def source(self) -> Point:
        return self.vertices[0]

    @property
    def target(self) -> Point:
        return self.vertices[-1]

    def _cum_lengths(self) -> list[float]:
        if self._cumulative is None:
            acc = [0.0]
            for a, b in zip(self.vertices, self.vertices[1:]):
                acc.append(acc[-1] + math.sqrt(sum((float(x) - float(y)) ** 2
                                                   for x, y in zip(a, b))))
            self._cumulative = acc
        return self._cumulative

    @property
    def length(self) -> float:
        return self._cum_lengths()[-1]

    @property
    def lipschitz(self) -> float:
        """Path length over parameter length: the constant-speed rate."""
        if self.param_length <= 0:
            raise ValueError("connector is not linked to a parameter interval")
        return self.length / float(self.param_length)

    def point_at(self, frac: float) -> tuple[float, ...]:
        """Point at the given fraction of the parameter interval (constant
        speed along the whole polyline)."""
        cum = self._cum_lengths()
        target = min(max(frac, 0.0), 1.0) * cum[-1]
        i = min(bisect.bisect_right(cum, target), len(cum) - 1) - 1
        seg = cum[i + 1] - cum[i]
        s = 0.0 if seg == 0.0 else (target - cum[i]) / seg
        a, b = self.vertices[i], self.vertices[i + 1]
        return tuple(float(x) + s * (float(y) - float(x)) for x, y in zip(a, b))


def subdivide_param_interval(interval: ParamInterval, copies: int) -> list[ParamInterval]:
    """Split a neglected interval into 2^(copies+2) - 1 equal children,
    alternating neglected (even positions) and used (odd positions).

    The neglected children, read left to right, pair with the cell's
    sub-cells in distance order; ids and links are assigned by the builder.
    """
    if interval.status != "neglected":
        raise ValueError("only neglected intervals subdivide")
    parts = 2 ** (copies + 2) - 1
    step = interval.length / parts
    kids = []
    for i in range(parts):
        lo = interval.lo + i * step
        hi = interval.lo + (i + 1) * step if i < parts - 1 else interval.hi
        status = "neglected" if i % 2 == 0 else "used"
        kids.append(ParamInterval(-1, interval.depth + 1, i, lo, hi, status, -1))
    return kids


def _subdivide_cell_boxes(parent_box: Box, child_lengths: Sequence[Fraction]
                          ) -> dict[tuple[int, ...], Box]:
    """All 2^m outer-children boxes of a cell, keyed by branch vector."""
    out = {}
    for bits in iter_product((0, 1), repeat=len(parent_box)):
        axes = []
        for bit, (lo, hi), h in zip(bits, parent_box, child_lengths):
            axes.append((lo, lo + h) if bit == 0 else (hi - h, hi))
        out[bits] = tuple(axes)
    return out


def _gap_box(parent_box: Box, child_lengths: Sequence[Fraction]) -> Box:
    """Open middle gap per axis; no sub-cell meets a point whose every
    coordinate lies in its gap."""
    gaps = []
    for (lo, hi), h in zip(parent_box, child_lengths):
        g_lo, g_hi = lo + h, hi - h
        if not g_lo < g_hi:
            raise ValueError("child intervals leave no middle gap")
        gaps.append((g_lo, g_hi))
    return tuple(gaps)


def _candidate_paths(src: Point, dst: Point, gap: Box,
                     policy: ClearancePolicy) -> Iterator[tuple[Point, ...]]:
    yield (src, dst)
    center = tuple((lo + hi) / 2 for lo, hi in gap)
    span = tuple(hi - lo for lo, hi in gap)
    for off in policy.offsets:
        w = tuple(c + off * s for c, s in zip(center, span))
        yield (src, w, dst)
    if policy.axis_detours:
        for off in policy.offsets:
            base = [c + off * s for c, s in zip(center, span)]
            for axis in range(len(center)):
                w1 = list(base)
                w2 = list(base)
                w1[axis] = base[axis] - span[axis] / 8
                w2[axis] = base[axis] + span[axis] / 8
                yield (src, tuple(w1), tuple(w2), dst)


def _path_legal(vertices: Sequence[Point], cells: Sequence[Cell], s: int,
                parent_box: Box) -> bool:
    """Exact legality of one candidate path joining cells[s] to cells[s+1]:
    stays in the parent, is simple, and touches each closed sub-cell at most
    in its own endpoint corner."""
    if any(not point_in_box(v, parent_box) for v in vertices):
        return False
    if not polyline_is_simple(vertices):
        return False
    segs = list(zip(vertices, vertices[1:]))
    last = len(segs) - 1
    for idx, cell in enumerate(cells):
        for seg_i, (a, b) in enumerate(segs):
            clip = segment_box_clip(a, b, cell.box)
            if clip is None:
                continue
            t0, t1 = clip
            if t0 != t1:
                return False
            if seg_i == 0 and idx == s and t0 == 0:
                continue
            if seg_i == last and idx == s + 1 and t0 == 1:
                continue
            return False
    return True


def route_connectors(ordered_cells: Sequence[Cell], parent_box: Box, gap: Box,
                     policy: ClearancePolicy = ClearancePolicy()
                     ) -> list[list[Point]]:
    """Vertex paths joining consecutive cells in distance order.

    Tries the straight segment first, then gap-waypoint detours from the
    clearance schedule.  Every accepted path passed the exact tests; running
    out of candidates raises RoutingFailed naming the offending pair.
    """
    paths: list[list[Point]] = []
    for s in range(len(ordered_cells) - 1):
        src = ordered_cells[s].far_corner
        dst = ordered_cells[s + 1].near_corner
        chosen = None
        for cand in _candidate_paths(src, dst, gap, policy):
            if not _path_legal(cand, ordered_cells, s, parent_box):
                continue
            if all(polylines_disjoint(cand, p) for p in paths):
                chosen = list(cand)
                break
        if chosen is None:
            raise RoutingFailed(
                f"no legal path between cells ranked {s + 1} and {s + 2} of "
                f"generation {ordered_cells[s].generation} "
                f"(parent {ordered_cells[s].parent_id}); clearance schedule exhausted")
        paths.append(chosen)
    return paths


class ArcApproximation:
    """Generation-by-generation approximation of the curve through a product
    of a ratio Cantor set with a self-similar product."""

    def __init__(self, base_set: RatioCantorSet, product: ProductCantor,
                 policy: ClearancePolicy = ClearancePolicy(),
                 cell_budget: int = DEFAULT_CELL_BUDGET,
                 max_depth: Optional[int] = None):
        if product.copies < 1:
            raise ValueError("product needs at least one factor axis")
        self.base_set = base_set
        self.product = product
        self.policy = policy
        self.cell_budget = cell_budget
        self.max_depth = max_depth
        self.copies = product.copies
        self.ambient_dimension = product.copies + 1
        self.depth = 0

        root_box: Box = tuple((Fraction(0), Fraction(1))
                              for _ in range(self.ambient_dimension))
        root = Cell(0, 0, 1, root_box, None, ("",) * self.ambient_dimension)
        self.cells: list[Cell] = [root]
        self.connectors: list[Connector] = []
        self.intervals: list[ParamInterval] = [
            ParamInterval(0, 0, 0, Fraction(0), Fraction(1), "neglected", 0)]
        self.cells_by_generation: list[list[int]] = [[0]]
        self._cell_index: dict[tuple[str, ...], int] = {root.address: 0}
        self._frontier: list[tuple[int, int]] = [(0, 0)]  # (interval id, cell id)

    # -- construction -----------------------------------------------------

    def _child_lengths(self, k: int) -> list[Fraction]:
        base = self.base_set.generation_length(k)
        factor = self.product.factor.generation_length(k)
        return [base] + [factor] * self.copies

    def build_to(self, depth: int) -> "ArcApproximation":
        # fail fast on the target depth before spending work on shallower ones
        if self.max_depth is not None and depth > self.max_depth:
            raise GenerationBudgetError(f"arc depth {depth} exceeds the cap {self.max_depth}")
        if 2 ** (depth * self.ambient_dimension) > self.cell_budget:
            raise GenerationBudgetError(
                f"depth {depth} needs {2 ** (depth * self.ambient_dimension)} cells, "
                f"over the budget {self.cell_budget}")
        while self.depth < depth:
            self._build_next()
        return self

    def _build_next(self) -> None:
        k = self.depth + 1
        if self.max_depth is not None and k > self.max_depth:
            raise GenerationBudgetError(f"arc depth {k} exceeds the cap {self.max_depth}")
        if 2 ** (k * self.ambient_dimension) > self.cell_budget:
            raise GenerationBudgetError(
                f"generation {k} needs {2 ** (k * self.ambient_dimension)} cells, "
                f"over the budget {self.cell_budget}")
        lengths = self._child_lengths(k)
        gen_cells: list[int] = []
        new_frontier: list[tuple[int, int]] = []
        for interval_id, cell_id in self._frontier:
            parent = self.cells[cell_id]
            sub_cells = self._make_sub_cells(parent, lengths)
            gap = _gap_box(parent.box, lengths)
            paths = route_connectors(sub_cells, parent.box, gap, self.policy)
            conns = []
            for s, path in enumerate(paths):
                conn = Connector(len(self.connectors), k, path, parent.id,
                                 sub_cells[s].id, sub_cells[s + 1].id)
                self.connectors.append(conn)
                conns.append(conn)
            parent_interval = self.intervals[interval_id]
            kids = subdivide_param_interval(parent_interval, self.copies)
            for kid in kids:
                kid.id = len(self.intervals)
                self.intervals.append(kid)
                if kid.status == "neglected":
                    cell = sub_cells[kid.index // 2]
                    kid.link = cell.id
                    new_frontier.append((kid.id, cell.id))
                else:
                    conn = conns[(kid.index - 1) // 2]
                    kid.link = conn.id
                    conn.interval_id = kid.id
                    conn.param_length = kid.length
            parent_interval.children = kids
            gen_cells.extend(c.id for c in sub_cells)
        self.cells_by_generation.append(gen_cells)
        self._frontier = new_frontier
        self.depth = k

    def _make_sub_cells(self, parent: Cell, lengths: Sequence[Fraction]) -> list[Cell]:
        boxes = _subdivide_cell_boxes(parent.box, lengths)
        keyed = []
        for bits, box in boxes.items():
            near = tuple(lo for lo, _ in box)
            keyed.append((norm_sq(near), near, bits, box))
        keyed.sort(key=lambda item: (item[0], item[1]))
        cells = []
        for rank, (_, _, bits, box) in enumerate(keyed, start=1):
            address = tuple(w + str(b) for w, b in zip(parent.address, bits))
            cell = Cell(len(self.cells), parent.generation + 1, rank, box,
                        parent.id, address)
            self.cells.append(cell)
            self._cell_index[address] = cell.id
            cells.append(cell)
        # structural invariants of the distance order
        assert cells[0].near_corner == parent.near_corner
        assert cells[-1].far_corner == parent.far_corner
        return cells

    # -- queries ------------------------------------------------------------

    def generation_cells(self, k: int) -> list[Cell]:
        """Cells of generation k in parameter (traversal) order."""
        self._require_depth(k)
        return [self.cells[i] for i in self.cells_by_generation[k]]

    def cell_complex(self, k: int) -> CellComplex:
        """Cells of generation k in global distance order."""
        cells = sorted(self.generation_cells(k),
                       key=lambda c: (c.distance_sq, c.near_corner))
        return CellComplex(k, self.ambient_dimension, tuple(cells))

    def connectors_at(self, k: int) -> list[Connector]:
        return [c for c in self.connectors if c.depth == k]

    def cumulative_connectors(self, k: int) -> list[Connector]:
        return [c for c in self.connectors if c.depth <= k]

    def children_of(self, cell_id: int) -> list[Cell]:
        return [c for c in self.cells if c.parent_id == cell_id]

    def cell_at(self, address: Address | tuple[str, ...]) -> Cell:
        words = address.words if isinstance(address, Address) else tuple(address)
        try:
            return self.cells[self._cell_index[words]]
        except KeyError:
            raise KeyError(f"no built cell at address {words}") from None

    def cell_diameter_sq(self, k: int) -> Fraction:
        """Common squared diameter of every generation-k cell."""
        lengths = self._child_lengths(k) if k > 0 else [Fraction(1)] * self.ambient_dimension
        return sum((h * h for h in lengths), Fraction(0))

    def cell_diameter(self, k: int) -> float:
        return math.sqrt(float(self.cell_diameter_sq(k)))

    def param_interval_length(self, depth: int) -> Fraction:
        """Common length of every depth-``depth`` parameter interval."""
        return Fraction(1, (2 ** (self.copies + 2) - 1) ** depth)

    def used_intervals(self, depth: int) -> list[ParamInterval]:
        return [iv for iv in self.intervals if iv.depth == depth and iv.status == "used"]

    def neglected_intervals(self, depth: int) -> list[ParamInterval]:
        return [iv for iv in self.intervals if iv.depth == depth and iv.status == "neglected"]

    def _require_depth(self, k: int) -> None:
        if k < 0 or k > self.depth:
            raise ValueError(f"generation {k} is not built (depth {self.depth})")

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, t, k: int) -> tuple[tuple[float, ...], float]:
        """Point of the depth-k model at parameter t, with an error bound.

        Inside a used interval the connector point is returned exactly (error
        0); otherwise the representative is the near corner of the depth-k
        cell the parameter recurses into, with the cell diameter as error.
        The limit curve is never claimed at finite depth.
        """
        if not 0 <= t <= 1:
            raise ValueError(f"parameter must lie in [0, 1], got {t}")
        if k < 1:
            raise ValueError("evaluation depth starts at 1")
        self._require_depth(k)
        node = self.intervals[0]
        while True:
            if node.status == "used":
                conn = self.connectors[node.link]
                frac = float((Fraction(t) - node.lo) / node.length)
                return conn.point_at(frac), 0.0
            if node.depth == k:
                cell = self.cells[node.link]
                return (tuple(float(c) for c in cell.near_corner),
                        self.cell_diameter(k))
            matches = [c for c in node.children if c.contains(t)]
            node = next((c for c in matches if c.status == "used"), matches[0])

    def traversal_pieces(self, k: int) -> list[tuple[str, int, list[Point]]]:
        """Traversal of the depth-k model in parameter order: connectors for
        used intervals, near-to-far diagonals for depth-k cells."""
        self._require_depth(k)
        if k < 1:
            raise ValueError("traversal depth starts at 1")
        pieces: list[tuple[str, int, list[Point]]] = []

        def walk(node: ParamInterval) -> None:
            if node.status == "used":
                conn = self.connectors[node.link]
                pieces.append(("connector", conn.id, list(conn.vertices)))
            elif node.depth == k:
                cell = self.cells[node.link]
                pieces.append(("cell", cell.id,
                               [cell.near_corner, cell.far_corner]))
            else:
                for child in node.children:
                    walk(child)

        walk(self.intervals[0])
        return pieces

    def traversal_chain(self, k: int) -> list[Point]:
        """Glued vertex chain of the depth-k traversal."""
        pieces = self.traversal_pieces(k)
        chain = list(pieces[0][2])
        for _, _, verts in pieces[1:]:
            if verts[0] != chain[-1]:
                raise RuntimeError("traversal pieces do not share endpoints")
            chain.extend(verts[1:])
        return chain

    def vertex_cloud(self, k: int) -> np.ndarray:
        """Float array of connector vertices (depths <= k) plus generation-k
        cell corners: the finite stand-in for the depth-k curve."""
        self._require_depth(k)
        pts: list[tuple[float, ...]] = []
        for conn in self.connectors:
            if conn.depth <= k:
                pts.extend(tuple(float(c) for c in v) for v in conn.vertices)
        for cell in self.generation_cells(k):
            pts.extend(tuple(float(c) for c in corner) for corner in cell.corners())
        return np.unique(np.array(pts, dtype=float), axis=0)


def build_arc(base_set: RatioCantorSet, product: ProductCantor, depth: int,
              policy: ClearancePolicy = ClearancePolicy(),
              cell_budget: int = DEFAULT_CELL_BUDGET) -> ArcApproximation:
    arc = ArcApproximation(base_set, product, policy, cell_budget)
    return arc.build_to(depth)


def build_first_generation(base_set: RatioCantorSet,
                           product: ProductCantor) -> CellComplex:
    """The 2^(n+1) first-generation cells, sorted by distance from the origin,
    with exact corners."""
    arc = ArcApproximation(base_set, product)
    arc.build_to(1)
    return arc.cell_complex(1)


# -- verification -----------------------------------------------------------


@dataclass
class InjectivityReport:
    depth: int
    connector_pairs_checked: int
    connector_violations: list[tuple[int, int]]
    clearance_violations: list[int]
    traversal_violation: Optional[tuple[int, int]]
    cell_links_injective: bool

    @property
    def passed(self) -> bool:
        return (not self.connector_violations and not self.clearance_violations
                and self.traversal_violation is None and self.cell_links_injective)


def _connector_bbox(conn: Connector) -> Box:
    return tuple((min(v[i] for v in conn.vertices), max(v[i] for v in conn.vertices))
                 for i in range(len(conn.vertices[0])))


def verify_injectivity(arc: ArcApproximation, k: int) -> InjectivityReport:
    """Exact injectivity evidence for the depth-k model.

    (i) all cumulative connectors pairwise disjoint, (ii) the parameter-order
    traversal is a simple polyline, (iii) distinct depth-k neglected intervals
    map into distinct cells, and every connector passes its clearance tests
    against the cells of its own generation.
    """
    conns = arc.cumulative_connectors(k)
    boxes = {c.id: _connector_bbox(c) for c in conns}
    violations: list[tuple[int, int]] = []
    pairs = 0
    for i in range(len(conns)):
        ci = conns[i]
        bi = boxes[ci.id]
        for j in range(i + 1, len(conns)):
            cj = conns[j]
            pairs += 1
            if boxes_disjoint(bi, boxes[cj.id]):
                continue
            if not polylines_disjoint(ci.vertices, cj.vertices):
                violations.append((ci.id, cj.id))

    clearance: list[int] = []
    siblings: dict[int, list[Cell]] = {}
    for conn in conns:
        sibs = siblings.get(conn.parent_cell)
        if sibs is None:
            sibs = arc.children_of(conn.parent_cell)
            siblings[conn.parent_cell] = sibs
        ranked = sorted(sibs, key=lambda c: c.rank)
        s = next(i for i, c in enumerate(ranked) if c.id == conn.source_cell)
        parent_box = arc.cells[conn.parent_cell].box
        if not _path_legal(conn.vertices, ranked, s, parent_box):
            clearance.append(conn.id)

    try:
        chain = arc.traversal_chain(k)
        traversal_violation = chain_self_intersection(chain)
    except (RuntimeError, ValueError):
        # chain fails to glue or degenerates: report rather than crash
        traversal_violation = (-1, -1)

    neglected = arc.neglected_intervals(k)
    links = [iv.link for iv in neglected]
    cell_links_injective = len(links) == len(set(links))

    return InjectivityReport(k, pairs, violations, clearance,
                             traversal_violation, cell_links_injective)


@dataclass
class ContainmentReport:
    depth: int
    sample_count: int
    max_distance: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.max_distance <= self.bound + 1e-12


def verify_containment(arc: ArcApproximation, k: int,
                       addresses: Sequence[Address]) -> ContainmentReport:
    """Every sampled product point lies within one cell diameter of the
    depth-k model's vertex cloud; the bound shrinks with k."""
    cloud = arc.vertex_cloud(k)
    worst = 0.0
    for address in addresses:
        cell = arc.cell_at(address)
        z = np.array([float(c) for c in cell.near_corner])
        dist = float(np.min(np.linalg.norm(cloud - z, axis=1)))
        worst = max(worst, dist)
    return ContainmentReport(k, len(addresses), worst, arc.cell_diameter(k))


def sample_addresses(arc: ArcApproximation, count: int, rng,
                     depth: Optional[int] = None) -> list[Address]:
    depth = arc.depth if depth is None else depth
    return [Address.random(arc.ambient_dimension, depth, rng) for _ in range(count)]


@dataclass
class ModulusReport:
    epsilon: float
    delta: float
    cutoff_depth: int
    delta_prime: float
    lipschitz_bound: float
    vacuous: bool


def modulus_of_continuity(arc: ArcApproximation, epsilon: float) -> ModulusReport:
    """delta such that parameters closer than delta map within epsilon.

    With K the smallest depth whose cell diameter is below epsilon, delta is
    the smaller of half a depth-(K+1) parameter interval and
    epsilon / (2 * max Lipschitz rate of connectors at depths <= K).
    Requires depth K+1 built.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if epsilon >= math.sqrt(arc.ambient_dimension):
        return ModulusReport(epsilon, 1.0, 0, 1.0, 0.0, True)
    cutoff = None
    for k in range(1, arc.depth + 1):
        if arc.cell_diameter(k) < epsilon:
            cutoff = k
            break
    if cutoff is None or cutoff + 1 > arc.depth:
        raise GenerationBudgetError(
            f"modulus at epsilon={epsilon} needs depth "
            f"{(cutoff or arc.depth) + 1}; build deeper")
    delta_prime = float(arc.param_interval_length(cutoff + 1)) / 2.0
    lipschitz = max(c.lipschitz for c in arc.cumulative_connectors(cutoff))
    delta = min(delta_prime, epsilon / (2.0 * lipschitz))
    return ModulusReport(epsilon, delta, cutoff, delta_prime, lipschitz, False)


def continuity_violations(arc: ArcApproximation, epsilon: float, delta: float,
                          pairs: int, rng) -> int:
    """Count sampled parameter pairs with |x - y| < delta whose depth-built
    images end up epsilon or farther apart (expected: zero)."""
    violations = 0
    for _ in range(pairs):
        x = rng.random()
        y = x + rng.uniform(-delta, delta)
        y = min(max(y, 0.0), 1.0)
        if abs(x - y) >= delta:
            continue
        px, _ = arc.evaluate(x, arc.depth)
        py, _ = arc.evaluate(y, arc.depth)
        if math.dist(px, py) >= epsilon:
            violations += 1
    return violations
