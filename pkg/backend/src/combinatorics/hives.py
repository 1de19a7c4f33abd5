"""
Integral hives and hive-based LR counting.

Vertices of the triangular hive graph of side n are addressed as (r, k) with
0 <= k <= r <= n, row r counted from the top vertex and k from the left edge.
The boundary of a (lam, mu, nu)-hive reads

    left edge   (r, 0) = lam_1 + ... + lam_r
    right edge  (r, r) = mu_1 + ... + mu_r
    bottom edge (n, k) = |mu| + nu_1 + ... + nu_{n-k}

A rhombus is two unit triangles sharing an edge; the shared edge joins the two
obtuse vertices. A hive satisfies obtuse sum >= acute sum on every rhombus.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterator, Optional

from src.combinatorics.partitions import Partition
from src.exceptions import InvalidInputError

Vertex = tuple[int, int]
# (obtuse, obtuse, acute, acute)
Rhombus = tuple[Vertex, Vertex, Vertex, Vertex]

# Direction pairs spanning the three parallelogram orientations; the base
# vertex and the far corner are the acute ones.
_PARALLELOGRAM_DIRECTIONS = (
    ((1, 0), (1, 1)),
    ((0, 1), (1, 1)),
    ((1, 0), (0, -1)),
)


@dataclass(frozen=True)
class Hive:
    """A labeling of the vertices of the hive graph of side `side`."""

    side: int
    labels: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        if self.side < 0:
            raise InvalidInputError(f"Hive side must be non-negative, got {self.side}")
        if len(self.labels) != self.side + 1 or any(
            len(row) != r + 1 for r, row in enumerate(self.labels)
        ):
            raise InvalidInputError(f"Labels do not form a triangle of side {self.side}")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "Hive":
        return cls(len(rows) - 1, tuple(tuple(row) for row in rows))

    @classmethod
    def constant(cls, side: int, value: int = 0) -> "Hive":
        return cls(side, tuple((value,) * (r + 1) for r in range(side + 1)))

    def label(self, v: Vertex) -> Optional[int]:
        return self.labels[v[0]][v[1]]

    def with_label(self, v: Vertex, value: int) -> "Hive":
        rows = [list(row) for row in self.labels]
        rows[v[0]][v[1]] = value
        return Hive.from_rows(rows)

    def rows(self) -> list[list[Optional[int]]]:
        return [list(row) for row in self.labels]

    def is_populated(self) -> bool:
        return all(x is not None for row in self.labels for x in row)

    def dump(self) -> str:
        """One line per row, top row first, labels separated by spaces."""
        return "\n".join(
            " ".join("." if x is None else str(x) for x in row) for row in self.labels
        )


def default_side(lam: Partition, mu: Partition, nu: Partition) -> int:
    return max(len(lam), len(mu) + len(nu), 1)


def _in_triangle(v: Vertex, side: int) -> bool:
    r, k = v
    return 0 <= r <= side and 0 <= k <= r


@lru_cache(maxsize=64)
def rhombi(side: int) -> tuple[Rhombus, ...]:
    """All 3 * C(side, 2) unit rhombi."""
    out: list[Rhombus] = []
    for r in range(side):
        for k in range(r + 1):
            # shared horizontal edge (r, k)-(r, k+1)
            if 1 <= r and k <= r - 1:
                out.append(((r, k), (r, k + 1), (r - 1, k), (r + 1, k + 1)))
            # shared edge (r, k)-(r+1, k), going down-left
            if 1 <= k:
                out.append(((r, k), (r + 1, k), (r + 1, k + 1), (r, k - 1)))
            # shared edge (r, k)-(r+1, k+1), going down-right
            if k <= r - 1:
                out.append(((r, k), (r + 1, k + 1), (r + 1, k), (r, k + 1)))
    return tuple(out)


def parallelograms(side: int) -> Iterator[Rhombus]:
    """Every hive parallelogram, as (obtuse, obtuse, acute, acute)."""
    for r in range(side + 1):
        for k in range(r + 1):
            for d1, d2 in _PARALLELOGRAM_DIRECTIONS:
                for p in range(1, side + 1):
                    corner1 = (r + p * d1[0], k + p * d1[1])
                    if not _in_triangle(corner1, side):
                        break
                    for q in range(1, side + 1):
                        corner2 = (r + q * d2[0], k + q * d2[1])
                        far = (corner1[0] + q * d2[0], corner1[1] + q * d2[1])
                        if not (_in_triangle(corner2, side) and _in_triangle(far, side)):
                            break
                        yield corner1, corner2, (r, k), far


def _violated(h: Hive, shape: Rhombus) -> bool:
    o1, o2, a1, a2 = shape
    return h.label(o1) + h.label(o2) < h.label(a1) + h.label(a2)


def rhombus_violations(h: Hive) -> list[Rhombus]:
    return [rh for rh in rhombi(h.side) if _violated(h, rh)]


def parallelogram_violations(h: Hive) -> list[Rhombus]:
    return [pg for pg in parallelograms(h.side) if _violated(h, pg)]


def check_rhombus(h: Hive) -> bool:
    if not h.is_populated():
        raise InvalidInputError("check_rhombus needs every label populated")
    return not rhombus_violations(h)


def parallelogram_ok(h: Hive) -> bool:
    if not h.is_populated():
        raise InvalidInputError("parallelogram_ok needs every label populated")
    return not any(_violated(h, pg) for pg in parallelograms(h.side))


@dataclass(frozen=True)
class HiveBoundary:
    """(lam, mu, nu) read as length-side vectors along the three edges."""

    lam: Partition
    mu: Partition
    nu: Partition
    side: int

    def __post_init__(self):
        if self.lam.size != self.mu.size + self.nu.size:
            raise InvalidInputError(
                f"|lambda| = {self.lam.size} differs from |mu| + |nu| = {self.mu.size + self.nu.size}"
            )
        if max(len(self.lam), len(self.mu), len(self.nu)) > self.side:
            raise InvalidInputError(f"Side {self.side} is too small for {self.lam}, {self.mu}, {self.nu}")

    def _prefix(self, part: Partition) -> list[int]:
        return [0] + list(accumulate(part.part(i) for i in range(self.side)))

    def labels(self) -> dict[Vertex, int]:
        side = self.side
        lam_prefix, mu_prefix, nu_prefix = self._prefix(self.lam), self._prefix(self.mu), self._prefix(self.nu)
        labels: dict[Vertex, int] = {}
        for r in range(side + 1):
            labels[(r, 0)] = lam_prefix[r]
            labels[(r, r)] = mu_prefix[r]
        for k in range(side + 1):
            labels[(side, k)] = self.mu.size + nu_prefix[side - k]
        return labels


def boundary_labels(lam: Partition, mu: Partition, nu: Partition, side: int) -> dict[Vertex, int]:
    return HiveBoundary(lam, mu, nu, side).labels()


def boundary_hive(lam: Partition, mu: Partition, nu: Partition, side: Optional[int] = None) -> Hive:
    """Hive with the boundary filled in and every interior label unset."""
    side = default_side(lam, mu, nu) if side is None else side
    labels = boundary_labels(lam, mu, nu, side)
    return Hive(side, tuple(tuple(labels.get((r, k)) for k in range(r + 1)) for r in range(side + 1)))


@dataclass(frozen=True)
class _Schedule:
    """Row-major interior order and, per interior vertex, the rhombi it closes."""

    interior: tuple[Vertex, ...]
    closing: tuple[tuple[Rhombus, ...], ...]
    boundary_only: tuple[Rhombus, ...]


@lru_cache(maxsize=64)
def _schedule(side: int) -> _Schedule:
    interior = tuple((r, k) for r in range(2, side) for k in range(1, r))
    order = {v: i for i, v in enumerate(interior)}
    closing: list[list[Rhombus]] = [[] for _ in interior]
    boundary_only: list[Rhombus] = []
    for rh in rhombi(side):
        last = max(order.get(v, -1) for v in rh)
        if last < 0:
            boundary_only.append(rh)
        else:
            closing[last].append(rh)
    return _Schedule(interior, tuple(tuple(c) for c in closing), tuple(boundary_only))


def _interval(labels: dict[Vertex, int], v: Vertex, closing: tuple[Rhombus, ...]) -> tuple[int, int]:
    """Feasible [lo, hi] for v given every other vertex of its closing rhombi."""
    lo, hi = None, None
    for o1, o2, a1, a2 in closing:
        if v == o1 or v == o2:
            other = o2 if v == o1 else o1
            bound = labels[a1] + labels[a2] - labels[other]
            lo = bound if lo is None else max(lo, bound)
        else:
            other = a2 if v == a1 else a1
            bound = labels[o1] + labels[o2] - labels[other]
            hi = bound if hi is None else min(hi, bound)
    if lo is None or hi is None:
        raise InvalidInputError(f"Interior vertex {v} is not bounded on both sides")
    return lo, hi


def _search(labels: dict[Vertex, int], schedule: _Schedule, start: int) -> Iterator[dict[Vertex, int]]:
    interior = schedule.interior
    if start == len(interior):
        yield labels
        return
    v = interior[start]
    lo, hi = _interval(labels, v, schedule.closing[start])
    for value in range(lo, hi + 1):
        labels[v] = value
        yield from _search(labels, schedule, start + 1)
    labels.pop(v, None)


def _count_from(labels: dict[Vertex, int], schedule: _Schedule, start: int) -> int:
    interior = schedule.interior
    if start == len(interior):
        return 1
    v = interior[start]
    lo, hi = _interval(labels, v, schedule.closing[start])
    total = 0
    for value in range(lo, hi + 1):
        labels[v] = value
        total += _count_from(labels, schedule, start + 1)
    labels.pop(v, None)
    return total


def _prepared(lam: Partition, mu: Partition, nu: Partition, side: Optional[int]):
    side = default_side(lam, mu, nu) if side is None else side
    if max(len(lam), len(mu), len(nu)) > side:
        return None, None
    labels = boundary_labels(lam, mu, nu, side)
    schedule = _schedule(side)
    for o1, o2, a1, a2 in schedule.boundary_only:
        if labels[o1] + labels[o2] < labels[a1] + labels[a2]:
            return None, None
    return labels, schedule


def enumerate_hives(
    lam: Partition, mu: Partition, nu: Partition, side: Optional[int] = None
) -> Iterator[Hive]:
    """Generate every integral hive with the (lam, mu, nu) boundary."""
    if lam.size != mu.size + nu.size:
        raise InvalidInputError(f"|lambda| = {lam.size} differs from |mu| + |nu| = {mu.size + nu.size}")
    labels, schedule = _prepared(lam, mu, nu, side)
    if labels is None:
        return
    n = max(v[0] for v in labels)
    for filled in _search(labels, schedule, 0):
        yield Hive(n, tuple(tuple(filled[(r, k)] for k in range(r + 1)) for r in range(n + 1)))


def count_hives(
    lam: Partition,
    mu: Partition,
    nu: Partition,
    side: Optional[int] = None,
    workers: int = 1,
) -> int:
    """
    Number of integral hives with the (lam, mu, nu) boundary.

    With workers > 1 the search is split on the values of the first interior
    label and each branch is counted with its own label map.
    """
    if lam.size != mu.size + nu.size:
        raise InvalidInputError(f"|lambda| = {lam.size} differs from |mu| + |nu| = {mu.size + nu.size}")
    labels, schedule = _prepared(lam, mu, nu, side)
    if labels is None:
        return 0
    if workers <= 1 or not schedule.interior:
        return _count_from(labels, schedule, 0)

    first = schedule.interior[0]
    lo, hi = _interval(labels, first, schedule.closing[0])

    def branch(value: int) -> int:
        local = dict(labels)
        local[first] = value
        return _count_from(local, schedule, 1)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return sum(executor.map(branch, range(lo, hi + 1)))
