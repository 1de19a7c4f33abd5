from itertools import islice
from typing import Iterator, Optional

from src.combinatorics.partitions import Partition
from src.combinatorics.tableaux import SkewShape, count_lr
from src.logger_decorator import log_engine_call
from .interface import LRCounterInterface


class TableauLRCounter(LRCounterInterface):
    """Counts lattice-word skew tableaux of shape lam/mu and content nu."""

    @log_engine_call(log_result=False)
    def get_information(self) -> dict:
        return {
            "name": "tableaux",
            "objects": "LR tableaux",
            "description": "Semistandard fillings of lambda/mu with content nu whose reverse reading word is a lattice word.",
        }

    @log_engine_call()
    def count(self, lam: Partition, mu: Partition, nu: Partition) -> int:
        return count_lr(lam, mu, nu)

    @log_engine_call(log_result=False)
    def witnesses(self, lam: Partition, mu: Partition, nu: Partition, limit: int = 10) -> list[str]:
        return [_render(t) for t in islice(_lr_tableaux(lam, mu, nu), limit)]


def _lr_tableaux(lam: Partition, mu: Partition, nu: Partition) -> Iterator[list[list[Optional[int]]]]:
    """Generate LR tableaux as lists of rows (None marks a cell of mu)."""
    if lam.size != mu.size + nu.size or not lam.contains(mu):
        return
    shape = SkewShape(lam, mu)
    rows = len(lam)
    grid: list[list[Optional[int]]] = [[None] * lam.part(r) for r in range(rows)]
    used = [0] * (len(nu) + 1)

    # reverse reading order, so the lattice condition is checked on prefixes
    order = sorted(shape.cells(), key=lambda rc: (rc[0], -rc[1]))

    def place(i: int) -> Iterator[list[list[Optional[int]]]]:
        if i == len(order):
            yield [list(row) for row in grid]
            return
        r, c = order[i]
        for v in range(1, len(nu) + 1):
            if used[v] >= nu.part(v - 1):
                continue
            if v > 1 and used[v] + 1 > used[v - 1]:
                continue
            right = grid[r][c + 1] if c + 1 < lam.part(r) else None
            if right is not None and right < v:
                continue
            if r > 0 and c >= mu.part(r - 1) and grid[r - 1][c] >= v:
                continue
            grid[r][c] = v
            used[v] += 1
            yield from place(i + 1)
            used[v] -= 1
            grid[r][c] = None

    yield from place(0)


def _render(rows: list[list[Optional[int]]]) -> str:
    return "\n".join(" ".join("." if x is None else str(x) for x in row) for row in rows)
