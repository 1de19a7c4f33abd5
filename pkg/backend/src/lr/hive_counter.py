from itertools import islice

from src.combinatorics.hives import count_hives, enumerate_hives
from src.combinatorics.partitions import Partition
from src.logger_decorator import log_engine_call
from .interface import LRCounterInterface


class HiveLRCounter(LRCounterInterface):
    """Counts integral hives with the (lam, mu, nu) boundary."""

    def __init__(self, workers: int = 1):
        self.workers = workers

    @log_engine_call(log_result=False)
    def get_information(self) -> dict:
        return {
            "name": "hive",
            "objects": "integral hives",
            "description": "Integer labelings of the triangular hive graph satisfying every rhombus inequality.",
            "workers": self.workers,
        }

    @log_engine_call()
    def count(self, lam: Partition, mu: Partition, nu: Partition) -> int:
        if lam.size != mu.size + nu.size:
            return 0
        return count_hives(lam, mu, nu, workers=self.workers)

    @log_engine_call(log_result=False)
    def witnesses(self, lam: Partition, mu: Partition, nu: Partition, limit: int = 10) -> list[str]:
        if lam.size != mu.size + nu.size:
            return []
        return [h.dump() for h in islice(enumerate_hives(lam, mu, nu), limit)]
