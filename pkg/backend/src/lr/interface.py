from abc import ABC, abstractmethod

from src.combinatorics.partitions import Partition


class LRCounterInterface(ABC):

    @abstractmethod
    def get_information(self) -> dict:
        """
        Get information about the counting method.
        """
        pass

    @abstractmethod
    def count(self, lam: Partition, mu: Partition, nu: Partition) -> int:
        """
        Return the Littlewood-Richardson coefficient c^lam_{mu, nu}.
        Returns 0 when the sizes do not add up.
        """
        pass

    @abstractmethod
    def witnesses(self, lam: Partition, mu: Partition, nu: Partition, limit: int = 10) -> list[str]:
        """
        Return printable objects counted by `count` (LR tableaux or hives),
        at most `limit` of them.
        """
        pass
