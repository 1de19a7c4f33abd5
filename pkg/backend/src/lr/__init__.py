from .interface import LRCounterInterface
from .tableau_counter import TableauLRCounter
from .hive_counter import HiveLRCounter

__all__ = [
    "LRCounterInterface",
    "TableauLRCounter",
    "HiveLRCounter",
]
