from src.lr import HiveLRCounter, TableauLRCounter
from src.models.enums import LRMethod

# Map enum values → counter classes. "both" is resolved by the caller.
COUNTER_MAP = {
    LRMethod.TABLEAUX.value: TableauLRCounter,
    LRMethod.HIVE.value: HiveLRCounter,
}


def get_counter(method: str, **kwargs):
    """
    Factory method to return an initialized LR counter
    based on method (string/enum value).
    """
    if method not in COUNTER_MAP:
        raise ValueError(f"Unknown LR method: {method}")
    if method == LRMethod.TABLEAUX.value:
        return COUNTER_MAP[method]()
    return COUNTER_MAP[method](**kwargs)


def get_counters(method: str, **kwargs) -> list:
    """Counters to run for `method`; "both" expands to every registered counter."""
    if method == LRMethod.BOTH.value:
        return [get_counter(name, **kwargs) for name in COUNTER_MAP]
    return [get_counter(method, **kwargs)]
