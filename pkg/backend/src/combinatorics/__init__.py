__all__ = [
    "partitions",
    "tableaux",
    "hives",
]
