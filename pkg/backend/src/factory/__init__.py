__all__ = [
    "lr",
]
