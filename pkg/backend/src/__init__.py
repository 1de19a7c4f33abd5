__all__ = [
    "combinatorics",
    "lr",
    "shuffle",
    "models",
]
