__all__ = [
    "params",
    "spectrum",
    "chain",
    "bounds",
    "auxiliary",
    "limits",
]
