# Enums
from .enums import (
    ZoneLabel,
    ZONE_PRIORITY,
    WBlock,
    LRMethod,
    OutputFormat,
    Command,
)

# Schemas
from .schemas import (
    RunConfig,
    RunHeader,
    LRResult,
    FixpointSummary,
)

__all__ = [
    # Enums
    "ZoneLabel",
    "ZONE_PRIORITY",
    "WBlock",
    "LRMethod",
    "OutputFormat",
    "Command",
    # Schemas
    "RunConfig",
    "RunHeader",
    "LRResult",
    "FixpointSummary",
]
