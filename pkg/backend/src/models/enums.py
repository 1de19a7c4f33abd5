from enum import Enum


class ZoneLabel(str, Enum):
    TRIVIAL = "Trivial"
    RED_I = "RedI"
    RED_II = "RedII"
    RED_III = "RedIII"
    RED_IV = "RedIV"
    BLUE_I_PLUS = "BlueI+"
    BLUE_I_MINUS = "BlueI-"
    BLUE_II_PLUS = "BlueII+"
    BLUE_II_MINUS = "BlueII-"
    YELLOW_PLUS = "Yellow+"
    YELLOW_MINUS = "Yellow-"

    @property
    def color(self) -> str:
        if self is ZoneLabel.TRIVIAL:
            return "Trivial"
        return self.value.rstrip("+-").rstrip("IV")


# Priority used when one partition sits on the boundary of several zones
ZONE_PRIORITY = (
    ZoneLabel.YELLOW_PLUS,
    ZoneLabel.YELLOW_MINUS,
    ZoneLabel.BLUE_I_PLUS,
    ZoneLabel.BLUE_II_PLUS,
    ZoneLabel.BLUE_I_MINUS,
    ZoneLabel.BLUE_II_MINUS,
    ZoneLabel.RED_I,
    ZoneLabel.RED_II,
    ZoneLabel.RED_III,
    ZoneLabel.RED_IV,
)


class WBlock(str, Enum):
    W1 = "W1"
    W2 = "W2"
    W3 = "W3"


class LRMethod(str, Enum):
    TABLEAUX = "tableaux"
    HIVE = "hive"
    BOTH = "both"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Command(str, Enum):
    SPECTRUM = "spectrum"
    VERIFY_SPECTRUM = "verify-spectrum"
    TV = "tv"
    MIX_CURVE = "mix-curve"
    L2BOUND = "l2bound"
    LR = "lr"
    FIXPOINTS = "fixpoints"
    MOMENTS = "moments"
    ZONES = "zones"
