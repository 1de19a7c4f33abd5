import json
from fractions import Fraction
from typing import Optional, List

from pydantic import BaseModel, field_validator, model_validator

from src.combinatorics.partitions import Partition, parse_partition
from src.constants import DEFAULT_EPSILON, DEFAULT_SEED, DEFAULT_THREADS, TOOL_VERSION
from src.shuffle.params import ShuffleParams, parse_rational
from .enums import Command, LRMethod, OutputFormat

# Fields that steer execution but never change a result
RUNTIME_FIELDS = {"threads", "output", "verbose", "progress"}


# Run configuration
class RunConfig(BaseModel):
    command: Command
    n: Optional[int] = None
    n_a: Optional[int] = None
    n_b: Optional[int] = None
    b: str = "1"
    t: Optional[float] = None
    t_min: int = 0
    t_max: Optional[int] = None
    c: float = 0.0
    samples: int = 100_000
    seed: int = DEFAULT_SEED
    epsilon: float = DEFAULT_EPSILON
    tol: float = 1e-9
    lam: Optional[str] = None
    mu: Optional[str] = None
    nu: Optional[str] = None
    method: LRMethod = LRMethod.BOTH
    ps: List[int] = [1, 2, 3]
    ns: Optional[List[int]] = None
    format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = None
    threads: int = DEFAULT_THREADS
    verbose: bool = False
    progress: bool = False

    @field_validator("b", mode="before")
    @classmethod
    def parse_bias(cls, value) -> str:
        b = parse_rational(value)
        if not 0 < b <= 1:
            raise ValueError(f"b must lie in (0, 1], got {b}")
        return str(b)

    @field_validator("n", "n_a", "n_b")
    @classmethod
    def positive_deck(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError(f"deck sizes must be positive, got {value}")
        return value

    @field_validator("samples", "threads")
    @classmethod
    def positive_count(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value

    @field_validator("epsilon", "tol")
    @classmethod
    def positive_tolerance(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("lam", "mu", "nu")
    @classmethod
    def well_formed_partition(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        return str(parse_partition(value))

    @field_validator("ps", "ns")
    @classmethod
    def non_negative_list(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is not None and any(v < 0 for v in value):
            raise ValueError(f"entries must be non-negative, got {value}")
        return value

    @model_validator(mode="after")
    def consistent_split(self) -> "RunConfig":
        if self.n is not None and (self.n_a is not None or self.n_b is not None):
            raise ValueError("give either n or n_a/n_b, not both")
        if (self.n_a is None) != (self.n_b is None):
            raise ValueError("n_a and n_b must be given together")
        if self.t is not None and self.t < 0:
            raise ValueError(f"t must be non-negative, got {self.t}")
        if self.t_max is not None and self.t_max < self.t_min:
            raise ValueError(f"t_max {self.t_max} is below t_min {self.t_min}")
        return self

    @property
    def bias(self) -> Fraction:
        return Fraction(self.b)

    @property
    def has_deck(self) -> bool:
        return self.n is not None or self.n_a is not None

    def params(self, n: Optional[int] = None) -> ShuffleParams:
        """Deck and bias of this run; `n` overrides the half-deck size."""
        if n is not None:
            return ShuffleParams.balanced(n, self.bias)
        if self.n is not None:
            return ShuffleParams.balanced(self.n, self.bias)
        if self.n_a is not None:
            return ShuffleParams(self.n_a, self.n_b, self.bias)
        raise ValueError(f"command {self.command.value} needs --n or --na/--nb")

    def partitions(self) -> tuple[Partition, Partition, Partition]:
        if self.lam is None or self.mu is None or self.nu is None:
            raise ValueError("lr needs --lambda, --mu and --nu")
        return parse_partition(self.lam), parse_partition(self.mu), parse_partition(self.nu)

    def echo(self) -> str:
        """Sorted JSON of every field that can influence the output."""
        return json.dumps(self.model_dump(mode="json", exclude=RUNTIME_FIELDS), sort_keys=True)


# Report records
class RunHeader(BaseModel):
    tool_version: str = TOOL_VERSION
    config: str
    seed: int

    @classmethod
    def for_run(cls, config: RunConfig) -> "RunHeader":
        return cls(config=config.echo(), seed=config.seed)


class LRResult(BaseModel):
    method: str
    coefficient: int


class FixpointSummary(BaseModel):
    n_cards: int
    shuffles: int
    shuffles_real: float
    samples: int
    rate: float
    tv_empirical: float
    conjecture: float
    hellinger_lower_bound: float
