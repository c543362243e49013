from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    field_validator,
    model_validator,
)


def _parse_rational(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not an exact rational: {value!r}") from e
    raise ValueError(f"expected 'p/q' string or integer, got {type(value).__name__}")


# Exact rationals travel as "p/q" (or "p") strings.
Rational = Annotated[
    Fraction,
    PlainValidator(_parse_rational),
    PlainSerializer(str, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]


# =================================
# Schemas for geometry inputs
# =================================
class GeometrySpec(BaseModel):
    """X = P^n with the split bundle E = sum_i O(l_i); Y is the zero locus of a section."""

    model_config = ConfigDict(frozen=True)

    ambient_dim: int = Field(ge=1)
    bundle_degrees: List[int] = Field(min_length=1)
    trunc_order: int = Field(default=8, ge=0)

    @field_validator("bundle_degrees")
    @classmethod
    def degrees_positive(cls, v: List[int]) -> List[int]:
        if any(l < 1 for l in v):
            raise ValueError(f"bundle degrees must be >= 1, got {v}")
        return v

    @model_validator(mode="after")
    def fano_or_calabi_yau(self) -> "GeometrySpec":
        if sum(self.bundle_degrees) > self.ambient_dim + 1:
            raise ValueError(
                f"sum of degrees {sum(self.bundle_degrees)} exceeds n+1 = {self.ambient_dim + 1}; "
                "only Fano and Calabi-Yau zero loci are normalized"
            )
        return self

    @property
    def rank(self) -> int:
        return len(self.bundle_degrees)

    @property
    def fano_index(self) -> int:
        """n + 1 - sum l_i: the degree of q in the grading deg H = deg hbar = 1."""
        return self.ambient_dim + 1 - sum(self.bundle_degrees)

    @property
    def label(self) -> str:
        degrees = ",".join(str(l) for l in self.bundle_degrees)
        return f"P^{self.ambient_dim}[{degrees}]"


class EmbeddingModel(BaseModel):
    """Y = P^1 embedded in P^2 as a line (e = 1) or a conic (e = 2)."""

    model_config = ConfigDict(frozen=True)

    bundle_degree: Literal[1, 2]
    ambient_dim: Literal[2] = 2

    @classmethod
    def from_name(cls, name: str) -> "EmbeddingModel":
        degrees = {"line": 1, "conic": 2}
        if name not in degrees:
            raise ValueError(f"unknown embedding model {name!r}; choose line or conic")
        return cls(bundle_degree=degrees[name])

    @property
    def name(self) -> str:
        return "line" if self.bundle_degree == 1 else "conic"

    @property
    def description(self) -> str:
        return f"Y = P^1 embedded in P^2 as a curve of degree {self.bundle_degree}"


# =================================
# Schemas for reports
# =================================
class SeriesEntry(BaseModel):
    d: int
    hbar_exp: int
    h_power: int
    value: Rational


class Mismatch(BaseModel):
    d: int
    hbar_exp: int
    h_power: int
    lhs: Rational
    rhs: Rational


class VerificationReport(BaseModel):
    model: str
    order: int
    status: Literal["verified", "mismatch"]
    checked: int = 0
    mismatches: List[Mismatch] = []

    @property
    def first_discrepancy(self) -> Optional[Mismatch]:
        return self.mismatches[0] if self.mismatches else None


class OracleReport(BaseModel):
    inputs: Dict[str, Any]
    value: Rational
    method: str
    weight_trials: List[List[Rational]] = []
    note: Optional[str] = None


class JFunctionReport(BaseModel):
    geometry: GeometrySpec
    order: int
    form: str
    mirror_map: List[Rational] = []
    entries: List[SeriesEntry] = []


class CheckResult(BaseModel):
    name: str
    passed: bool
    cases: int = 1
    detail: Optional[str] = None


class SelfTestReport(BaseModel):
    status: Literal["passed", "failed"]
    checks: List[CheckResult] = []


# =================================
# Schemas for the command line
# =================================
class Command(str, Enum):
    LINES = "lines"
    LOCALIZE = "localize"
    QUINTIC = "quintic"
    VERIFY_EMBEDDING = "verify-embedding"
    JFUN = "jfun"
    SELFTEST = "selftest"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class RunConfig(BaseModel):
    command: Command
    trunc_order: int = Field(ge=0)
    ambient_dim: Optional[int] = Field(default=None, ge=1)
    bundle_degrees: List[int] = []
    output_format: OutputFormat = OutputFormat.TEXT
    seed: int
    model: Optional[Literal["line", "conic"]] = None
    curve_degree: int = Field(default=1, ge=1)
    trials: int = Field(default=3, ge=1)

    @field_validator("bundle_degrees")
    @classmethod
    def degrees_positive(cls, v: List[int]) -> List[int]:
        if any(l < 1 for l in v):
            raise ValueError(f"bundle degrees must be >= 1, got {v}")
        return v

    @model_validator(mode="after")
    def command_parameters(self) -> "RunConfig":
        if self.command in (Command.LINES, Command.LOCALIZE, Command.JFUN):
            if self.ambient_dim is None or not self.bundle_degrees:
                raise ValueError(f"{self.command.value} needs --ambient and --degree/--degrees")
        if self.command == Command.LINES and len(self.bundle_degrees) != 1:
            raise ValueError("lines takes a single hypersurface degree")
        if self.command == Command.VERIFY_EMBEDDING and self.model is None:
            raise ValueError("verify-embedding needs --model line|conic")
        return self
