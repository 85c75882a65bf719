"""
Model for the resolved settings of one CLI run.
Every record the CLI writes embeds this configuration.
"""

from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional

from uzu.models.grids import SPACING_MODES
from uzu.utils import config as defaults
from uzu.utils.errors import InvalidInputError

MASS_WEIGHTS = ("logarithmic", "radial")
FIELD_KINDS = ("skyrmion", "constant-e3", "stitched", "file")
TEST_PROFILES = ("bump", "kernel", "random")

# Output locations; records never embed them
OUTPUT_LOCATION_KEYS = ("out", "save_field")


@dataclass
class RunConfig:
    """Resolved parameters of a subcommand invocation."""

    # Subcommand the configuration belongs to
    command: str

    # Field evaluated by the energy command: skyrmion, constant-e3, stitched or file
    field_kind: str = "skyrmion"
    input_path: Optional[str] = None
    save_field: Optional[str] = None

    # Physical parameters
    r: float = 1.0
    p: float = 4.0
    k: int = 3
    k_values: List[int] = field(default_factory=list)

    # Field scale; None means "the natural scale of the command" (2r or 1/r)
    scale: Optional[float] = None

    # Strip half-width of a single stitched map
    L: float = 0.0

    # Cartesian grid; half_width None means width factor times the scale
    half_width: Optional[float] = None
    n_per_side: int = defaults.DEFAULT_N_PER_SIDE

    # Radial grid
    rho_min: float = defaults.DEFAULT_RHO_MIN
    rho_max: float = defaults.DEFAULT_RHO_MAX
    n_radial: int = defaults.DEFAULT_N_RADIAL
    spacing_mode: str = defaults.DEFAULT_SPACING_MODE

    # Sweeps
    a_values: List[float] = field(default_factory=lambda: list(defaults.DEFAULT_A_VALUES))
    lambda_values: List[float] = field(default_factory=lambda: list(defaults.DEFAULT_LAMBDA_VALUES))
    L_values: List[float] = field(default_factory=lambda: list(defaults.DEFAULT_L_VALUES))
    r_lo: float = defaults.DEFAULT_R_LO
    r_hi: float = defaults.DEFAULT_R_HI
    r_tol: float = defaults.DEFAULT_R_TOL

    # Numerics
    fd_order: int = defaults.DEFAULT_FD_ORDER
    mass: str = defaults.DEFAULT_MASS
    symmetric: bool = True
    seed: int = defaults.DEFAULT_SEED

    # Test pair of the hessian-mode command and whether to solve the eigenproblem
    profile: str = "bump"
    with_eig: bool = True

    # Checks run by verify (empty means all) and those expected to fail
    checks: List[str] = field(default_factory=list)
    expect_fail: List[str] = field(default_factory=list)

    # Output
    out: Optional[str] = None
    output_format: str = "table"

    def validate(self) -> "RunConfig":
        """Check every numeric parameter against its valid range."""
        if self.r < 0:
            raise InvalidInputError(f"r must be nonnegative, got {self.r}")
        if self.p < 2:
            raise InvalidInputError(f"p must be >= 2, got {self.p}")
        if self.k < 0 or any(k < 0 for k in self.k_values):
            raise InvalidInputError("Fourier modes must be nonnegative")
        if self.k > defaults.K_MAX or any(k > defaults.K_MAX for k in self.k_values):
            raise InvalidInputError(f"Fourier modes above {defaults.K_MAX} are not handled")
        if self.scale is not None and self.scale <= 0:
            raise InvalidInputError(f"scale must be positive, got {self.scale}")
        if self.half_width is not None and self.half_width <= 0:
            raise InvalidInputError(f"half-width must be positive, got {self.half_width}")
        if self.n_per_side < 3 or self.n_radial < 3:
            raise InvalidInputError("grids need at least 3 nodes per axis")
        if not 0 < self.rho_min < self.rho_max:
            raise InvalidInputError(f"invalid radial interval [{self.rho_min}, {self.rho_max}]")
        if self.spacing_mode not in SPACING_MODES:
            raise InvalidInputError(f"spacing mode must be one of {SPACING_MODES}")
        if any(a <= 1 for a in self.a_values):
            raise InvalidInputError("Hardy scales A must exceed 1")
        if any(lam <= 0 for lam in self.lambda_values):
            raise InvalidInputError("rescale parameters must be positive")
        if any(L < 0 for L in self.L_values):
            raise InvalidInputError("strip half-widths must be nonnegative")
        if not 0 <= self.r_lo < self.r_hi or self.r_tol <= 0:
            raise InvalidInputError(f"invalid bisection range [{self.r_lo}, {self.r_hi}] / tol {self.r_tol}")
        if self.fd_order not in (2, 4):
            raise InvalidInputError(f"fd_order must be 2 or 4, got {self.fd_order}")
        if self.mass not in MASS_WEIGHTS:
            raise InvalidInputError(f"mass must be one of {MASS_WEIGHTS}")
        if self.field_kind not in FIELD_KINDS:
            raise InvalidInputError(f"field must be one of {FIELD_KINDS}, got {self.field_kind!r}")
        if self.field_kind == "file" and not self.input_path:
            raise InvalidInputError("--field file needs --input PATH")
        if self.L < 0:
            raise InvalidInputError(f"strip half-width must be nonnegative, got {self.L}")
        if self.profile not in TEST_PROFILES:
            raise InvalidInputError(f"profile must be one of {TEST_PROFILES}, got {self.profile!r}")
        if self.output_format not in defaults.OUTPUT_FORMATS:
            raise InvalidInputError(f"format must be one of {defaults.OUTPUT_FORMATS}")
        return self

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Create a RunConfig from a dictionary, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidInputError(f"Unknown configuration keys: {', '.join(unknown)}")
        values = dict(data)
        try:
            for key in ("r", "p", "L", "rho_min", "rho_max", "r_lo", "r_hi", "r_tol"):
                if key in values:
                    values[key] = float(values[key])
            for key in ("k", "n_per_side", "n_radial", "fd_order", "seed"):
                if key in values:
                    values[key] = int(values[key])
            for key in ("scale", "half_width"):
                if values.get(key) is not None:
                    values[key] = float(values[key])
            for key in ("a_values", "lambda_values", "L_values"):
                if key in values:
                    values[key] = [float(v) for v in values[key]]
            for key in ("checks", "expect_fail"):
                if key in values:
                    values[key] = [str(v) for v in values[key]]
            if "k_values" in values:
                values["k_values"] = [int(v) for v in values["k_values"]]
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"Invalid configuration value: {e}") from e
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        """Flat record of every setting; None becomes 'auto'."""
        result: Dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                value = "auto"
            elif isinstance(value, list):
                value = ",".join(v if isinstance(v, str) else repr(v) for v in value)
            result[f.name] = value
        return result
