"""
Models for computed results.
Each report serializes to a flat record via to_dict and back via from_dict.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from uzu.models.fields import RadialFunction
from uzu.utils.errors import InvalidInputError


@dataclass
class EnergyBreakdown:
    """
    Components of E_p[n] = D[n] + r H[n] + V_p[n] for one sampled field,
    with the topological degree and the estimated tail outside the grid.
    """

    # Dirichlet energy ½∫|∇n|²
    dirichlet: float

    # Helicity ∫(n - e3)·curl n
    helicity: float

    # Anisotropy potential 2^{1-p}∫|n - e3|^p
    potential: float

    # Coupling r and exponent p the total was assembled with
    r: float
    p: float

    # dirichlet + r * helicity + potential
    total: float

    # Q[n], close to an integer on adequate grids
    degree: float

    # Grid half-width and nodes per side
    grid_x: float
    grid_n: int

    # Estimated contribution of the energy density outside the grid
    tail_estimate: float = 0.0

    @classmethod
    def assemble(
        cls,
        dirichlet: float,
        helicity: float,
        potential: float,
        r: float,
        p: float,
        degree: float,
        grid_x: float,
        grid_n: int,
        tail_estimate: float = 0.0,
    ) -> "EnergyBreakdown":
        return cls(
            dirichlet=float(dirichlet),
            helicity=float(helicity),
            potential=float(potential),
            r=float(r),
            p=float(p),
            total=float(dirichlet + r * helicity + potential),
            degree=float(degree),
            grid_x=float(grid_x),
            grid_n=int(grid_n),
            tail_estimate=float(tail_estimate),
        )

    @property
    def corrected_total(self) -> float:
        """Total with the boundary tail added back."""
        return self.total + self.tail_estimate

    @property
    def degree_defect(self) -> float:
        return abs(self.degree - round(self.degree))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EnergyBreakdown":
        return cls(
            dirichlet=data["dirichlet"],
            helicity=data["helicity"],
            potential=data["potential"],
            r=data["r"],
            p=data["p"],
            total=data["total"],
            degree=data["degree"],
            grid_x=data["grid_x"],
            grid_n=int(data["grid_n"]),
            tail_estimate=data.get("tail_estimate", 0.0),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dirichlet": self.dirichlet,
            "helicity": self.helicity,
            "potential": self.potential,
            "total": self.total,
            "degree": self.degree,
            "r": self.r,
            "p": self.p,
            "grid_x": self.grid_x,
            "grid_n": self.grid_n,
            "tail_estimate": self.tail_estimate,
        }


@dataclass
class ResidualReport:
    """Pointwise residual of the Euler–Lagrange equation on interior nodes."""

    # Residual vectors, shape (n - 2m, n - 2m, 3) for m boundary layers dropped
    residual: np.ndarray
    sup_norm: float
    l2_norm: float
    spacing: float


@dataclass
class FactorizationSides:
    """Both sides of E4[n] - 4πr²Q[n] = (r²/2)∫|D1 n + n × D2 n|² + (1 - r²)D[n]."""

    lhs: float
    rhs: float

    # Largest pointwise value of the squared helical-derivative integrand
    square_sup: float

    @property
    def relative_gap(self) -> float:
        return abs(self.lhs - self.rhs) / (1.0 + abs(self.lhs))


@dataclass
class SubstitutionSides:
    """Both sides of the ground-state substitution identity for f = ψg."""

    lhs: float
    rhs: float

    # ∫(Lψ)ψ g², the part of rhs that vanishes when ψ spans the kernel of L
    kernel_term: float


@dataclass
class ModeReport:
    """Value of one Fourier-mode form on a test pair, optionally with its lowest eigenvalue."""

    k: int
    r: float
    value: float
    n: int
    rho_min: float
    rho_max: float

    # Smallest eigenvalue of the discretized form, if computed
    min_eig: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ModeReport":
        min_eig = data.get("min_eig")
        return cls(
            k=int(data["k"]),
            r=data["r"],
            value=data["value"],
            n=int(data["n"]),
            rho_min=data["rho_min"],
            rho_max=data["rho_max"],
            min_eig=None if min_eig in (None, "none") else float(min_eig),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "r": self.r,
            "value": self.value,
            "min_eig": "none" if self.min_eig is None else self.min_eig,
            "n": self.n,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
        }


@dataclass
class UnstableDirection:
    """A certified negative direction ξ of the transformed mode-k form."""

    k: int
    r: float

    # Hardy scale A and rescale λ the witness was built from
    A: float
    lam: float

    # Witness ξ_{A,λ} on its search grid
    xi: RadialFunction

    # Value of the form on the search grid
    form_value: float

    # Value re-evaluated on the refined grid
    certified_value: float

    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "k": self.k,
            "r": self.r,
            "A": self.A,
            "lambda": self.lam,
            "form_value": self.form_value,
            "certified_value": self.certified_value,
        }
        result.update({f"grid_{key}": value for key, value in self.xi.grid.descriptor().items()})
        if self.notes:
            result["notes"] = "; ".join(self.notes)
        return result

    def xi_table(self) -> np.ndarray:
        """Two columns (ρ, ξ(ρ))."""
        return np.column_stack([self.xi.nodes, self.xi.values])


@dataclass
class WitnessSearch:
    """Outcome of a negative-direction search: a witness, or the best value seen."""

    k: int
    r: float
    witness: Optional[UnstableDirection]

    # Smallest form value over the sweep and the sweep point that produced it
    best_value: float
    best_A: float
    best_lam: float

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> Dict[str, Any]:
        if self.witness is not None:
            return {"found": True, **self.witness.to_dict()}
        return {
            "found": False,
            "k": self.k,
            "r": self.r,
            "best_value": self.best_value,
            "best_A": self.best_A,
            "best_lambda": self.best_lam,
        }


@dataclass
class ThresholdEstimate:
    """Bisection bracket [r_lo, r_hi] around the sign change of the lowest mode eigenvalue."""

    k: int
    r_c: float
    r_lo: float
    r_hi: float
    eig_lo: float
    eig_hi: float
    symmetric: bool
    steps: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "r_c": self.r_c,
            "r_lo": self.r_lo,
            "r_hi": self.r_hi,
            "eig_lo": self.eig_lo,
            "eig_hi": self.eig_hi,
            "symmetric": self.symmetric,
            "steps": self.steps,
        }


@dataclass
class StripEnergyReport:
    """Energies of the stitched map for a list of strip half-widths with a linear fit."""

    r: float
    L_values: List[float]
    energies: List[EnergyBreakdown]
    slope: float
    intercept: float

    # ‖E - fit‖ / ‖E‖ over the sweep
    residual: float

    analytic_slope: float

    # Leading coefficient of a quadratic fit, when at least three L values were given
    quadratic_coefficient: Optional[float] = None

    def __post_init__(self):
        if len(self.L_values) != len(self.energies):
            raise InvalidInputError("one energy breakdown is required per L value")
        if any(b <= a for a, b in zip(self.L_values, self.L_values[1:])):
            raise InvalidInputError("L values must be strictly increasing")

    def rows(self) -> List[List[float]]:
        return [
            [L, e.dirichlet, e.helicity, e.potential, e.total, e.degree]
            for L, e in zip(self.L_values, self.energies)
        ]

    def summary(self) -> Dict[str, Any]:
        result = {
            "r": self.r,
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "analytic_slope": self.analytic_slope,
        }
        if self.quadratic_coefficient is not None:
            result["quadratic_coefficient"] = self.quadratic_coefficient
        return result


@dataclass
class CheckResult:
    """Outcome of one verification check."""

    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    # Whether the check was expected to pass
    expected: bool = True

    @property
    def as_expected(self) -> bool:
        return self.passed == self.expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "expected": self.expected,
            "detail": self.detail,
        }
