"""
Base interface for verification checks.
Each check measures one identity of the model and compares it with a tolerance.
"""

import logging
from abc import ABC, abstractmethod
from typing import Tuple

from uzu.models.reports import CheckResult
from uzu.models.run_config import RunConfig

logger = logging.getLogger(__name__)


class BaseCheck(ABC):
    """Base class for verification checks."""

    # Name used on the command line (e.g. 'el-residual')
    NAME = ""

    # One-line summary shown in reports
    DESCRIPTION = ""

    # Bound the measured quantity is compared with
    TOLERANCE = 0.0

    @abstractmethod
    def measure(self, config: RunConfig) -> Tuple[float, str]:
        """
        Compute the checked quantity.

        Args:
            config: Resolved run configuration

        Returns:
            (measured value, human-readable detail)
        """

    def passes(self, measured: float) -> bool:
        """Errors pass when at or below the tolerance; subclasses may invert this."""
        return measured <= self.TOLERANCE

    def run(self, config: RunConfig, expected: bool = True) -> CheckResult:
        measured, detail = self.measure(config)
        passed = bool(self.passes(measured))
        logger.info(f"{self.NAME}: measured {measured:.3e} vs {self.TOLERANCE:.3e} -> {'pass' if passed else 'fail'}")
        return CheckResult(
            name=self.NAME,
            measured=float(measured),
            tolerance=self.TOLERANCE,
            passed=passed,
            detail=detail,
            expected=expected,
        )
