"""
Check registry.
This module manages the registration and lookup of verification checks.
"""

import logging
from typing import Dict, Optional, Type

from uzu.checks.base import BaseCheck

logger = logging.getLogger(__name__)

# Registry of checks, in registration order
_CHECKS: Dict[str, Type[BaseCheck]] = {}


def register_check(check_class: Type[BaseCheck]) -> Type[BaseCheck]:
    """Register a check class under its NAME."""
    _CHECKS[check_class.NAME] = check_class
    logger.debug(f"Registered check: {check_class.NAME}")
    return check_class


def get_check(name: str) -> Optional[Type[BaseCheck]]:
    """Get a check class by name."""
    return _CHECKS.get(name)


def get_available_checks() -> Dict[str, Type[BaseCheck]]:
    """Get all registered checks."""
    return _CHECKS.copy()


# Import all check modules to register them
from uzu.checks import identities, spectral  # noqa: E402,F401
