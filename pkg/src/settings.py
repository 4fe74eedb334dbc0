"""
Persistent configuration backed by QSettings
The grouping tolerance may be overridden per process with LAPMOTIF_TOL
"""
import logging
import os
from typing import Optional

from PyQt6.QtCore import QSettings

from __version__ import COMPANY_NAME, SETTINGS_APP_NAME
from errors import ConfigurationError

logger = logging.getLogger(__name__)

TOLERANCE_ENV_VAR = "LAPMOTIF_TOL"
DEFAULT_GROUPING_TOLERANCE = 1e-8


class Settings:
    """Typed access to the stored preferences"""

    def __init__(self, store: Optional[QSettings] = None):
        self.store = store if store is not None else QSettings(COMPANY_NAME, SETTINGS_APP_NAME)

    @property
    def grouping_tolerance(self) -> float:
        """Tolerance for grouping eigenvalues: env var, then stored value, then 1e-8"""
        override = os.environ.get(TOLERANCE_ENV_VAR)
        if override:
            try:
                return _positive_float(override)
            except ConfigurationError as e:
                logger.warning("ignoring %s: %s", TOLERANCE_ENV_VAR, e)
        return self.store.value('spectrum/grouping_tolerance', DEFAULT_GROUPING_TOLERANCE, type=float)

    def set_grouping_tolerance(self, tolerance: float):
        self.store.setValue('spectrum/grouping_tolerance', _positive_float(tolerance))

    @property
    def dark_mode(self) -> bool:
        return self.store.value('viewer/dark_mode', True, type=bool)

    def set_dark_mode(self, enabled: bool):
        self.store.setValue('viewer/dark_mode', bool(enabled))

    @property
    def last_file(self) -> str:
        return self.store.value('viewer/last_file', "", type=str)

    def set_last_file(self, path: str):
        self.store.setValue('viewer/last_file', path)


def _positive_float(value) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"not a number: {value!r}") from e
    if not number > 0:
        raise ConfigurationError(f"tolerance must be positive, got {value!r}")
    return number


# Global settings instance
_settings_instance = None


def get_settings() -> Settings:
    """Get the global settings instance"""
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings()
    return _settings_instance
