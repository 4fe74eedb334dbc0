"""
Light and dark palettes for the spectrum viewer
"""
from dataclasses import asdict, dataclass
from typing import Optional

from PyQt6.QtGui import QColor, QPalette
from PyQt6.QtWidgets import QApplication

from settings import Settings, get_settings


@dataclass(frozen=True)
class Palette:
    background: str
    foreground: str
    panel: str
    border: str
    accent: str
    muted: str
    status_success: str
    status_error: str
    # highlight colors for eigenvalues 0, 1 and 2
    eigen_zero: str
    eigen_one: str
    eigen_two: str

    @property
    def eigen_other(self) -> str:
        return self.foreground

    @property
    def label_secondary(self) -> str:
        return self.muted


LIGHT = Palette(
    background='#FAFAFA',
    foreground='#1A1A1A',
    panel='#ECEFF1',
    border='#B0BEC5',
    accent='#CFD8DC',
    muted='#607D8B',
    status_success='#2E7D32',
    status_error='#C62828',
    eigen_zero='#1565C0',
    eigen_one='#8E24AA',
    eigen_two='#EF6C00',
)

DARK = Palette(
    background='#121417',
    foreground='#E6E6E6',
    panel='#1F2328',
    border='#3A4048',
    accent='#2C333B',
    muted='#8A949E',
    status_success='#66BB6A',
    status_error='#EF5350',
    eigen_zero='#64B5F6',
    eigen_one='#CE93D8',
    eigen_two='#FFB74D',
)

_STYLESHEET = """
QWidget {{ background-color: {background}; color: {foreground}; }}
QPushButton {{ background-color: {accent}; border: 1px solid {border}; padding: 5px 10px; }}
QPushButton:hover {{ border-color: {eigen_zero}; }}
QTableWidget {{ gridline-color: {border}; alternate-background-color: {panel}; }}
QHeaderView::section, QMenuBar, QStatusBar {{ background-color: {panel}; color: {foreground}; }}
QMenu::item:selected {{ background-color: {accent}; }}
"""


class Theme:
    """Tracks the active palette and persists the dark-mode choice"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else get_settings()
        self._dark_mode = self.settings.dark_mode

    @property
    def is_dark_mode(self) -> bool:
        return self._dark_mode

    @property
    def palette(self) -> Palette:
        return DARK if self._dark_mode else LIGHT

    def set_dark_mode(self, enabled: bool):
        self._dark_mode = enabled
        self.settings.set_dark_mode(enabled)
        self.apply_to_app()

    def toggle_dark_mode(self):
        self.set_dark_mode(not self._dark_mode)

    def get_color(self, key: str) -> str:
        return getattr(self.palette, key, self.palette.foreground)

    def apply_to_app(self):
        app = QApplication.instance()
        if app is None:
            return
        p = self.palette
        roles = {
            QPalette.ColorRole.Window: p.background,
            QPalette.ColorRole.Base: p.background,
            QPalette.ColorRole.AlternateBase: p.panel,
            QPalette.ColorRole.WindowText: p.foreground,
            QPalette.ColorRole.Text: p.foreground,
            QPalette.ColorRole.Button: p.accent,
            QPalette.ColorRole.ButtonText: p.foreground,
            QPalette.ColorRole.Highlight: p.eigen_zero,
            QPalette.ColorRole.HighlightedText: p.background,
        }
        qt_palette = QPalette()
        for role, color in roles.items():
            qt_palette.setColor(role, QColor(color))
        app.setPalette(qt_palette)

    def get_stylesheet(self) -> str:
        return _STYLESHEET.format(**asdict(self.palette))


_theme_instance = None


def get_theme() -> Theme:
    global _theme_instance
    if _theme_instance is None:
        _theme_instance = Theme()
    return _theme_instance
