import os

import pytest

# widget tests run without a display
os.environ.setdefault("QT_QPA_PLATFORM", "offscreen")


@pytest.fixture
def settings_store(tmp_path, monkeypatch):
    """An INI-backed QSettings in a temporary directory"""
    from PyQt6.QtCore import QSettings

    monkeypatch.delenv("LAPMOTIF_TOL", raising=False)
    return QSettings(str(tmp_path / "lapmotif.ini"), QSettings.Format.IniFormat)


@pytest.fixture(scope="session", autouse=True)
def isolated_settings(tmp_path_factory):
    """Point the global settings at a temporary INI file for the whole run"""
    import settings
    from PyQt6.QtCore import QSettings

    path = tmp_path_factory.mktemp("config") / "global.ini"
    with pytest.MonkeyPatch.context() as patch:
        patch.delenv("LAPMOTIF_TOL", raising=False)
        patch.setattr(settings, "_settings_instance",
                      settings.Settings(QSettings(str(path), QSettings.Format.IniFormat)))
        yield
