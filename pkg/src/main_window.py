"""
Main window for the live spectrum viewer
"""
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from PyQt6.QtCore import pyqtSlot
from PyQt6.QtGui import QAction
from PyQt6.QtWidgets import (
    QApplication, QFileDialog, QHBoxLayout, QInputDialog, QLabel, QMainWindow,
    QMessageBox, QPushButton, QVBoxLayout, QWidget,
)

from __version__ import APP_NAME, VERSION_STRING
from errors import ConfigurationError, LapMotifError
from file_watcher import FileWatcherThread
from graph_core import parse_graph, parse_graph_json
from settings import get_settings
from spectral import summarize_graph
from spectrum_display import SpectrumDisplayWidget
from theme import get_theme

logger = logging.getLogger(__name__)


class MainWindow(QMainWindow):
    """Main application window"""

    def __init__(self):
        super().__init__()
        self.current_file: Optional[str] = None
        self.watcher_thread: Optional[FileWatcherThread] = None
        self.settings = get_settings()
        self.theme = get_theme()
        self._init_ui()

    def _init_ui(self):
        self.setWindowTitle(f"{APP_NAME} v{VERSION_STRING}")
        self.setGeometry(100, 100, 1000, 800)
        self._create_menu_bar()

        central_widget = QWidget()
        self.setCentralWidget(central_widget)
        main_layout = QVBoxLayout(central_widget)
        main_layout.setContentsMargins(5, 5, 5, 5)
        main_layout.addWidget(self._create_top_bar())

        self.spectrum_display = SpectrumDisplayWidget()
        main_layout.addWidget(self.spectrum_display, 1)

        self.statusBar().showMessage("Ready - No file selected")
        self._apply_theme()

    def _create_menu_bar(self):
        menubar = self.menuBar()
        file_menu = menubar.addMenu("&File")

        open_action = QAction("&Open Graph File...", self)
        open_action.setShortcut("Ctrl+O")
        open_action.triggered.connect(self._select_file)
        file_menu.addAction(open_action)

        tolerance_action = QAction("Grouping &Tolerance...", self)
        tolerance_action.triggered.connect(self._adjust_tolerance)
        file_menu.addAction(tolerance_action)

        file_menu.addSeparator()
        exit_action = QAction("E&xit", self)
        exit_action.triggered.connect(self.close)
        file_menu.addAction(exit_action)

        view_menu = menubar.addMenu("&View")
        self.dark_mode_action = QAction("&Dark Mode", self)
        self.dark_mode_action.setCheckable(True)
        self.dark_mode_action.setChecked(self.theme.is_dark_mode)
        self.dark_mode_action.triggered.connect(self._toggle_dark_mode)
        view_menu.addAction(self.dark_mode_action)

    def _create_top_bar(self) -> QWidget:
        widget = QWidget()
        layout = QHBoxLayout(widget)
        layout.setContentsMargins(5, 5, 5, 5)

        self.file_button = QPushButton("Select Graph File...")
        self.file_button.clicked.connect(self._select_file)
        layout.addWidget(self.file_button)

        self.file_label = QLabel("No file selected")
        layout.addWidget(self.file_label, 1)

        self.stop_button = QPushButton("Stop Watching")
        self.stop_button.clicked.connect(self._stop_watching)
        self.stop_button.setEnabled(False)
        layout.addWidget(self.stop_button)
        return widget

    def _select_file(self):
        file_path, _ = QFileDialog.getOpenFileName(
            self,
            "Select Graph File",
            os.path.dirname(self.settings.last_file),
            "Edge lists (*.txt *.edges *.json);;All Files (*)"
        )
        if file_path:
            self.load_file(file_path)

    def load_file(self, file_path: str):
        """Show a graph file and keep it updated as it changes"""
        self._stop_watching()
        if not os.path.exists(file_path):
            QMessageBox.warning(self, "Error", f"File not found: {file_path}")
            return
        self.current_file = file_path
        self.settings.set_last_file(file_path)
        self.file_label.setText(f"Watching: {os.path.basename(file_path)}")
        self.file_label.setStyleSheet(f"color: {self.theme.get_color('status_success')}; font-weight: bold;")

        self.watcher_thread = FileWatcherThread(file_path)
        self.watcher_thread.file_changed.connect(self._on_file_changed)
        self.watcher_thread.start()

        self.file_button.setEnabled(False)
        self.stop_button.setEnabled(True)

    @pyqtSlot(str)
    def _on_file_changed(self, text: str):
        if not self.current_file:
            return
        try:
            if Path(self.current_file).suffix.lower() == '.json':
                g = parse_graph_json(text)
            else:
                g = parse_graph(text)
            summary = summarize_graph(g, self.settings.grouping_tolerance)
        except LapMotifError as e:
            # half-written files are expected; keep watching
            self.statusBar().showMessage(f"Cannot show {os.path.basename(self.current_file)}: {e}")
            return
        self.spectrum_display.set_summary(summary)
        self.statusBar().showMessage(
            f"{summary.vertex_count} vertices, {summary.edge_count} edges "
            f"(tolerance {self.settings.grouping_tolerance:g})"
        )

    def _adjust_tolerance(self):
        tolerance, ok = QInputDialog.getDouble(
            self,
            "Grouping Tolerance",
            "Group eigenvalues closer than:",
            self.settings.grouping_tolerance,
            1e-15,
            1.0,
            15,
        )
        if not ok:
            return
        try:
            self.settings.set_grouping_tolerance(tolerance)
        except ConfigurationError as e:
            QMessageBox.warning(self, "Error", str(e))
            return
        if self.watcher_thread and self.watcher_thread.event_handler:
            self.watcher_thread.event_handler.last_stamp = None

    def _stop_watching(self):
        if self.watcher_thread:
            self.watcher_thread.stop()
            self.watcher_thread = None
        self.current_file = None
        self.file_label.setText("No file selected")
        self.file_label.setStyleSheet(f"color: {self.theme.get_color('label_secondary')};")
        self.file_button.setEnabled(True)
        self.stop_button.setEnabled(False)
        self.spectrum_display.set_summary(None)
        self.statusBar().showMessage("Ready - No file selected")

    def _apply_theme(self):
        self.theme.apply_to_app()
        self.setStyleSheet(self.theme.get_stylesheet())
        self.spectrum_display.apply_theme(self.theme)

    def _toggle_dark_mode(self):
        self.theme.toggle_dark_mode()
        self.dark_mode_action.setChecked(self.theme.is_dark_mode)
        self._apply_theme()

    def closeEvent(self, event):
        self._stop_watching()
        event.accept()


def launch_viewer(file_path: Optional[str] = None) -> int:
    """Run the viewer event loop; returns the Qt exit code"""
    app = QApplication.instance() or QApplication(sys.argv[:1])
    app.setApplicationName(f"{APP_NAME} v{VERSION_STRING}")
    get_theme().apply_to_app()
    window = MainWindow()
    if file_path:
        window.load_file(file_path)
    window.show()
    return app.exec()
