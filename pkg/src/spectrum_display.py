"""
Spectrum display widget
Shows the invariants of the watched graph and its grouped spectrum
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Tuple

from PyQt6.QtCore import Qt
from PyQt6.QtGui import QColor
from PyQt6.QtWidgets import QHeaderView, QLabel, QTableWidget, QTableWidgetItem, QVBoxLayout, QWidget

from spectral import GraphSummary

if TYPE_CHECKING:
    from theme import Theme

# eigenvalues this close to 0, 1 or 2 are highlighted
HIGHLIGHT_TOLERANCE = 1e-7


@dataclass(frozen=True)
class SpectrumRow:
    eigenvalue: float
    multiplicity: int
    color_key: str


def _color_key(value: float) -> str:
    for target, key in ((0.0, 'eigen_zero'), (1.0, 'eigen_one'), (2.0, 'eigen_two')):
        if abs(value - target) <= HIGHLIGHT_TOLERANCE:
            return key
    return 'eigen_other'


def spectrum_rows(summary: GraphSummary) -> List[SpectrumRow]:
    """Table rows for a summary; empty when the spectrum is undefined"""
    if summary.spectrum is None:
        return []
    return [SpectrumRow(value, count, _color_key(value)) for value, count in summary.spectrum.groups()]


def summary_fields(summary: GraphSummary) -> List[Tuple[str, str]]:
    fields = [
        ("Vertices", str(summary.vertex_count)),
        ("Edges", str(summary.edge_count)),
        ("Connected", "yes" if summary.connected else "no"),
        ("Bipartite", "yes" if summary.bipartite else "no"),
        ("Multiplicity of 1 (exact)", str(summary.eigenvalue_one_multiplicity)),
    ]
    if summary.spectrum is None:
        fields.append(("Spectrum", "undefined (isolated vertices)"))
    return fields


class SpectrumDisplayWidget(QWidget):
    """Header labels with the invariants above a table of eigenvalues"""

    def __init__(self, parent=None):
        super().__init__(parent)
        self.summary: Optional[GraphSummary] = None
        self.theme: Optional['Theme'] = None
        self._init_ui()

    def _init_ui(self):
        layout = QVBoxLayout(self)
        layout.setContentsMargins(15, 15, 15, 15)
        self.info_label = QLabel("No graph loaded")
        self.info_label.setStyleSheet("font-size: 14pt;")
        layout.addWidget(self.info_label)

        self.table = QTableWidget(0, 2)
        self.table.setHorizontalHeaderLabels(["Eigenvalue", "Multiplicity"])
        self.table.horizontalHeader().setSectionResizeMode(QHeaderView.ResizeMode.Stretch)
        self.table.verticalHeader().setVisible(False)
        self.table.setEditTriggers(QTableWidget.EditTrigger.NoEditTriggers)
        self.table.setAlternatingRowColors(True)
        layout.addWidget(self.table, 1)

    def apply_theme(self, theme: 'Theme'):
        self.theme = theme
        self.update_display()

    def set_summary(self, summary: Optional[GraphSummary]):
        self.summary = summary
        self.update_display()

    def update_display(self):
        if self.summary is None:
            self.info_label.setText("No graph loaded")
            self.table.setRowCount(0)
            return
        self.info_label.setText("   ".join(f"{name}: {value}" for name, value in summary_fields(self.summary)))
        rows = spectrum_rows(self.summary)
        self.table.setRowCount(len(rows))
        for index, row in enumerate(rows):
            value_item = QTableWidgetItem(f"{row.eigenvalue:.12f}")
            count_item = QTableWidgetItem(str(row.multiplicity))
            count_item.setTextAlignment(Qt.AlignmentFlag.AlignCenter)
            if self.theme is not None:
                color = QColor(self.theme.get_color(row.color_key))
                value_item.setForeground(color)
                count_item.setForeground(color)
            self.table.setItem(index, 0, value_item)
            self.table.setItem(index, 1, count_item)
