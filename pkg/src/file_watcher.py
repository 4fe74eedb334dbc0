"""
File watcher for graph files shown in the live viewer
Uses watchdog to detect changes and hands the whole file text to a callback
"""
import logging
import os
import threading
from pathlib import Path
from typing import Callable, Optional, Tuple

from PyQt6.QtCore import QThread, pyqtSignal
from watchdog.events import FileSystemEventHandler
from watchdog.observers import Observer

logger = logging.getLogger(__name__)


class GraphFileHandler(FileSystemEventHandler):
    """Reloads one graph file whenever its size or mtime changes"""

    def __init__(self, file_path: str, on_change: Callable[[str], None]):
        super().__init__()
        self.file_path = Path(file_path)
        self.on_change = on_change
        self.last_stamp: Optional[Tuple[int, int]] = None
        # the observer thread and the polling thread both call check()
        self._lock = threading.Lock()

    def on_modified(self, event):
        if not event.is_directory and Path(event.src_path) == self.file_path:
            self.check()

    def on_created(self, event):
        # atomic writers replace the file, which arrives as a create or a move
        if not event.is_directory and Path(event.src_path) == self.file_path:
            self.check()

    def on_moved(self, event):
        if not event.is_directory and Path(event.dest_path) == self.file_path:
            self.check()

    def check(self) -> bool:
        """
        Re-read the file if it changed since the last check

        Returns:
            True if the callback was invoked
        """
        with self._lock:
            return self._check_locked()

    def _check_locked(self) -> bool:
        try:
            stat = self.file_path.stat()
        except OSError:
            return False
        stamp = (stat.st_mtime_ns, stat.st_size)
        if stamp == self.last_stamp:
            return False
        try:
            text = self.file_path.read_text(encoding='utf-8', errors='replace')
        except OSError as e:
            logger.warning("cannot read %s: %s", self.file_path, e)
            return False
        self.last_stamp = stamp
        self.on_change(text)
        return True


class FileWatcherThread(QThread):
    """Thread for watching a graph file"""

    file_changed = pyqtSignal(str)  # full file text after each change

    def __init__(self, file_path: str):
        super().__init__()
        self.file_path = file_path
        self.observer: Optional[Observer] = None
        self.event_handler: Optional[GraphFileHandler] = None
        self._running = True

    def run(self):
        if not os.path.exists(self.file_path):
            return
        directory = os.path.dirname(os.path.abspath(self.file_path))
        self.event_handler = GraphFileHandler(self.file_path, self.file_changed.emit)
        self.observer = Observer()
        self.observer.schedule(self.event_handler, directory, recursive=False)
        self.observer.start()

        # Poll as well; watchdog may miss events on some filesystems
        while self._running:
            self.event_handler.check()
            self.msleep(100)

    def stop(self):
        self._running = False
        if self.observer:
            self.observer.stop()
            self.observer.join(timeout=1.0)
        self.wait(1000)
