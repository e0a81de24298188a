import sys
import time
import threading
from contextlib import contextmanager
from typing import Sequence

# --------- ANSI COLORS ----------
class Color:
    RESET = "\033[0m"
    DIM = "\033[2m"
    BOLD = "\033[1m"

    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    CYAN = "\033[36m"


def _interactive(stream) -> bool:
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


# --------- TYPEWRITER ----------
def type_print(text, delay=None, color=Color.RESET, newline=True, stream=None):
    """
    Typewriter effect on a terminal; plain uncoloured text when piped.
    """
    stream = stream or sys.stdout
    if not _interactive(stream):
        stream.write(text + ("\n" if newline else ""))
        stream.flush()
        return
    delay = 0.002 if delay is None else delay
    for ch in text:
        stream.write(color + ch + Color.RESET)
        stream.flush()
        if delay:
            time.sleep(delay)
    if newline:
        stream.write("\n")
        stream.flush()


def print_table(header: Sequence[str], rows: Sequence[Sequence[str]], *, max_rows=20, color=Color.RESET, stream=None):
    """Column-aligned preview of a CSV table; long tables are cut after max_rows."""
    shown = list(rows[:max_rows])
    widths = [len(h) for h in header]
    for row in shown:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]

    def _fmt(cells):
        return "  ".join(cell.rjust(w) for cell, w in zip(cells, widths))

    type_print(_fmt(header), delay=0, color=Color.BOLD, stream=stream)
    for row in shown:
        type_print(_fmt(row), delay=0, color=color, stream=stream)
    if len(rows) > max_rows:
        type_print(f"... {len(rows) - max_rows} more rows", delay=0, color=Color.DIM, stream=stream)


# --------- SPINNER ----------
_SPINNER_FRAMES = "⠋⠙⠹⠸⠼⠴⠦⠧⠇⠏"

class Spinner:
    def __init__(self, text="", interval=0.1, color=Color.CYAN, stream=None):
        self.text = text
        self.interval = interval
        self.color = color
        self.stream = stream or sys.stdout
        self._started = 0.0
        self._stop = threading.Event()
        self._thread = threading.Thread(target=self._spin, daemon=True)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._started

    def _spin(self):
        i = 0
        while not self._stop.is_set():
            frame = _SPINNER_FRAMES[i % len(_SPINNER_FRAMES)]
            self.stream.write(
                f"\r{self.color}{frame} {self.text} ({self.elapsed:.1f}s){Color.RESET}"
            )
            self.stream.flush()
            time.sleep(self.interval)
            i += 1

    def start(self):
        self._started = time.perf_counter()
        if _interactive(self.stream):
            self._thread.start()

    def stop(self, final_text=None, success=True):
        self._stop.set()
        if self._thread.is_alive():
            self._thread.join()
        symbol = "✓" if success else "✗"
        color = Color.GREEN if success else Color.RED
        msg = final_text or self.text
        if _interactive(self.stream):
            self.stream.write(f"\r{color}{symbol} {msg} ({self.elapsed:.1f}s){Color.RESET}\n")
        else:
            self.stream.write(f"{symbol} {msg} ({self.elapsed:.1f}s)\n")
        self.stream.flush()


# --------- CONTEXT MANAGER ----------
@contextmanager
def stage(text, *, color=Color.CYAN, stream=None):
    spinner = Spinner(text=text, color=color, stream=stream)
    spinner.start()
    try:
        yield spinner
        spinner.stop(text, success=True)
    except Exception:
        spinner.stop(text, success=False)
        raise
