################################################################################################

'''

Copyright 2025 HardyCheck developers

Run log shared by the library and the CLI.

Every entry keeps its verbosity level and the source file that logged it:

    0  errors
    1  command summaries
    2  per-operation results (sides, scans, p0)
    3  solver internals (bisection, quadrature refinement)

Entries at or below the current verbosity are kept; the CLI echoes them to stderr
with --verbosity and dumps them with --log-file.

'''

################################################################################################

import inspect
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import List, Optional, TextIO

################################################################################################

LEVEL_NAMES = ("error", "summary", "op", "detail")


def _now() -> str:
    return datetime.now().strftime("%m/%d/%Y %H:%M:%S")


@dataclass(slots=True, frozen=True)
class LogEntry:
    timestamp: str
    level: int
    source: str
    text: str

    def render(self) -> str:
        name = LEVEL_NAMES[min(self.level, len(LEVEL_NAMES) - 1)]
        return f"[{self.timestamp}] {name:<7} [{self.source}] {self.text}"

################################################################################################

class LogManager():
    __entries: Optional[List[LogEntry]] = None
    __stream: Optional[TextIO] = None

    def __init__(self, verbosity: int = 0):
        if LogManager.__entries is None:
            LogManager.__entries = [LogEntry(_now(), 0, "log.py", "Begin HardyCheck Log")]
        self.verbosity = verbosity

    def _append(self, entry: LogEntry):
        LogManager.__entries.append(entry)
        if LogManager.__stream is not None:
            LogManager.__stream.write(entry.render() + "\n")

    def debug(self, text: str, level: int = 0):
        if self.verbosity < level:
            return
        # Only the caller's frame is needed, not the whole stack.
        frame = inspect.currentframe()
        caller = frame.f_back if frame is not None else None
        source = Path(caller.f_code.co_filename).name if caller is not None else "unknown"
        self._append(LogEntry(_now(), level, source, text))

    def entries(self, max_level: Optional[int] = None) -> List[LogEntry]:
        if max_level is None:
            return list(LogManager.__entries)
        return [e for e in LogManager.__entries if e.level <= max_level]

    def count(self) -> int:
        return len(LogManager.__entries)

    def set_verbosity(self, verbosity: int = 0):
        self.verbosity = verbosity

    def set_stream(self, stream: Optional[TextIO]):
        """Echo every new entry to stream (None stops echoing)."""
        LogManager.__stream = stream

    def clear(self):
        LogManager.__entries.clear()
        LogManager.__entries.append(LogEntry(_now(), 0, "log.py", "Log cleared"))

    def write_to_file(self, filepath: str):
        """Write every entry, one rendered line each."""
        with open(filepath, 'w', encoding='utf-8') as f:
            for entry in LogManager.__entries:
                f.write(entry.render() + "\n")
        self.debug(f"Log written to file: {filepath}", 1)

################################################################################################

Log = LogManager()

################################################################################################
