"""utils/logger.py - Centralized logging with a bounded buffer and optional file sink."""
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional, TextIO

class Logger:
    def __init__(self, max_entries=500, stream: Optional[TextIO] = None):
        self.entries: List[str] = []
        self.max_entries = max_entries
        self.stream = stream
        self.quiet = False
        self._sink: Optional[TextIO] = None
    def log(self, msg: str):
        entry = f"[{datetime.now().strftime('%H:%M:%S')}] {msg}"
        self.entries.append(entry)
        if len(self.entries) > self.max_entries:
            self.entries = self.entries[-self.max_entries:]
        if self._sink is not None:
            self._sink.write(entry + "\n"); self._sink.flush()
        if self.quiet: return
        out = self.stream or sys.stderr
        try: print(entry, file=out)
        except UnicodeEncodeError: print(entry.encode('ascii',errors='replace').decode('ascii'), file=out)
    def attach_file(self, path: Path):
        self.detach_file()
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self._sink = open(path, "a", encoding="utf-8")
    def detach_file(self):
        if self._sink is not None:
            self._sink.close(); self._sink = None
    def get_recent(self, n=150): return self.entries[-n:]
    def clear(self): self.entries.clear()

logger = Logger()
