"""runner/runner_core/artifacts.py - Save run artifacts under the output directory.
Structure: <out>/{stage}.{csv|json|pgm}, attractor_<k>_{A|basin}.csv, oracle.jsonl
"""
import csv
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from grid_space.grid_space_core.box_io import boxset_pgm, write_cells_csv, write_pgm
from grid_space.grid_space_core.box_set import BoxSet
from utils.canonical_json import canonical_dumps, write_json


class ArtifactWriter:
    """Writes files into one directory and remembers their names for the report."""

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.written: List[str] = []

    def path(self, name: str) -> Path: return self.out_dir / name

    def _note(self, *names: str):
        for n in names:
            if n not in self.written: self.written.append(n)

    def cells(self, name: str, s: BoxSet, extra: Optional[dict] = None) -> Path:
        """Cell CSV plus its JSON sidecar (same stem)."""
        p = write_cells_csv(self.path(name), s, sidecar=True, extra=extra)
        self._note(p.name, p.with_suffix(".json").name)
        return p

    def rows(self, name: str, fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Path:
        p = self.path(name)
        with open(p, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=list(fieldnames), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        self._note(p.name)
        return p

    def json(self, name: str, obj: Any) -> Path:
        p = self.path(name); write_json(p, obj); self._note(p.name)
        return p

    def jsonl(self, name: str, records: Iterable[Any]) -> Path:
        p = self.path(name)
        with open(p, "w", encoding="utf-8", newline="\n") as f:
            for r in records: f.write(canonical_dumps(r) + "\n")
        self._note(p.name)
        return p

    def pgm(self, name: str, s: BoxSet) -> Path:
        p = boxset_pgm(self.path(name), s); self._note(p.name)
        return p

    def raster(self, name: str, raster) -> Path:
        p = write_pgm(self.path(name), raster); self._note(p.name)
        return p

    def listing(self) -> List[str]: return sorted(self.written)
