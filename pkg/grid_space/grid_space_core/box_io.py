"""grid_space/grid_space_core/box_io.py - BoxSet persistence: cell CSV, JSON sidecar, PGM rasters.
INPUT: BoxSet / raster | OUTPUT: files under the run directory (and readers for them)

Cell CSV:   header `ix,iy`, rows in flat-id order (iy major), "\n" line endings.
Sidecar:    <name>.json next to the CSV with grid bounds, depth, membership, count.
PGM:        binary P5, one byte per cell, top row = highest iy.
"""
import csv
from pathlib import Path
from typing import Optional

import numpy as np

from grid_space.grid_space_core.box_set import BoxSet
from grid_space.grid_space_core.grid import Grid
from grid_space.grid_space_core.regions import region_from_spec
from map_expr.map_expr_core.interval import IntervalBox2
from utils.canonical_json import read_json, write_json
from utils.errors import ConfigError


def grid_from_dict(d: dict) -> Grid:
    bounds = IntervalBox2.from_sequence(d["bounds"])
    return Grid(bounds, int(d["depth"]), region_from_spec(d.get("membership"), d["bounds"]))


def sidecar_path(csv_path: Path) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_cells_csv(path: Path, s: BoxSet, sidecar: bool = True, extra: Optional[dict] = None) -> Path:
    path = Path(path); path.parent.mkdir(parents=True, exist_ok=True)
    ix, iy = s.ix_iy()
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["ix", "iy"])
        w.writerows(zip(ix.tolist(), iy.tolist()))
    if sidecar:
        meta = {"grid": s.grid.to_dict(), "count": len(s), "file": path.name}
        if extra: meta.update(extra)
        write_json(sidecar_path(path), meta)
    return path


def read_cells_csv(path: Path, grid: Optional[Grid] = None) -> BoxSet:
    """Reads a cell CSV; without a grid the sidecar JSON supplies it."""
    path = Path(path)
    if grid is None:
        side = sidecar_path(path)
        if not side.exists(): raise ConfigError(f"no grid given and sidecar {side.name} missing", str(path))
        grid = grid_from_dict(read_json(side)["grid"])
    with open(path, "r", newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or [c.strip() for c in rows[0]] != ["ix", "iy"]:
        raise ConfigError("expected header 'ix,iy'", str(path))
    try:
        ix = [int(r[0]) for r in rows[1:] if r]
        iy = [int(r[1]) for r in rows[1:] if r]
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"malformed cell row: {exc}", str(path)) from exc
    try:
        return BoxSet.from_cells(grid, ix, iy)
    except ValueError as exc:
        raise ConfigError(str(exc), str(path)) from exc


def write_pgm(path: Path, raster: np.ndarray) -> Path:
    """raster is [iy, ix]; values are clipped to 0..255."""
    path = Path(path); path.parent.mkdir(parents=True, exist_ok=True)
    img = np.flipud(np.clip(np.asarray(raster), 0, 255).astype(np.uint8))
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(img.tobytes())
    return path


def boxset_pgm(path: Path, s: BoxSet) -> Path:
    return write_pgm(path, s.to_raster().astype(np.uint8) * 255)


def read_pgm(path: Path) -> np.ndarray:
    """Back to [iy, ix] orientation. Handles the header layout write_pgm emits."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5": raise ConfigError("not a binary PGM", str(path))
    w, h = (int(v) for v in parts[1].split())
    img = np.frombuffer(parts[3], dtype=np.uint8, count=w * h).reshape(h, w)
    return np.flipud(img)
