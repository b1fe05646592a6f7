"""utils/canonical_json.py - Canonical JSON dumps and config hashing.
INPUT: plain dict/list values | OUTPUT: stable text and sha256 digests
"""
import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np


def _plain(obj: Any):
    """json default hook: numpy scalars and arrays to builtins."""
    if isinstance(obj, np.integer): return int(obj)
    if isinstance(obj, np.floating): return float(obj)
    if isinstance(obj, np.bool_): return bool(obj)
    if isinstance(obj, np.ndarray): return obj.tolist()
    if isinstance(obj, (set, frozenset)): return sorted(obj)
    if isinstance(obj, tuple): return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def canonical_dumps(obj: Any) -> str:
    """Sorted keys, no whitespace. Used for hashing."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_plain, ensure_ascii=True)


def pretty_dumps(obj: Any) -> str:
    """Sorted keys with indentation. Still deterministic; used for artifacts."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_plain, ensure_ascii=True) + "\n"


def config_hash(obj: Any) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()


def write_json(path: Path, obj: Any):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(pretty_dumps(obj))


def read_json(path: Path) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
