"""utils/budget.py - Resource counters for expensive loops.
INPUT: charge(amount) calls | OUTPUT: BudgetExceeded once a limit is crossed

Same idea as a patience budget, inverted: every unit of work drains the
counter, and when the cap is crossed the whole operation stops instead of
silently degrading.
"""
import threading
from dataclasses import dataclass, field
from typing import Dict

from config.settings import MAX_BOX_EVALS
from utils.errors import BudgetExceeded


@dataclass
class Budget:
    limits: Dict[str, int] = field(default_factory=lambda: {"box_evals": MAX_BOX_EVALS})
    used: Dict[str, int] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def charge(self, what: str, amount: int = 1):
        with self._lock:
            total = self.used.get(what, 0) + int(amount)
            self.used[what] = total
        limit = self.limits.get(what)
        if limit is not None and total > limit:
            raise BudgetExceeded(what, total, limit)

    def remaining(self, what: str) -> int:
        limit = self.limits.get(what)
        if limit is None: return -1
        return max(0, limit - self.used.get(what, 0))

    def summary(self) -> dict:
        return {k: {"used": self.used.get(k, 0), "limit": v} for k, v in sorted(self.limits.items())}


def check_cap(what: str, amount: int, limit: int):
    """One-shot check for sizes known up front (word counts, raster sizes)."""
    if amount > limit:
        raise BudgetExceeded(what, int(amount), int(limit))
