"""runner/runner_ui/progress.py - Stage progress reporting.
INPUT: stage names | OUTPUT: log lines + StageTiming records for run.json
"""
import time
from contextlib import contextmanager
from typing import List

from models.data_models import StageTiming
from utils.logger import logger


class StageTimer:
    def __init__(self):
        self.timings: List[StageTiming] = []

    @contextmanager
    def stage(self, name: str):
        logger.log(f"[STAGE] {name} ...")
        t0 = time.perf_counter()
        try:
            yield
        finally:
            dt = time.perf_counter() - t0
            self.timings.append(StageTiming(name, round(dt, 3)))
            logger.log(f"[STAGE] {name} done in {dt:.2f}s")

    def to_list(self) -> List[dict]: return [t.to_dict() for t in self.timings]
