import os
import threading
import time

import psutil


def total_rss(process):
    """RSS of the process plus all of its children, in bytes."""
    total = 0
    try:
        total += process.memory_info().rss
    except psutil.Error:
        return 0

    for child in process.children(recursive=True):
        try:
            total += child.memory_info().rss
        except psutil.Error:
            pass

    return total


class RunMonitor:
    """
    Wall time and peak resident memory of a block of work.

    Memory is sampled on a background thread every `interval` seconds and
    includes worker processes, so pool-based grids are measured too.
    """

    def __init__(self, interval=0.1):
        self.process = psutil.Process(os.getpid())
        self.interval = interval
        self.peak_rss = 0
        self.samples = 0
        self.elapsed = 0.0
        self._start = None
        self._stop = threading.Event()
        self._thread = None

    def sample(self):
        rss = total_rss(self.process)
        self.peak_rss = max(self.peak_rss, rss)
        self.samples += 1
        return rss

    def _run(self):
        while not self._stop.wait(self.interval):
            self.sample()

    def __enter__(self):
        self._start = time.perf_counter()
        self.sample()
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._stop.set()
        self._thread.join()
        self.sample()
        self.elapsed = time.perf_counter() - self._start
        return False

    def summary(self):
        return {
            "elapsed_s": round(self.elapsed, 3),
            "peak_rss_mb": round(self.peak_rss / 1024**2, 2),
            "samples": self.samples,
        }
