import psutil

from fracmom.monitor import RunMonitor, total_rss


def test_total_rss_counts_this_process():
    process = psutil.Process()
    assert total_rss(process) >= process.memory_info().rss > 0


def test_run_monitor_summary():
    with RunMonitor(interval=0.01) as monitor:
        block = [bytearray(1024) for _ in range(2000)]
        sum(len(b) for b in block)
    summary = monitor.summary()
    assert set(summary) == {"elapsed_s", "peak_rss_mb", "samples"}
    assert summary["peak_rss_mb"] > 0
    assert summary["samples"] >= 2
    assert summary["elapsed_s"] >= 0
