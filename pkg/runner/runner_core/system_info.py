"""runner/runner_core/system_info.py - Host facts for run.json (never part of deterministic artifacts)."""
import platform, psutil


def get_system_info() -> dict:
    mem = psutil.virtual_memory()
    return {"platform": f"{platform.system()} {platform.release()}", "python": platform.python_version(),
            "cpu_count": psutil.cpu_count(logical=True), "cpu_percent": psutil.cpu_percent(interval=0.1),
            "ram_used_gb": round(mem.used / (1024 ** 3), 2), "ram_total_gb": round(mem.total / (1024 ** 3), 2),
            "ram_percent": mem.percent}


def get_process_info() -> dict:
    p = psutil.Process()
    return {"rss_mb": round(p.memory_info().rss / (1024 ** 2), 1), "threads": p.num_threads()}
