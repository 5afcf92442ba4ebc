"""On-disk cache of modified Macdonald polynomials, one JSON file per partition."""
import json
import os
from pathlib import Path

ENGINE_VERSION = "hhl-2"
CACHE_ENV = "MACPIECE_CACHE_DIR"
THREADS_ENV = "MACPIECE_THREADS"


def cache_root():
    base = os.environ.get(CACHE_ENV)
    if base:
        return Path(base)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "macpiece"


def cache_dir():
    return cache_root() / ENGINE_VERSION


def thread_count():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _name(mu):
    return "H_" + ("_".join(map(str, mu)) or "empty") + ".json"


def load(mu):
    path = cache_dir() / _name(mu)
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None


def store(mu, obj):
    d = cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        tmp = d / (_name(mu) + f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps(obj, sort_keys=True))
        os.replace(tmp, d / _name(mu))
    except OSError:
        pass


def entries():
    d = cache_dir()
    if not d.exists():
        return []
    return sorted(p.name for p in d.glob("H_*.json"))


def clear():
    d = cache_dir()
    removed = 0
    if d.exists():
        for p in d.glob("H_*.json"):
            p.unlink()
            removed += 1
    return removed


def stamp():
    return ENGINE_VERSION
