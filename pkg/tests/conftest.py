import os
from pathlib import Path

# keep the H~ cache inside the repo unless the caller chose a location
os.environ.setdefault("MACPIECE_CACHE_DIR", str(Path(__file__).resolve().parent.parent / ".macpiece-cache"))
