import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "det",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")

# matplotlib must never try to open a display under pytest
os.environ.setdefault("MPLBACKEND", "Agg")
