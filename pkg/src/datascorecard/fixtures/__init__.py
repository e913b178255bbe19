"""Bundled example intakes for four audited datasets.

These are reconstructions: response sets chosen so the scored results land on
the reference score matrix the acceptance suite checks (colors exact, scores
exact where the published criterion counts allow it).
"""

from importlib import resources

FIXTURE_NAMES = ("bcm_a", "lfw", "mimic_iv", "recidivism")


def fixture_text(name: str) -> str:
    """UTF-8 content of a bundled intake document."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"no bundled fixture {name!r}; choose from {FIXTURE_NAMES}")
    return resources.files(__name__).joinpath(f"{name}.intake.json").read_text("utf-8")


def write_all(directory) -> list:
    """Copy every bundled intake into ``directory``; returns written paths."""
    written = []
    for name in FIXTURE_NAMES:
        path = directory / f"{name}.intake.json"
        path.write_text(fixture_text(name), encoding="utf-8")
        written.append(path)
    return written
