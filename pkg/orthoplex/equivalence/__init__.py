from .diagnostics import EntropyBounds, EquivalenceReport, GapRecord  # noqa: F401
from .diagnostics import entropy_bounds, pinsker_bound  # noqa: F401
from .diagnostics import relative_entropy_rate, verify_gap  # noqa: F401
