from .concavity import ConcavityReport, check_concavity_grid, lattice  # noqa: F401
from .partition import closed_form_log_Z_center  # noqa: F401
from .partition import entropy_interior  # noqa: F401
from .partition import entropy_lower_bound  # noqa: F401
from .partition import entropy_n  # noqa: F401
from .partition import log_partition_interior  # noqa: F401
from .partition import log_sign_count_terms  # noqa: F401
from .partition import log_Z, log_Z_boundary, log_Z_interior, log_Z_totals  # noqa: F401
from .types import LogReal, MacroTotals, ModelPoint, Region  # noqa: F401
