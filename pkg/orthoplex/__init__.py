from orthoplex.interaction import Interaction, analyze_maximizers  # noqa: F401
from orthoplex.model import ModelPoint, log_Z  # noqa: F401
from orthoplex.thermo import FieldParams, ensemble_map  # noqa: F401
