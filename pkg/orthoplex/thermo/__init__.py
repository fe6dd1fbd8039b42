from .duality import ConjugacyResult, conjugacy_residual  # noqa: F401
from .duality import gradient_residual  # noqa: F401
from .duality import half_constrained_entropy  # noqa: F401
from .duality import legendre_inf_numeric  # noqa: F401
from .limits import FieldParams, ensemble_map, entropy_slice  # noqa: F401
from .limits import entropy_slice_derivative, grand_entropy  # noqa: F401
from .limits import grand_partition_finite, inverse_map  # noqa: F401
from .limits import limiting_entropy, limiting_entropy_sqrt_form  # noqa: F401
