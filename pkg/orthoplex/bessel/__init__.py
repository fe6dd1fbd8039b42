from .laplace import W_n_numeric, laplace_prefactor, overloaded_psi  # noqa: F401
from .laplace import taylor_limit, taylor_limit_residual  # noqa: F401
from .representation import AngularEntropy, log_K, log_Z_bessel  # noqa: F401
