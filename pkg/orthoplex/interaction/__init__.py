from .analyzer import Classification, MaximizerRecord  # noqa: F401
from .analyzer import MixtureComponent, MixtureState  # noqa: F401
from .analyzer import SignCheck, analyze_maximizers, classify  # noqa: F401
from .analyzer import classify_type, curie_weiss_maximizer  # noqa: F401
from .analyzer import derivative_sign_check, find_global_maxima  # noqa: F401
from .analyzer import limiting_mixture, log_C_k, psi, psi_derivative  # noqa: F401
from .analyzer import psi_supremum, rate_function, weight_W  # noqa: F401
from .expectation import grand_canonical_expectation  # noqa: F401
from .expectation import limit_state_expectation  # noqa: F401
from .expression import BinOp, Const, Func, Neg, Node, Pow, Var  # noqa: F401
from .expression import parse_expression  # noqa: F401
from .interaction import CurieWeiss, Expression, Interaction, Linear  # noqa: F401
from .interaction import PolynomialInteraction, Zero  # noqa: F401
from .mixture import FiniteMixture, finite_mixture, mixture_expectation  # noqa: F401
