from .estimate import Estimate, estimate_observable, estimate_observables  # noqa: F401
from .marginal import marginal_density, single_site_expectation  # noqa: F401
from .observables import BUILTIN, Observable, builtin, constant  # noqa: F401
from .observables import random_smooth_suite  # noqa: F401
from .rng import RngState  # noqa: F401
from .samplers import GrandCanonicalSampler, MicrocanonicalSampler  # noqa: F401
from .samplers import sample_boundary, sample_grand_canonical  # noqa: F401
from .samplers import sample_grand_canonical_batch  # noqa: F401
from .samplers import sample_microcanonical  # noqa: F401
from .samplers import sample_microcanonical_batch  # noqa: F401
from .samplers import sample_simplex, sign_count_weights  # noqa: F401
