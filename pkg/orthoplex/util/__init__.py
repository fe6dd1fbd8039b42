from .load import load_any, load_schema  # noqa: F401
from .merge import deep_merge  # noqa: F401
from .quadrature import log_integrate  # noqa: F401
from .serialize import dumps_json, format_float, write_csv  # noqa: F401
