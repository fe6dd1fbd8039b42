from .__main__ import cli  # noqa: F401
