from dataclasses import dataclass

import numpy as np

from orthoplex.errors import ValidationError

_UINT64 = 2 ** 64


@dataclass(frozen=True)
class RngState:
    """
    Reproducible generator identity: the same ``(seed, stream)`` always yields
    the same draws
    """

    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ValidationError(f"{name} must be an integer, got {value}")
            if not 0 <= value < _UINT64:
                raise ValidationError(f"{name} must fit in 64 unsigned bits")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        )

    def chunk_generator(self, chunk: int) -> np.random.Generator:
        """
        Generator for the ``chunk``-th block of a parallel estimate
        """
        return np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=(self.stream, chunk))
        )

    def with_stream(self, stream: int) -> "RngState":
        return RngState(self.seed, stream)
