from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from orthoplex.errors import ValidationError

LocalFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Observable:
    """
    A local function of the first ``arity`` spins

    ``func`` receives an array of shape ``(samples, arity)`` and returns one
    value per sample. By permutation invariance of both ensembles the choice
    of the leading coordinates loses no generality.
    """

    name: str
    arity: int
    func: LocalFunction
    bound: float = float("inf")

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValidationError(f"Observable arity must be positive, got {self.arity}")
        if not self.bound > 0:
            raise ValidationError(f"Observable bound must be positive, got {self.bound}")

    def __call__(self, phi: np.ndarray) -> np.ndarray:
        phi = np.atleast_2d(phi)
        if phi.shape[1] < self.arity:
            raise ValidationError(
                f"Observable '{self.name}' needs {self.arity} spins, got {phi.shape[1]}"
            )
        values = np.asarray(self.func(phi[:, : self.arity]), dtype=float)
        if np.isfinite(self.bound) and np.any(np.abs(values) > self.bound * (1 + 1e-12)):
            raise ValidationError(
                f"Observable '{self.name}' exceeded its declared bound {self.bound}"
            )
        return np.broadcast_to(values, phi.shape[:1])


def constant(c: float = 1.0) -> Observable:
    return Observable(
        name=f"const_{c:g}",
        arity=1,
        func=lambda x: np.full(x.shape[0], float(c)),
        bound=max(abs(c), 1e-300),
    )


BUILTIN: Dict[str, Observable] = {
    "phi1": Observable("phi1", 1, lambda x: x[:, 0]),
    "abs_phi1": Observable("abs_phi1", 1, lambda x: np.abs(x[:, 0])),
    "tanh_phi1": Observable("tanh_phi1", 1, lambda x: np.tanh(x[:, 0]), bound=1.0),
    "cos_sum2": Observable(
        "cos_sum2", 2, lambda x: np.cos(x[:, 0] + x[:, 1]), bound=1.0
    ),
}


def builtin(name: str) -> Observable:
    try:
        return BUILTIN[name]
    except KeyError:
        raise ValidationError(
            f"Unknown observable '{name}', expected one of {sorted(BUILTIN)}"
        ) from None


def _trig(a: np.ndarray, b: float) -> LocalFunction:
    return lambda x: np.cos(x @ a + b)


def _sigmoid(a: np.ndarray, b: float) -> LocalFunction:
    return lambda x: np.tanh(x @ a + b)


def random_smooth_suite(
    count: int, rng: np.random.Generator, max_arity: int = 3
) -> List[Observable]:
    """
    Random smooth observables bounded by 1: alternately ``cos(a.phi + b)``
    and ``tanh(a.phi + b)`` with Gaussian ``a`` on 1 to ``max_arity`` spins
    """
    suite = []
    for i in range(count):
        arity = int(rng.integers(1, max_arity + 1))
        a = rng.normal(size=arity)
        b = float(rng.uniform(0, 2 * np.pi))
        make = _trig if i % 2 == 0 else _sigmoid
        suite.append(Observable(f"smooth_{i}", arity, make(a, b), bound=1.0))
    return suite
