"""
Subcommand dispatch

Every handler takes a validated :data:`~orthoplex.cli.config.RunConfig` and
returns an :class:`Outcome`; :func:`run` wraps it into an output document.
"""

import time
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from orthoplex import errors
from orthoplex.bessel import W_n_numeric, log_Z_bessel
from orthoplex.equivalence import entropy_bounds, relative_entropy_rate, verify_gap
from orthoplex.interaction import (
    Interaction,
    analyze_maximizers,
    derivative_sign_check,
    finite_mixture,
    grand_canonical_expectation,
    limiting_mixture,
    psi_supremum,
    rate_function,
)
from orthoplex.model import (
    ModelPoint,
    Region,
    closed_form_log_Z_center,
    entropy_n,
    log_Z,
    log_Z_interior,
)
from orthoplex.sampling import (
    GrandCanonicalSampler,
    MicrocanonicalSampler,
    RngState,
    builtin,
    estimate_observable,
    random_smooth_suite,
    single_site_expectation,
)
from orthoplex.thermo import (
    FieldParams,
    ensemble_map,
    grand_entropy,
    gradient_residual,
    inverse_map,
    legendre_inf_numeric,
    limiting_entropy,
)

from .config import RunConfig
from .interaction_spec import parse_interaction
from .output import Document, document, error_document, exit_code

# flags echoed into ``inputs`` per subcommand, in this order
INPUT_FIELDS: Dict[str, List[str]] = {
    "partition": ["n", "m", "rho"],
    "thermo": ["m", "rho", "beta", "mu", "seed"],
    "sample": [
        "n",
        "ensemble",
        "m",
        "rho",
        "beta",
        "mu",
        "observable",
        "samples",
        "seed",
    ],
    "equivalence": ["n", "m", "rho", "beta", "mu", "observables", "samples", "seed"],
    "analyze": ["interaction"],
    "rate": ["interaction", "grid_points"],
    "mixture-mass": ["interaction", "n", "a", "b"],
    "bessel-check": ["n", "m", "rho"],
    "laplace-check": ["interaction", "ladder", "delta"],
}


@dataclass
class Outcome:
    results: Dict[str, Any]
    # grid-valued results, written one row per grid point in CSV
    columns: Optional[List[str]] = None
    rows: List[Dict[str, Any]] = field(default_factory=list)


def _point(config: RunConfig) -> ModelPoint:
    return ModelPoint(config["m"], config["rho"])


def _fields(config: RunConfig) -> FieldParams:
    return FieldParams(config["beta"], config["mu"])


def _interaction(config: RunConfig) -> Interaction:
    return parse_interaction(config["interaction"])


def _partition(config: RunConfig) -> Outcome:
    n, point = config["n"], _point(config)
    results: Dict[str, Any] = {
        "region": point.region.value,
        "log_Z": log_Z(n, point).log_value,
        "s_n": entropy_n(n, point),
    }
    if point.region is Region.INTERIOR:
        results["s"] = limiting_entropy(point)
        if point.m == 0:
            results["log_Z_closed_form"] = closed_form_log_Z_center(
                n, point.rho
            ).log_value
        if n >= 3:
            params = ensemble_map(point)
            bounds = entropy_bounds(n, point, params)
            results["s_n_bounds"] = {"lower": bounds.lower, "upper": bounds.upper}
    return Outcome(results)


def _thermo(config: RunConfig) -> Outcome:
    if "beta" in config:
        params = _fields(config)
        point = inverse_map(params)
    else:
        point = _point(config)
        params = ensemble_map(point)
    s = limiting_entropy(point)
    dual = legendre_inf_numeric(point, seed=config["seed"])
    duality_residual = abs(dual - s)
    if duality_residual > config["tolerances"]["duality"]:
        warnings.warn(
            RuntimeWarning(f"Duality residual {duality_residual:g} above tolerance")
        )
    return Outcome(
        {
            "m": point.m,
            "rho": point.rho,
            "beta": params.beta,
            "mu": params.mu,
            "s": s,
            "f": grand_entropy(params),
            "legendre_inf": dual,
            "duality_residual": duality_residual,
            "gradient_residual": gradient_residual(params),
        }
    )


def _sample(config: RunConfig) -> Outcome:
    n = config["n"]
    obs = builtin(config["observable"])
    rng = RngState(config["seed"])
    oracle: Optional[float] = None
    if config["ensemble"] == "micro":
        point = _point(config)
        sampler: Any = MicrocanonicalSampler(n, point)
        if obs.arity == 1:
            oracle = single_site_expectation(
                n, point, lambda x: float(obs(np.array([[x]]))[0])
            )
    else:
        params = _fields(config)
        sampler = GrandCanonicalSampler(n, params)
        oracle = grand_canonical_expectation(params, obs)

    est = estimate_observable(
        sampler, obs, config["samples"], rng, threads=config["threads"]
    )
    results: Dict[str, Any] = {
        "observable": obs.name,
        "mean": est.mean,
        "stderr": est.stderr,
        "samples": est.samples,
    }
    if oracle is not None:
        results["exact"] = oracle
        results["z_score"] = (est.mean - oracle) / est.stderr if est.stderr else 0.0
    return Outcome(results)


def _equivalence(config: RunConfig) -> Outcome:
    n, point = config["n"], _point(config)
    if n < 4:
        raise errors.ValidationError(f"`equivalence` needs n >= 4, got {n}")
    params = _fields(config) if "beta" in config else None
    rng = RngState(config["seed"])
    # streams 0 and 1 carry the two ensembles, stream 2 draws the suite
    suite = random_smooth_suite(
        config["observables"], rng.with_stream(2).generator(), min(3, n - 3)
    )
    report = verify_gap(
        n,
        point,
        suite,
        config["samples"],
        rng,
        params=params,
        threads=config["threads"],
    )
    rows = [
        {
            "name": r.name,
            "arity": r.arity,
            "microcanonical": r.microcanonical,
            "grand_canonical": r.grand_canonical,
            "stderr": r.stderr,
            "gap": r.gap,
            "bound": r.bound,
            "within_bound": r.within_bound,
        }
        for r in report.records
    ]
    if not report.all_within_bound:
        warnings.warn(RuntimeWarning("Empirical gap exceeds the bound"))
    return Outcome(
        {
            "beta": report.params.beta,
            "mu": report.params.mu,
            "relative_entropy_rate": relative_entropy_rate(n, point, report.params),
            "observable_count": report.observable_count,
            "bound": report.bound,
            "empirical_gap": report.empirical_gap,
            "all_within_bound": report.all_within_bound,
            "records": rows,
        },
        columns=list(rows[0]) if rows else None,
        rows=rows,
    )


def _analyze(config: RunConfig) -> Outcome:
    g = _interaction(config)
    tol = config["tolerances"]
    records = analyze_maximizers(
        g, tol["tol_value"], tol["tol_sep"], tol["zero_tol"], tol["k_max"]
    )
    maximizers = []
    for r in records:
        check = derivative_sign_check(g, r)
        if not check.ok:
            warnings.warn(
                RuntimeWarning(
                    f"Finite-difference check disagrees with type {r.type_k} "
                    f"at m = {r.m_star}"
                )
            )
        maximizers.append(
            {
                "m_star": r.m_star,
                "type_k": r.type_k,
                "deriv_2k": r.deriv_2k,
                "weight_W": r.weight_W,
                "psi": r.psi_value,
                "sign_check": check.ok,
            }
        )
    mix = limiting_mixture(g, records)
    return Outcome(
        {
            "interaction": g.describe(),
            "maximizers": maximizers,
            "mixture": {
                "maximal_type": mix.maximal_type,
                "components": [
                    {
                        "weight": c.weight,
                        "m_star": c.m_star,
                        "type_k": c.type_k,
                        "beta": c.params.beta,
                        "mu": c.params.mu,
                    }
                    for c in mix.components
                ],
                "excluded": [r.m_star for r in mix.excluded],
            },
        }
    )


def _rate(config: RunConfig) -> Outcome:
    g = _interaction(config)
    supremum = psi_supremum(g)
    grid = np.linspace(-1.0, 1.0, config["grid_points"])
    values = rate_function(g, grid, supremum)
    rows = [{"m": float(m), "rate": float(v)} for m, v in zip(grid, values)]
    return Outcome(
        {"supremum": supremum, "grid": rows}, columns=["m", "rate"], rows=rows
    )


def _mixture_mass(config: RunConfig) -> Outcome:
    g, n = _interaction(config), config["n"]
    a, b = config["a"], config["b"]
    mix = finite_mixture(g, n)
    log_mass = mix.log_mass(a, b)
    results: Dict[str, Any] = {
        "log_mass": log_mass,
        "log_normalizer": mix.log_normalizer,
        "rate_estimate": -log_mass / n,
    }
    lo, hi = max(a, -1.0), min(b, 1.0)
    if lo <= hi:
        window = np.linspace(lo, hi, 257)
        results["rate_limit"] = float(np.min(rate_function(g, window)))
    return Outcome(results)


def _bessel_check(config: RunConfig) -> Outcome:
    n, point = config["n"], _point(config).require_interior()
    exact = log_Z_interior(n, point).log_value
    bessel = log_Z_bessel(n, point).log_value
    return Outcome(
        {
            "log_Z": exact,
            "log_Z_bessel": bessel,
            "relative_error": abs(float(np.expm1(bessel - exact))),
        }
    )


def _laplace_check(config: RunConfig) -> Outcome:
    g = _interaction(config)
    tol = config["tolerances"]
    records = analyze_maximizers(
        g, tol["tol_value"], tol["tol_sep"], tol["zero_tol"], tol["k_max"]
    )
    rows = []
    converging = []
    for r in records:
        errors_along = []
        for n in config["ladder"]:
            w_n = W_n_numeric(
                g, r.m_star, config["delta"], n, k=r.type_k, tol_value=tol["tol_value"]
            )
            ratio = w_n / r.weight_W
            errors_along.append(abs(ratio - 1))
            rows.append(
                {
                    "m_star": r.m_star,
                    "type_k": r.type_k,
                    "n": n,
                    "W_n": w_n,
                    "W": r.weight_W,
                    "ratio": ratio,
                }
            )
        converging.append(all(b < a for a, b in zip(errors_along, errors_along[1:])))
    return Outcome(
        {"rows": rows, "monotone": converging},
        columns=["m_star", "type_k", "n", "W_n", "W", "ratio"],
        rows=rows,
    )


HANDLERS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "partition": _partition,
    "thermo": _thermo,
    "sample": _sample,
    "equivalence": _equivalence,
    "analyze": _analyze,
    "rate": _rate,
    "mixture-mass": _mixture_mass,
    "bessel-check": _bessel_check,
    "laplace-check": _laplace_check,
}


def inputs_of(config: RunConfig) -> Dict[str, Any]:
    return {k: config[k] for k in INPUT_FIELDS[config["command"]] if k in config}


def run(
    config: RunConfig, timing: bool = False
) -> Tuple[int, Document, Optional[Outcome], List[str]]:
    """
    Execute one subcommand

    :param dict config: a configuration accepted by
        :func:`orthoplex.cli.config.load_config`
    :param bool timing: record ``runtime_ms``, which makes the document
        differ between runs
    :returns: exit status, output document, the raw outcome (``None`` on
        error) and the warnings raised along the way
    """
    command = config["command"]
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            outcome = HANDLERS[command](config)
        except (errors.ValidationError, errors.NumericalError) as e:
            messages = [str(w.message) for w in caught]
            return exit_code(e), error_document(command, e), None, messages
    messages = [str(w.message) for w in caught]
    runtime_ms = (time.perf_counter() - start) * 1000 if timing else None
    doc = document(
        command,
        inputs_of(config),
        outcome.results,
        config["tolerances"],
        messages,
        runtime_ms,
    )
    return 0, doc, outcome, messages
