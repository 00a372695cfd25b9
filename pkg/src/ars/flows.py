"""Flows of approximating fields.

Triangular fields (component j of weighted degree at most w_j) have
complete flows; when every component stays strictly below its coordinate
weight the exponential series of each coordinate terminates and the flow is
an exact polynomial in time.  A fixed-step Runge-Kutta integrator serves as
the independent numeric cross-check and as the blowup probe for fields
without the triangular structure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .approx import check_triangular_complete
from .grading import check_weights, monomial_weighted_degree
from .symcore import ArsError, Polynomial, VectorField, as_fraction, as_point, vf_apply

DEFAULT_TRUNCATION_ORDER = 30
DEFAULT_BLOWUP_THRESHOLD = 1e12


class NonTriangularField(ArsError):
    """The field lacks the triangular structure that guarantees completeness."""


@dataclass(frozen=True)
class FlowResult:
    endpoint: tuple
    method: str
    blowup: bool
    truncation_order: int | None = None
    step_count: int | None = None


@dataclass(frozen=True)
class ProbeReport:
    trials: int
    horizon: float
    triangular: bool
    blowup_count: int
    blowup_starts: tuple[tuple[float, ...], ...]


def is_strictly_triangular(X: VectorField, weights: Sequence[int]) -> bool:
    """Every monomial of component j has weighted degree at most w_j - 1.

    Applying such a field to a polynomial strictly lowers weighted degree,
    so each coordinate's exponential series terminates.
    """
    w = check_weights(weights, X.dim)
    for j, comp in enumerate(X.components):
        for e in comp.terms:
            if monomial_weighted_degree(e, w) > w[j] - 1:
                return False
    return True


def lie_series_flow(
    X: VectorField,
    point: Sequence,
    t,
    weights: Sequence[int],
    truncation_order: int | None = None,
) -> tuple[Fraction, ...]:
    """Endpoint of the time-t flow via the exponential series, exactly.

    Each coordinate moves by sum_s t^s/s! (X^s x_j)(p).  For strictly
    triangular fields the series terminates by step w_j and the endpoint is
    exact; otherwise it is cut at ``truncation_order`` terms, whose accuracy
    degrades as |t| grows.  Use :func:`lie_series_flow_result` when the
    truncation bound matters.
    """
    return _lie_series(X, point, t, weights, truncation_order)[0]


def lie_series_flow_result(
    X: VectorField,
    point: Sequence,
    t,
    weights: Sequence[int],
    truncation_order: int | None = None,
) -> FlowResult:
    """Like :func:`lie_series_flow`, reporting whether the series was cut.

    ``truncation_order`` in the result is None when every coordinate's
    series terminated on its own (the endpoint is exact), and the applied
    cutoff otherwise.
    """
    endpoint, truncated_at = _lie_series(X, point, t, weights, truncation_order)
    return FlowResult(endpoint, "lie_series", False, truncation_order=truncated_at)


def _lie_series(X, point, t, weights, truncation_order):
    w = check_weights(weights, X.dim)
    if not check_triangular_complete(X, w):
        raise NonTriangularField("flow series requires a triangular field for these weights")
    pt = as_point(point, X.dim)
    tt = as_fraction(t)
    strict = is_strictly_triangular(X, w)
    cutoff = truncation_order if truncation_order is not None else DEFAULT_TRUNCATION_ORDER

    endpoint = []
    truncated = False
    for j in range(X.dim):
        g = Polynomial.variable(X.dim, j)
        total = g.evaluate(pt)
        t_power = Fraction(1)
        s = 0
        while True:
            g = vf_apply(X, g)
            s += 1
            if g.is_zero:
                break
            if strict and s > w[j]:
                raise ArsError(
                    f"internal error: series for coordinate {j} outlived its bound {w[j]}"
                )
            if not strict and s > cutoff:
                truncated = True
                break
            t_power = t_power * tt / s
            total += t_power * g.evaluate(pt)
        endpoint.append(total)
    return tuple(endpoint), (cutoff if truncated else None)


def rk4_flow(
    X: VectorField,
    point: Sequence[float],
    t: float,
    steps: int,
    blowup_threshold: float = DEFAULT_BLOWUP_THRESHOLD,
) -> FlowResult:
    """Classical fixed-step fourth-order integration in floats.

    Blowup is data, not an error: the flag is set as soon as any coordinate
    leaves ``blowup_threshold`` or stops being finite, and integration halts
    at the last finite state.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    state = [float(x) for x in point]
    if len(state) != X.dim:
        raise ValueError("dimension mismatch")
    h = float(t) / steps

    def ok(values: list[float]) -> bool:
        return all(math.isfinite(v) and abs(v) <= blowup_threshold for v in values)

    for _ in range(steps):
        k1 = X.evaluate_float(state)
        k2 = X.evaluate_float([x + h / 2 * d for x, d in zip(state, k1)])
        k3 = X.evaluate_float([x + h / 2 * d for x, d in zip(state, k2)])
        k4 = X.evaluate_float([x + h * d for x, d in zip(state, k3)])
        candidate = [
            x + h / 6 * (a + 2 * b + 2 * c + d)
            for x, a, b, c, d in zip(state, k1, k2, k3, k4)
        ]
        if not all(math.isfinite(v) for v in candidate) or not ok(candidate):
            return FlowResult(tuple(state), "rk4", True, step_count=steps)
        state = candidate
    return FlowResult(tuple(state), "rk4", False, step_count=steps)


def completeness_probe(
    X: VectorField,
    weights: Sequence[int],
    horizon: float,
    trials: int,
    seed: int = 0,
    steps: int = 2000,
    start_box: float = 2.0,
) -> ProbeReport:
    """Integrate from random starts over [-horizon, horizon], count blowups.

    Fields passing the triangular completeness check must report zero
    blowups (at probe scale); the x^2 d/dx archetype reports them readily.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    w = check_weights(weights, X.dim)
    rng = random.Random(seed)
    blowups: list[tuple[float, ...]] = []
    for _ in range(trials):
        start = tuple(rng.uniform(-start_box, start_box) for _ in range(X.dim))
        for direction in (horizon, -horizon):
            res = rk4_flow(X, start, direction, steps)
            if res.blowup:
                blowups.append(start)
                break
    return ProbeReport(
        trials=trials,
        horizon=horizon,
        triangular=check_triangular_complete(X, w),
        blowup_count=len(blowups),
        blowup_starts=tuple(blowups),
    )


def dilate(point: Sequence, lam, weights: Sequence[int]) -> tuple[Fraction, ...]:
    """Weighted dilation: coordinate j scales by lam**w_j."""
    w = check_weights(weights, len(tuple(point)))
    lf = as_fraction(lam)
    pt = as_point(point, len(w))
    return tuple(x * lf**wj for x, wj in zip(pt, w))
