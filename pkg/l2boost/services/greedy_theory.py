"""Weak greedy approximation in a finite dictionary and its rate bound."""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from l2boost.exceptions import BadWeakness, BoundViolation, ValidationError
from l2boost.models.dataset import StandardizedDesign
from l2boost.models.enums import Selector
from l2boost.models.greedy import FiniteDictionary, GreedyTrace
from l2boost.services.base_learner import select_component
from l2boost.utils.rng import SELECTOR_STREAM, make_rng

logger = logging.getLogger(__name__)

# Slack for rounding when comparing a remainder norm to its bound
BOUND_RTOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one trace against the bound at every step."""
    tightest_ratio: float
    tightest_step: int
    violations: List[int]
    trace: GreedyTrace


def _check_step_params(b: float, nu: float) -> None:
    if not 0.0 < b <= 1.0:
        raise BadWeakness(b)
    if not 0.0 < nu <= 1.0:
        raise ValidationError(f"Step size must lie in (0, 1], got {nu}", code="BAD_STEP_SIZE", details={"nu": nu})


def temlyakov_bound(b_bound: float, m: int, b: float, nu: float) -> float:
    """
    Uniform remainder bound after m weak greedy steps.

    B * (1 + nu (2 - nu) m b^2) ** (-b / (2 (2 + b)))
    """
    if m < 0:
        raise ValidationError(f"Step count must be non-negative, got {m}", code="BAD_STEP_COUNT")
    _check_step_params(b, nu)
    if m == 0:
        return float(b_bound)
    return float(b_bound * (1.0 + nu * (2.0 - nu) * m * b * b) ** (-b / (2.0 * (2.0 + b))))


def weak_greedy(
    d: FiniteDictionary,
    b: float = 1.0,
    nu: float = 1.0,
    m_steps: int = 100,
    selector: Selector = Selector.EXACT_MAX,
    seed: int = 0,
) -> GreedyTrace:
    """
    Run m_steps weak greedy iterations on the dictionary target.

    R^0 f = f and R^m f = R^{m-1} f - nu <R^{m-1} f, g_S> g_S, where S
    satisfies |<R^{m-1} f, g_S>| >= b * max_j |<R^{m-1} f, g_j>|. EXACT_MAX
    takes the maximizer; B_WEAK_RANDOM draws uniformly among qualifying
    indices.

    Raises:
        BadWeakness: If b is outside (0, 1]
    """
    _check_step_params(b, nu)
    rng = make_rng(seed, SELECTOR_STREAM) if selector is Selector.B_WEAK_RANDOM else None

    r = np.array(d.f, dtype=float)
    indices = np.empty(m_steps, dtype=np.int64)
    inner_products = np.empty(m_steps)
    norms = np.empty(m_steps + 1)
    bounds = np.array([temlyakov_bound(d.b_bound, m, b, nu) for m in range(m_steps + 1)])
    norms[0] = d.norm(r)

    for k in range(m_steps):
        ip = d.inner(r)
        if rng is None:
            j = select_component(ip)
        else:
            level = b * float(np.max(np.abs(ip)))
            j = int(rng.choice(np.flatnonzero(np.abs(ip) >= level)))
        step = nu * float(ip[j])
        r -= step * d.vectors[:, j]
        indices[k] = j
        inner_products[k] = ip[j]
        norms[k + 1] = d.norm(r)

    return GreedyTrace(indices, inner_products, norms, bounds, nu, b)


def verify_bound(
    d: FiniteDictionary,
    b: float = 1.0,
    nu: float = 1.0,
    m_steps: int = 100,
    selector: Selector = Selector.EXACT_MAX,
    seed: int = 0,
    raise_on_violation: bool = True,
) -> BoundReport:
    """
    Check |R^m f| <= temlyakov_bound(B, m, b, nu) for m = 0..m_steps.

    The report carries the largest norm/bound ratio and the step where it
    occurs (0.0 and step 0 when every remainder is zero).

    Raises:
        BoundViolation: If any step exceeds the bound and raise_on_violation is set
    """
    trace = weak_greedy(d, b, nu, m_steps, selector, seed)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(trace.bounds > 0, trace.norms / trace.bounds, np.where(trace.norms > 0, np.inf, 0.0))
    violations = np.flatnonzero(trace.norms > trace.bounds * (1.0 + BOUND_RTOL) + BOUND_RTOL).tolist()
    step = int(np.argmax(ratios))
    report = BoundReport(float(ratios[step]), step, violations, trace)
    if violations:
        first = violations[0]
        logger.error("Greedy remainder exceeds bound at step %d", first)
        if raise_on_violation:
            raise BoundViolation(
                f"Remainder norm {trace.norms[first]:.6g} exceeds bound {trace.bounds[first]:.6g} at step {first}",
                details={"step": first, "norm": float(trace.norms[first]), "bound": float(trace.bounds[first])},
            )
    return report


def dictionary_from_design(g: StandardizedDesign, y: Optional[np.ndarray] = None) -> FiniteDictionary:
    """
    View standardized columns as a dictionary under <u, v>_(n) = n^-1 u.v.

    The target is the centered response (or y) expressed as least-squares
    coefficients on the columns; with p >= n the minimum-norm solution is
    used, so f reproduces y whenever y lies in the column span.
    """
    target = g.y_centered if y is None else np.asarray(y, dtype=float)
    coeffs, *_ = np.linalg.lstsq(g.g, target, rcond=None)
    return _DesignDictionary(g.g, coeffs, gram_scale=1.0 / g.n, target=target)


@dataclass(frozen=True)
class _DesignDictionary(FiniteDictionary):
    """FiniteDictionary whose target is a given vector rather than its expansion."""
    target: Optional[np.ndarray] = None

    @property
    def f(self) -> np.ndarray:
        return self.vectors @ self.target_coeffs if self.target is None else self.target


def random_dictionary(n_dim: int, size: int, seed: int, b_bound: float = 1.0) -> FiniteDictionary:
    """
    Random unit vectors in R^n_dim with a target of l1 norm b_bound.

    Coefficients are Gaussian rescaled to the l1 norm; half of them are zeroed.
    """
    if n_dim < 1 or size < 1:
        raise ValidationError("Dictionary needs a positive dimension and size", code="BAD_DICTIONARY")
    rng = make_rng(seed)
    vectors = rng.standard_normal((n_dim, size))
    vectors /= np.linalg.norm(vectors, axis=0)
    coeffs = rng.standard_normal(size) * (rng.random(size) < 0.5)
    total = float(np.sum(np.abs(coeffs)))
    if total > 0:
        coeffs *= b_bound / total
    return FiniteDictionary(vectors, coeffs)
