"""Finite-dimensional moment-map solving at a fixed parameter value.

Exact verdicts live in the other modules; this one demonstrates them
numerically.  The zero of the shifted moment map is the minimiser of a convex
potential on the torus (sum of exponentials over edges plus a linear weight
term), found by damped Newton.  An exact rational linear program over the
same data provides the independent strictly-positive-flow check, and a sweep
over shrinking parameter values exhibits the decay of the transformed
magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cones import DualGenerator, dual_generators_core, edge_weight, moment_weight
from .epspoly import RationalLike, as_fraction
from .instance import Instance
from .simplex import OPTIMAL, solve_lp


class DivergenceSuspected(RuntimeError):
    """Exponent clamp engaged: the evaluation point is suspiciously far out.

    Carries the clamped evaluation so callers can keep stepping or bail.
    """

    def __init__(self, value: float, gradient: np.ndarray, hessian: np.ndarray):
        super().__init__("potential evaluated beyond the exponent bound")
        self.value = value
        self.gradient = gradient
        self.hessian = hessian


class MaxIterationsError(RuntimeError):
    """Newton ran out of iterations; best iterate attached."""

    def __init__(self, x: np.ndarray, residual: float, iterations: int):
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(best residual {residual:.3e})"
        )
        self.x = x
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class MomentProblem:
    """Moment-map data at one concrete parameter value.

    W_at_eps is the exact moment weight evaluated there (plain sum zero);
    b0_sq are the initial squared magnitudes per edge, all positive.
    """

    ell: int
    edges: tuple[tuple[int, int], ...]
    W_at_eps: tuple[Fraction, ...]
    b0_sq: tuple[Fraction, ...]
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.W_at_eps) != self.ell or len(self.ranks) != self.ell:
            raise ValueError("weight and rank vectors must have one entry per component")
        if len(self.b0_sq) != len(self.edges):
            raise ValueError("one initial magnitude per edge required")
        if any(q <= 0 for q in self.b0_sq):
            raise ValueError("initial magnitudes must be positive")
        if sum(self.W_at_eps, Fraction(0)) != 0:
            raise ValueError("moment weight must sum to zero")
        for i, j in self.edges:
            if not (1 <= i < j <= self.ell):
                raise ValueError(f"bad edge ({i}, {j})")

    @property
    def weights(self) -> list[tuple[int, ...]]:
        return [edge_weight(e, self.ell) for e in self.edges]

    @classmethod
    def from_instance(
        cls,
        inst: Instance,
        eps: RationalLike,
        b0_sq: Sequence[RationalLike] | None = None,
    ) -> "MomentProblem":
        eps = as_fraction(eps)
        weight = tuple(w.evaluate(eps) for w in moment_weight(inst))
        edges = inst.quiver.edges
        if b0_sq is None:
            mags = tuple(Fraction(1) for _ in edges)
        else:
            mags = tuple(as_fraction(q) for q in b0_sq)
        return cls(inst.ell, edges, weight, mags, inst.ranks)


@dataclass(frozen=True)
class MomentSolution:
    """Zero of the shifted moment map: torus logarithm and edge magnitudes."""

    x_star: tuple[float, ...]
    t: tuple[float, ...]
    residual: float
    b_norm: float
    iterations: int


@dataclass(frozen=True)
class Divergent:
    """No zero exists: the potential decreases unboundedly.

    direction is the unit destabilizing direction, aligned with a dual-cone
    generator: it pairs >= 0 against every edge weight and >= 0 against the
    moment weight, and the potential escapes along its negative.  generator
    is the matched exact certificate when one exists.
    """

    direction: tuple[float, ...]
    generator: DualGenerator | None


@dataclass(frozen=True)
class FlowResult:
    """Strictly-positive-flow answer: the maximised minimum edge magnitude."""

    max_min_t: Fraction
    t: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    """No nonnegative flow matches the prescribed divergence."""


def _incidence(prob: MomentProblem) -> np.ndarray:
    mat = np.zeros((len(prob.edges), prob.ell))
    for row, (i, j) in enumerate(prob.edges):
        mat[row, i - 1] = 1.0
        mat[row, j - 1] = -1.0
    return mat


def kn_value_grad_hess(
    prob: MomentProblem, x: np.ndarray, exp_bound: float = 200.0
) -> tuple[float, np.ndarray, np.ndarray]:
    """Potential value, gradient and Hessian at a torus logarithm.

    The gradient is the shifted moment map (edge magnitudes pushed along the
    torus plus the weight); the Hessian is twice the magnitude-weighted graph
    Laplacian, positive semidefinite with constant kernel.  Exponents beyond
    exp_bound are clamped and flagged by raising DivergenceSuspected with the
    clamped evaluation attached.
    """
    mat = _incidence(prob)
    w = np.array([float(v) for v in prob.W_at_eps])
    b0 = np.array([float(q) for q in prob.b0_sq])
    args = 2.0 * (mat @ x)
    clamped = np.clip(args, -exp_bound, exp_bound)
    t = b0 * np.exp(clamped)
    value = float(0.5 * t.sum() + w @ x)
    gradient = mat.T @ t + w
    hessian = 2.0 * mat.T @ (t[:, None] * mat)
    if np.any(args != clamped):
        raise DivergenceSuspected(value, gradient, hessian)
    return value, gradient, hessian


def _value_only(mat, w, b0, x, exp_bound: float) -> float:
    args = 2.0 * (mat @ x)
    if np.any(np.abs(args) > exp_bound):
        return math.inf
    return float(0.5 * (b0 * np.exp(args)).sum() + w @ x)


def _edge_magnitudes(mat, b0, x) -> np.ndarray:
    return b0 * np.exp(2.0 * (mat @ x))


def _pick_divergence_direction(prob: MomentProblem, x: np.ndarray) -> Divergent:
    generators = dual_generators_core(prob.ranks, prob.edges)
    violating = [
        g
        for g in generators
        if sum(w * a for w, a in zip(prob.W_at_eps, g.coords)) > 0
    ]
    if violating:
        def score(g: DualGenerator) -> tuple[float, tuple[int, ...]]:
            coords = np.array([float(a) for a in g.coords])
            pair = float(sum(w * a for w, a in zip(prob.W_at_eps, g.coords)))
            return (-pair / float(np.linalg.norm(coords)), g.positive_part)

        best = min(violating, key=score)
        coords = np.array([float(a) for a in best.coords])
        direction = coords / np.linalg.norm(coords)
        return Divergent(tuple(float(v) for v in direction), best)
    norm = float(np.linalg.norm(x))
    drift = -x / norm if norm > 0 else x
    return Divergent(tuple(float(v) for v in drift), None)


def solve_moment_map(
    prob: MomentProblem,
    tol: float,
    *,
    max_iter: int = 500,
    b_div: float = 50.0,
    armijo: float = 1e-4,
    shrink: float = 0.5,
    exp_bound: float = 200.0,
    max_step: float = 5.0,
) -> MomentSolution | Divergent:
    """Damped Newton on the convex potential, restricted to the trace-free slice.

    Converges to the unique minimiser (residual = max-norm of the shifted
    moment map <= tol) whenever the negated weight admits a strictly positive
    flow; otherwise the iterates escape and a Divergent certificate is
    returned.  Divergence is declared when the iterate norm exceeds b_div
    while the residual stagnates above tol.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    ell = prob.ell
    mat = _incidence(prob)
    w = np.array([float(v) for v in prob.W_at_eps])
    b0 = np.array([float(q) for q in prob.b0_sq])
    ranks = np.array([float(r) for r in prob.ranks])

    def project(v: np.ndarray) -> np.ndarray:
        return v - (ranks @ v) / (ranks @ ranks) * ranks

    def finish(x: np.ndarray, res: float, iters: int) -> MomentSolution:
        t = _edge_magnitudes(mat, b0, x)
        return MomentSolution(
            x_star=tuple(float(v) for v in project(x)),
            t=tuple(float(v) for v in t),
            residual=res,
            b_norm=float(math.sqrt(t.sum())),
            iterations=iters,
        )

    x = np.zeros(ell)
    history: list[float] = []
    best_x, best_res = x.copy(), math.inf
    for iteration in range(max_iter):
        try:
            value, grad, hess = kn_value_grad_hess(prob, x, exp_bound=exp_bound)
        except DivergenceSuspected:
            return _pick_divergence_direction(prob, x)
        residual = float(np.max(np.abs(grad)))
        if residual < best_res:
            best_res, best_x = residual, x.copy()
        if residual <= tol:
            return finish(x, residual, iteration)
        history.append(residual)
        if (
            float(np.linalg.norm(x)) > b_div
            and len(history) > 12
            and residual > 0.5 * history[-12]
        ):
            return _pick_divergence_direction(prob, x)
        # Newton step on the slice via the bordered system
        kkt = np.zeros((ell + 1, ell + 1))
        kkt[:ell, :ell] = hess
        kkt[:ell, ell] = ranks
        kkt[ell, :ell] = ranks
        rhs = np.concatenate([-grad, [0.0]])
        try:
            step = np.linalg.solve(kkt, rhs)[:ell]
        except np.linalg.LinAlgError:
            step = -project(grad)
        slope = float(grad @ step)
        if not np.all(np.isfinite(step)) or slope >= 0:
            step = -project(grad)
            slope = float(grad @ step)
        # cap the move: near-singular Hessians (drift to a face or escape to
        # infinity) otherwise produce steps the line search cannot tame
        step_norm = float(np.linalg.norm(step))
        if step_norm > max_step:
            step = step * (max_step / step_norm)
            slope = float(grad @ step)
        # near the minimiser the true decrease drops below the float
        # granularity of the value; accept the full step on residual
        # contraction before falling back to the Armijo search
        try:
            _, g_full, _ = kn_value_grad_hess(prob, x + step, exp_bound=exp_bound)
            full_res = float(np.max(np.abs(g_full)))
        except DivergenceSuspected:
            full_res = math.inf
        if full_res < 0.9 * residual:
            x = project(x + step)
            continue
        alpha = 1.0
        accepted = False
        while alpha > 1e-18:
            trial = x + alpha * step
            if _value_only(mat, w, b0, trial, exp_bound) <= value + armijo * alpha * slope:
                accepted = True
                break
            alpha *= shrink
        if not accepted:
            break
        x = project(x + alpha * step)
    raise MaxIterationsError(best_x, best_res, max_iter)


def flow_feasibility(prob: MomentProblem) -> FlowResult | Infeasible:
    """Exact strictly-positive-flow test with prescribed divergence.

    Maximises the minimum edge magnitude d subject to the edge weights
    summing against the magnitudes to the negated weight.  Positive optimum
    means interior, zero means boundary, negative means no nonnegative flow
    exists (reported as Infeasible).  With no edges (single component) the
    test is vacuous and reported as max_min_t = 1 with an empty flow.
    """
    n_edges = len(prob.edges)
    if n_edges == 0:
        if any(v != 0 for v in prob.W_at_eps):
            return Infeasible()
        return FlowResult(Fraction(1), ())
    rows = prob.ell - 1
    columns: list[list[Fraction]] = []
    for i, j in prob.edges:
        col = [Fraction(0)] * rows
        if i <= rows:
            col[i - 1] = Fraction(1)
        if j <= rows:
            col[j - 1] = Fraction(-1)
        columns.append(col)
    s_col = [sum(col[r] for col in columns) for r in range(rows)]
    a_rows = [
        [col[r] for col in columns] + [s_col[r], -s_col[r]] for r in range(rows)
    ]
    b = [-prob.W_at_eps[r] for r in range(rows)]
    cost = [Fraction(0)] * n_edges + [Fraction(-1), Fraction(1)]
    status, x, _ = solve_lp(a_rows, b, cost)
    if status != OPTIMAL:
        raise RuntimeError(f"flow program unexpectedly {status}")
    assert x is not None
    delta = x[n_edges] - x[n_edges + 1]
    if delta < 0:
        return Infeasible()
    t = tuple(x[e] + delta for e in range(n_edges))
    return FlowResult(delta, t)


def _collapsed_to_tolerance(t: Sequence[float], tol: float, factor: float) -> bool:
    """Did the solver push some magnitude down to the tolerance floor?

    On a boundary problem every feasible flow zeroes the forced edges, so the
    solver drives them to the solve tolerance (a cut pairing bounds them by a
    small multiple of it); a genuinely interior minimiser keeps all magnitudes
    well above that floor.  The max(t) guard skips solves whose whole flow
    sits below resolution, which cannot be classified either way.
    """
    if not t:
        return False
    return min(t) <= factor * tol and max(t) > 10 * factor * tol


def classify_problem(
    prob: MomentProblem,
    *,
    rel_tol: float = 1e-10,
    boundary_factor: float = 100.0,
    max_iter: int = 500,
) -> str:
    """Trichotomy label from the float solver alone.

    Solves at a tolerance scaled to the weight; a converged run whose
    smallest edge magnitude collapsed onto that tolerance is Boundary,
    otherwise Interior; a Divergent return is Outside.
    """
    scale = max((abs(float(v)) for v in prob.W_at_eps), default=0.0)
    if scale == 0.0:
        return "Boundary" if prob.edges else "Interior"
    tol = rel_tol * scale
    outcome = solve_moment_map(prob, tol=tol, max_iter=max_iter)
    if isinstance(outcome, Divergent):
        return "Outside"
    if _collapsed_to_tolerance(outcome.t, tol, boundary_factor):
        return "Boundary"
    return "Interior"


@dataclass(frozen=True)
class SweepRow:
    eps: Fraction
    b_norm: float
    residual: float
    status: str
    newton_iters: int
    solution: MomentSolution | None = field(default=None, compare=False)


def _sweep_row(
    inst: Instance,
    eps: Fraction,
    tol: float,
    b0_sq: Sequence[RationalLike] | None,
    rel_tol: float | None,
) -> SweepRow:
    if eps == 0:
        mags = (
            [Fraction(1)] * len(inst.quiver.edges)
            if b0_sq is None
            else [as_fraction(q) for q in b0_sq]
        )
        base = math.sqrt(sum(float(q) for q in mags))
        return SweepRow(eps, base, 0.0, "BaselineAtEpsZero", 0)
    prob = MomentProblem.from_instance(inst, eps, b0_sq)
    scale = max((abs(float(v)) for v in prob.W_at_eps), default=0.0)
    row_tol = tol if rel_tol is None else max(rel_tol * scale, 1e-300)
    try:
        outcome = solve_moment_map(prob, tol=row_tol)
    except MaxIterationsError as err:
        return SweepRow(eps, math.nan, err.residual, "MaxIterations", err.iterations)
    if isinstance(outcome, Divergent):
        return SweepRow(eps, math.nan, math.nan, "Divergent", 0)
    # converged: the exact flow program decides whether this parameter value
    # sits on a face (some magnitude forced to zero) or strictly inside
    flow = flow_feasibility(prob)
    on_face = isinstance(flow, FlowResult) and flow.max_min_t == 0
    status = "Boundary" if on_face else "Solved"
    return SweepRow(
        eps, outcome.b_norm, outcome.residual, status, outcome.iterations, outcome
    )


def eps_sweep(
    inst: Instance,
    schedule: Sequence[RationalLike],
    tol: float,
    *,
    b0_sq: Sequence[RationalLike] | None = None,
    rel_tol: float | None = None,
    jobs: int = 1,
) -> list[SweepRow]:
    """Solve at every scheduled parameter value, largest first.

    Rows never abort the sweep: solver failures are recorded in the status
    column.  A zero parameter is reported as the baseline (initial magnitudes,
    no solve); converged rows are labelled Boundary exactly when the rational
    flow program forces a zero magnitude at that parameter value.  rel_tol,
    when given, replaces tol row by row with rel_tol times the weight scale at
    that parameter, keeping the solved magnitudes meaningful however small the
    weight gets.  With jobs > 1 the rows are solved concurrently; output order
    stays deterministic.
    """
    values = sorted({as_fraction(e) for e in schedule}, reverse=True)
    if any(v < 0 for v in values):
        raise ValueError("schedule values must be nonnegative")
    if jobs <= 1 or len(values) <= 1:
        return [_sweep_row(inst, eps, tol, b0_sq, rel_tol) for eps in values]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_sweep_row, inst, eps, tol, b0_sq, rel_tol)
            for eps in values
        ]
        return [f.result() for f in futures]


def fit_loglog_slope(rows: Sequence[SweepRow]) -> float:
    """Least-squares slope of log b_norm against log eps over solved rows."""
    pts = [
        (math.log(float(r.eps)), math.log(r.b_norm))
        for r in rows
        if r.status == "Solved" and r.b_norm > 0
    ]
    if len(pts) < 2:
        raise ValueError("need at least two solved rows to fit a slope")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    return float(np.polyfit(xs, ys, 1)[0])
