"""Numerical search for the best conclusive classification strategy.

The no-error condition plus positivity force each outcome element
Pi_m = A_m^+ A_m to annihilate every state outside class m (two lines: for
psi outside class m, <psi|Pi_m|psi> = 0 and Pi_m >= 0 together give
Pi_m|psi> = 0). Pi_m is therefore supported on K_m, the orthocomplement of
the other classes' span, and can be parametrized as Pi_m = Q_m H_m Q_m^+
with H_m a Hermitian PSD matrix on K_m. The search problem is then

    maximize  sum_m tr(H_m G_m),   G_m = Q_m^+ (sum_k eta_mk psi psi^+) Q_m
    s.t.      H_m >= 0,  sum_m Q_m H_m Q_m^+ <= I

a convex program solved by projected gradient ascent. Each step adds the
(constant) gradient, clips every H_m to PSD, and applies one spectral
multiplier correction: eigendirections v of sum Pi_m with eigenvalue above
1 receive a dual update Lambda = V max(D - 1, 0)/coverage V^+ (coverage
c_v = sum_m |Q_m^+ v|^2) which is pulled back and subtracted from each H_m.
A radially rescaled copy of the iterate is always feasible and is what gets
reported, so the returned strategy is valid no matter where the iteration
stops. The step size decays by 4 after 10 stalled iterations; four decays
without progress count as convergence. Fixed points of the corrected
iteration are KKT points of the convex program, hence global optima.

Runs are deterministic given (ensemble, config): restarts draw their
initializations sequentially from one counter-based generator (Philox), so
a longer restart schedule extends a shorter one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import success_upper_bound
from .ensemble import ClassifiedEnsemble
from .feasibility import class_support_basis, is_conclusively_classifiable
from .numerics import psd_sqrt
from .strategy import ClassificationStrategy

STALL_LIMIT = 10
MAX_DECAYS = 4
COVERAGE_FLOOR = 1e-12


@dataclass(frozen=True)
class OptimizationConfig:
    restarts: int = 16
    max_iterations: int = 2000
    step_size: float = 0.05
    seed: int = 0
    tolerance: float = 1e-7

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be > 0")


@dataclass(frozen=True)
class OptimizedStrategy:
    strategy: ClassificationStrategy
    success_lower_bound: float
    upper_bound_reference: float
    converged: bool


def _psd_clip(h: np.ndarray) -> np.ndarray:
    if h.size == 0:
        return h
    h = (h + h.conj().T) / 2
    w, v = np.linalg.eigh(h)
    if w[0] >= 0.0:
        return h
    return (v * np.maximum(w, 0.0)) @ v.conj().T


def _total(supports: list[np.ndarray], blocks: list[np.ndarray], dim: int) -> np.ndarray:
    t = np.zeros((dim, dim), dtype=complex)
    for q, h in zip(supports, blocks):
        if q.shape[1]:
            t += q @ h @ q.conj().T
    return (t + t.conj().T) / 2


def _correct_once(
    supports: list[np.ndarray], blocks: list[np.ndarray], dim: int
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """PSD-clip the blocks, apply one multiplier correction, and return the
    working iterate plus a radially rescaled feasible copy."""
    blocks = [_psd_clip(h) for h in blocks]
    t = _total(supports, blocks, dim)
    w, v = np.linalg.eigh(t)
    excess = np.maximum(w - 1.0, 0.0)
    if excess[-1] > 0.0:
        coverage = np.zeros(dim)
        for q in supports:
            if q.shape[1]:
                coverage += np.sum(np.abs(q.conj().T @ v) ** 2, axis=0)
        lam = excess / np.maximum(coverage, COVERAGE_FLOOR)
        dual = (v * lam) @ v.conj().T
        blocks = [
            _psd_clip(h - q.conj().T @ dual @ q) for q, h in zip(supports, blocks)
        ]
        t = _total(supports, blocks, dim)
        w = np.linalg.eigvalsh(t)
    top = float(w[-1])
    feasible = [h / top for h in blocks] if top > 1.0 else blocks
    return blocks, feasible


def _objective(gains: list[np.ndarray], blocks: list[np.ndarray]) -> float:
    return float(
        sum(np.real(np.trace(g @ h)) for g, h in zip(gains, blocks) if g.shape[0])
    )


def _trivial_strategy(e: ClassifiedEnsemble) -> ClassificationStrategy:
    zero = np.zeros((e.dim, e.dim), dtype=complex)
    return ClassificationStrategy(
        dim=e.dim,
        class_operators=tuple(zero for _ in range(e.n_classes)),
        failure_operator=np.eye(e.dim, dtype=complex),
    )


def _strategy_from_blocks(
    e: ClassifiedEnsemble, supports: list[np.ndarray], blocks: list[np.ndarray]
) -> ClassificationStrategy:
    ops = []
    total = np.zeros((e.dim, e.dim), dtype=complex)
    for q, h in zip(supports, blocks):
        if q.shape[1]:
            pi = q @ h @ q.conj().T
            pi = (pi + pi.conj().T) / 2
        else:
            pi = np.zeros((e.dim, e.dim), dtype=complex)
        total += pi
        ops.append(psd_sqrt(pi))
    failure = psd_sqrt(np.eye(e.dim) - total)
    return ClassificationStrategy(
        dim=e.dim, class_operators=tuple(ops), failure_operator=failure
    )


def optimize_classification(
    e: ClassifiedEnsemble, cfg: OptimizationConfig | None = None
) -> OptimizedStrategy:
    """Best-found conclusive strategy with its certified success probability.

    Infeasible ensembles short-circuit to the trivial all-failure strategy
    with success_lower_bound exactly 0. Restart 0 starts from the uniform
    projective strategy; later restarts draw random PSD blocks.
    """
    cfg = cfg or OptimizationConfig()
    upper = success_upper_bound(e)
    if not is_conclusively_classifiable(e):
        return OptimizedStrategy(
            strategy=_trivial_strategy(e),
            success_lower_bound=0.0,
            upper_bound_reference=upper,
            converged=True,
        )
    dim = e.dim
    supports = [class_support_basis(e, label) for label in range(1, e.n_classes + 1)]
    gains = []
    for label, q in zip(range(1, e.n_classes + 1), supports):
        weighted = np.zeros((dim, dim), dtype=complex)
        for m in e.members:
            if m.class_label == label:
                amp = m.state.amplitudes
                weighted += m.prior * np.outer(amp, amp.conj())
        gains.append(q.conj().T @ weighted @ q)
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    best_value = -1.0
    best_blocks: list[np.ndarray] | None = None
    best_converged = False
    for restart in range(cfg.restarts):
        ranks = [q.shape[1] for q in supports]
        if restart == 0:
            blocks = [np.eye(k, dtype=complex) for k in ranks]
        else:
            blocks = []
            for k in ranks:
                x = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
                blocks.append(x @ x.conj().T / max(k, 1))
        blocks, feasible = _correct_once(supports, blocks, dim)
        local_best = _objective(gains, feasible)
        local_blocks = feasible
        step = cfg.step_size
        decays = 0
        stall = 0
        converged = False
        for _ in range(cfg.max_iterations):
            blocks = [h + step * g for h, g in zip(blocks, gains)]
            blocks, feasible = _correct_once(supports, blocks, dim)
            value = _objective(gains, feasible)
            if value > local_best + cfg.tolerance:
                local_best, local_blocks = value, feasible
                stall = 0
            else:
                if value > local_best:
                    local_best, local_blocks = value, feasible
                stall += 1
                if stall >= STALL_LIMIT:
                    if decays >= MAX_DECAYS:
                        converged = True
                        break
                    step /= 4.0
                    decays += 1
                    stall = 0
        if local_best > best_value:
            best_value, best_blocks = local_best, local_blocks
            best_converged = converged
    assert best_blocks is not None
    return OptimizedStrategy(
        strategy=_strategy_from_blocks(e, supports, best_blocks),
        success_lower_bound=best_value,
        upper_bound_reference=upper,
        converged=best_converged,
    )


def bracket_optimum(
    e: ClassifiedEnsemble, cfg: OptimizationConfig | None = None
) -> tuple[float, float]:
    """(certified lower bound, closed-form upper bound) on the best success."""
    result = optimize_classification(e, cfg)
    return result.success_lower_bound, result.upper_bound_reference
