"""Request and response models for the HTTP service.

Wire shapes mirror the file formats: ensembles carry amplitudes as
[re, im] pairs, strategies carry matrices as nested [re, im] pairs.
Unknown fields are rejected everywhere.
"""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

Matrix = list[list[list[float]]]


class StateModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    amplitudes: list[list[float]]
    prior: float
    class_label: int = Field(alias="class")


class EnsembleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int
    classes: int
    states: list[StateModel]


class StrategyModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int
    class_operators: list[Matrix]
    failure_operator: Matrix


class ValidationModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    complete: bool
    no_error: bool
    max_completeness_defect: float
    max_cross_class_probability: float
    per_state_success: list[float]
    average_success: float
    average_failure: float


class OptimizationConfigModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    restarts: int = 16
    max_iterations: int = 2000
    step_size: float = 0.05
    seed: int = 0
    tolerance: float = 1e-7


class CheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: EnsembleModel


class PerStateModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    state_index: int
    class_label: int = Field(alias="class")
    classifiable: bool
    residual_weight_sq: float


class CheckResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    feasible: bool
    per_state: list[PerStateModel]


class ConstructRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: EnsembleModel
    state_index: int | None = None
    tolerance: float | None = None


class ConstructResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    strategy: StrategyModel
    validation: ValidationModel


class BoundRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: EnsembleModel


class PairBoundModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state_a: int
    state_b: int
    min_failure_product: float


class BoundResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pairwise: list[PairBoundModel]
    failure_lower_bound: float
    success_upper_bound: float
    success_upper_bound_unclamped: float


class OptimizeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: EnsembleModel
    config: OptimizationConfigModel | None = None
    tolerance: float | None = None


class OptimizeResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    strategy: StrategyModel
    success_lower_bound: float
    upper_bound_reference: float
    converged: bool
    validation: ValidationModel


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: EnsembleModel
    strategy: StrategyModel | None = None
    trials: int = 10000
    seed: int = 0


class SimulateResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trials: int
    counts: list[list[int]]
    empirical_success: float
    predicted_success: float
    max_deviation_sigma: float
    exact_cells_consistent: bool


class BracketModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    success_lower_bound: float
    success_upper_bound: float


class BB84Response(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: EnsembleModel
    feasibility: CheckResponse
    bound: BoundResponse
    bracket: BracketModel
    conclusion: str
