"""HTTP surface for the classification toolkit.

Input problems (malformed ensembles, bad indices) map to 422; domain
failures (infeasible ensemble, non-classifiable state, invalid strategy)
map to 409.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..ensemble import ClassifiedEnsemble, ensemble_from_doc
from ..optimizer import OptimizationConfig
from ..strategy import ClassificationStrategy, strategy_from_doc
from . import handlers, schemas

DOMAIN_ERRORS = frozenset(
    {
        "infeasible ensemble",
        "state lies in complement span",
        "strategy failed validation",
        "not a measurement",
    }
)

app = FastAPI(title="qclassify", version="0.1.0")


def _ensemble(model: schemas.EnsembleModel) -> ClassifiedEnsemble:
    try:
        return ensemble_from_doc(model.model_dump(by_alias=True))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _strategy(model: schemas.StrategyModel) -> ClassificationStrategy:
    try:
        return strategy_from_doc(model.model_dump())
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        status = 409 if str(exc) in DOMAIN_ERRORS else 422
        raise HTTPException(status_code=status, detail=str(exc)) from exc
    except IndexError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/check", response_model=schemas.CheckResponse)
def check(req: schemas.CheckRequest) -> schemas.CheckResponse:
    doc = _run(handlers.handle_check, _ensemble(req.ensemble))
    return schemas.CheckResponse.model_validate(doc)


@app.post("/construct", response_model=schemas.ConstructResponse)
def construct(req: schemas.ConstructRequest) -> schemas.ConstructResponse:
    doc = _run(
        handlers.handle_construct,
        _ensemble(req.ensemble),
        state_index=req.state_index,
        tolerance=req.tolerance,
    )
    return schemas.ConstructResponse.model_validate(doc)


@app.post("/bound", response_model=schemas.BoundResponse)
def bound(req: schemas.BoundRequest) -> schemas.BoundResponse:
    doc = _run(handlers.handle_bound, _ensemble(req.ensemble))
    return schemas.BoundResponse.model_validate(doc)


@app.post("/optimize", response_model=schemas.OptimizeResponse)
def optimize(req: schemas.OptimizeRequest) -> schemas.OptimizeResponse:
    cfg = None
    if req.config is not None:
        try:
            cfg = OptimizationConfig(**req.config.model_dump())
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
    doc = _run(
        handlers.handle_optimize, _ensemble(req.ensemble), cfg=cfg, tolerance=req.tolerance
    )
    return schemas.OptimizeResponse.model_validate(doc)


@app.post("/simulate", response_model=schemas.SimulateResponse)
def simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    strat = _strategy(req.strategy) if req.strategy is not None else None
    doc = _run(
        handlers.handle_simulate, _ensemble(req.ensemble), strat, req.trials, req.seed
    )
    return schemas.SimulateResponse.model_validate(doc)


@app.get("/bb84", response_model=schemas.BB84Response)
def bb84() -> schemas.BB84Response:
    return schemas.BB84Response.model_validate(_run(handlers.handle_bb84))
