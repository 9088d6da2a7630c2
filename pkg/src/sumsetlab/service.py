"""FastAPI service wrapping the verification toolkit.

The handler functions (`handle_*`) take and return pydantic models and
contain no HTTP concerns; the CLI calls them directly as a thin client,
and the FastAPI routes below expose the same surface over HTTP.
"""

from __future__ import annotations

import inspect
from typing import Any, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import constants as constants_mod
from . import lemmas as lemmas_mod
from . import verify as verify_mod

SCHEMA_VERSION = verify_mod.SCHEMA_VERSION


class ConstantRequest(BaseModel):
    which: Literal["cube-upper", "tau", "q-hypercube", "c-of-p", "conjugate"]
    n: Optional[int] = None
    m: Optional[int] = None
    p: Optional[float] = None


class ConstantResponse(BaseModel):
    which: str
    value: float
    definition: str
    residual: float
    version: str = SCHEMA_VERSION


class LemmaRequest(BaseModel):
    which: str
    n: Optional[int] = None
    p: Optional[float] = None
    points: Optional[int] = None
    draws: Optional[int] = None
    seed: Optional[int] = None
    step: Optional[float] = None


class LemmaResponse(BaseModel):
    lemma: str
    grid: dict
    min_margin: float
    argmin: dict
    passed: bool
    seed: Optional[int] = None
    details: dict = Field(default_factory=dict)
    version: str = SCHEMA_VERSION


class VerifyRequest(BaseModel):
    statement: Literal[
        "two-sets", "n-fold", "three-sets", "cube-containing",
        "k-sum-cube", "energy", "dilate",
    ]
    n: Optional[int] = None
    m: Optional[int] = None
    d: Optional[int] = None
    k: Optional[int] = None
    p: Optional[float] = None
    mode: Optional[Literal["exhaustive", "random"]] = None
    count: Optional[int] = None
    seed: Optional[int] = None
    box: Optional[int] = None


class CampaignResponse(BaseModel):
    statement: str
    params: dict
    instances: int
    violations: int
    min_log_margin: float
    argmin: Optional[dict] = None
    near_equalities: list
    seed: Optional[int] = None
    wall_time: float
    version: str = SCHEMA_VERSION
    details: dict = Field(default_factory=dict)


class SearchRequest(BaseModel):
    n: int
    m: int
    d: int
    p: Optional[float] = None
    budget: int = 10
    seed: int = 0


def _call_with_supported(fn, options: dict[str, Any]):
    """Pass only the options the target checker actually accepts; reject
    options it does not know rather than dropping them silently."""
    params = inspect.signature(fn).parameters
    unknown = [k for k, v in options.items() if v is not None and k not in params]
    if unknown:
        raise ValueError(f"options {unknown} not supported by {fn.__name__}")
    return fn(**{k: v for k, v in options.items() if v is not None and k in params})


def handle_constant(req: ConstantRequest) -> ConstantResponse:
    c = constants_mod.compute_constant(req.which, n=req.n, m=req.m, p=req.p)
    return ConstantResponse(
        which=req.which, value=c.value, definition=c.definition, residual=c.residual
    )


def handle_lemma(req: LemmaRequest) -> LemmaResponse:
    if req.which not in lemmas_mod.LEMMA_IDS:
        raise ValueError(
            f"unknown lemma id {req.which!r}; known: {sorted(lemmas_mod.LEMMA_IDS)}"
        )
    checker = {
        "key-lemma-1": lemmas_mod.check_key_lemma_1,
        "key-lemma-2": lemmas_mod.check_key_lemma_2,
        "increasing-ratio": lemmas_mod.check_increasing_ratio,
        "main-F": lemmas_mod.check_main_F,
        "1var": lemmas_mod.check_1var,
        "2var": lemmas_mod.check_2var,
        "key-thm1": lemmas_mod.check_key_thm1,
        "subtle": lemmas_mod.check_subtle,
        "six-point": lemmas_mod.check_six_point,
    }[req.which]
    report = _call_with_supported(
        checker,
        {
            "n": req.n,
            "p": req.p,
            "points": req.points,
            "draws": req.draws,
            "seed": req.seed,
            "step": req.step,
        },
    )
    return LemmaResponse(**report.to_dict())


def handle_verify(req: VerifyRequest) -> CampaignResponse:
    fn = verify_mod.STATEMENTS[req.statement]
    if req.mode == "random" and req.seed is None:
        raise ValueError("random mode requires an explicit seed")
    report = _call_with_supported(
        fn,
        {
            "n": req.n,
            "m": req.m,
            "d": req.d,
            "k": req.k,
            "p": req.p,
            "mode": req.mode,
            "count": req.count,
            "seed": req.seed,
            "box": req.box,
        },
    )
    return CampaignResponse(**report.to_dict())


def handle_search(req: SearchRequest) -> CampaignResponse:
    report = verify_mod.search_min_ratio(
        n=req.n, m=req.m, d=req.d, p=req.p, budget=req.budget, seed=req.seed
    )
    return CampaignResponse(**report.to_dict())


# ---------------------------------------------------------------------------
# HTTP surface

app = FastAPI(title="sumsetlab", version="0.1.0")


def _guard(fn, req):
    try:
        return fn(req)
    except (ValueError, TypeError, OverflowError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": SCHEMA_VERSION}


@app.post("/constants", response_model=ConstantResponse)
def constants_endpoint(req: ConstantRequest) -> ConstantResponse:
    return _guard(handle_constant, req)


@app.post("/lemmas", response_model=LemmaResponse)
def lemmas_endpoint(req: LemmaRequest) -> LemmaResponse:
    return _guard(handle_lemma, req)


@app.post("/verify", response_model=CampaignResponse)
def verify_endpoint(req: VerifyRequest) -> CampaignResponse:
    return _guard(handle_verify, req)


@app.post("/search", response_model=CampaignResponse)
def search_endpoint(req: SearchRequest) -> CampaignResponse:
    return _guard(handle_search, req)
