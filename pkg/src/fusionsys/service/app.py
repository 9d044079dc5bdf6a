"""FastAPI service wrapping the fusion-system engine.

The service owns the heavy computations: reports are cached on disk (per
label/prime/seed/caps/version) and in process memory, so a long-running
server amortizes the expensive fusion constructions across requests.  The
CLI is a thin client of these endpoints.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__, tables
from ..cache import ReportCache
from ..errors import FusionError
from ..fusion import CLOSURE_CAP, parse_dump
from ..lattice import LATTICE_CAP
from ..report import ReportOptions, build_report, run_survey
from ..saturation import is_saturated
from . import models


def _options(req) -> ReportOptions:
    return ReportOptions(
        seed=req.seed,
        lattice_cap=req.lattice_cap or LATTICE_CAP,
        closure_cap=req.closure_cap or CLOSURE_CAP,
        include_timing=req.include_timing,
        catalog_path=req.catalog_path,
        deep=req.deep,
    )


def create_app(cache_dir=None, cache_enabled: bool = True) -> FastAPI:
    app = FastAPI(title="fusionsys", version=__version__,
                  description="Fusion systems of finite groups at a prime p")
    cache = ReportCache(cache_dir, enabled=cache_enabled)
    memory: dict[tuple, dict] = {}
    lock = threading.Lock()

    @app.exception_handler(FusionError)
    async def fusion_error_handler(request, exc: FusionError):
        return JSONResponse(status_code=400,
                            content={"error": str(exc), "module": exc.module})

    def compute_report(req: models.AnalysisRequest) -> dict:
        options = _options(req)
        key = (req.group, req.prime, options.seed, options.lattice_cap,
               options.closure_cap, options.include_timing)
        if not req.no_cache:
            with lock:
                if key in memory:
                    return memory[key]
            disk = None if req.include_timing else cache.load(req.group, req.prime, options)
            if disk is not None:
                with lock:
                    memory[key] = disk
                return disk
        report = build_report(req.group, req.prime, options)
        if not req.no_cache:
            with lock:
                memory[key] = report
            if not req.include_timing:
                cache.store(req.group, req.prime, options, report)
        return report

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/v1/report", response_model=models.ReportResponse,
              response_model_exclude_none=False)
    def report(req: models.AnalysisRequest):
        return compute_report(req)

    @app.post("/v1/gamma", response_model=models.GammaResponse)
    def gamma(req: models.AnalysisRequest):
        rep = compute_report(req)
        verdict = rep["simplicity"]["verdict"]
        return models.GammaResponse(
            label=rep["label"], prime=rep["prime"],
            gamma_order=rep["gamma"]["order"],
            structure=rep["gamma"]["structure"],
            simple=None if verdict == "inconclusive" else verdict == "simple",
            simplicity_verdict=verdict,
            opprime_aut_orders=rep["gamma"]["opprime_aut_orders"])

    @app.post("/v1/predict", response_model=models.PredictResponse)
    def predict(req: models.PredictRequest):
        return tables.predict(req.group, req.prime).to_dict()

    @app.post("/v1/survey", response_model=models.SurveyResponse)
    def survey(req: models.SurveyRequest | None = None):
        req = req or models.SurveyRequest()
        options = ReportOptions(
            seed=req.seed,
            lattice_cap=req.lattice_cap or LATTICE_CAP,
            closure_cap=req.closure_cap or CLOSURE_CAP)
        result = run_survey(options, rows=req.rows,
                            cache=None if req.no_cache else cache)
        return result

    @app.post("/v1/saturate-check", response_model=models.SaturateCheckResponse)
    def saturate_check(req: models.SaturateCheckRequest):
        F = parse_dump(req.dump,
                       lattice_cap=req.lattice_cap or LATTICE_CAP,
                       closure_cap=req.closure_cap or CLOSURE_CAP)
        ok, rep = is_saturated(F)
        return models.SaturateCheckResponse(
            verdict=rep.verdict,
            failures=[{
                "axiom": f.axiom, "class_rep": f.class_rep,
                "subgroup": f.subgroup, "domain": f.domain,
                "n_phi": f.n_phi, "detail": f.detail,
            } for f in rep.failures])

    return app
