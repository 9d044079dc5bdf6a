"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class AnalysisRequest(BaseModel):
    group: str = Field(description="catalog label, e.g. A11, M12, Sp6(2)")
    prime: int = Field(ge=2)
    seed: int = 0
    lattice_cap: int | None = None
    closure_cap: int | None = None
    no_cache: bool = False
    include_timing: bool = False
    catalog_path: str | None = None
    deep: bool = False


class GammaBlock(BaseModel):
    order: int
    structure: dict
    aut_fs_order: int
    aut0_order: int
    generator_labels: list[int]
    opprime_aut_orders: dict[str, int]


class ReportResponse(BaseModel):
    schema_version: int
    label: str
    prime: int
    group_order: str | None
    sylow_order: str
    sylow_degree: int
    sylow_abelian: bool
    counts: dict
    flags_summary: dict
    gamma: GammaBlock
    saturation: dict
    simplicity: dict
    weakly_closed_shortcut: dict | None
    rigidity_h1: dict | None
    predictor: dict | None
    comparison: dict
    timing_seconds: dict | None = None


class GammaResponse(BaseModel):
    label: str
    prime: int
    gamma_order: int
    structure: dict
    simple: bool | None          # None when the certificate is inconclusive
    simplicity_verdict: str
    opprime_aut_orders: dict[str, int]


class PredictRequest(BaseModel):
    group: str
    prime: int = Field(ge=2)


class PredictResponse(BaseModel):
    label: str
    p: int
    case: str
    gamma_order: int | None
    gamma_structure: str | None
    simple: bool | None
    opprime_simple: bool | None
    realizer: str | None
    exotic: bool
    abelian_sylow: bool | None
    sylow_normal: bool | None
    aut_A: dict | None
    notes: str


class SurveyRow(BaseModel):
    label: str
    prime: int
    gamma: int
    predicted_gamma: int | None
    simple: str
    predicted_simple: bool | None
    sylow_abelian: bool
    match: bool


class SurveyResponse(BaseModel):
    rows: list[SurveyRow]
    mismatches: int


class SurveyRequest(BaseModel):
    seed: int = 0
    lattice_cap: int | None = None
    closure_cap: int | None = None
    no_cache: bool = False
    rows: list[tuple[str, int]] | None = None


class SaturateCheckRequest(BaseModel):
    dump: str = Field(description="fusion-dump format text")
    lattice_cap: int | None = None
    closure_cap: int | None = None


class SaturateCheckResponse(BaseModel):
    verdict: str
    failures: list[dict]


class ErrorResponse(BaseModel):
    error: str
    module: str
