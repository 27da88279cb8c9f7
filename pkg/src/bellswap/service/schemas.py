"""Request and response models for the HTTP service."""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str


class TableCell(BaseModel):
    signs: list[int]
    probability: float
    expected: float
    passed: bool = Field(serialization_alias="pass")


class TableResponse(BaseModel):
    observables: list[str]
    cells: list[TableCell]
    all_pass: bool


class PropertyReportModel(BaseModel):
    property: str
    computed: list[float]
    expected: list[float]
    tolerance: float
    passed: bool = Field(serialization_alias="pass")


class VerifyResponse(BaseModel):
    reports: list[PropertyReportModel]
    all_pass: bool


class ConstraintModel(BaseModel):
    labels: list[str]
    required_sign: int


class LhvRequest(BaseModel):
    outcome: Optional[list[int]] = None


class LhvResponse(BaseModel):
    outcome: list[int]
    classification: str
    constraints: list[ConstraintModel]
    satisfying_count: int
    parity_product: Optional[int]
    parity_applicable: bool
    feasible: bool
    passed: bool = Field(serialization_alias="pass")


class SampleRequest(BaseModel):
    runs: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2 ** 64)
    order: Literal["alice-first", "bob-first"] = "alice-first"
    include_records: bool = False


class FrequencyCell(BaseModel):
    signs: list[int]
    frequency: float
    expected: float


class RunRecordModel(BaseModel):
    run: int
    alice_outcome: list[int]
    bob_outcome: list[int]
    classification: str


class SampleResponse(BaseModel):
    runs: int
    seed: int
    order: str
    cells: list[FrequencyCell]
    chi_squared: float
    chi_squared_threshold: float
    explainable_runs: int
    passed: bool = Field(serialization_alias="pass")
    records: Optional[list[RunRecordModel]] = None


class CoefficientModel(BaseModel):
    first: str
    second: str
    value: float
    magnitude: float
    nonzero: bool


class DecomposeResponse(BaseModel):
    pairing: list[list[int]]
    coefficients: list[CoefficientModel]
    sum_squared_magnitudes: float
    nonzero_count: int
    passed: bool = Field(serialization_alias="pass")
