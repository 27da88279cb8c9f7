"""HTTP endpoints wrapping the simulator and the certificates."""
from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import lhv, protocol, sampler
from ..statevec import PROB_TOL, ZERO_TOL
from .schemas import (
    CoefficientModel,
    ConstraintModel,
    DecomposeResponse,
    FrequencyCell,
    HealthResponse,
    LhvRequest,
    LhvResponse,
    PropertyReportModel,
    RunRecordModel,
    SampleRequest,
    SampleResponse,
    TableCell,
    TableResponse,
    VerifyResponse,
)

# Outcome whose constraint system the lhv endpoint certifies by default.
DEFAULT_LHV_OUTCOME = (1, 1, 1, -1)


def create_app() -> FastAPI:
    app = FastAPI(
        title="bellswap",
        description=(
            "Exact statistics of joint Pauli-product measurements on two "
            "singlets, with local-value-assignment infeasibility certificates."
        ),
    )

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok")

    @app.get("/table1", response_model=TableResponse)
    def table1() -> TableResponse:
        dist = protocol.outcome_table(protocol.two_singlet_state())
        cells = []
        for signs, probability, expected in protocol.table_rows(dist):
            tolerance = PROB_TOL if expected else ZERO_TOL
            cells.append(
                TableCell(
                    signs=list(signs),
                    probability=probability,
                    expected=expected,
                    passed=abs(probability - expected) < tolerance,
                )
            )
        return TableResponse(
            observables=[o.label for o in protocol.MEASURED_PRODUCTS],
            cells=cells,
            all_pass=all(c.passed for c in cells),
        )

    @app.get("/verify", response_model=VerifyResponse)
    def verify() -> VerifyResponse:
        reports = [
            PropertyReportModel(
                property=r.name,
                computed=list(r.computed),
                expected=list(r.expected),
                tolerance=r.tolerance,
                passed=r.passed,
            )
            for r in protocol.verify_all_properties()
        ]
        return VerifyResponse(reports=reports, all_pass=all(r.passed for r in reports))

    @app.post("/lhv", response_model=LhvResponse)
    def certify_lhv(request: LhvRequest) -> LhvResponse:
        if request.outcome is None:
            outcome = DEFAULT_LHV_OUTCOME
        else:
            if len(request.outcome) != 4:
                raise ValueError(
                    f"outcome needs exactly four signs, got {len(request.outcome)}"
                )
            outcome = tuple(request.outcome)
        classification = lhv.classify_outcome(outcome)
        constraints = lhv.build_constraints(outcome)
        certificate = lhv.parity_certificate(constraints)
        consistent = (
            certificate.parity_applicable
            and certificate.feasible == (classification == "explainable")
            and (certificate.parity_product == -1) == (not certificate.feasible)
        )
        return LhvResponse(
            outcome=list(outcome),
            classification=classification,
            constraints=[ConstraintModel(**c.to_dict()) for c in constraints],
            satisfying_count=certificate.satisfying_count,
            parity_product=certificate.parity_product,
            parity_applicable=certificate.parity_applicable,
            feasible=certificate.feasible,
            passed=consistent,
        )

    @app.post("/sample", response_model=SampleResponse)
    def sample(request: SampleRequest) -> SampleResponse:
        config = sampler.SamplerConfig(
            num_runs=request.runs, seed=request.seed, order=request.order
        )
        records = sampler.run(config)
        dist = sampler.empirical_distribution(records)
        cells = [
            FrequencyCell(
                signs=list(signs),
                frequency=frequency,
                expected=expected,
            )
            for signs, frequency, expected in protocol.table_rows(dist)
        ]
        statistic = sampler.chi_squared_vs_reference(records)
        explainable = sum(1 for r in records if r.classification == "explainable")
        record_models = None
        if request.include_records:
            record_models = [
                RunRecordModel(
                    run=i,
                    alice_outcome=list(r.alice_outcome),
                    bob_outcome=list(r.bob_outcome),
                    classification=r.classification,
                )
                for i, r in enumerate(records)
            ]
        return SampleResponse(
            runs=request.runs,
            seed=request.seed,
            order=request.order,
            cells=cells,
            chi_squared=statistic,
            chi_squared_threshold=sampler.CHI2_THRESHOLD_999_DOF7,
            explainable_runs=explainable,
            passed=explainable == 0 and statistic < sampler.CHI2_THRESHOLD_999_DOF7,
            records=record_models,
        )

    @app.get("/decompose", response_model=DecomposeResponse)
    def decompose() -> DecomposeResponse:
        state = protocol.two_singlet_state()
        coefficients = protocol.decompose_bell_basis(state)
        models = []
        total = 0.0
        for (first, second), value in coefficients.items():
            magnitude = abs(value)
            total += magnitude ** 2
            models.append(
                CoefficientModel(
                    first=first,
                    second=second,
                    value=float(value.real),
                    magnitude=magnitude,
                    nonzero=magnitude > ZERO_TOL,
                )
            )
        rebuilt = protocol.reconstruct_from_bell_basis(coefficients)
        roundtrip_error = float(
            np.max(np.abs(rebuilt.amplitudes - state.amplitudes))
        )
        return DecomposeResponse(
            pairing=[list(p) for p in protocol.DEFAULT_PAIRING],
            coefficients=models,
            sum_squared_magnitudes=total,
            nonzero_count=sum(1 for m in models if m.nonzero),
            passed=abs(total - 1.0) < PROB_TOL and roundtrip_error < ZERO_TOL,
        )

    return app


app = create_app()
