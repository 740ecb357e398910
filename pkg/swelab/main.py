"""
FastAPI server for the scheme laboratory.

Exposes the run, convergence and combined-scheme pipelines over HTTP. Bodies
are RunConfig JSON objects; /api/run-config accepts the same flat key=value
file the CLI reads.
"""

import os
import tempfile
from typing import Literal

from fastapi import FastAPI, File, HTTPException, Request, UploadFile
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from . import __version__
from .config import read_config_file
from .errors import ConfigError, NumericalFailure
from .models import RunConfig
from .orchestrator import LabOrchestrator

app = FastAPI(title="swelab", version=__version__)

orchestrator = LabOrchestrator()


@app.exception_handler(RequestValidationError)
async def invalid_body(request: Request, exc: RequestValidationError):
    return JSONResponse(status_code=400, content={"detail": jsonable_encoder(exc.errors())})


async def _guarded(coro):
    """Run a pipeline and map laboratory errors onto HTTP status codes"""
    try:
        summary = await coro
        return {"success": True, "data": summary.model_dump()}
    except (ConfigError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except NumericalFailure as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@app.get("/")
async def root():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "service": "swelab",
        "version": __version__,
    }


@app.post("/api/run")
async def run(config: RunConfig):
    """Run one example with one scheme"""
    return await _guarded(orchestrator.run_example(config))


@app.post("/api/converge")
async def converge(config: RunConfig):
    """Three-grid convergence study"""
    return await _guarded(orchestrator.converge(config))


@app.post("/api/combined-run")
async def combined_run(config: RunConfig):
    """Run a combined RBM-CU or RBM-A-WENO scheme"""
    if not config.is_combined:
        raise HTTPException(status_code=400, detail="scheme must be rbm-cu or rbm-aweno")
    return await _guarded(orchestrator.run_example(config))


@app.post("/api/run-config")
async def run_config(
    file: UploadFile = File(...),
    mode: Literal["run", "converge"] = "run",
):
    """
    Run from an uploaded key=value config file.

    Returns:
        The run or convergence summary
    """
    with tempfile.NamedTemporaryFile(delete=False, suffix=".cfg") as tmp_file:
        content = await file.read()
        tmp_file.write(content)
        tmp_path = tmp_file.name

    try:
        try:
            config = RunConfig.model_validate(read_config_file(tmp_path))
        except (ConfigError, ValidationError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        pipeline = orchestrator.converge if mode == "converge" else orchestrator.run_example
        return await _guarded(pipeline(config))
    finally:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
