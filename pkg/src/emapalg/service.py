"""HTTP service exposing the analysis commands.

The service is stateless with respect to results: a request carries the full
config text, and identical requests produce identical reports.  The CLI is a
thin client of this app (in-process by default, over the network with
--server).
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI
from pydantic import BaseModel, Field

from . import __version__
from .commands import COMMANDS, run_command
from .errors import EmapError

app = FastAPI(title="emapalg", version=__version__,
              description="Exact equivariant map algebra computations")


class RunParams(BaseModel):
    point: Optional[str] = None
    depth: Optional[int] = None
    window: Optional[str] = Field(default=None,
                                  description="degree window LO..HI")
    seed: Optional[int] = None
    assignments: Optional[list] = None
    assignments2: Optional[list] = None
    pool: Optional[list] = None
    labels: Optional[list] = None
    pi: Optional[list] = None
    direction: Optional[str] = None


class RunRequest(BaseModel):
    command: str
    config: str = Field(description="session config as TOML text")
    params: RunParams = Field(default_factory=RunParams)


class RunResponse(BaseModel):
    ok: bool
    report: Optional[dict] = None
    error: Optional[dict] = None


class HealthResponse(BaseModel):
    status: str
    version: str


class CommandsResponse(BaseModel):
    commands: list


@app.get("/v1/health", response_model=HealthResponse)
def health():
    return HealthResponse(status="ok", version=__version__)


@app.get("/v1/commands", response_model=CommandsResponse)
def commands():
    return CommandsResponse(commands=list(COMMANDS))


@app.post("/v1/run", response_model=RunResponse)
def run(request: RunRequest) -> RunResponse:
    params = {k: v for k, v in request.params.model_dump().items()
              if v is not None}
    try:
        report = run_command(request.command, request.config, params)
    except EmapError as exc:
        return RunResponse(ok=False, error=exc.record())
    return RunResponse(ok=True, report=report)
