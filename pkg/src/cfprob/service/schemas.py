"""Request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ModelRef(BaseModel):
    """A model given inline as file text or by stored id (exactly one)."""

    text: Optional[str] = None
    id: Optional[str] = None
    max_atoms: Optional[int] = None  # vocabulary size limit override


class ModelSummary(BaseModel):
    id: Optional[str] = None
    name: Optional[str] = None
    kind: Literal["cpm", "possibility"]
    atoms: list[str]
    possible_worlds: int
    ranks: list[float]
    complete: bool


class StoreModelRequest(BaseModel):
    text: str
    name: Optional[str] = None


class ParseRequest(BaseModel):
    formula: str
    atoms: Optional[list[str]] = None
    model: Optional[ModelRef] = None


class ParseResponse(BaseModel):
    canonical: str
    atoms: list[str]


class WorldRow(BaseModel):
    world: str
    pi: float
    p: Optional[float] = None


class WorldsRequest(BaseModel):
    model: ModelRef
    of: Optional[str] = None


class WorldsResponse(BaseModel):
    atoms: list[str]
    worlds: list[WorldRow]


QueryKind = Literal[
    "believes", "status", "pi", "necessity", "p", "cond", "cf", "conditional"
]


class QueryRequest(BaseModel):
    model: ModelRef
    kind: QueryKind
    formula: str
    given: Optional[str] = None


class QueryResponse(BaseModel):
    kind: QueryKind
    formula: str
    given: Optional[str] = None
    defined: bool = True
    value: Optional[float] = None
    truth: Optional[bool] = None
    status: Optional[str] = None
    reason: Optional[str] = None


class DistributionRow(BaseModel):
    world: str
    mass: float


class ReviseRequest(BaseModel):
    model: ModelRef
    by: str
    natural: bool = False
    demotion: float = Field(default=0.5, gt=0.0, lt=1.0)


class ReviseResponse(BaseModel):
    by: str
    defined: bool = True
    reason: Optional[str] = None
    distribution: list[DistributionRow] = []
    total: Optional[float] = None
    belief: list[str] = []
    model_text: Optional[str] = None  # revised model dump (natural revision)


class ImageRequest(BaseModel):
    model: ModelRef
    by: str
    policy: Literal["pl_uniform", "centered", "explicit"] = "pl_uniform"
    table: Optional[str] = None
    source: Optional[list[DistributionRow]] = None  # default: factual distribution


class ImageResponse(BaseModel):
    by: str
    policy: str
    defined: bool = True
    reason: Optional[str] = None
    distribution: list[DistributionRow] = []
    total: Optional[float] = None


class SimulateRequest(BaseModel):
    model: ModelRef
    by: str
    of: str


class SimulateResponse(BaseModel):
    by: str
    of: str
    defined: bool = True
    reason: Optional[str] = None
    direct: Optional[float] = None
    via_sequence: Optional[float] = None
    via_single: Optional[float] = None
    rank: Optional[float] = None
    alpha: Optional[str] = None
    max_disagreement: Optional[float] = None
    agree: Optional[bool] = None


class CheckRequest(BaseModel):
    model: ModelRef
    suite: Literal["agm", "theorems", "all"] = "all"
    depth: int = Field(default=2, ge=1, le=4)
    seed: int = 0
    count: int = Field(default=12, ge=0)
    keep_passes: bool = False


class CheckResponse(BaseModel):
    passed: bool
    checks_run: int
    checks_failed: int
    reports: list[dict]


class GenerateRequest(BaseModel):
    seed: int = 0
    atoms: int = Field(default=4, ge=1, le=10)
    ranks: int = Field(default=3, ge=1, le=6)
    complete: bool = False


class GenerateResponse(BaseModel):
    model_text: str
    summary: ModelSummary
