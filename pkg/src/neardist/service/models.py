"""Pydantic request/response models for the service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..geometry import PointSet


class PointSetModel(BaseModel):
    dim: int = Field(ge=1)
    points: list[list[float]]

    @classmethod
    def from_core(cls, ps: PointSet) -> "PointSetModel":
        return cls(dim=ps.dim, points=[[float(x) for x in row] for row in ps.points])

    def to_core(self) -> PointSet:
        return PointSet(self.dim, self.points)


ConstructionName = Literal[
    "regular_simplex",
    "binomial_simplex",
    "progression",
    "product",
    "stacked",
    "simplex_sum",
    "clustered_turan",
    "columns",
    "two_distance",
]


class GenerateRequest(BaseModel):
    construction: ConstructionName
    d: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    e: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    eps1: Optional[float] = None
    t1: Optional[float] = None
    t2: Optional[float] = None
    scale: Optional[float] = None
    ratio: Optional[float] = None
    edge: Optional[float] = None
    base: Optional[PointSetModel] = None


class GenerateResponse(BaseModel):
    pointset: PointSetModel
    metadata: dict


class HistogramBin(BaseModel):
    anchor: float
    upper: float
    count: int


class AnalyzeRequest(BaseModel):
    pointset: PointSetModel
    k: int = Field(ge=1, le=8)
    length: Optional[float] = None
    eps: Optional[float] = None
    bound: Literal["turan_m", "turan_dk"] = "turan_dk"


class AnalyzeResponse(BaseModel):
    n: int
    dim: int
    k: int
    mode: str
    length_or_eps: float
    count: int
    anchors: list[float]
    turan_reference: int
    bound_name: str
    ratio_count_over_bound: float
    histogram: list[HistogramBin]


class ClusterModel(BaseModel):
    lo: float
    hi: float
    count: int
    rel_width: float


class KDistanceRequest(BaseModel):
    pointset: PointSetModel
    k: int = Field(ge=1)
    rel_tol: float = 1e-9


class KDistanceResponse(BaseModel):
    ok: bool
    cluster_count: int
    clusters: list[ClusterModel]


class WeakEpsRequest(BaseModel):
    pointset: PointSetModel
    eps: float = Field(gt=0)


class WeakEpsResponse(BaseModel):
    window_count: int
    anchors: list[float]


class SchuetteRequest(BaseModel):
    pointset: PointSetModel


class SchuetteResponse(BaseModel):
    ok: bool
    ratio: float
    bound: float


class CertifyRequest(BaseModel):
    pointset: PointSetModel
    d: Optional[int] = None
    k: int = Field(ge=1)
    eps: float = Field(gt=0, le=1)
    big_d: float = Field(default=10.0, gt=2)


class TreeNodeModel(BaseModel):
    kind: Literal["leaf", "split"]
    members: list[int]
    cardinality: int
    bound: int
    window_anchors: list[float]
    failure: bool
    ratio_bounded: Optional[bool] = None
    ell: Optional[int] = None
    class_bound: Optional[int] = None
    classes: Optional[list["TreeNodeModel"]] = None
    representatives: Optional["TreeNodeModel"] = None


TreeNodeModel.model_rebuild()


class CertifyResponse(BaseModel):
    ok: bool
    root_bound: int
    tree: TreeNodeModel


class TuranResponse(BaseModel):
    n: int
    s: int
    value: int


class WitnessModel(BaseModel):
    d: int
    k: int
    e: int
    f: int
    ell: int
    e_parts: list[int]
    p_parts: list[int]
    q_total: int
    q_parts: list[int]
    value: int


class MdkResponse(BaseModel):
    d: int
    k: int
    value: int
    witness: WitnessModel


class MdTableResponse(BaseModel):
    d: int
    value: Optional[int]
    lower: int
    upper: int


class ReproduceRequest(BaseModel):
    seed: int = 0


class ReproduceRow(BaseModel):
    id: int
    title: str
    passed: bool
    detail: str


class ReproduceResponse(BaseModel):
    seed: int
    all_passed: bool
    rows: list[ReproduceRow]
    markdown: str


class ErrorBody(BaseModel):
    category: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
