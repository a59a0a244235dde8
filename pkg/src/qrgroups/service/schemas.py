"""Request and response bodies for the HTTP service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from ..groups.table import DEFAULT_ELEMENT_BUDGET
from ..productfree import DEFAULT_NODE_BUDGET

DEFAULT_SEED = 42

GroupFamily = Literal["sl", "sp", "alt", "sym", "tree", "abelian",
                      "quaternion"]
BoundFamily = Literal["sl", "sp"]
PfMode = Literal["search", "coset", "greedy", "formula-abelian",
                 "formula-padic", "formula-series", "formula-tree",
                 "formula-profinite"]


class GroupRequest(BaseModel):
    """Which finite group to build; field meaning depends on the family.

    sl/sp: k is the matrix size parameter, p and n give the ring Z/p^n.
    alt/sym: k is the number of permuted points.
    tree: k is the branching degree, depth picks the quotient level.
    abelian: factors are the cyclic orders.
    """

    model_config = ConfigDict(extra="forbid")

    family: GroupFamily
    k: int | None = None
    p: int | None = None
    n: int = 1
    depth: int = 1
    factors: list[int] | None = None
    element_budget: int = DEFAULT_ELEMENT_BUDGET


class DegreesRequest(GroupRequest):
    seed: int = DEFAULT_SEED
    full: bool = False


class BoundsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: BoundFamily
    k: int = 2
    p: int = 3
    n: int = 1
    seed: int = DEFAULT_SEED
    element_budget: int = DEFAULT_ELEMENT_BUDGET


class MixingRequest(GroupRequest):
    trials: int = 100
    seed: int = DEFAULT_SEED
    tolerance: float = 1e-9
    m: int | None = Field(default=None,
                          description="minimal nontrivial degree override; "
                                      "computed exactly when omitted")


class PfRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: PfMode
    family: str | None = None
    k: int | None = None
    p: int | None = None
    n: int = 1
    depth: int = 1
    factors: list[int] | None = None
    seed: int = DEFAULT_SEED
    element_budget: int = DEFAULT_ELEMENT_BUDGET
    node_budget: int = DEFAULT_NODE_BUDGET


class TreeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int
    depth: int = 1
    seed: int = DEFAULT_SEED
    element_budget: int = DEFAULT_ELEMENT_BUDGET


class ReportRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    manifest: list[dict[str, Any]]
    seed: int | None = None


class Envelope(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=1, serialization_alias="schema",
                                validation_alias="schema")

    def payload(self) -> dict:
        return self.model_dump(by_alias=True)


class GroupResponse(Envelope):
    group: dict


class DegreesResponse(Envelope):
    group: dict
    exponent: int
    degrees: list[int]
    kernels: list[list[int]]
    m: int
    m_f: int
    m_f_witness: list[int]
    m_f_single: int | None
    multiplicities: list | None = None


class BoundReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    quantity: str
    computed: int | str
    formula: int | str
    relation: str
    passed: bool = Field(serialization_alias="pass", validation_alias="pass")
    refs: list[str]


class BoundsResponse(Envelope):
    group: dict
    reports: list[BoundReportModel]
    passed: bool = Field(serialization_alias="pass", validation_alias="pass")


class MixingResponse(Envelope):
    group: dict
    m: int
    suite: list[dict]
    passed: bool = Field(serialization_alias="pass", validation_alias="pass")


class PfResponse(Envelope):
    mode: str
    value: int | str | None = None
    lower: int | str | None = None
    upper: dict | None = None
    effective_upper: dict | None = None
    result: dict | None = None

    def payload(self) -> dict:
        return self.model_dump(by_alias=True, exclude_none=True)


class TreeResponse(Envelope):
    k: int
    depth: int
    group: dict
    order: int
    order_formula: int
    order_matches: bool
    level1_min_degree: int
    scan: dict


class ReportResponse(Envelope):
    results: list[dict]
    passed: bool = Field(serialization_alias="pass", validation_alias="pass")


class ErrorResponse(BaseModel):
    error: str
    category: str
    detail: str
