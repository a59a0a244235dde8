"""HTTP service exposing group construction, degrees, and verification."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from ..errors import QRGroupsError, UnsupportedParameters
from ..groups import (alt_invariant_subspace_scan, even_weight_code,
                      point_stabilizer, stabilizer_subgroup, tree_level_order)
from ..mixing import mixing_suite
from ..productfree import (coset_product_free, exact_max_product_free,
                           greedy_product_free)
from ..quasirandom import (BoundReport, bgc_bound, format_rational,
                           green_ruzsa_pf, h_bound, hf_bound,
                           pf_bounds_profinite, pf_bounds_tree, pf_padic,
                           pf_power_series, verify_bound)
from ..reptheory import faithful_search, min_nontrivial_degree
from .schemas import (BoundsRequest, BoundsResponse, DegreesRequest,
                      DegreesResponse, ErrorResponse, GroupRequest,
                      GroupResponse, MixingRequest, MixingResponse, PfRequest,
                      PfResponse, ReportRequest, ReportResponse, TreeRequest,
                      TreeResponse)
from .state import ServiceState


def handle_group(state: ServiceState, req: GroupRequest) -> GroupResponse:
    table = state.table(req)
    return GroupResponse(group=table.descriptor.to_json())


def handle_degrees(state: ServiceState, req: DegreesRequest) -> DegreesResponse:
    table, classes, chars = state.characters(req, req.seed)
    m = min_nontrivial_degree(chars)
    search = faithful_search(chars, classes)
    return DegreesResponse(
        group=table.descriptor.to_json(),
        exponent=chars.exponent,
        degrees=[int(d) for d in chars.degrees],
        kernels=[[int(k) for k in kernel] for kernel in chars.kernels],
        m=m,
        m_f=search.total_degree,
        m_f_witness=[int(i) for i in search.witness],
        m_f_single=search.single_minimum,
        multiplicities=(chars.multiplicities.tolist() if req.full else None),
    )


def _bound_family(family: str, k: int) -> str:
    if family == "sp":
        return "sp2k"
    return "sl2" if k == 2 else "slk"


def handle_bounds(state: ServiceState, req: BoundsRequest) -> BoundsResponse:
    spec = GroupRequest(family=req.family, k=req.k, p=req.p, n=req.n,
                        element_budget=req.element_budget)
    table, classes, chars = state.characters(spec, req.seed)
    label = table.descriptor.label()
    m = min_nontrivial_degree(chars)
    m_f = faithful_search(chars, classes).total_degree
    family = _bound_family(req.family, req.k)
    reports = [
        verify_bound(m, h_bound(family, req.k, req.p), ">=",
                     quantity=f"m({label}) against the degree lower bound",
                     provenance=("modular character table",
                                 "closed-form nontrivial-degree bound")),
        verify_bound(m_f, hf_bound(family, req.k, req.p, req.n), ">=",
                     quantity=f"m_f({label}) against the faithful bound",
                     provenance=("kernel-intersection search",
                                 "closed-form faithful-degree bound")),
    ]
    if family == "sl2" and req.n >= 2:
        reports.append(verify_bound(
            m_f, bgc_bound(req.p, req.n), ">=",
            quantity=f"m_f({label}) against the p^(n-2)(p^2-1)/2 bound",
            provenance=("kernel-intersection search",
                        "congruence-kernel degree bound")))
    models = [report.to_json() for report in reports]
    return BoundsResponse(group=table.descriptor.to_json(), reports=models,
                          passed=all(r.passed for r in reports))


def handle_mixing(state: ServiceState, req: MixingRequest) -> MixingResponse:
    if req.m is not None:
        table = state.table(req)
        m = req.m
    else:
        table, _, chars = state.characters(req, req.seed)
        m = min_nontrivial_degree(chars)
    suite = mixing_suite(table, m, trials=req.trials, seed=req.seed,
                         tolerance=req.tolerance)
    return MixingResponse(group=table.descriptor.to_json(), m=m, suite=suite,
                          passed=all(row["failures"] == 0 for row in suite))


def _coset_subgroup(state: ServiceState, spec: GroupRequest) -> list[int]:
    table = state.table(spec)
    if spec.family in ("sl", "sp"):
        ordinals, _ = stabilizer_subgroup(table, action="projective")
        return ordinals
    if spec.family in ("alt", "sym", "tree"):
        ordinals, _ = point_stabilizer(table, 0)
        return ordinals
    if spec.family == "abelian":
        factors = table.descriptor.factors
        q = min(_smallest_prime(f) for f in factors if f > 1)
        last = len(factors) - 1
        backend = table.backend
        return [o for o in range(table.order)
                if backend.decode(table.elements[o])[last] % q == 0]
    # quaternion: the cyclic subgroup generated by the first order-4 element
    for g in range(table.order):
        if table.element_order(g) == 4:
            ordinals = [table.identity]
            current = g
            while current != table.identity:
                ordinals.append(current)
                current = table.mul(current, g)
            return sorted(ordinals)
    raise UnsupportedParameters("no canonical subgroup for this group")


def _smallest_prime(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _group_spec_from_pf(req: PfRequest) -> GroupRequest:
    if req.family is None:
        raise UnsupportedParameters(f"mode {req.mode!r} needs a group family")
    return GroupRequest(family=req.family, k=req.k, p=req.p, n=req.n,
                        depth=req.depth, factors=req.factors,
                        element_budget=req.element_budget)


def handle_pf(state: ServiceState, req: PfRequest) -> PfResponse:
    mode = req.mode
    if mode == "formula-abelian":
        if not req.factors:
            raise UnsupportedParameters("formula-abelian needs factors")
        return PfResponse(mode=mode,
                          value=format_rational(green_ruzsa_pf(req.factors)))
    if mode == "formula-padic":
        if req.p is None:
            raise UnsupportedParameters("formula-padic needs p")
        return PfResponse(mode=mode, value=format_rational(pf_padic(req.p)))
    if mode == "formula-series":
        if req.p is None:
            raise UnsupportedParameters("formula-series needs p")
        return PfResponse(mode=mode,
                          value=format_rational(pf_power_series(req.p)))
    if mode == "formula-tree":
        if req.k is None:
            raise UnsupportedParameters("formula-tree needs k")
        window = pf_bounds_tree(req.k).to_json()
        return PfResponse(mode=mode, **window)
    if mode == "formula-profinite":
        if req.family is None or req.k is None or req.p is None:
            raise UnsupportedParameters(
                "formula-profinite needs family, k, and p")
        window = pf_bounds_profinite(_bound_family(req.family, req.k), req.k,
                                     req.p).to_json()
        return PfResponse(mode=mode, **window)

    spec = _group_spec_from_pf(req)
    table = state.table(spec)
    label = table.descriptor.label()
    if mode == "search":
        result = exact_max_product_free(table, node_budget=req.node_budget)
        return PfResponse(mode=mode,
                          result=result.to_json(label, seed=req.seed))
    if mode == "greedy":
        result = greedy_product_free(table, seed=req.seed)
        return PfResponse(mode=mode,
                          result=result.to_json(label, seed=req.seed))
    result = coset_product_free(table, _coset_subgroup(state, spec))
    return PfResponse(mode=mode, result=result.to_json(label, seed=req.seed))


def handle_tree(state: ServiceState, req: TreeRequest) -> TreeResponse:
    spec = GroupRequest(family="tree", k=req.k, depth=req.depth,
                        element_budget=req.element_budget)
    table = state.table(spec)
    formula = tree_level_order(req.k, req.depth)
    level1 = GroupRequest(family="tree", k=req.k, depth=1,
                          element_budget=req.element_budget)
    _, _, chars = state.characters(level1, req.seed)
    points = req.k + 1
    scan = alt_invariant_subspace_scan(even_weight_code(points), points)
    return TreeResponse(
        k=req.k, depth=req.depth, group=table.descriptor.to_json(),
        order=table.order, order_formula=formula,
        order_matches=table.order == formula,
        level1_min_degree=min_nontrivial_degree(chars),
        scan={"points": points, "code_dimension": scan.code_dim,
              "subspace_dimensions": [int(d) for d in scan.subspace_dims],
              "min_rank": scan.min_corank})


REPORT_COMMANDS = {
    "group": (GroupRequest, handle_group),
    "degrees": (DegreesRequest, handle_degrees),
    "bounds": (BoundsRequest, handle_bounds),
    "mixing": (MixingRequest, handle_mixing),
    "pf": (PfRequest, handle_pf),
    "tree": (TreeRequest, handle_tree),
}


def handle_report(state: ServiceState, req: ReportRequest) -> ReportResponse:
    results = []
    all_pass = True
    for entry in req.manifest:
        entry = dict(entry)
        command = entry.pop("command", None)
        if command not in REPORT_COMMANDS:
            raise UnsupportedParameters(f"unknown manifest command {command!r}")
        model, handler = REPORT_COMMANDS[command]
        if req.seed is not None and "seed" in model.model_fields:
            entry.setdefault("seed", req.seed)
        try:
            sub_request = model(**entry)
        except ValidationError as exc:
            raise UnsupportedParameters(
                f"bad arguments for {command}: {exc.error_count()} "
                f"validation errors") from exc
        response = handler(state, sub_request)
        body = response.payload()
        body.pop("schema", None)
        body["command"] = command
        results.append(body)
        all_pass = all_pass and _verdict(body)
    return ReportResponse(results=results, passed=all_pass)


def _verdict(body) -> bool:
    """True unless some nested verification flag reports a failure."""
    if isinstance(body, dict):
        for key, value in body.items():
            if key == "pass" and value is False:
                return False
            if key == "failures" and value:
                return False
            if key == "order_matches" and value is False:
                return False
            if not _verdict(value):
                return False
        return True
    if isinstance(body, list):
        return all(_verdict(item) for item in body)
    return True


def create_app() -> FastAPI:
    app = FastAPI(title="qrgroups", version="0.1.0",
                  description="Exact verification service for quasi-random "
                              "finite groups")
    state = ServiceState()

    @app.exception_handler(QRGroupsError)
    def _domain_error(_: Request, exc: QRGroupsError) -> JSONResponse:
        status = 413 if exc.category == "resource" else 400
        body = ErrorResponse(error=type(exc).__name__, category=exc.category,
                             detail=str(exc))
        return JSONResponse(status_code=status, content=body.model_dump())

    @app.exception_handler(ValueError)
    def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        body = ErrorResponse(error=type(exc).__name__, category="usage",
                             detail=str(exc))
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/group")
    def group(req: GroupRequest) -> JSONResponse:
        return JSONResponse(handle_group(state, req).payload())

    @app.post("/degrees")
    def degrees(req: DegreesRequest) -> JSONResponse:
        return JSONResponse(handle_degrees(state, req).payload())

    @app.post("/bounds")
    def bounds(req: BoundsRequest) -> JSONResponse:
        return JSONResponse(handle_bounds(state, req).payload())

    @app.post("/mixing")
    def mixing(req: MixingRequest) -> JSONResponse:
        return JSONResponse(handle_mixing(state, req).payload())

    @app.post("/pf")
    def pf(req: PfRequest) -> JSONResponse:
        return JSONResponse(handle_pf(state, req).payload())

    @app.post("/tree")
    def tree(req: TreeRequest) -> JSONResponse:
        return JSONResponse(handle_tree(state, req).payload())

    @app.post("/report")
    def report(req: ReportRequest) -> JSONResponse:
        return JSONResponse(handle_report(state, req).payload())

    return app
