"""Request handlers shared by the HTTP app and the CLI.

Each handler maps a request model to a response model with no transport
concerns, so the CLI can call them in-process and the FastAPI app can
mount them as endpoints.
"""

from __future__ import annotations

from .. import reproduce as reproduce_mod
from ..constructions import (
    MdkWitness,
    ScaleCascade,
    generate_construction,
    known_two_distance_set,
    maximize_m,
)
from ..errors import InputError
from ..geometry import max_min_ratio
from ..spectrum import spectrum_report, turan_number
from ..verification import (
    certify_decomposition,
    check_schuette,
    md_table,
    schuette_bound,
    verify_k_distance_set,
    verify_weak_eps_k,
)
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    CertifyRequest,
    CertifyResponse,
    ClusterModel,
    GenerateRequest,
    GenerateResponse,
    HistogramBin,
    KDistanceRequest,
    KDistanceResponse,
    MdkResponse,
    MdTableResponse,
    PointSetModel,
    ReproduceRequest,
    ReproduceResponse,
    ReproduceRow,
    SchuetteRequest,
    SchuetteResponse,
    TreeNodeModel,
    TuranResponse,
    WeakEpsRequest,
    WeakEpsResponse,
    WitnessModel,
)


def generate(req: GenerateRequest) -> GenerateResponse:
    params: dict = {}
    if req.construction == "regular_simplex":
        if req.d is None:
            raise InputError("regular_simplex needs d")
        params = {"d": req.d, "edge": req.edge if req.edge is not None else (req.scale or 1.0)}
    elif req.construction == "binomial_simplex":
        if req.e is None or req.p is None:
            raise InputError("binomial_simplex needs e and p")
        params = {"e": req.e, "p": req.p, "lam": req.scale or 1.0}
    elif req.construction == "progression":
        if req.q is None:
            raise InputError("progression needs q")
        params = {"q": req.q, "mu": req.scale or 1.0}
    elif req.construction == "product":
        if req.d is None or req.k is None:
            raise InputError("product needs d and k")
        witness: MdkWitness = maximize_m(req.d, req.k).witness
        cascade = ScaleCascade(ratio=req.ratio or 1e4, base=req.scale or 1.0)
        params = {"witness": witness, "cascade": cascade}
    elif req.construction == "stacked":
        if req.n is None:
            raise InputError("stacked needs n")
        if req.base is not None:
            base = req.base.to_core()
        elif req.d is not None:
            base = known_two_distance_set(req.d - 1)
        else:
            raise InputError("stacked needs either a base point set or d")
        params = {
            "base": base,
            "n": req.n,
            "scale": req.scale if req.scale is not None else float(req.n * req.n),
        }
    elif req.construction == "simplex_sum":
        if req.d is None or req.k is None:
            raise InputError("simplex_sum needs d and k")
        params = {"d": req.d, "k": req.k, "eps1": req.eps1 if req.eps1 is not None else 0.01}
    elif req.construction == "clustered_turan":
        if req.d is None or req.k is None or req.n is None:
            raise InputError("clustered_turan needs d, k and n")
        params = {
            "d": req.d,
            "k": req.k,
            "n": req.n,
            "eps1": req.eps1 if req.eps1 is not None else 0.01,
        }
    elif req.construction == "columns":
        if req.n is None:
            raise InputError("columns needs n")
        params = {"n": req.n}
        if req.t1 is not None:
            params["t1"] = req.t1
        if req.t2 is not None:
            params["t2"] = req.t2
    elif req.construction == "two_distance":
        if req.d is None:
            raise InputError("two_distance needs d")
        params = {"d": req.d}
    else:  # unreachable behind the Literal, kept for direct callers
        raise InputError(f"unknown construction {req.construction!r}")

    ps, meta = generate_construction(req.construction, **params)
    return GenerateResponse(pointset=PointSetModel.from_core(ps), metadata=meta)


def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    report = spectrum_report(
        req.pointset.to_core(),
        req.k,
        length=req.length,
        eps=req.eps,
        bound=req.bound,
    )
    data = report.as_dict()
    data["histogram"] = [HistogramBin(**h) for h in data["histogram"]]
    return AnalyzeResponse(**data)


def verify_kdistance(req: KDistanceRequest) -> KDistanceResponse:
    ok, clusters = verify_k_distance_set(req.pointset.to_core(), req.k, req.rel_tol)
    return KDistanceResponse(
        ok=ok,
        cluster_count=len(clusters),
        clusters=[
            ClusterModel(lo=c.lo, hi=c.hi, count=c.count, rel_width=c.rel_width)
            for c in clusters.clusters
        ],
    )


def verify_weak(req: WeakEpsRequest) -> WeakEpsResponse:
    cover = verify_weak_eps_k(req.pointset.to_core(), req.eps)
    return WeakEpsResponse(window_count=cover.window_count, anchors=list(cover.anchors))


def verify_schuette(req: SchuetteRequest) -> SchuetteResponse:
    ps = req.pointset.to_core()
    return SchuetteResponse(
        ok=check_schuette(ps),
        ratio=max_min_ratio(ps),
        bound=schuette_bound(ps.dim),
    )


def certify(req: CertifyRequest) -> CertifyResponse:
    ps = req.pointset.to_core()
    d = req.d if req.d is not None else ps.dim
    tree = certify_decomposition(ps, d, req.k, req.eps, D=req.big_d)
    return CertifyResponse(
        ok=not tree.has_failure(),
        root_bound=tree.bound,
        tree=TreeNodeModel(**tree.as_dict()),
    )


def turan(n: int, s: int) -> TuranResponse:
    return TuranResponse(n=n, s=s, value=turan_number(n, s))


def mdk(d: int, k: int) -> MdkResponse:
    value, witness = maximize_m(d, k)
    return MdkResponse(d=d, k=k, value=value, witness=WitnessModel(**witness.as_dict()))


def md_bounds(d: int) -> MdTableResponse:
    bounds = md_table(d)
    return MdTableResponse(d=d, value=bounds.value, lower=bounds.lower, upper=bounds.upper)


def reproduce(req: ReproduceRequest) -> ReproduceResponse:
    result = reproduce_mod.run_all(seed=req.seed)
    return ReproduceResponse(
        seed=result.seed,
        all_passed=result.all_passed,
        rows=[
            ReproduceRow(id=r.cid, title=r.title, passed=r.passed, detail=r.detail)
            for r in result.rows
        ],
        markdown=result.to_markdown(),
    )
