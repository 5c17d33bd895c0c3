"""Command-line front end.

A thin client over the same handler layer the HTTP service mounts: the
CLI parses flags into the shared request models, calls the handlers
in-process, and deals with files.  Exit status is 0 iff every requested
check passed, 1 when a check failed, and 2 on malformed input or budget
overruns (with a machine-readable error JSON on stderr).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetError, CertificateError, InputError, ParseError
from .pointio import dump_json, emit_pointset, parse_pointset, sidecar_path, write_json
from .service import handlers
from .service.models import (
    AnalyzeRequest,
    CertifyRequest,
    GenerateRequest,
    KDistanceRequest,
    PointSetModel,
    ReproduceRequest,
    SchuetteRequest,
    WeakEpsRequest,
)


@dataclass
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    in_path: Path | None = None
    out_path: Path | None = None
    seed: int = 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neardist",
        description="Separated point sets, nearly-equal distance counts, and their bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a construction and its metadata sidecar")
    gen.add_argument("--construction", required=True)
    gen.add_argument("--d", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--e", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--q", type=int)
    gen.add_argument("--eps1", type=float)
    gen.add_argument("--t1", type=float)
    gen.add_argument("--t2", type=float)
    gen.add_argument("--scale", type=float)
    gen.add_argument("--ratio", type=float)
    gen.add_argument("--edge", type=float)
    gen.add_argument("--in", dest="in_path", help="base point-set file (stacked)")
    gen.add_argument("--out", required=True, help="point-set file to write")

    ana = sub.add_parser("analyze", help="window coverage vs a Turán bound")
    ana.add_argument("--in", dest="in_path", required=True)
    ana.add_argument("--k", type=int, required=True)
    ana.add_argument("--length", type=float, help="additive window length")
    ana.add_argument("--eps", type=float, help="multiplicative window ratio")
    ana.add_argument("--bound", choices=["turan_m", "turan_dk"])
    ana.add_argument("--out")

    ver = sub.add_parser("verify", help="structural checks and certificates")
    ver.add_argument("--in", dest="in_path", required=True)
    ver.add_argument(
        "--check", required=True, choices=["kdist", "weak", "schuette", "certify"]
    )
    ver.add_argument("--k", type=int)
    ver.add_argument("--eps", type=float)
    ver.add_argument("--rel-tol", type=float, default=1e-9)
    ver.add_argument("--D", dest="big_d", type=float, default=10.0)
    ver.add_argument("--out")

    tur = sub.add_parser("turan", help="print the Turán number T(n, s)")
    tur.add_argument("--n", type=int, required=True)
    tur.add_argument("--s", type=int, required=True)

    mdk = sub.add_parser("mdk", help="print m(d, k) and a maximizing witness")
    mdk.add_argument("--d", type=int, required=True)
    mdk.add_argument("--k", type=int, required=True)

    rep = sub.add_parser("reproduce", help="run the acceptance table")
    rep.add_argument("--out", help="markdown summary file")
    rep.add_argument("--seed", type=int, default=0)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "in_path", "out") and value is not None
    }
    in_path = getattr(args, "in_path", None)
    out_path = getattr(args, "out", None)
    return RunConfig(
        command=args.command,
        parameters=params,
        in_path=Path(in_path) if in_path else None,
        out_path=Path(out_path) if out_path else None,
        seed=int(getattr(args, "seed", 0) or 0),
    )


def _emit(text: str, out_path: Path | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        out_path.write_text(text)


def _run_generate(config: RunConfig) -> int:
    p = config.parameters
    base = None
    if config.in_path is not None:
        base = PointSetModel.from_core(parse_pointset(config.in_path))
    req = GenerateRequest(
        construction=p["construction"],
        d=p.get("d"),
        k=p.get("k"),
        n=p.get("n"),
        e=p.get("e"),
        p=p.get("p"),
        q=p.get("q"),
        eps1=p.get("eps1"),
        t1=p.get("t1"),
        t2=p.get("t2"),
        scale=p.get("scale"),
        ratio=p.get("ratio"),
        edge=p.get("edge"),
        base=base,
    )
    resp = handlers.generate(req)
    out = config.out_path
    emit_pointset(resp.pointset.to_core(), out)
    write_json(resp.metadata, sidecar_path(out))
    for warning in resp.metadata.get("warnings", []):
        sys.stderr.write(f"warning: {warning}\n")
    sys.stdout.write(f"wrote {out} and {sidecar_path(out)}\n")
    return 0


def _run_analyze(config: RunConfig) -> int:
    p = config.parameters
    length, eps = p.get("length"), p.get("eps")
    if length is None and eps is None:
        length = 1.0
    bound = p.get("bound") or ("turan_m" if length is not None else "turan_dk")
    ps = PointSetModel.from_core(parse_pointset(config.in_path))
    resp = handlers.analyze(
        AnalyzeRequest(pointset=ps, k=p["k"], length=length, eps=eps, bound=bound)
    )
    _emit(dump_json(resp.model_dump()), config.out_path)
    return 0


def _run_verify(config: RunConfig) -> int:
    p = config.parameters
    check = p["check"]
    ps = PointSetModel.from_core(parse_pointset(config.in_path))

    if check == "kdist":
        if "k" not in p:
            raise InputError("--check kdist needs --k")
        resp = handlers.verify_kdistance(
            KDistanceRequest(pointset=ps, k=p["k"], rel_tol=p.get("rel_tol", 1e-9))
        )
        ok = resp.ok
    elif check == "weak":
        if "eps" not in p:
            raise InputError("--check weak needs --eps")
        resp = handlers.verify_weak(WeakEpsRequest(pointset=ps, eps=p["eps"]))
        ok = resp.window_count <= p["k"] if "k" in p else True
    elif check == "schuette":
        resp = handlers.verify_schuette(SchuetteRequest(pointset=ps))
        ok = resp.ok
    else:  # certify
        if "k" not in p or "eps" not in p:
            raise InputError("--check certify needs --k and --eps")
        resp = handlers.certify(
            CertifyRequest(pointset=ps, k=p["k"], eps=p["eps"], big_d=p.get("big_d", 10.0))
        )
        ok = resp.ok

    verdict = {"check": check, "ok": bool(ok)}
    verdict.update(resp.model_dump())
    verdict["ok"] = bool(ok)
    _emit(dump_json(verdict), config.out_path)
    return 0 if ok else 1


def _run_reproduce(config: RunConfig) -> int:
    resp = handlers.reproduce(ReproduceRequest(seed=config.seed))
    if config.out_path is None:
        sys.stdout.write(resp.markdown)
    else:
        for row in resp.rows:
            status = "PASS" if row.passed else "FAIL"
            sys.stdout.write(f"{status} criterion {row.id}: {row.title}\n")
        sys.stdout.write(f"overall: {'PASS' if resp.all_passed else 'FAIL'}\n")
        config.out_path.write_text(resp.markdown)
        sys.stdout.write(f"wrote {config.out_path}\n")
    return 0 if resp.all_passed else 1


def run(config: RunConfig) -> int:
    """Execute one validated command; returns the process exit status."""
    if config.command == "generate":
        return _run_generate(config)
    if config.command == "analyze":
        return _run_analyze(config)
    if config.command == "verify":
        return _run_verify(config)
    if config.command == "turan":
        resp = handlers.turan(config.parameters["n"], config.parameters["s"])
        sys.stdout.write(f"{resp.value}\n")
        return 0
    if config.command == "mdk":
        resp = handlers.mdk(config.parameters["d"], config.parameters["k"])
        sys.stdout.write(f"{resp.value}\n")
        sys.stdout.write(dump_json(resp.witness.model_dump()))
        return 0
    if config.command == "reproduce":
        return _run_reproduce(config)
    if config.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=config.parameters["host"], port=config.parameters["port"])
        return 0
    raise InputError(f"unknown command {config.command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        return run(config)
    except (InputError, ParseError, BudgetError, CertificateError, OSError) as exc:
        sys.stderr.write(
            dump_json({"error": {"category": type(exc).__name__, "message": str(exc)}})
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
