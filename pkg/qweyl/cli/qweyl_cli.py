"""
Command-line entry point: build algebras, compute local Weyl modules and
their characters, check the tensor product theorem, run the acceptance suites.

    python -m qweyl.cli.qweyl_cli local-weyl --n 2 --coeff poly:2 --lambda 1,0

Artifacts go to stdout (or --out); logs and error JSON go to stderr.
Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from qweyl.core.config import settings
from qweyl.core.errors import INVALID_INPUT, VERIFICATION_FAILED, InvalidJobError, QWeylError
from qweyl.core.logging import configure_logging
from qweyl.data_access.artifacts import character_csv, dump_algebra, module_report, to_json, write_artifact
from qweyl.ingestion.job_loader import job_weights, load_coeff, load_psi, parse_lambda
from qweyl.models import SUITES, JobSpec
from qweyl.services.liesuper import build_q, current_algebra
from qweyl.services.suites import run_suites
from qweyl.services.tensor import verify_tensor_theorem
from qweyl.services.weylmod import irreducible_quotient, local_weyl

logger = logging.getLogger("qweyl.cli")


def _parse_lambda(value: str) -> List[int]:
    try:
        return parse_lambda(value)
    except InvalidJobError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="Rank n of q(n) (n >= 2).")
    common.add_argument("--coeff", default=None, help="Coefficient algebra: C, poly:N or sum:X+Y.")
    common.add_argument("--lambda", dest="lam", type=_parse_lambda, default=None, help="Highest weight, e.g. 1,0.")
    common.add_argument("--lambda2", dest="lam2", type=_parse_lambda, default=None, help="Second highest weight.")
    common.add_argument("--point", type=int, default=0, help="Point of A supporting --lambda.")
    common.add_argument("--point2", type=int, default=None, help="Point of A supporting --lambda2.")
    common.add_argument("--psi", default=None, help="JSON file with the n x dim(A) matrix of psi.")
    common.add_argument("--psi2", default=None, help="JSON file with the second map weight.")
    common.add_argument("--depth-cap", type=int, default=None, help="Largest Verma depth tried.")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized checks.")
    common.add_argument("--out", default=None, help="Write the artifact here instead of stdout.")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="csv only applies to characters.")
    common.add_argument("--log-level", default=None, help="Logging level (default from settings).")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="qweyl", description="Exact computations with q(n) Weyl modules.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build-algebra", parents=[common], help="Dump q(n) or q(n) (x) A.")
    sub.add_parser("local-weyl", parents=[common], help="Character and module of W_loc(psi).")
    sub.add_parser("irreducible", parents=[common], help="Character of the irreducible quotient.")
    sub.add_parser("tensor-check", parents=[common], help="Check the tensor product theorem for two weights.")
    verify = sub.add_parser("verify", parents=[common], help="Run the acceptance suites.")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    verify.add_argument("--jobs", type=int, default=None, help="Worker processes for independent suites.")
    serve = sub.add_parser("serve", parents=[common], help="Serve the HTTP API with uvicorn.")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _job_from_args(args: argparse.Namespace) -> JobSpec:
    return JobSpec(
        command=args.command,
        n=args.n if args.n is not None else 2,
        coeff=args.coeff or "C",
        lam=args.lam,
        lam2=args.lam2,
        psi=load_psi(args.psi),
        psi2=load_psi(args.psi2),
        point=args.point,
        point2=args.point2,
        depth_cap=args.depth_cap,
        seed=args.seed,
        out=args.out,
        format=args.format,
        suite=getattr(args, "suite", "all"),
        jobs=getattr(args, "jobs", None) or settings.jobs,
        n_values=[args.n] if args.command == "verify" and args.n is not None else None,
    )


def _emit_module(job: JobSpec, report) -> None:
    if job.format == "csv":
        write_artifact(character_csv(report.character), job.out)
    else:
        write_artifact(to_json(report), job.out)


def run(job: JobSpec, coeff_given: bool = True) -> int:
    """Execute one job; returns the process exit code."""
    previous = settings.depth_cap
    if job.depth_cap is not None:
        settings.depth_cap = job.depth_cap
    try:
        return _dispatch(job, coeff_given)
    finally:
        settings.depth_cap = previous


def _dispatch(job: JobSpec, coeff_given: bool) -> int:
    if job.command == "build-algebra":
        q, _ = build_q(job.n)
        algebra = current_algebra(q, load_coeff(job.coeff)) if coeff_given else q
        write_artifact(to_json(dump_algebra(algebra)), job.out)
        return 0

    if job.command == "local-weyl":
        (psi,) = job_weights(job)[:1]
        _emit_module(job, module_report(local_weyl(psi), include_module=True))
        return 0

    if job.command == "irreducible":
        (psi,) = job_weights(job)[:1]
        _emit_module(job, module_report(irreducible_quotient(local_weyl(psi))))
        return 0

    if job.command == "tensor-check":
        weights = job_weights(job)
        if len(weights) != 2:
            raise InvalidJobError("tensor-check needs --lambda2 or --psi2")
        write_artifact(to_json(verify_tensor_theorem(*weights, seed=job.seed)), job.out)
        return 0

    if job.command == "verify":
        results = run_suites([job.suite], jobs=job.jobs, seed=job.seed, n_values=job.n_values)
        write_artifact(to_json(results), job.out)
        return 0 if all(r.passed for r in results) else VERIFICATION_FAILED

    raise InvalidJobError(f"Unknown command {job.command!r}")


def _report_error(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("qweyl.main:app", host=args.host, port=args.port)
        return 0

    try:
        job = _job_from_args(args)
        return run(job, coeff_given=args.coeff is not None)
    except ValidationError as exc:
        message = "; ".join(err["msg"] for err in exc.errors())
        _report_error({"error": "InvalidJobError", "message": message, "exit_code": INVALID_INPUT})
        return INVALID_INPUT
    except QWeylError as exc:
        logger.debug("job failed", exc_info=True)
        _report_error(exc.to_payload())
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
