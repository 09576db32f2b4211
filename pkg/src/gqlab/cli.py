"""Command-line surface: ingest problem/series files, dispatch to the
library, and emit deterministic JSON (or CSV coefficient tables).

Exit codes: 0 success (including INCONCLUSIVE verdicts, which are data,
not errors), 1 identity-suite failure, 2 bad input.  All defaults live in
``Config`` and can be overridden by GQLAB_* environment variables and
then by flags.
"""

from __future__ import annotations

import argparse
import cmath
import datetime
import json
import math
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import charpoly, probe, qcalc, residues
from .cauchy import problem_from_json, residual, solve_cauchy
from .errors import GqlabError, InvalidInputError
from .moments import (
    kernel_series,
    preserves_summability,
    sequence_from_json,
)
from .scalars import scalar_from_json, scalar_to_json
from .series import rational_series, series_from_json


@dataclass(frozen=True)
class Config:
    default_N_t: int = 64
    default_N_z: int = 256
    tol: float = 1e-12
    pole_tol: float = 1e-2
    report_format: str = "json"

    def __post_init__(self):
        if self.tol <= 0 or self.pole_tol <= 0:
            raise InvalidInputError("tolerances must be positive")
        if self.report_format not in ("json", "csv"):
            raise InvalidInputError("report format must be json or csv")


def config_from_env(env=None) -> Config:
    env = os.environ if env is None else env
    kwargs = {}
    if "GQLAB_N_T" in env:
        kwargs["default_N_t"] = int(env["GQLAB_N_T"])
    if "GQLAB_N_Z" in env:
        kwargs["default_N_z"] = int(env["GQLAB_N_Z"])
    if "GQLAB_TOL" in env:
        kwargs["tol"] = float(env["GQLAB_TOL"])
    if "GQLAB_POLE_TOL" in env:
        kwargs["pole_tol"] = float(env["GQLAB_POLE_TOL"])
    if "GQLAB_REPORT_FORMAT" in env:
        kwargs["report_format"] = env["GQLAB_REPORT_FORMAT"]
    return Config(**kwargs)


def _emit(payload, args):
    if args.metadata:
        payload = dict(payload)
        payload["metadata"] = {
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat()
        }
    print(json.dumps(payload, sort_keys=True, indent=2))


def _emit_table(rows, args, header="n,value"):
    print(header)
    for n, v in rows:
        print(f"{n},{v}")


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc


def _cmd_identities(args, config):
    rows = qcalc.identity_grid(terms=args.terms)
    summary = {}
    for row in rows:
        rec = summary.setdefault(row["identity"], {"max_gap": 0.0, "points": 0})
        rec["points"] += 1
        rec["max_gap"] = max(rec["max_gap"], row["gap"])
    ok = all(rec["max_gap"] <= args.tol for rec in summary.values())
    payload = {"identities": summary, "tol": args.tol, "pass": ok}
    _emit(payload, args)
    return 0 if ok else 1


def _cmd_kernel(args, config):
    try:
        spec = json.loads(args.m)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad sequence spec: {exc}") from exc
    m = sequence_from_json(spec)
    series = kernel_series(m, args.order)
    report = preserves_summability(m, order=args.order, pole_tol=config.pole_tol)
    if config.report_format == "csv":
        _emit_table(
            [(n, scalar_to_json(c)) for n, c in enumerate(series.coeffs)],
            args,
            header="n,kernel_coefficient",
        )
        return 0
    payload = {
        "m": spec,
        "order": args.order,
        "kernel": [scalar_to_json(c) for c in series.coeffs[: min(args.order, 16) + 1]],
        "preserves": report.to_json(),
    }
    _emit(payload, args)
    return 0


def _bad_dirs_from_problem(raw, flag_value):
    if flag_value:
        return [float(x) for x in flag_value.split(",")]
    if isinstance(raw, dict) and "phi_bad_dirs" in raw:
        return [float(x) for x in raw["phi_bad_dirs"]]
    dirs = []
    for entry in raw.get("initial", ()):
        if isinstance(entry, dict) and "denom" in entry:
            den = [complex(scalar_from_json(c)) for c in entry["denom"]]
            coeffs = np.array(den)
            if np.max(np.abs(coeffs)) == 0:
                continue
            roots = np.roots(coeffs[::-1]) if len(coeffs) > 1 else []
            for r in roots:
                dirs.append(float(cmath.phase(complex(r))) % (2.0 * math.pi))
    out = []
    for d in sorted(dirs):
        if not out or abs(d - out[-1]) > 1e-9:
            out.append(d)
    return out


def _cmd_solve(args, config):
    raw = _load_json(args.problem)
    problem = problem_from_json(raw)
    solution = solve_cauchy(problem)
    trace = solution.boundary_trace()
    if config.report_format == "csv":
        _emit_table(
            [(n, scalar_to_json(c)) for n, c in enumerate(trace.coeffs)],
            args,
            header="n,boundary_coefficient",
        )
        return 0
    payload = {
        "N_t": problem.N_t,
        "N_z": problem.N_z,
        "z_order": solution.series.n_z,
        "valid_z": list(solution.valid_z),
        "boundary_trace": [scalar_to_json(c) for c in trace.coeffs],
        "residual": residual(problem, solution),
    }
    _emit(payload, args)
    return 0


def _cmd_roots(args, config):
    raw = _load_json(args.problem)
    problem = problem_from_json(raw)
    npr = charpoly.newton_polygon(problem.P)
    payload = npr.to_json()
    m_order = float(problem.m.order())
    payload["m_order"] = m_order
    payload["gevrey"] = charpoly.predict_gevrey(npr, m_order)
    bad = _bad_dirs_from_problem(raw, args.bad_dirs)
    if npr.tilde_n == 1 and bad is not None:
        report = charpoly.predict_directions(npr, bad)
        payload["k"] = report.k
        payload["nonsummable"] = [
            {"dir": x, "tol": report.tol} for x in report.nonsummable
        ]
        payload["direction_note"] = report.note
    else:
        payload["nonsummable"] = None
        payload["direction_note"] = (
            "multisummable regime: use per-level direction lists"
            if npr.tilde_n > 1
            else "no positive slope: formal solution convergent for order-0 sequences"
        )
    _emit(payload, args)
    return 0


def _cmd_probe(args, config):
    raw = _load_json(args.series)
    u = series_from_json(raw)
    report = probe.classify_summability(u, args.k, args.d)
    _emit(report.to_json(), args)
    return 0


def _cmd_roundtrip(args, config):
    try:
        spec = json.loads(args.phi)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad rational spec: {exc}") from exc
    if not isinstance(spec, dict) or "numer" not in spec or "denom" not in spec:
        raise InvalidInputError("phi spec needs 'numer' and 'denom' coefficient lists")
    numer = [scalar_from_json(c) for c in spec["numer"]]
    denom = [scalar_from_json(c) for c in spec["denom"]]
    q = qcalc.as_q(args.q)
    phi = residues.rational_sample(numer, denom)
    coeffs = rational_series(numer, denom, 80, var="z").to_float().coeffs
    facts = [float(qcalc.q_factorial(n, q)) for n in range(len(coeffs))]
    points = [0.25 * cmath.exp(2j * math.pi * j / 8) for j in range(8)]
    round_err = 0.0
    oracle_err = 0.0
    for z in points:
        psi = residues.AnalyticSample(
            lambda t: residues.q_borel_boundary(phi, q, t, tol=config.tol)
        )
        back = residues.q_laplace_initial(psi, q, z, tol=config.tol)
        round_err = max(round_err, abs(back - phi(z)))
        direct = residues.q_borel_boundary(phi, q, z, tol=config.tol)
        oracle = sum(c * z**n / facts[n] for n, c in enumerate(coeffs))
        oracle_err = max(oracle_err, abs(direct - oracle))
    payload = {
        "q": str(q),
        "points": 8,
        "radius": 0.25,
        "roundtrip_max_error": round_err,
        "oracle_max_error": oracle_err,
        "tol": config.tol,
    }
    _emit(payload, args)
    return 0


def build_parser(config: Config) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gqlab",
        description="q-calculus, moment-Borel transforms and summability diagnostics",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default=None,
        help="report format (csv only for coefficient tables)",
    )
    parser.add_argument(
        "--metadata",
        action="store_true",
        help="attach a generated-at header to the payload",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="run the q-binomial and Heine identity grids")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--terms", type=int, default=200)
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("kernel", help="kernel series and preserves-summability verdict")
    p.add_argument("--m", required=True, help="sequence spec JSON")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("solve", help="solve a Cauchy problem file")
    p.add_argument("--problem", required=True)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("roots", help="Newton polygon, Gevrey and direction report")
    p.add_argument("--problem", required=True)
    p.add_argument("--bad-dirs", default=None, help="comma-separated bad directions")
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("probe", help="classify k-summability of a series file")
    p.add_argument("--series", required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("roundtrip", help="boundary/initial residue round-trip errors")
    p.add_argument("--q", required=True, help="exact rational q in [0, 1)")
    p.add_argument("--phi", required=True, help='rational spec {"numer": [...], "denom": [...]}')
    p.set_defaults(func=_cmd_roundtrip)

    return parser


def main(argv=None) -> int:
    try:
        config = config_from_env()
    except (InvalidInputError, ValueError) as exc:
        print(f"error: bad environment configuration: {exc}", file=sys.stderr)
        return 2
    parser = build_parser(config)
    args = parser.parse_args(argv)
    if args.format:
        config = replace(config, report_format=args.format)
    if getattr(args, "order", None) is None and hasattr(args, "order"):
        args.order = config.default_N_t
    try:
        return args.func(args, config)
    except GqlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
