"""Command-line front end.

    cstar-fc check --config run.json [--json] [--out report.json] [--seed N] [--samples N]
    cstar-fc solve --config run.json [--x0 V] [--tol E] [--json] [--out report.json] [--force]

Exit codes: 0 when every executed check or solve passed, 1 when any failed,
2 when the run could not start (bad arguments or configuration).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import contraction as ct
from . import solver as so
from . import space as sp
from .algebra import Tolerance
from .errors import ConfigError, DomainEscape, TailNotConverged, VerificationError
from .families import build_family

CHECK_ALIASES = {"control_admissibility": sp.CONTROL_ADMISSIBLE}
HYPOTHESES = (ct.CONTRACTIVE, ct.NORM_BOUND, ct.SUPLIM, ct.CONTROL_LIMITS)
KNOWN_CHECKS = set(sp.AXIOM_IDS) | {sp.EXTENDED} | set(HYPOTHESES)
MAPS = {"scale", "identity"}


@dataclass
class RunConfig:
    family: str
    family_params: dict = field(default_factory=dict)
    contraction: Optional[dict] = None
    checks: list = field(default_factory=lambda: ["all"])
    n_samples: int = 1000
    seed: int = 0
    tol: float = 1e-9
    m_max: int = 64
    i_max: int = 64
    n_max: int = 64
    max_iter: int = so.MAX_ITER
    x0: Optional[list] = None
    limit_point: Optional[list] = None
    starts: Optional[list] = None
    bound_n: int = 6
    bound_q: int = 6
    force: bool = False

    @classmethod
    def from_dict(cls, doc) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ConfigError(f"unknown config field(s): {unknown}")
        if "family" not in doc:
            raise ConfigError("field 'family' is required")
        cfg = cls(**doc)
        cfg.validate()
        return cfg

    def validate(self):
        def need_int(name, lo):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < lo:
                raise ConfigError(f"field {name!r} must be an integer >= {lo}, got {v!r}")

        if not isinstance(self.family, str):
            raise ConfigError("field 'family' must be a string")
        if not isinstance(self.family_params, dict):
            raise ConfigError("field 'family_params' must be an object")
        for name, lo in (("n_samples", 1), ("seed", 0), ("m_max", 1), ("i_max", 2), ("n_max", 10),
                         ("max_iter", 1), ("bound_n", 1), ("bound_q", 1)):
            need_int(name, lo)
        if isinstance(self.tol, bool) or not isinstance(self.tol, (int, float)) or not self.tol > 0:
            raise ConfigError(f"field 'tol' must be a positive number, got {self.tol!r}")
        if isinstance(self.checks, str):
            self.checks = [self.checks]
        if not isinstance(self.checks, list) or not self.checks:
            raise ConfigError("field 'checks' must be a nonempty list of check names")
        for c in self.checks:
            if c != "all" and c != "hypotheses" and CHECK_ALIASES.get(c, c) not in KNOWN_CHECKS:
                raise ConfigError(f"field 'checks': unknown check {c!r}")
        if self.contraction is not None:
            if not isinstance(self.contraction, dict):
                raise ConfigError("field 'contraction' must be an object")
            bad = set(self.contraction) - {"map", "factor", "P", "Q", "R"}
            if bad:
                raise ConfigError(f"field 'contraction': unknown key(s) {sorted(bad)}")
            if self.contraction.get("map", "scale") not in MAPS:
                raise ConfigError(f"field 'contraction.map' must be one of {sorted(MAPS)}")
        for name in ("x0", "limit_point"):
            v = getattr(self, name)
            if v is not None:
                setattr(self, name, _point(v, name))
        if self.starts is not None:
            if not isinstance(self.starts, list) or not self.starts:
                raise ConfigError("field 'starts' must be a nonempty list of points")
            self.starts = [_point(s, "starts") for s in self.starts]

    def expanded_checks(self, has_contraction: bool) -> list:
        out = []
        for c in self.checks:
            if c == "all":
                names = list(sp.AXIOM_IDS)
            elif c == "hypotheses":
                names = list(HYPOTHESES)
            else:
                names = [CHECK_ALIASES.get(c, c)]
            for n in names:
                if n in HYPOTHESES and not has_contraction:
                    raise ConfigError(f"check {n!r} needs a contraction, none configured")
                if n not in out:
                    out.append(n)
        return out


def _point(v, name):
    try:
        return list(sp.as_point(v))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field {name!r}: {exc}") from exc


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    try:
        return RunConfig.from_dict(doc)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def _element(space, entries, name):
    try:
        return space.algebra.element(entries)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field 'contraction.{name}': {exc}") from exc


def build_contraction(cfg: RunConfig, space, default):
    """The family default spec, with any configured map/coefficients overriding it."""
    c = cfg.contraction
    if c is None:
        return default
    if "map" not in c and default is None:
        raise ConfigError(f"family {cfg.family!r} has no default map; set 'contraction.map'")
    if "map" in c:
        if c["map"] == "identity":
            fn = ct.identity_map
            name = "identity"
        else:
            factor = c.get("factor")
            if isinstance(factor, bool) or not isinstance(factor, (int, float)):
                raise ConfigError("field 'contraction.factor' must be a number for map 'scale'")
            fn = ct.scale_map(float(factor))
            name = f"scale({factor})"
    else:
        fn, name = default.map, default.name
    coeffs = {}
    for key in ("P", "Q", "R"):
        if key in c:
            coeffs[key] = _element(space, c[key], key)
        elif default is not None:
            coeffs[key] = getattr(default, key)
        else:
            coeffs[key] = space.algebra.zero()
    return ct.ContractionSpec(fn, coeffs["P"], coeffs["Q"], coeffs["R"], domain=space.contains, name=name)


def _sanitize(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_sanitize(report), indent=2, sort_keys=True, allow_nan=False)


def _error_entry(check_id, exc):
    return {"id": check_id, "passed": False, "computed_values": {}, "witnesses": [], "error": str(exc)}


def _run_hypothesis(name, space, spec, cfg, x0):
    tol = Tolerance(cfg.tol)
    try:
        if name == ct.CONTRACTIVE:
            rep = ct.verify_contraction_inequality(space, spec, cfg.n_samples, cfg.seed, tol)
        elif name == ct.NORM_BOUND:
            rep = ct.coefficient_norm_condition(spec)
        elif name == ct.SUPLIM:
            rep = ct.verify_suplim(space, spec, x0, cfg.m_max, cfg.i_max, tol)
        else:
            limit_point = cfg.limit_point if cfg.limit_point is not None else x0
            rep = ct.verify_control_limits(space, spec, limit_point, x0, cfg.n_max, tol)
    except (TailNotConverged, DomainEscape) as exc:
        return _error_entry(name, exc)
    return rep.to_dict()


def _default_x0(cfg, space):
    if cfg.x0 is not None:
        return cfg.x0
    if "default_x0" in space.metadata:
        return list(space.metadata["default_x0"])
    raise ConfigError("field 'x0' is required for this run")


def run_check(cfg: RunConfig) -> tuple[int, dict]:
    space, default = build_family(cfg.family, cfg.family_params)
    spec = build_contraction(cfg, space, default)
    names = cfg.expanded_checks(spec is not None)
    tol = Tolerance(cfg.tol)
    x0 = _default_x0(cfg, space) if any(n in (ct.SUPLIM, ct.CONTROL_LIMITS) for n in names) else None
    checks = []
    for name in names:
        if name in sp.CHECKS:
            checks.append(sp.CHECKS[name](space, cfg.n_samples, cfg.seed, tol).to_dict())
        elif name == sp.EXTENDED:
            w = sp.refute_extended(space, cfg.n_samples, cfg.seed, tol)
            checks.append({
                "id": sp.EXTENDED,
                "passed": w is None,
                "computed_values": {},
                "witnesses": [] if w is None else [w.to_dict()],
            })
        else:
            checks.append(_run_hypothesis(name, space, spec, cfg, x0))
    report = {"config_echo": asdict(cfg), "space": _space_meta(space), "checks": checks, "solve": None}
    code = 0 if all(c["passed"] for c in checks) else 1
    return code, report


def _space_meta(space):
    return {"name": space.name, "algebra": {"kind": space.algebra.kind, "dim": space.algebra.dim},
            "metadata": dict(space.metadata)}


def run_solve(cfg: RunConfig) -> tuple[int, dict]:
    space, default = build_family(cfg.family, cfg.family_params)
    spec = build_contraction(cfg, space, default)
    if spec is None:
        raise ConfigError(f"family {cfg.family!r} has no default contraction; set 'contraction'")
    tol = Tolerance(cfg.tol)
    x0 = _default_x0(cfg, space)
    checks = [_run_hypothesis(name, space, spec, cfg, x0) for name in HYPOTHESES]
    hypotheses_ok = all(c["passed"] for c in checks)
    solve = {"attempted": False}
    ok = hypotheses_ok
    if hypotheses_ok or cfg.force:
        solve["attempted"] = True
        try:
            fp = so.picard(space, spec, x0, tol, cfg.max_iter)
        except DomainEscape as exc:
            solve["error"] = str(exc)
            ok = False
        else:
            solve.update(fp.to_dict())
            ok = ok and fp.converged
            s2 = ct.contraction_ratio(spec)
            if s2 < 1.0:
                table = [
                    so.cauchy_bound_check(space, spec, x0, n, q, tol).to_dict()
                    for n in range(1, cfg.bound_n + 1)
                    for q in range(1, cfg.bound_q + 1)
                ]
                solve["bound_checks"] = table
                ok = ok and all(row["dominated"] for row in table)
            if cfg.starts is not None:
                uq = so.uniqueness_probe(space, spec, cfg.starts, tol, cfg.max_iter)
                solve["uniqueness"] = uq.to_dict()
                ok = ok and uq.passed
    report = {"config_echo": asdict(cfg), "space": _space_meta(space), "checks": checks, "solve": solve}
    return (0 if ok else 1), report


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def summarize(report: dict) -> str:
    """Human-readable summary; every number printed comes from ``report``."""
    lines = [f"space {report['space']['name']} ({report['space']['algebra']['kind']}, "
             f"dim {report['space']['algebra']['dim']})"]
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        values = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(c.get("computed_values", {}).items()))
        lines.append(f"[{status}] {c['id']} {values}".rstrip())
        if "error" in c:
            lines.append(f"    error: {c['error']}")
        for w in c.get("witnesses", [])[:3]:
            pts = ", ".join("(" + ", ".join(_fmt(x) for x in p) + ")" for p in w["points"])
            rel = f" {w['relation']}" if w.get("relation") else ""
            lines.append(f"    witness {pts} margin={_fmt(w['margin'])}{rel}")
    solve = report.get("solve")
    if solve is not None:
        if not solve.get("attempted"):
            lines.append("solve: skipped (hypotheses failed; use --force to run anyway)")
        elif "error" in solve:
            lines.append(f"solve: error: {solve['error']}")
        else:
            pt = ", ".join(_fmt(x) for x in solve["fixed_point"])
            lines.append(
                f"solve: converged={solve['converged']} fixed_point=({pt}) "
                f"iterations={solve['iterations']} residual={_fmt(solve['residual'])}"
            )
            for row in solve.get("bound_checks", []):
                lines.append(
                    f"    bound n={row['n']} q={row['q']} observed={_fmt(row['observed'])} "
                    f"bound={_fmt(row['bound'])} dominated={row['dominated']}"
                )
            uq = solve.get("uniqueness")
            if uq is not None:
                lines.append(f"    uniqueness passed={uq['passed']} spread={_fmt(uq['spread'])}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cstar-fc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify space axioms and contraction hypotheses")
    check.add_argument("--config", required=True)
    check.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")
    check.add_argument("--out", help="also write the JSON report here")
    check.add_argument("--seed", type=int)
    check.add_argument("--samples", type=int)

    solve = sub.add_parser("solve", help="check hypotheses, then run the Picard iteration")
    solve.add_argument("--config", required=True)
    solve.add_argument("--x0", type=float, nargs="+")
    solve.add_argument("--tol", type=float)
    solve.add_argument("--json", action="store_true")
    solve.add_argument("--out")
    solve.add_argument("--force", action="store_true", help="solve even if a hypothesis fails")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "check":
            if args.seed is not None:
                cfg.seed = args.seed
            if args.samples is not None:
                cfg.n_samples = args.samples
            cfg.validate()
            code, report = run_check(cfg)
        else:
            if args.x0 is not None:
                cfg.x0 = args.x0
            if args.tol is not None:
                cfg.tol = args.tol
            cfg.force = cfg.force or args.force
            cfg.validate()
            code, report = run_solve(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text if args.json else summarize(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
