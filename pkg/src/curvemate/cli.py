"""Command-line front end: curve analysis, mate construction, surface export.

Deterministic by construction: fixed grids, fixed integration constants, 17
significant digits in every artifact, unix line endings. Exit codes: 0
success, 2 configuration error, 3 geometry error, 4 condition error, 5 I/O
error.
"""

from __future__ import annotations

import argparse
import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bertrand import f_bertrand_mates, fit_bertrand, v_bertrand_mate
from .curves import DEFAULT_SAMPLES, CurveSpec, build_curve
from .direction_curves import FrameField, principal_donor
from .errors import (
    ConditionError,
    ConfigError,
    CurvemateError,
    GeometryError,
)
from .frenet import classify, frenet_apparatus
from .spherical import bertrand_from_spherical, fit_sphere, sabban_bertrand
from .surface import bertrand_surface, to_mesh

COMMANDS = ("analyze", "mate", "fbertrand", "surface", "spherical", "donor", "sabban")
FORMATS = ("csv", "obj", "report", "all")

_CURVE_KEYS = {
    "helix": {"a", "b", "length", "samples"},
    "circle": {"r", "length", "samples"},
    "line": {"dx", "dy", "dz", "length", "samples"},
    "sampled": {"file", "order", "samples"},
    "sphere_curve": {"x", "y", "z", "t0", "t1", "samples"},
}

_PARAM_KEYS = {
    "analyze": set(),
    "mate": {"theta", "lam", "field"},
    "fbertrand": {"f", "theta"},
    "surface": {"branch", "t_range", "resolution"},
    "spherical": {"theta0"},
    "donor": set(),
    "sabban": {"a", "theta"},
}


@dataclass
class JobConfig:
    """Fully resolved job: command, curve, parameters and output policy."""

    command: str
    curve: CurveSpec
    parameters: dict = field(default_factory=dict)
    out_dir: Path = Path(".")
    fmt: str = "all"
    tol: float | None = None


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, np.ndarray):
        return " ".join(format(float(v), ".17g") for v in np.ravel(value))
    return str(value)


def write_csv(path: Path, header, columns) -> None:
    lines = [",".join(header)]
    rows = np.column_stack(columns)
    for row in rows:
        lines.append(",".join(format(float(v), ".17g") for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def write_obj(path: Path, mesh) -> None:
    lines = []
    for v in mesh.vertices:
        lines.append("v " + " ".join(format(float(x), ".17g") for x in v))
    for f in mesh.faces:
        lines.append(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}")
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def write_report(path: Path, items) -> None:
    lines = [f"{key} = {_fmt(value)}" for key, value in items]
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def parse_curve_string(text: str, samples=None) -> CurveSpec:
    """Parse 'family:key=value,...' into a CurveSpec (strict keys)."""
    family, _, rest = text.partition(":")
    family = family.strip()
    if family not in _CURVE_KEYS:
        raise ConfigError(f"unknown curve family {family!r}")
    kv = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ConfigError(f"malformed curve parameter {item!r}")
            kv[key.strip()] = value.strip()
    return curve_spec_from_mapping(family, kv, samples=samples)


def curve_spec_from_mapping(family: str, kv: dict, samples=None) -> CurveSpec:
    allowed = _CURVE_KEYS.get(family)
    if allowed is None:
        raise ConfigError(f"unknown curve family {family!r}")
    unknown = set(kv) - allowed
    if unknown:
        raise ConfigError(f"unknown curve keys for {family}: {sorted(unknown)}")

    def need(key):
        if key not in kv:
            raise ConfigError(f"curve family {family} requires {key}")
        return kv[key]

    def as_float(key, default=None):
        raw = kv.get(key, default)
        if raw is None:
            raise ConfigError(f"curve family {family} requires {key}")
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"curve key {key} is not a number: {raw!r}") from None

    n = samples if samples is not None else int(kv.get("samples", DEFAULT_SAMPLES))
    length = float(kv["length"]) if "length" in kv else None
    if family == "helix":
        return CurveSpec.helix(as_float("a"), as_float("b"),
                               length=10.0 if length is None else length, sample_count=n)
    if family == "circle":
        return CurveSpec.circle(as_float("r"), length=length, sample_count=n)
    if family == "line":
        return CurveSpec.line((as_float("dx", "0"), as_float("dy", "0"), as_float("dz", "0")),
                              length=10.0 if length is None else length, sample_count=n)
    if family == "sampled":
        path = Path(need("file"))
        try:
            points = np.loadtxt(path, delimiter=",")
        except OSError:
            raise
        except ValueError as exc:
            raise ConfigError(f"cannot parse sample file {path}: {exc}") from None
        return CurveSpec.sampled(points, interp_order=int(kv.get("order", 5)),
                                 sample_count=n)
    return CurveSpec.sphere_curve((need("x"), need("y"), need("z")),
                                  (as_float("t0"), as_float("t1")), sample_count=n)


def load_config_file(path: Path) -> dict:
    """Read the line-oriented job file: [job]/[curve]/[parameters]/[output]."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    known_sections = {"job", "curve", "parameters", "output"}
    unknown = set(parser.sections()) - known_sections
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    out = {section: dict(parser.items(section))
           for section in parser.sections()}
    job_keys = set(out.get("job", {})) - {"command"}
    if job_keys:
        raise ConfigError(f"unknown [job] keys: {sorted(job_keys)}")
    output_keys = set(out.get("output", {})) - {"dir", "format", "tol"}
    if output_keys:
        raise ConfigError(f"unknown [output] keys: {sorted(output_keys)}")
    return out


def _build_job(args) -> JobConfig:
    file_cfg = load_config_file(Path(args.config)) if args.config else {}
    command = args.command or file_cfg.get("job", {}).get("command")
    if command not in COMMANDS:
        raise ConfigError(f"missing or unknown command {command!r}; "
                          f"expected one of {COMMANDS}")

    samples = args.samples
    if samples is None and "samples" in file_cfg.get("curve", {}):
        samples = int(file_cfg["curve"]["samples"])
    if args.curve:
        spec = parse_curve_string(args.curve, samples=samples)
    elif "curve" in file_cfg:
        curve_map = dict(file_cfg["curve"])
        family = curve_map.pop("family", None)
        if family is None:
            raise ConfigError("config [curve] section needs a family key")
        spec = curve_spec_from_mapping(family, curve_map, samples=samples)
    else:
        raise ConfigError("no curve given (use --curve or a [curve] config section)")

    params = dict(file_cfg.get("parameters", {}))
    for key in ("theta", "lam", "field", "f", "theta0", "a", "t_range",
                "resolution", "branch"):
        value = getattr(args, key if key != "a" else "a_scale", None)
        if value is not None:
            params[key] = value
    allowed = _PARAM_KEYS[command]
    unknown = set(params) - allowed
    if unknown:
        raise ConfigError(f"unknown parameters for {command}: {sorted(unknown)}")

    out_dir = Path(args.out or file_cfg.get("output", {}).get("dir", "."))
    fmt = args.format or file_cfg.get("output", {}).get("format", "all")
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}")
    tol = args.tol
    if tol is None and "tol" in file_cfg.get("output", {}):
        tol = float(file_cfg["output"]["tol"])
    return JobConfig(command=command, curve=spec, parameters=params,
                     out_dir=out_dir, fmt=fmt, tol=tol)


def _param_float(params, key, default=None):
    raw = params.get(key, default)
    if raw is None:
        raise ConfigError(f"missing required parameter {key}")
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"parameter {key} is not a number: {raw!r}") from None


def _wants(job: JobConfig, kind: str) -> bool:
    return job.fmt in ("all", kind)


def _profile_columns(data, points):
    return (
        ["s", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz",
         "kappa", "tau"],
        [data.s, points[:, 0], points[:, 1], points[:, 2],
         data.T[:, 0], data.T[:, 1], data.T[:, 2],
         data.N[:, 0], data.N[:, 1], data.N[:, 2],
         data.B[:, 0], data.B[:, 1], data.B[:, 2],
         data.kappa, data.tau],
    )


def _curve_csv(path, curve):
    s = curve.grid()
    pts = curve.point(s)
    write_csv(path, ["s", "x", "y", "z"], [s, pts[:, 0], pts[:, 1], pts[:, 2]])


def _mate_report_items(report):
    return [
        ("accepted", report.accepted),
        ("normal_collinearity", report.normal_collinearity),
        ("epsilon", report.epsilon),
        ("theta_mean", report.theta_mean),
        ("theta_deviation", report.theta_deviation),
        ("condition_residual", report.condition_residual),
        ("used_construction_frame", report.used_construction_frame),
    ]


def _fit_report_items(fit):
    return [
        ("kind", fit.kind),
        ("accepted", fit.accepted),
        ("lambda", fit.lam),
        ("mu", fit.mu),
        ("theta", fit.theta),
        ("residual", fit.residual),
        ("planar_special", fit.planar_special),
    ]


def _cmd_analyze(job: JobConfig, out: Path):
    curve = build_curve(job.curve)
    data = frenet_apparatus(curve)
    if _wants(job, "csv"):
        header, cols = _profile_columns(data, curve.point(data.s))
        write_csv(out / "analyze.csv", header, cols)
    if _wants(job, "report"):
        shape = classify(data, tol=job.tol)
        write_report(out / "analyze_report.txt", [
            ("is_planar", shape.is_planar),
            ("is_general_helix", shape.is_general_helix),
            ("is_salkowski", shape.is_salkowski),
            ("is_anti_salkowski", shape.is_anti_salkowski),
            ("constancy_tolerance", shape.constancy_tolerance),
            ("kappa_mean", float(data.kappa.mean())),
            ("tau_mean", float(data.tau.mean())),
        ])


def _cmd_mate(job: JobConfig, out: Path):
    params = job.parameters
    curve = build_curve(job.curve)
    data = frenet_apparatus(curve)
    raw_field = params.get("field", "1,0,0")
    try:
        u0, v0, w0 = (float(part) for part in str(raw_field).split(","))
    except ValueError:
        raise ConfigError(f"field must be 'u,v,w' constants, got {raw_field!r}") from None
    frame_field = FrameField.constant(u0, v0, w0)
    lam = _param_float(params, "lam", default=params.get("lam")) if "lam" in params else None
    if "theta" in params:
        theta = _param_float(params, "theta")
    elif lam is not None:
        theta = float(np.arctan2(w0 + lam * data.tau[0], u0 - lam * data.kappa[0]))
    else:
        raise ConfigError("mate needs theta (or lam to derive it)")
    mate, report = v_bertrand_mate(curve, frame_field, theta, lam=lam, data=data,
                                   tol=job.tol)
    if _wants(job, "csv"):
        _curve_csv(out / "mate.csv", mate)
    if _wants(job, "report"):
        write_report(out / "mate_report.txt",
                     [("theta_input", theta)] + _mate_report_items(report))


def _cmd_fbertrand(job: JobConfig, out: Path):
    params = job.parameters
    curve = build_curve(job.curve)
    f_value = _param_float(params, "f")
    theta = _param_float(params, "theta")
    mates = f_bertrand_mates(curve, f_value, theta, tol=job.tol)
    items = [("f", f_value), ("theta", theta), ("n_mates", len(mates))]
    for mate, report in mates:
        if _wants(job, "csv"):
            _curve_csv(out / f"fbertrand_{report.branch}.csv", mate)
        items.append((f"branch_{report.branch}_accepted", report.accepted))
        items.append((f"branch_{report.branch}_collinearity", report.normal_collinearity))
        items.append((f"branch_{report.branch}_theta", report.theta_mean))
    if _wants(job, "report"):
        write_report(out / "fbertrand_report.txt", items)


def _cmd_surface(job: JobConfig, out: Path):
    params = job.parameters
    curve = build_curve(job.curve)
    branch = str(params.get("branch", "phi1_plus"))
    t_range = None
    if "t_range" in params:
        raw = str(params["t_range"])
        try:
            lo, hi = (float(part) for part in raw.split(":"))
        except ValueError:
            raise ConfigError(f"t_range must be 'lo:hi', got {raw!r}") from None
        t_range = (lo, hi)
    raw_res = str(params.get("resolution", "16x128"))
    try:
        nt, ns = (int(part) for part in raw_res.lower().split("x"))
    except ValueError:
        raise ConfigError(f"resolution must be 'NTxNS', got {raw_res!r}") from None
    grid = bertrand_surface(curve, branch=branch, t_range=t_range, resolution=(nt, ns))
    if _wants(job, "obj"):
        write_obj(out / f"surface_{grid.branch}.obj", to_mesh(grid))
    if _wants(job, "report"):
        write_report(out / "surface_report.txt", [
            ("branch", grid.branch),
            ("theta", grid.theta),
            ("lambda", grid.lam),
            ("nt", len(grid.t_values)),
            ("ns", len(grid.s_values)),
            ("t_min", float(grid.t_values[0])),
            ("t_max", float(grid.t_values[-1])),
        ])


def _cmd_spherical(job: JobConfig, out: Path):
    params = job.parameters
    curve = build_curve(job.curve)
    data = frenet_apparatus(curve)
    fit = fit_sphere(data, tol=job.tol)
    items = [
        ("accepted", fit.accepted),
        ("R", fit.R),
        ("theta0", fit.theta0),
        ("residual", fit.residual),
        ("osculating_ratio", fit.osculating_ratio),
        ("radius_degenerate", fit.radius_degenerate),
    ]
    if fit.center is not None:
        items.append(("center", fit.center))
    if "theta0" in params:
        theta0 = _param_float(params, "theta0")
        companion, bfit = bertrand_from_spherical(curve, theta0, data=data, tol=job.tol)
        if _wants(job, "csv"):
            _curve_csv(out / "spherical_curve.csv", companion)
        items.append(("construction_theta0", theta0))
        items.extend((f"construction_{k}", v) for k, v in _fit_report_items(bfit))
    if _wants(job, "report"):
        write_report(out / "spherical_report.txt", items)


def _cmd_donor(job: JobConfig, out: Path):
    curve = build_curve(job.curve)
    donor = principal_donor(curve)
    if _wants(job, "csv"):
        _curve_csv(out / "donor.csv", donor)
    if _wants(job, "report"):
        crossings = getattr(donor, "donor_crossings", [])
        write_report(out / "donor_report.txt", [
            ("s_min", donor.s_min),
            ("s_max", donor.s_max),
            ("clipped", donor.s_max < curve.s_max - 1e-12),
            ("n_crossings", len(crossings)),
        ])


def _cmd_sabban(job: JobConfig, out: Path):
    params = job.parameters
    curve = build_curve(job.curve)
    scale = _param_float(params, "a")
    theta = _param_float(params, "theta")
    result, fit = sabban_bertrand(curve, scale, theta, tol=job.tol)
    if _wants(job, "csv"):
        _curve_csv(out / "sabban.csv", result)
    if _wants(job, "report"):
        write_report(out / "sabban_report.txt",
                     [("a", scale), ("theta", theta)] + _fit_report_items(fit))


_DISPATCH = {
    "analyze": _cmd_analyze,
    "mate": _cmd_mate,
    "fbertrand": _cmd_fbertrand,
    "surface": _cmd_surface,
    "spherical": _cmd_spherical,
    "donor": _cmd_donor,
    "sabban": _cmd_sabban,
}


def run(job: JobConfig) -> None:
    out = job.out_dir
    out.mkdir(parents=True, exist_ok=True)
    _DISPATCH[job.command](job, out)


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvemate",
        description="Frenet analysis, Bertrand mates and Bertrand surfaces.",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS,
                        help="job to run (may come from --config instead)")
    parser.add_argument("--config", help="job config file (ini sections)")
    parser.add_argument("--curve", help="curve spec, e.g. helix:a=1,b=1")
    parser.add_argument("--samples", type=int, help="grid resolution")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--tol", type=float, help="detection/fit tolerance")
    parser.add_argument("--format", choices=FORMATS, help="artifact selection")
    parser.add_argument("--theta", type=float, help="tangent angle (radians)")
    parser.add_argument("--lam", type=float, help="offset coefficient")
    parser.add_argument("--field", help="frame field constants u,v,w")
    parser.add_argument("--f", type=float, dest="f", help="offset right-hand side")
    parser.add_argument("--theta0", type=float, help="phase for spherical constructions")
    parser.add_argument("--a", type=float, dest="a_scale", help="scale for sabban")
    parser.add_argument("--t-range", dest="t_range", help="surface t range lo:hi")
    parser.add_argument("--resolution", help="surface resolution NTxNS")
    parser.add_argument("--branch", help="surface branch name")
    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        job = _build_job(args)
        run(job)
    except ConfigError as exc:
        print(f"error: config: {exc}", flush=True)
        return 2
    except GeometryError as exc:
        print(f"error: geometry: {exc}", flush=True)
        return 3
    except ConditionError as exc:
        print(f"error: condition: {exc}", flush=True)
        return 4
    except OSError as exc:
        print(f"error: io: {exc}", flush=True)
        return 5
    except CurvemateError as exc:
        print(f"error: internal: {exc}", flush=True)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
