"""Command line front end: ``floatbody {analyze,check,map,modes} INPUT``.

Exit status is 0 on success, 2 for invalid input and 3 when the mesher or
the eigensolver fails.
"""
from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .bipolar import ArcSpec, arc_points, map_wetted_contour
from .criteria import frequency_bound, nontrapping_report
from .document import DocumentError, InputDocument, load_document
from .errors import FloatBodyError, MeshFailure, NegativeRoot, SolverFailure
from .geometry import FluidConfig, center_of_mass, clip_immersed
from .hydrostatics import assemble_matrices, check_equilibrium
from .report import (
    bound_section,
    criteria_section,
    dumps,
    equilibrium_section,
    flatten,
    fluid_section,
    fmt,
    geometry_section,
    matrices_section,
    write_csv,
)

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3
COMMANDS = ("analyze", "check", "map", "modes")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    g: float | None = None
    depth: float | None = None
    cone_angle_deg: float | None = None
    tank_half_length: float | None = None
    mesh_size: float | None = None
    num_modes: int = 10
    out: Path | None = None
    format: str = "json"
    fields: bool = False
    arcs: int = 9


def _fluid(doc: InputDocument, cfg: RunConfig) -> FluidConfig:
    f = doc.fluid
    return FluidConfig(
        g=f.g if cfg.g is None else cfg.g,
        rho0=f.rho0,
        depth=f.depth if cfg.depth is None else cfg.depth,
    )


def _header(doc: InputDocument, cfg: RunConfig, fluid: FluidConfig) -> dict:
    return {
        "command": cfg.command,
        "input_sha256": doc.sha256,
        "tool": {"name": "floatbody", "version": __version__},
        "fluid": fluid_section(fluid),
    }


def _emit(payload: dict, cfg: RunConfig, name: str, stdout) -> None:
    if cfg.format == "csv":
        text = "key,value\n" + "".join(f"{k},{fmt(v) if isinstance(v, float) else v}\n" for k, v in flatten(payload))
        suffix = ".csv"
    else:
        text = dumps(payload)
        suffix = ".json"
    if cfg.out is None:
        stdout.write(text)
    else:
        cfg.out.mkdir(parents=True, exist_ok=True)
        (cfg.out / f"{name}{suffix}").write_text(text)


def _criteria_payload(doc, fluid, cfg):
    report = nontrapping_report(doc.body, fluid, cfg.cone_angle_deg)
    return report, criteria_section(report)


def run_analyze(doc: InputDocument, cfg: RunConfig, stdout) -> None:
    fluid = _fluid(doc, cfg)
    imm = clip_immersed(doc.body, fluid)
    com = center_of_mass(doc.body)
    m = assemble_matrices(doc.body, imm, com, fluid)
    eq = check_equilibrium(doc.body, imm, com, m)
    report, crit = _criteria_payload(doc, fluid, cfg)
    payload = _header(doc, cfg, fluid)
    payload.update(
        geometry=geometry_section(imm, com),
        matrices=matrices_section(m),
        equilibrium=equilibrium_section(eq),
        bound=bound_section(report.bound),
        criteria=crit,
    )
    _emit(payload, cfg, "analyze", stdout)


def run_check(doc: InputDocument, cfg: RunConfig, stdout) -> None:
    fluid = _fluid(doc, cfg)
    _, crit = _criteria_payload(doc, fluid, cfg)
    payload = _header(doc, cfg, fluid)
    payload["criteria"] = crit
    _emit(payload, cfg, "check", stdout)


def run_map(doc: InputDocument, cfg: RunConfig, stdout) -> None:
    fluid = _fluid(doc, cfg)
    imm = clip_immersed(doc.body, fluid)
    mapped = map_wetted_contour(imm, fluid)
    out = cfg.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "s_image.csv", ["u", "v", "x", "y"], mapped.S_image.tolist())
    if mapped.H_image is not None:
        write_csv(out / "h_image.csv", ["u", "v", "x", "y"], mapped.H_image.tolist())
    sigmas = -math.pi * np.arange(1, cfg.arcs + 1) / (cfg.arcs + 1)
    rows = []
    for sigma in sigmas:
        for side in ("left", "right"):
            for x, y in arc_points(ArcSpec(float(sigma), side, imm.a), 64):
                rows.append([float(sigma), side, float(x), float(y)])
    write_csv(out / "arcs.csv", ["sigma", "side", "x", "y"], rows)
    payload = _header(doc, cfg, fluid)
    payload["map"] = {
        "a": mapped.a,
        "alpha": mapped.alpha,
        "vb": mapped.vb,
        "vh": mapped.vh,
        "decreasing": mapped.decreasing,
        "witness": list(mapped.witness) if mapped.witness else None,
        "files": ["s_image.csv"] + (["h_image.csv"] if mapped.H_image is not None else []) + ["arcs.csv"],
    }
    _emit(payload, dataclasses.replace(cfg, out=out, format="json"), "map", stdout)


def run_modes(doc: InputDocument, cfg: RunConfig, stdout) -> None:
    from .criteria import classify_mode
    from .spectral import (
        TankConfig,
        assemble,
        build_mesh,
        energy_sign_check,
        solve_modes,
        transposition_identity_residual,
    )

    fluid = _fluid(doc, cfg)
    imm = clip_immersed(doc.body, fluid)
    com = center_of_mass(doc.body)
    m = assemble_matrices(doc.body, imm, com, fluid)
    extent = float(np.abs(imm.vertices[:, 0]).max())
    L = cfg.tank_half_length if cfg.tank_half_length is not None else 3.0 * extent
    h = fluid.depth if fluid.finite_depth else L
    size = cfg.mesh_size if cfg.mesh_size is not None else min(imm.a, imm.b0) / 5.0
    tank = TankConfig(L, h, size)
    mesh = build_mesh(imm, tank)
    system = assemble(mesh, fluid, m)
    modes, info = solve_modes(system, cfg.num_modes)
    try:
        bound = frequency_bound(m)
    except NegativeRoot:
        bound = None

    out = cfg.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, md in enumerate(modes):
        es = energy_sign_check(md, system, bound)
        rows.append(
            [
                i,
                md.omega,
                md.nu,
                float(md.chi[0]),
                float(md.chi[1]),
                float(md.chi[2]),
                md.parity,
                md.residual,
                transposition_identity_residual(md, system),
                classify_mode(md.parity, md.chi) if mesh.mirror is not None else "neither",
                es.s,
                int(es.contradiction),
            ]
        )
        if cfg.fields:
            write_csv(
                out / f"phi_{i:03d}.csv",
                ["x", "y", "phi"],
                np.column_stack([mesh.nodes, md.phi]).tolist(),
            )
    write_csv(
        out / "modes.csv",
        [
            "index",
            "omega",
            "nu",
            "chi1",
            "chi2",
            "chi3",
            "parity",
            "equipartition_residual",
            "transposition_residual",
            "mode_type",
            "energy_sign",
            "contradiction",
        ],
        rows,
    )
    payload = _header(doc, cfg, fluid)
    payload["tank"] = {"half_length": L, "depth": h, "mesh_size": size, "nodes": mesh.n_nodes}
    payload["solver"] = {
        "unknowns": info.unknowns,
        "reduced_size": info.reduced_size,
        "complex_rejected": info.complex_rejected,
        "max_imag_ratio": info.max_imag_ratio,
        "condition": info.condition,
        "modes": len(modes),
    }
    payload["bound"] = bound_section(bound)
    _emit(payload, dataclasses.replace(cfg, out=out, format="json"), "modes", stdout)


RUNNERS = {"analyze": run_analyze, "check": run_check, "map": run_map, "modes": run_modes}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floatbody", description="Freely floating body: stability, bounds and modes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, text in [
        ("analyze", "equilibrium, matrices, bound and criteria as one JSON report"),
        ("check", "geometric criteria only"),
        ("map", "bipolar images of the wetted contour as CSV"),
        ("modes", "sealed-tank coupled modes as CSV"),
    ]:
        s = sub.add_parser(name, help=text)
        s.add_argument("input", type=Path, help="geometry document (JSON)")
        s.add_argument("--g", type=float, help="gravitational acceleration")
        s.add_argument("--depth", type=float, help="water depth (overrides the document)")
        s.add_argument("--cone-angle-deg", type=float, help="cone angle from the vertical")
        s.add_argument("--tank-half-length", type=float, help="tank walls at x = +-L")
        s.add_argument("--mesh-size", type=float, help="target element size")
        s.add_argument("--num-modes", type=int, default=10, help="number of modes to keep")
        s.add_argument("--out", type=Path, help="output directory")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "modes":
            s.add_argument("--fields", action="store_true", help="also dump nodal fields phi_NNN.csv")
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        g=args.g,
        depth=args.depth,
        cone_angle_deg=args.cone_angle_deg,
        tank_half_length=args.tank_half_length,
        mesh_size=args.mesh_size,
        num_modes=args.num_modes,
        out=args.out,
        format=args.format,
        fields=getattr(args, "fields", False),
    )
    try:
        doc = load_document(cfg.input)
        RUNNERS[cfg.command](doc, cfg, stdout)
    except DocumentError as exc:
        stderr.write(f"error: invalid input at {exc.pointer or '/'}: {exc.message}\n")
        return EXIT_INPUT
    except (MeshFailure, SolverFailure) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_SOLVER
    except (FloatBodyError, OSError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
