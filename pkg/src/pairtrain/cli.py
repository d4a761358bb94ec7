"""Command line front end.

Four subcommands:

  density   one point of the spectrum with its interference breakdown, JSON
  grid      the spectrum on a rectangular grid, CSV plus a JSON sidecar
  total     the integrated pair-creation probability, JSON
  validate  the built-in identity suite, JSON report

Outputs are deterministic: no timestamps, floats written in their
shortest round-trip form, files written atomically (temp file plus
rename), and every document echoes the normalized configuration, so a run
can be reproduced bit for bit from its own artifacts.  Exit codes: 0 on
success, 1 when a computation fails its own criteria (an integral that
did not converge, a failed validation), 2 for configuration errors, which
are reported as a JSON object on stderr.
"""

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .config import ConfigError, emit_config, parse_config
from .kinematics import HBAR_C_MEV_M, HBAR_MEV_S, SpectrumPoint
from .density import master_density
from .integrate import grid_scan, total_probability
from .validate import run_validate


def _atomic_write(path, text):
    """Write text to path through a temp file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pairtrain-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(doc, out_path):
    text = json.dumps(doc, indent=2) + "\n"
    if out_path:
        _atomic_write(out_path, text)
    else:
        sys.stdout.write(text)


def _physical_block(probe):
    """Conversion factors from dimensionless x to lightfront time, if the
    photon energy is known; x * m^2 / n.l is the stored coordinate."""
    scale = probe.lightfront_scale()
    if scale is None:
        return None
    return {
        "x_to_seconds": scale * HBAR_MEV_S,
        "x_to_micrometers": scale * HBAR_C_MEV_M * 1e6,
    }


def _base_doc(kind, config):
    doc = {"kind": kind, "version": __version__, "config": emit_config(config)}
    if config.notes:
        doc["notes"] = list(config.notes)
    physical = _physical_block(config.probe)
    if physical is not None:
        doc["physical"] = physical
    return doc


def _require(config, field, command):
    if getattr(config, field) is None:
        pointer = {"u": "/evaluation/u", "qperp": "/evaluation/qperp",
                   "grid": "/evaluation/grid"}[field]
        raise ConfigError(pointer, "schema", f"required by the {command} command")


def run_density(config):
    """Point evaluation as a JSON-ready document."""
    _require(config, "u", "density")
    _require(config, "qperp", "density")
    point = SpectrumPoint(u=config.u, qperp=config.qperp)
    result = master_density(config.train, config.probe, point, alpha=config.alpha)
    doc = _base_doc("density", config)
    doc.update({
        "u": config.u,
        "qperp": list(config.qperp),
        "value": result.value,
        "f_total": result.f_total,
        "prefactor": result.prefactor,
        "diagonal": [float(v) for v in result.diagonal],
        "cross": [{"i": i, "j": j, "phase_difference": phase, "value": term}
                  for i, j, phase, term in result.cross],
    })
    return doc


def run_grid(config, out_path, threads=1, bare=False):
    """Grid scan: writes the CSV, returns the sidecar document."""
    _require(config, "u", "grid")
    _require(config, "grid", "grid")
    (lo1, hi1, n1), (lo2, hi2, n2) = config.grid
    q1 = np.linspace(lo1, hi1, n1)
    q2 = np.linspace(lo2, hi2, n2)
    effective_bare = bool(config.bare or bare)
    result = grid_scan(config.train, config.probe, config.u, q1, q2,
                       alpha=config.alpha, bare=effective_bare, threads=threads)
    columns = ["q1", "q2", "density"]
    if config.breakdown:
        columns += ["diagonal", "cross"]
    lines = [",".join(columns)]
    for i2 in range(n2):
        for i1 in range(n1):
            row = [repr(float(q1[i1])), repr(float(q2[i2])),
                   repr(float(result.density[i2, i1]))]
            if config.breakdown:
                row.append(repr(float(result.diagonal[i2, i1])))
                row.append(repr(float(result.cross[i2, i1])))
            lines.append(",".join(row))
    _atomic_write(out_path, "\n".join(lines) + "\n")
    doc = _base_doc("grid", config)
    doc.update({
        "csv": os.path.basename(out_path),
        "columns": columns,
        "shape": [n2, n1],
        "u": config.u,
        "bare": effective_bare,
    })
    return doc


def run_total(config):
    """Integrated probability as a JSON-ready document."""
    result = total_probability(config.train, config.probe,
                               spec=config.integration, alpha=config.alpha)
    doc = _base_doc("total", config)
    doc.update({
        "value": result.value,
        "error": result.error,
        "neval": result.neval,
        "converged": result.converged,
        "q_max": config.integration.resolve_q_max(config.train, config.probe),
    })
    return doc


def _read_config(path):
    if path == "-":
        return parse_config(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError("", "syntax", f"cannot read {path}: {exc}") from exc
    return parse_config(text)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pairtrain",
        description="Positron spectra and pair-creation probabilities for a "
                    "photon colliding with a train of delta-function pulses.")
    sub = parser.add_subparsers(dest="command", required=True)

    density = sub.add_parser("density", help="evaluate the spectrum at one point")
    density.add_argument("--config", required=True, help="JSON config path ('-' for stdin)")
    density.add_argument("--out", default=None, help="output JSON path (default stdout)")

    grid = sub.add_parser("grid", help="tabulate the spectrum on a grid")
    grid.add_argument("--config", required=True, help="JSON config path ('-' for stdin)")
    grid.add_argument("--out", required=True, help="output CSV path")
    grid.add_argument("--threads", type=int, default=1,
                      help="worker threads for the scan (identical output)")
    grid.add_argument("--bare", action="store_true",
                      help="write the bare interference sum without the prefactor")

    total = sub.add_parser("total", help="integrate the spectrum over u and q_perp")
    total.add_argument("--config", required=True, help="JSON config path ('-' for stdin)")
    total.add_argument("--out", default=None, help="output JSON path (default stdout)")

    validate = sub.add_parser("validate", help="run the built-in identity suite")
    validate.add_argument("--seed", type=int, default=2025, help="sample seed")
    validate.add_argument("--samples", type=int, default=200,
                          help="samples per identity")
    validate.add_argument("--out", default=None, help="output JSON path (default stdout)")

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            report = run_validate(seed=args.seed, samples=args.samples)
            report["version"] = __version__
            _write_json(report, args.out)
            return 0 if report["passed"] else 1

        config = _read_config(args.config)
        for note in config.notes:
            print(f"note: {note}", file=sys.stderr)

        if args.command == "density":
            _write_json(run_density(config), args.out)
            return 0
        if args.command == "grid":
            sidecar = run_grid(config, args.out, threads=args.threads, bare=args.bare)
            _write_json(sidecar, args.out + ".meta.json")
            return 0
        if args.command == "total":
            doc = run_total(config)
            _write_json(doc, args.out)
            return 0 if doc["converged"] else 1
        raise AssertionError(f"unhandled command {args.command!r}")
    except ConfigError as exc:
        report = {"error": {"category": exc.category, "pointer": exc.pointer,
                            "message": exc.message}}
        print(json.dumps(report, indent=2), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
