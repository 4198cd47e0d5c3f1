"""Command-line front end.

Subcommands print delimited output (CSV, JSON or a table) to stdout or to
``--output``.  When an output file is given, a matplotlib rendering is written
next to it with the same stem and an ``.svg`` suffix.

Exit codes: 0 success, 1 a [Q,R] mismatch (``qr`` only), 2 configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import figures
from .catalog import ExampleBundle, build
from .characters import coefficient, mult_at
from .errors import OnWall, RouteMismatch, SpincqError, UnknownDescriptor
from .fixedpoint_index import generic_beta, global_index, witten_decomposition
from .lie_core import Box, RootDatum, Weight, fmt_q, q, rho
from .orbits import (
    CoadjointOrbit,
    admissible_orbits,
    ancestor_dot,
    ancestors_of,
    orbit_record,
)
from .reduction import dh_density, verify_qr_abelian, verify_qr_nonabelian

log = logging.getLogger("spincq")

FORMATS = ("csv", "json", "table", "svg", "pgm")


class ConfigError(Exception):
    pass


# -- helpers ---------------------------------------------------------------------------


def _workers() -> int:
    raw = os.environ.get("SPINCQ_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"SPINCQ_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def _evaluate(fn: Callable, points: Sequence, workers: int) -> list:
    """Map fn over points, in order; parallel across processes when workers > 1."""
    if workers <= 1 or len(points) < 64:
        return [fn(p) for p in points]
    chunk = max(1, len(points) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, points, chunksize=chunk))


def _weight_text(w: Weight) -> str:
    return " ".join(fmt_q(c) for c in w)


def _write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _figure_path(output: Optional[str]) -> Optional[Path]:
    if not output:
        return None
    p = Path(output)
    return p.with_suffix(".svg") if p.suffix != ".svg" else None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_weight(text: str, datum: RootDatum) -> Weight:
    if text.strip().lower() == "rho":
        return rho(datum)
    try:
        coords = tuple(q(c) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse weight {text!r}") from exc
    if len(coords) != datum.rank:
        raise ConfigError(f"weight {text!r} does not have {datum.rank} coordinates")
    return Weight(coords)


def _bundle(args) -> ExampleBundle:
    if not args.example:
        raise ConfigError("--example is required")
    try:
        return build(args.example)
    except (UnknownDescriptor, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def _box(args, rank: int, default: Box) -> Box:
    if args.box is None:
        return default
    try:
        return Box.parse(str(args.box), rank)
    except ValueError as exc:
        raise ConfigError(f"bad --box {args.box!r}: {exc}") from exc


# -- subcommands --------------------------------------------------------------------------


def cmd_orbits(args) -> int:
    try:
        datum = RootDatum.from_tag(args.group or "su3")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.ancestors_of:
        lam = _parse_weight(args.ancestors_of, datum)
        O = CoadjointOrbit.through(lam, datum)
        try:
            box = None if args.box is None else Box.parse(str(args.box), datum.rank)
            orbits = ancestors_of(O, None, box)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        orbits = list(admissible_orbits(datum, _box(args, datum.rank, Box.cube(-3, 3, datum.rank))))
    records = [orbit_record(P) for P in orbits]
    fmt = args.format or "csv"
    if fmt == "json":
        text = _dumps(records)
    elif fmt in ("csv", "table"):
        buf = io.StringIO()
        cols = ["rep", "admissible", "regular", "levi", "shift", "qspin"]
        if fmt == "csv":
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for r in records:
                w.writerow([" ".join(r["rep"]), int(r["admissible"]), int(r["regular"]), r["levi"],
                            " ".join(r["shift"]), "0" if r["qspin"] is None else " ".join(r["qspin"])])
        else:
            buf.write("".join(f"{c:>14}" for c in cols) + "\n")
            for r in records:
                qs = "Zero" if r["qspin"] is None else "pi(" + ", ".join(r["qspin"]) + ")"
                row = ["(" + ", ".join(r["rep"]) + ")", str(r["admissible"]), str(r["regular"]), r["levi"],
                       "(" + ", ".join(r["shift"]) + ")", qs]
                buf.write("".join(f"{c:>14}" for c in row) + "\n")
        text = buf.getvalue()
    else:
        raise ConfigError(f"orbits does not support --format {fmt}")
    _write(text, args.output)
    if args.dot:
        Path(args.dot).write_text(ancestor_dot(orbits))
    return 0


def _abelian_index(bundle: ExampleBundle, box: Box, workers: int) -> tuple[np.ndarray, dict]:
    M = bundle.model
    total = global_index(M, generic_beta(M))
    pts = list(box.points())
    values = np.array(_evaluate(partial(mult_at, total), pts, workers), dtype=np.int64).reshape(box.shape)
    comps = {}
    try:
        for level, F in witten_decomposition(M).items():
            comps[level] = np.array(_evaluate(partial(mult_at, F), pts, workers), dtype=np.int64).reshape(box.shape)
    except SpincqError as exc:
        log.info("no Witten decomposition: %s", exc)
    return values, comps


def _polarization_check(bundle: ExampleBundle, box: Box, count: int, seed: int) -> bool:
    import random

    rng = random.Random(seed)
    M = bundle.model
    ref = None
    weights = {a for p in M.points for a in p.tangent_weights}
    done = 0
    while done < count:
        beta = Weight(tuple(Fraction(rng.randint(-97, 97), rng.randint(1, 97)) for _ in range(M.rank)))
        if any(sum(a_i * b_i for a_i, b_i in zip(a, beta)) == 0 for a in weights):
            continue
        vals = [mult_at(global_index(M, beta), mu) for mu in box.points()]
        if ref is None:
            ref = vals
        elif vals != ref:
            return False
        done += 1
    return True


def cmd_index(args) -> int:
    bundle = _bundle(args)
    fmt = args.format or "json"
    workers = _workers()
    out: dict = {"example": str(bundle.descriptor)}
    fig = _figure_path(args.output)
    values = None
    box = None
    if bundle.model is not None:
        box = _box(args, bundle.model.rank, bundle.qr_box())
        values, comps = _abelian_index(bundle, box, workers)
        out["box"] = box.to_text()
        out["window"] = [{"weight": mu.to_json(), "mult": int(v)}
                         for mu, v in zip(box.points(), values.reshape(-1)) if v]
        out["components"] = {
            _weight_text(level): [{"weight": mu.to_json(), "mult": int(v)}
                                  for mu, v in zip(box.points(), arr.reshape(-1)) if v]
            for level, arr in comps.items()
        }
        if args.polarizations:
            out["polarization_independent"] = _polarization_check(bundle, box, args.polarizations, args.seed)
    char = bundle.induced
    if char is not None:
        out["group"] = char.datum.tag
        out["character"] = char.to_json()
        out["coefficient_at_rho"] = coefficient(char, CoadjointOrbit(rho(char.datum), char.datum))
    if fmt == "json":
        text = _dumps(out)
    elif fmt in ("csv", "table"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if values is not None:
            w.writerow(["weight", "mult"])
            for mu, v in zip(box.points(), values.reshape(-1)):
                w.writerow([_weight_text(mu), int(v)])
        else:
            w.writerow(["label", "mult"])
            for lam, m in char.mults.items():
                w.writerow([_weight_text(lam), m])
        text = buf.getvalue()
    else:
        raise ConfigError(f"index does not support --format {fmt}")
    _write(text, args.output)
    if fig is not None and values is not None:
        figures.window_figure(values, box, f"index of {bundle.descriptor}", fig)
    return 0


def cmd_qr(args) -> int:
    bundle = _bundle(args)
    fmt = args.format or "csv"
    reports = []
    try:
        if bundle.model is not None:
            box = _box(args, bundle.model.rank, bundle.qr_box())
            reports.append(verify_qr_abelian(bundle.model, box, bundle.image, bundle.fiber_at))
        if bundle.H_weights is not None:
            kbox = bundle.k_box()
            if bundle.model is None and args.box is not None:
                kbox = _box(args, bundle.group.rank, kbox)
            reports.append(verify_qr_nonabelian(bundle.induced, bundle.slice_data_for, bundle.slice_levi, kbox))
    except RouteMismatch as exc:
        sys.stderr.write(f"route mismatch: {exc}\n")
        return 1
    summary = all(r.summary for r in reports)
    rows = [(r.kind, row) for r in reports for row in r.rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["side", "label", "m", "q", "match"])
        for kind, row in rows:
            w.writerow([kind, _weight_text(row.label), row.m, row.q, int(row.match)])
        text = buf.getvalue()
    elif fmt == "json":
        text = _dumps({"example": str(bundle.descriptor), "summary": summary,
                       "reports": [r.to_json() for r in reports]})
    elif fmt == "table":
        text = "".join(f"[{r.kind}]\n" + r.to_table() for r in reports)
    else:
        raise ConfigError(f"qr does not support --format {fmt}")
    _write(text, args.output)
    fig = _figure_path(args.output)
    if fig is not None:
        figures.report_figure([_weight_text(row.label) for _, row in rows], [row.m for _, row in rows],
                              [row.q for _, row in rows], f"[Q,R] check for {bundle.descriptor}", fig)
    return 0 if summary else 1


def _parse_grid(text: str) -> tuple[Fraction, Fraction, Fraction]:
    try:
        lo, hi, step = (Fraction(x) for x in text.split(":"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad --grid {text!r}; expected lo:hi:step") from exc
    if step <= 0 or hi <= lo:
        raise ConfigError(f"bad --grid {text!r}")
    return lo, hi, step


# deterministic nudge keeping raster samples off cone walls
_NUDGE = (Fraction(1, 1009), Fraction(1, 10007))


def _dh_value(M, pt: Weight) -> int:
    try:
        return dh_density(M, pt)
    except OnWall:
        return dh_density(M, pt + Weight(_NUDGE[: len(pt)]))


def dh_raster(bundle: ExampleBundle, lo: Fraction, hi: Fraction, step: Fraction, workers: int = 1) -> np.ndarray:
    n = int((hi - lo) / step)
    centers = [lo + (i + Fraction(1, 2)) * step for i in range(n)]
    M = bundle.model
    if M.rank == 1:
        pts = [Weight(c) for c in centers]
        shape = (n,)
    else:
        pts = [Weight(x, y) for x in centers for y in centers]
        shape = (n, n)
    vals = _evaluate(partial(_dh_value, M), pts, workers)
    return np.array(vals, dtype=np.int64).reshape(shape)


def _pgm(raster: np.ndarray) -> str:
    # rows top to bottom = decreasing second coordinate
    img = raster.T[::-1] if raster.ndim == 2 else raster.reshape(1, -1)
    gray = np.clip(127 + 128 * img, 0, 255).astype(int)
    lines = ["P2", f"{gray.shape[1]} {gray.shape[0]}", "255"]
    lines += [" ".join(str(v) for v in row) for row in gray]
    return "\n".join(lines) + "\n"


def cmd_dh(args) -> int:
    bundle = _bundle(args)
    if bundle.model is None:
        raise ConfigError(f"{bundle.descriptor} has no torus fixed-point model")
    lo, hi, step = _parse_grid(args.grid or "-5:3:1/4")
    raster = dh_raster(bundle, lo, hi, step, _workers())
    fmt = args.format or "pgm"
    extent = (float(lo), float(hi), float(lo), float(hi))
    title = f"signed DH density of {bundle.descriptor}"
    if fmt == "svg":
        if not args.output:
            raise ConfigError("svg output needs --output")
        figures.raster_figure(raster, extent, title, Path(args.output))
        return 0
    if fmt == "pgm":
        text = _pgm(raster)
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "density"] if raster.ndim == 2 else ["x", "density"])
        n = raster.shape[0]
        centers = [lo + (i + Fraction(1, 2)) * step for i in range(n)]
        if raster.ndim == 2:
            for i, x in enumerate(centers):
                for j, y in enumerate(centers):
                    w.writerow([fmt_q(x), fmt_q(y), int(raster[i, j])])
        else:
            for i, x in enumerate(centers):
                w.writerow([fmt_q(x), int(raster[i])])
        text = buf.getvalue()
    elif fmt == "json":
        text = _dumps({"example": str(bundle.descriptor), "grid": [fmt_q(lo), fmt_q(hi), fmt_q(step)],
                       "raster": raster.tolist()})
    else:
        raise ConfigError(f"dh does not support --format {fmt}")
    _write(text, args.output)
    fig = _figure_path(args.output)
    if fig is not None:
        figures.raster_figure(raster, extent, title, fig)
    return 0


def cmd_moment(args) -> int:
    bundle = _bundle(args)
    out = {"example": str(bundle.descriptor), "kirwan": bundle.kirwan.to_json()}
    if bundle.image is not None:
        out["image"] = bundle.image.to_json()
    if bundle.model is not None:
        out["fixed_points"] = [{"id": p.id, "phi": p.phi.to_json()} for p in bundle.model.points]
    fmt = args.format or "json"
    if fmt == "svg":
        if not args.output:
            raise ConfigError("svg output needs --output")
        _moment_figure(bundle, Path(args.output))
        return 0
    if fmt != "json":
        raise ConfigError(f"moment does not support --format {fmt}")
    _write(_dumps(out), args.output)
    fig = _figure_path(args.output)
    if fig is not None:
        _moment_figure(bundle, fig)
    return 0


def _moment_figure(bundle: ExampleBundle, path: Path) -> None:
    image = bundle.image if bundle.image is not None else bundle.kirwan
    pts = [p.phi for p in bundle.model.points] if bundle.model is not None else []
    labels = [p.id for p in bundle.model.points] if bundle.model is not None else None
    figures.image_figure([pc.vertices for pc in image.pieces], pts, f"moment image of {bundle.descriptor}", path,
                         labels)


# -- entry point -------------------------------------------------------------------------------


COMMANDS = {"orbits": cmd_orbits, "index": cmd_index, "qr": cmd_qr, "dh": cmd_dh, "moment": cmd_moment}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spincq", description="Spin^c quantization and reduction checks.")
    parser.add_argument("--config", help="JSON file whose keys mirror the flags")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand")

    def common(p):
        p.add_argument("--box", help="R, lo:hi, or lo:hi,lo:hi per axis")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--output", help="write here instead of stdout (a figure goes next to it)")

    p = sub.add_parser("orbits", help="admissible orbits, shifts and quantizations")
    common(p)
    p.add_argument("--group", help="torus:r, su2, u2 or su3")
    p.add_argument("--ancestors-of", dest="ancestors_of", help="'rho' or comma-separated coordinates")
    p.add_argument("--dot", help="also write the shift graph as Graphviz DOT")

    for name, helptext in (("index", "equivariant index windows"), ("qr", "verify [Q,R]=0 level by level"),
                           ("dh", "signed Duistermaat-Heckman raster"), ("moment", "moment and Kirwan images")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--example", help="p1:n, p1_deformed:n,f, product_p1, hirzebruch:n1,n2, su3_flag:a,b")
        if name == "dh":
            p.add_argument("--grid", help="lo:hi:step (exact rationals, e.g. -5:3:0.25)")
        if name == "index":
            p.add_argument("--polarizations", type=int, default=0,
                           help="also check the window against this many random polarizations")
        p.add_argument("--seed", type=int, default=0)
    return parser


def _apply_config(args, parser) -> None:
    if not args.config:
        return
    try:
        data = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    if args.subcommand is None and "subcommand" in data:
        # reparse so the subcommand's own defaults exist
        extra = [data["subcommand"]]
        fresh = parser.parse_args(["--config", args.config] + extra)
        vars(args).update(vars(fresh))
    for key, value in data.items():
        key = key.replace("-", "_")
        if key in ("subcommand", "config"):
            continue
        if getattr(args, key, None) in (None, 0, False) or not hasattr(args, key):
            setattr(args, key, value)


_VALUE_FLAGS = ("--box", "--grid", "--ancestors-of")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Glue values that start with '-' onto their flag, so ``--box -10:10`` parses."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_join_negative_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        _apply_config(args, parser)
        if args.subcommand is None:
            parser.print_usage(sys.stderr)
            return 2
        if getattr(args, "format", None) not in (None,) + FORMATS:
            raise ConfigError(f"unknown format {args.format!r}")
        return COMMANDS[args.subcommand](args)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SpincqError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
