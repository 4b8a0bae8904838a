"""Command-line entry point and all file formats.

Subcommands: ``build`` constructs an arc model and writes it as JSON;
``verify`` re-runs the verification suite on a model; ``estimate`` runs a
dimension estimator on a preset or model; ``export`` renders a model to
SVG/JSON/CSV.  Exit codes: 0 all checks pass, 1 verification failure,
2 configuration error, 3 construction failure.

Exact rationals travel through JSON as "numerator/denominator" strings;
output files are written atomically and are byte-stable for a fixed config
and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import arc as arc_mod
from . import dimension as dim_mod
from . import measure as measure_mod
from .cantor import (GenerationBudgetError, ProductCantor, RatioCantorSet,
                     RatioSequence, SelfSimilarCantor, product_for_dimension,
                     sample_perfectness_inputs, verify_uniform_perfectness)
from .metric import (VON_KOCH_EXPONENT, ArcFactor, RugSpace, SnowflakeMetric)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_CONFIG = 2
EXIT_CONSTRUCTION = 3


class ConfigError(ValueError):
    """Bad configuration file or flag values."""


# -- rationals and atomic files ----------------------------------------------


def encode_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decode_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def parse_fraction(text: str) -> Fraction:
    """Accept 'p/q', decimals, or a float literal."""
    text = text.strip()
    try:
        if "/" in text:
            return decode_rational(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse rational {text!r}") from exc


def write_atomic(path: Path, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- configuration -------------------------------------------------------------


@dataclass
class RunConfig:
    target_dimension: float = 1.0 + math.log(2.0) / math.log(3.0)
    ratio_family: str = "dyadic"
    ratio_params: dict = field(default_factory=dict)
    depth: int = 2
    seed: int = 0
    scales: Optional[tuple[int, int]] = None  # None: preset picks its window
    samples: int = 200

    def __post_init__(self):
        if self.target_dimension < 1.0:
            raise ConfigError(f"target dimension must be at least 1, got {self.target_dimension}")
        if self.depth < 1:
            raise ConfigError("depth must be at least 1")
        if self.scales is not None and self.scales[0] > self.scales[1]:
            raise ConfigError(f"bad scale window {self.scales}")

    def ratio_sequence(self) -> RatioSequence:
        if self.ratio_family == "dyadic":
            return RatioSequence.dyadic()
        if self.ratio_family == "harmonic":
            return RatioSequence.harmonic()
        if self.ratio_family == "geometric":
            q = self.ratio_params.get("q")
            if q is None:
                raise ConfigError("geometric ratios need a parameter q")
            return RatioSequence.geometric(Fraction(q))
        raise ConfigError(f"unknown ratio family {self.ratio_family!r}")

    def as_dict(self) -> dict:
        return {
            "target_dimension": self.target_dimension,
            "ratio_family": self.ratio_family,
            "ratio_params": {k: encode_rational(Fraction(v))
                             for k, v in sorted(self.ratio_params.items())},
            "depth": self.depth,
            "seed": self.seed,
            "scales": list(self.scales) if self.scales else None,
            "samples": self.samples,
        }


def parse_ratio_spec(text: str) -> tuple[str, dict]:
    """'dyadic' | 'harmonic' | 'geometric:q=1/3'."""
    family, _, rest = text.partition(":")
    family = family.strip()
    params: dict = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ConfigError(f"bad ratio parameter {item!r}")
            params[key.strip()] = parse_fraction(value)
    if family not in ("dyadic", "harmonic", "geometric"):
        raise ConfigError(f"unknown ratio family {family!r}")
    return family, params


def parse_scales(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"scales must look like '3:8', got {text!r}") from exc


def load_config_file(path: Path) -> dict:
    """Plain key=value lines; '#' starts a comment."""
    values: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        values[key.strip()] = value.strip()
    return values


def config_from_sources(args) -> RunConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        raw.update(load_config_file(args.config))
    for key in ("c", "depth", "seed", "ratios", "scales", "samples"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    kwargs: dict = {}
    try:
        if "c" in raw:
            kwargs["target_dimension"] = float(raw["c"])
        if "depth" in raw:
            kwargs["depth"] = int(raw["depth"])
        if "seed" in raw:
            kwargs["seed"] = int(raw["seed"])
        if "samples" in raw:
            kwargs["samples"] = int(raw["samples"])
        if "ratios" in raw:
            family, params = parse_ratio_spec(str(raw["ratios"]))
            kwargs["ratio_family"] = family
            kwargs["ratio_params"] = params
        if "scales" in raw:
            scales = raw["scales"]
            kwargs["scales"] = parse_scales(scales) if isinstance(scales, str) else scales
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return RunConfig(**kwargs)


# -- model serialization -------------------------------------------------------


def _point_json(point) -> list[str]:
    return [encode_rational(Fraction(c)) for c in point]


def _box_json(box) -> list[list[str]]:
    return [[encode_rational(lo), encode_rational(hi)] for lo, hi in box]


def model_to_dict(model, config: RunConfig) -> dict:
    if isinstance(model, UnitIntervalModel):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "unit_interval",
            "config": config.as_dict(),
        }
    arc = model
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "arc",
        "config": config.as_dict(),
        "ambient_dimension": arc.ambient_dimension,
        "depth": arc.depth,
        "factor": {
            "ratio": encode_rational(arc.product.factor.ratio),
            "copies": arc.product.copies,
        },
        "cells": [
            {
                "id": cell.id,
                "generation": cell.generation,
                "rank": cell.rank,
                "parent": cell.parent_id,
                "address": list(cell.address),
                "box": _box_json(cell.box),
            }
            for cell in arc.cells
        ],
        "connectors": [
            {
                "id": conn.id,
                "depth": conn.depth,
                "parent_cell": conn.parent_cell,
                "source_cell": conn.source_cell,
                "target_cell": conn.target_cell,
                "interval": conn.interval_id,
                "vertices": [_point_json(v) for v in conn.vertices],
            }
            for conn in arc.connectors
        ],
        "param_intervals": [
            {
                "id": iv.id,
                "depth": iv.depth,
                "index": iv.index,
                "lo": encode_rational(iv.lo),
                "hi": encode_rational(iv.hi),
                "status": iv.status,
                "link": iv.link,
                "children": [kid.id for kid in iv.children],
            }
            for iv in arc.intervals
        ],
    }


class UnitIntervalModel:
    """Degenerate model for target dimension exactly 1: the unit interval."""

    kind = "unit_interval"
    ambient_dimension = 1
    depth = 0

    def sample(self, generation: int = 10):
        points, resolution = dim_mod.interval_sample(generation)
        return points, resolution


def model_from_dict(data: dict, config: Optional[RunConfig] = None):
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema version {data.get('schema_version')!r}")
    if config is None:
        scales = data["config"]["scales"]
        config = RunConfig(**{
            "target_dimension": data["config"]["target_dimension"],
            "ratio_family": data["config"]["ratio_family"],
            "ratio_params": {k: decode_rational(v)
                             for k, v in data["config"]["ratio_params"].items()},
            "depth": data["config"]["depth"],
            "seed": data["config"]["seed"],
            "scales": tuple(scales) if scales else None,
            "samples": data["config"]["samples"],
        })
    if data["kind"] == "unit_interval":
        return UnitIntervalModel(), config

    base = RatioCantorSet(config.ratio_sequence())
    factor = SelfSimilarCantor(decode_rational(data["factor"]["ratio"]))
    product = ProductCantor(factor, data["factor"]["copies"])
    arc = arc_mod.ArcApproximation(base, product)

    cells = {}
    for item in sorted(data["cells"], key=lambda c: c["id"]):
        box = tuple((decode_rational(lo), decode_rational(hi)) for lo, hi in item["box"])
        cell = arc_mod.Cell(item["id"], item["generation"], item["rank"], box,
                            item["parent"], tuple(item["address"]))
        cells[cell.id] = cell
    arc.cells = [cells[i] for i in sorted(cells)]
    arc._cell_index = {cell.address: cell.id for cell in arc.cells}
    depth = data["depth"]
    arc.cells_by_generation = [[] for _ in range(depth + 1)]
    for cell in arc.cells:
        arc.cells_by_generation[cell.generation].append(cell.id)

    intervals = {}
    children_ids = {}
    for item in sorted(data["param_intervals"], key=lambda v: v["id"]):
        iv = arc_mod.ParamInterval(item["id"], item["depth"], item["index"],
                                   decode_rational(item["lo"]), decode_rational(item["hi"]),
                                   item["status"], item["link"])
        intervals[iv.id] = iv
        children_ids[iv.id] = item["children"]
    for iv_id, kid_ids in children_ids.items():
        intervals[iv_id].children = [intervals[i] for i in kid_ids]
    arc.intervals = [intervals[i] for i in sorted(intervals)]

    conns = []
    for item in sorted(data["connectors"], key=lambda c: c["id"]):
        conn = arc_mod.Connector(
            item["id"], item["depth"],
            [tuple(decode_rational(c) for c in v) for v in item["vertices"]],
            item["parent_cell"], item["source_cell"], item["target_cell"],
            item["interval"])
        conn.param_length = intervals[conn.interval_id].length
        conns.append(conn)
    arc.connectors = conns
    arc.depth = depth
    arc._frontier = []  # loaded models are read-only; rebuild to extend
    return arc, config


# -- svg / csv -----------------------------------------------------------------


def render_svg(arc) -> str:
    if arc.ambient_dimension != 2:
        raise ConfigError("svg export is only defined for planar (n=1) models")
    size, margin = 760.0, 20.0

    def sx(x) -> float:
        return margin + float(x) * size

    def sy(y) -> float:
        return margin + (1.0 - float(y)) * size

    def width(generation: int) -> float:
        return max(0.3, 2.4 * (0.62 ** (generation - 1)))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {size + 2 * margin:.0f} {size + 2 * margin:.0f}">',
    ]
    # deepest generation's cells as rectangles; every connector as a polyline,
    # generations told apart by stroke width
    for cell in arc.generation_cells(arc.depth):
        (x0, x1), (y0, y1) = cell.box
        lines.append(
            f'<rect x="{sx(x0):.4f}" y="{sy(y1):.4f}" '
            f'width="{(float(x1) - float(x0)) * size:.4f}" '
            f'height="{(float(y1) - float(y0)) * size:.4f}" '
            f'fill="none" stroke="#222222" stroke-width="{width(arc.depth):.2f}"/>')
    for conn in arc.connectors:
        pts = " ".join(f"{sx(v[0]):.4f},{sy(v[1]):.4f}" for v in conn.vertices)
        lines.append(f'<polyline points="{pts}" fill="none" stroke="#b03030" '
                     f'stroke-width="{width(conn.depth):.2f}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def series_csv(series: dim_mod.BoxCountSeries) -> str:
    rows = ["delta,count,log_inv_delta,log_count"]
    for delta, count, log_inv, log_n in series.rows():
        rows.append(f"{delta!r},{count},{log_inv!r},{log_n!r}")
    return "\n".join(rows) + "\n"


# -- model construction and verification ---------------------------------------


def build_model(config: RunConfig):
    if config.target_dimension == 1.0:
        return UnitIntervalModel()
    base = RatioCantorSet(config.ratio_sequence())
    product = product_for_dimension(config.target_dimension - 1.0)
    return arc_mod.build_arc(base, product, config.depth)


def counting_summary(model) -> dict:
    if isinstance(model, UnitIntervalModel):
        return {"kind": "unit_interval", "cells": 0, "connectors": 0,
                "param_intervals": 1}
    return {
        "kind": "arc",
        "depth": model.depth,
        "ambient_dimension": model.ambient_dimension,
        "cells_per_generation": [len(g) for g in model.cells_by_generation],
        "connectors": len(model.connectors),
        "param_intervals": len(model.intervals),
    }


def run_verification(model, config: RunConfig) -> dict:
    """All verification checks on a model; each check reports pass/fail."""
    checks: list[dict] = []

    def add(name: str, passed: bool, **details) -> None:
        checks.append({"name": name, "passed": bool(passed), **details})

    if isinstance(model, UnitIntervalModel):
        add("degenerate_unit_interval", True,
            note="target dimension 1: every structural check is vacuous")
        return {"schema_version": SCHEMA_VERSION, "kind": "verification_report",
                "passed": True, "checks": checks}

    arc = model
    rng = random.Random(config.seed)
    n = arc.copies

    counts_ok = True
    for k in range(1, arc.depth + 1):
        cells = len(arc.cells_by_generation[k])
        conns = len(arc.cumulative_connectors(k))
        used = len(arc.used_intervals(k))
        if cells != 2 ** (k * (n + 1)) or conns != 2 ** (k * (n + 1)) - 1:
            counts_ok = False
        if used != 2 ** ((k - 1) * (n + 1)) * (2 ** (n + 1) - 1):
            counts_ok = False
    add("counting_invariants", counts_ok, depth=arc.depth)

    alternation_ok = all(
        kid.status == ("neglected" if kid.index % 2 == 0 else "used")
        for iv in arc.intervals for kid in iv.children)
    add("used_neglected_alternation", alternation_ok)

    report = arc_mod.verify_injectivity(arc, arc.depth)
    add("injectivity", report.passed,
        connector_pairs=report.connector_pairs_checked,
        violations=[list(v) for v in report.connector_violations],
        clearance_violations=report.clearance_violations,
        traversal_violation=(list(report.traversal_violation)
                             if report.traversal_violation else None))

    addresses = arc_mod.sample_addresses(arc, min(100, config.samples), rng)
    containment_ok = True
    details = []
    for k in range(1, arc.depth + 1):
        rep = arc_mod.verify_containment(arc, k, addresses)
        details.append({"depth": k, "max_distance": rep.max_distance,
                        "bound": rep.bound})
        containment_ok = containment_ok and rep.passed
    add("containment", containment_ok, per_depth=details)

    perf_depth = min(12, arc.base_set.max_generation)
    samples = sample_perfectness_inputs(arc.base_set, config.samples, perf_depth, rng)
    perf = verify_uniform_perfectness(arc.base_set, samples, perf_depth)
    add("uniform_perfectness", perf.conclusive,
        constant=float(perf.constant), witnesses=perf.witness_count,
        vacuous=perf.vacuous_count,
        inconclusive=len(perf.inconclusive_samples()))

    resolution = min(12, arc.base_set.max_generation)
    meas = measure_mod.NaturalMeasure(arc.base_set, resolution)
    mass_samples = measure_mod.sample_mass_inputs(meas, config.samples, rng)
    mass_ok = True
    mass_details = []
    for eps in measure_mod.DEFAULT_EXPONENT_GRID:
        cert = measure_mod.verify_mass_bounds(meas, eps, mass_samples, resolution)
        mass_ok = mass_ok and cert.valid and cert.max_boundary_intervals <= 3
        mass_details.append({"exponent": eps, "constant": cert.constant,
                             "lower_margin": cert.lower_margin,
                             "upper_margin": cert.upper_margin,
                             "max_boundary_intervals": cert.max_boundary_intervals})
    add("mass_bounds", mass_ok, certificates=mass_details)

    passed = all(c["passed"] for c in checks)
    return {"schema_version": SCHEMA_VERSION, "kind": "verification_report",
            "passed": passed, "checks": checks}


# -- estimation ---------------------------------------------------------------


def arc_estimate(model, window: Optional[tuple[int, int]] = None,
                 depth: Optional[int] = None) -> dim_mod.BoxCountSeries:
    """Box counts of an arc model's vertex cloud.

    Defaults to the finest three admissible dyadic scales (depth-1 .. depth+1):
    the construction's active scales, where the depth trend of the estimate is
    visible instead of being averaged into the coarse-scale plateau.
    """
    depth = model.depth if depth is None else depth
    cloud = model.vertex_cloud(depth)
    resolution = max(float(model.base_set.generation_length(depth)),
                     float(model.product.factor.generation_length(depth)))
    lo, hi = window if window is not None else (max(depth - 1, 1), depth + 1)
    return dim_mod.box_count_series(cloud, dim_mod.dyadic_scales(lo, hi),
                                    sample_resolution=resolution)


def run_estimate(preset: str, config: RunConfig, model=None,
                 ratio: Fraction = Fraction(1, 3), copies: int = 2,
                 exponent: float = VON_KOCH_EXPONENT,
                 generation: Optional[int] = None) -> tuple[dict, dim_mod.BoxCountSeries]:
    window = config.scales
    if preset == "cantor":
        g = generation or 12
        cantor = SelfSimilarCantor(ratio, max_generation=max(20, g))
        points, resolution = dim_mod.cantor_sample(cantor, g)
        lo, hi = window or (2, g - 2)
        # scales matched to the construction's own hierarchy (powers of r)
        series = dim_mod.box_count_series(points, dim_mod.power_scales(ratio, lo, hi),
                                          sample_resolution=resolution,
                                          scale_family="matched")
        expected = dim_mod.expected_dimensions("cantor", dimension=cantor.dimension)
    elif preset == "product":
        # cell counts grow like 2^(g*copies); shrink the default depth to match
        g = generation or {1: 12, 2: 8}.get(copies, 5)
        product = ProductCantor(SelfSimilarCantor(ratio), copies)
        points, resolution = dim_mod.product_sample(product, g)
        if window is None:
            hi = min(6, g - 2)
            window = (max(1, min(2, hi - 2)), hi)
        lo, hi = window
        if hi - lo < 2:
            raise ConfigError(f"window {lo}:{hi} has fewer than 3 scales; "
                              "widen --scales or deepen --generation")
        series = dim_mod.box_count_series(points, dim_mod.power_scales(ratio, lo, hi),
                                          sample_resolution=resolution,
                                          scale_family="matched")
        expected = dim_mod.expected_dimensions("product", dimension=product.dimension)
    elif preset == "snowflake":
        g = generation or 14
        space = SnowflakeMetric(exponent)
        points = space.sample(g)
        lo, hi = window or (2, 7)
        radii = [0.5 ** i for i in range(lo, hi + 1)]
        series = dim_mod.net_count_series(space, points, radii)
        expected = dim_mod.expected_dimensions("snowflake", exponent=exponent)
    elif preset == "rug":
        if model is not None and not isinstance(model, UnitIntervalModel):
            # fractal rug: a built arc model as the first factor
            space = RugSpace(ArcFactor(model))
            g = generation or min(6, model.depth + 3)
            lo, hi = window or (2, 4)
            expected = dim_mod.expected_dimensions(
                "arc_rug", arc_dimension=1.0 + model.product.dimension)
        else:
            space = RugSpace(SnowflakeMetric(exponent))
            g = generation or 9
            lo, hi = window or (2, 5)
            expected = dim_mod.expected_dimensions("rug", exponent=exponent)
        points = space.sample(g)
        radii = [0.5 ** i for i in range(lo, hi + 1)]
        series = dim_mod.net_count_series(space, points, radii)
    elif preset == "arc":
        if model is None:
            raise ConfigError("arc estimation needs a model file")
        if isinstance(model, UnitIntervalModel):
            points, resolution = model.sample()
            lo, hi = window or (3, 8)
            series = dim_mod.box_count_series(points, dim_mod.dyadic_scales(lo, hi),
                                              sample_resolution=resolution)
            expected = dim_mod.expected_dimensions("interval")
        else:
            series = arc_estimate(model, window)
            expected = dim_mod.expected_dimensions(
                "arc", target_dimension=1.0 + model.product.dimension)
    else:
        raise ConfigError(f"unknown preset {preset!r}")

    kind = "ball-net" if preset in ("snowflake", "rug") else "box"
    estimate = dim_mod.estimate_dimension(series, kind)
    key = "hausdorff_dimension"
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": "estimate_report",
        "preset": preset,
        "estimator": estimate.kind,
        "slope": estimate.slope,
        "intercept": estimate.intercept,
        "r_squared": estimate.r_squared,
        "scale_range": list(estimate.scale_range),
        "scales": [float(s) for s in series.scales],
        "counts": list(series.counts),
        "expected": expected,
        "gap": estimate.slope - expected[key],
    }
    return report, series


# -- subcommands ----------------------------------------------------------------


def cmd_build(args) -> int:
    config = config_from_sources(args)
    try:
        model = build_model(config)
    except (arc_mod.RoutingFailed, GenerationBudgetError) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    summary = counting_summary(model)
    out = Path(args.out) if args.out else Path("model.json")
    write_atomic(out, dump_json(model_to_dict(model, config)))
    for key, value in summary.items():
        print(f"{key}: {value}")
    print(f"model written to {out}")
    return EXIT_OK


def _load_model(path) -> tuple[object, RunConfig]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read model {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"model {path} is not valid JSON: {exc}") from exc
    try:
        return model_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"model {path} is malformed: {exc}") from exc


def cmd_verify(args) -> int:
    model, config = _load_model(args.model)
    if args.seed is not None:
        config.seed = args.seed
    if args.samples is not None:
        config.samples = args.samples
    report = run_verification(model, config)
    if args.out:
        write_atomic(Path(args.out), dump_json(report))
    for check in report["checks"]:
        print(f"{'PASS' if check['passed'] else 'FAIL'}  {check['name']}")
    return EXIT_OK if report["passed"] else EXIT_VERIFICATION


def cmd_estimate(args) -> int:
    config = config_from_sources(args)
    model = None
    if args.model:
        model, _ = _load_model(args.model)
    kwargs = {}
    if args.ratio:
        kwargs["ratio"] = parse_fraction(args.ratio)
    if args.eps:
        kwargs["exponent"] = (VON_KOCH_EXPONENT if args.eps == "koch"
                              else float(parse_fraction(args.eps)))
    if args.copies:
        kwargs["copies"] = args.copies
    if args.generation:
        kwargs["generation"] = args.generation
    try:
        report, series = run_estimate(args.preset, config, model, **kwargs)
    except (ValueError, GenerationBudgetError) as exc:
        if isinstance(exc, ConfigError):
            raise
        print(f"estimation failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    if args.out:
        write_atomic(Path(args.out), dump_json(report))
    if args.csv:
        write_atomic(Path(args.csv), series_csv(series))
    expected = report["expected"].get("hausdorff_dimension")
    print(f"preset: {report['preset']}")
    print(f"slope: {report['slope']:.4f}  (expected {expected:.4f}, "
          f"gap {report['gap']:+.4f}, r^2 {report['r_squared']:.5f})")
    return EXIT_OK


def cmd_export(args) -> int:
    model, config = _load_model(args.model)
    out = Path(args.out)
    if args.format == "json":
        write_atomic(out, dump_json(model_to_dict(model, config)))
    elif args.format == "svg":
        if isinstance(model, UnitIntervalModel):
            raise ConfigError("svg export is only defined for planar (n=1) models")
        write_atomic(out, render_svg(model))
    elif args.format == "csv":
        report, series = run_estimate("arc", config, model)
        write_atomic(out, series_csv(series))
    else:
        raise ConfigError(f"unknown export format {args.format!r}")
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractarc",
        description="Construct, verify, estimate, and export fractal arc models")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=Path, help="key=value config file")
        p.add_argument("--c", type=float, default=None,
                       help="target conformal dimension (>= 1)")
        p.add_argument("--depth", type=int, default=None, help="generation depth")
        p.add_argument("--ratios", type=str, default=None,
                       help="ratio family: dyadic | harmonic | geometric:q=1/3")
        p.add_argument("--seed", type=int, default=None, help="random seed")
        p.add_argument("--scales", type=str, default=None,
                       help="dyadic scale window, e.g. 3:8")
        p.add_argument("--samples", type=int, default=None,
                       help="verification sample count")

    p_build = sub.add_parser("build", help="construct a model and write JSON")
    common(p_build)
    p_build.add_argument("--out", type=Path, default=None)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run verification checks on a model")
    p_verify.add_argument("--model", type=Path, required=True)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--out", type=Path, default=None, help="report JSON path")
    p_verify.set_defaults(func=cmd_verify)

    p_est = sub.add_parser("estimate", help="estimate a dimension")
    common(p_est)
    p_est.add_argument("--preset", required=True,
                       choices=["cantor", "product", "snowflake", "rug", "arc"])
    p_est.add_argument("--model", type=Path, default=None)
    p_est.add_argument("--ratio", type=str, default=None,
                       help="self-similar scaling ratio, e.g. 1/3")
    p_est.add_argument("--eps", type=str, default=None,
                       help="snowflake exponent, a rational or 'koch'")
    p_est.add_argument("--copies", type=int, default=None)
    p_est.add_argument("--generation", type=int, default=None)
    p_est.add_argument("--out", type=Path, default=None, help="report JSON path")
    p_est.add_argument("--csv", type=Path, default=None, help="per-scale CSV path")
    p_est.set_defaults(func=cmd_estimate)

    p_exp = sub.add_parser("export", help="export a model to svg/json/csv")
    p_exp.add_argument("--model", type=Path, required=True)
    p_exp.add_argument("--format", required=True, choices=["svg", "json", "csv"])
    p_exp.add_argument("--out", type=Path, required=True)
    p_exp.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (arc_mod.RoutingFailed, GenerationBudgetError) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
